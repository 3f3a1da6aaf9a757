#include "trajnyq/design.hpp"

#include "trajnyq/error.hpp"
#include "trajnyq/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace trajnyq {
namespace {

void require_verdict(const NyquistVerdict& v) {
  if (v.status != Status::Nyquist) {
    throw Error(ErrorKind::EpsilonOutOfRange,
                std::string("design does not clear the boundary band (re-check gave ") + to_string(v.status) + ")");
  }
}

// Orthonormal rows with the given last row, completed from the coordinate axes.
Mat frame_with_last_row(const Vec& last) {
  const int d = static_cast<int>(last.size());
  std::vector<Vec> rows{last.normalized()};
  for (int i = 0; i < d && static_cast<int>(rows.size()) < d; ++i) {
    Vec e = Vec::Unit(d, i);
    for (const auto& r : rows) e -= e.dot(r) * r;
    if (e.norm() > 1e-6) rows.push_back(e.normalized());
  }
  Mat U(d, d);
  for (int i = 0; i + 1 < d; ++i) U.row(i) = rows[i + 1].transpose();
  U.row(d - 1) = rows[0].transpose();
  return U;
}

// Orthonormal basis of R^k whose first vector is `first`.
std::vector<Vec> completed_basis(const Vec& first) {
  const int k = static_cast<int>(first.size());
  std::vector<Vec> b{first.normalized()};
  for (int i = 0; i < k && static_cast<int>(b.size()) < k; ++i) {
    Vec e = Vec::Unit(k, i);
    for (const auto& r : b) e -= e.dot(r) * r;
    if (e.norm() > 1e-6) b.push_back(e.normalized());
  }
  return b;
}

std::vector<Vec> orientation_directions(int d, int count) {
  std::vector<Vec> out;
  if (d == 2) {
    for (int i = 0; i < count; ++i) {
      const double th = kPi * i / count;
      Vec u(2);
      u << std::cos(th), std::sin(th);
      out.push_back(u);
    }
  } else if (d == 3) {
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
      const double z = 1.0 - (i + 0.5) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      Vec u(3);
      u << r * std::cos(golden * i), r * std::sin(golden * i), z;
      out.push_back(u);
    }
  } else {
    Rng rng(0x0121E47ull);
    out.push_back(Vec::Unit(d, d - 1));
    while (static_cast<int>(out.size()) < count) {
      Vec u(d);
      for (int i = 0; i < d; ++i) u[i] = rng.normal();
      if (u.norm() > 1e-6) out.push_back(u.normalized());
    }
  }
  return out;
}

struct SliceLattice {
  Mat reciprocal;  // k x k, columns u_i
  double density = 0.0;
};

// Sampling lattices for a symmetric slice: all nonzero reciprocal half-sums leave the slice.
SliceLattice best_slice_lattice(const ConvexBody& slice, double epsilon) {
  const int k = slice.dim();
  const double grow = 1.0 / (1.0 - epsilon);
  std::vector<Vec> frame;
  if (k == 1) {
    frame = {Vec::Unit(1, 0)};
  } else {
    frame = completed_basis(width_direction(slice).direction.vec());
  }
  SliceLattice best;
  best.reciprocal = Mat(k, k);
  double det = 1.0;
  for (int i = 0; i < k; ++i) {
    const double h = support(slice, Direction(frame[i]));
    best.reciprocal.col(i) = 2.0 * h * grow * frame[i];
    det *= 2.0 * h * grow;
  }
  best.density = det / std::pow(2.0 * kPi, k);

  if (k == 2) {
    const double s = 2.0 * slice.circumradius() * grow;
    Mat hex(2, 2);
    hex.col(0) = s * frame[0];
    hex.col(1) = s * (0.5 * frame[0] + 0.5 * std::sqrt(3.0) * frame[1]);
    const double dens = s * s * 0.5 * std::sqrt(3.0) / (4.0 * kPi * kPi);
    if (dens < best.density) best = {hex, dens};
  }
  return best;
}

bool is_axis_box(const ConvexBody& omega, Vec& extents) {
  if (omega.is_ball()) return false;
  const int d = omega.dim();
  extents = Vec::Constant(d, std::numeric_limits<double>::infinity());
  Vec neg = extents;
  for (const auto& h : omega.halfspaces()) {
    Eigen::Index axis = 0;
    const double big = h.a.cwiseAbs().maxCoeff(&axis);
    if (std::abs(big - 1.0) > 1e-12) return false;
    if (h.a[axis] > 0) extents[axis] = std::min(extents[axis], h.b);
    else neg[axis] = std::min(neg[axis], h.b);
  }
  for (int i = 0; i < d; ++i) {
    if (!std::isfinite(extents[i]) || std::abs(extents[i] - neg[i]) > 1e-12 * std::max(1.0, extents[i])) return false;
  }
  return true;
}

}  // namespace

DesignResult optimal_uniform_2d(const ConvexBody& omega, double epsilon) {
  if (omega.dim() != 2) throw Error(ErrorKind::InvalidInput, "planar design needs a 2D body");
  const auto wd = width_direction(omega);
  const double bound = 2.0 * kPi / wd.width;
  if (!(epsilon > 0.0 && epsilon < bound)) throw Error(ErrorKind::EpsilonOutOfRange, "epsilon must lie in (0, 2pi/W)");
  const Vec& u = wd.direction.vec();
  Vec v(2);
  v << u[1], -u[0];
  const UniformLines2D lines(Vec::Zero(2), v, bound - epsilon);
  DesignResult r{lines, 1.0 / lines.delta, epsilon, wd.width / (2.0 * kPi), u, {}};
  r.verdict = check_union_uniform_2d(UnionUniform2D({lines}), omega);
  require_verdict(r.verdict);
  return r;
}

DesignResult optimal_hyperplane_set(const ConvexBody& omega, double epsilon) {
  const int d = omega.dim();
  const auto wd = width_direction(omega);
  const double bound = 2.0 * kPi / wd.width;
  if (!(epsilon > 0.0 && epsilon < bound)) throw Error(ErrorKind::EpsilonOutOfRange, "epsilon must lie in (0, 2pi/W)");
  const HyperplaneSet planes(Vec::Zero(d), wd.direction.vec(), bound - epsilon);
  DesignResult r{planes, 1.0 / planes.delta, epsilon, wd.width / (2.0 * kPi), wd.direction.vec(), {}};
  r.verdict = check_hyperplane_union(UnionHyperplanes({planes}), omega);
  require_verdict(r.verdict);
  return r;
}

DesignResult optimal_uniform_d(const ConvexBody& omega, double epsilon, DesignSearch search) {
  if (!omega.symmetric()) throw Error(ErrorKind::SymmetryRequired, "body must be flagged symmetric about the origin");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error(ErrorKind::EpsilonOutOfRange, "epsilon must lie in (0, 1)");
  const int d = omega.dim();
  const double shrink = 1.0 - epsilon;

  if (search.kind == SearchKind::ClosedForm) {
    if (d != 3) throw Error(ErrorKind::InvalidInput, "closed-form designs are defined in R^3");
    std::vector<Vec> basis(3, Vec::Zero(3));
    double critical = 0.0;
    Vec ext;
    if (omega.is_ball()) {
      const double rho = omega.radius();
      basis[0] << 1.0, std::sqrt(3.0), 0.0;
      basis[0] *= shrink * kPi / (std::sqrt(3.0) * rho);
      basis[1] << 1.0, 0.0, 0.0;
      basis[1] *= shrink * 2.0 * kPi / (std::sqrt(3.0) * rho);
      basis[2] << 0.0, 0.0, 1.0;
      critical = std::sqrt(3.0) * rho * rho / (2.0 * kPi * kPi);
    } else if (is_axis_box(omega, ext)) {
      std::vector<int> axes{0, 1, 2};
      std::stable_sort(axes.begin(), axes.end(), [&](int a, int b) { return ext[a] < ext[b]; });
      basis[0] = shrink * kPi / ext[axes[0]] * Vec::Unit(3, axes[0]);
      basis[1] = shrink * kPi / ext[axes[1]] * Vec::Unit(3, axes[1]);
      basis[2] = Vec::Unit(3, axes[2]);
      critical = ext[axes[0]] * ext[axes[1]] / (kPi * kPi);
    } else {
      throw Error(ErrorKind::InvalidInput, "closed forms exist only for a centred ball or an axis-aligned box");
    }
    const UniformLinesD set(basis);
    DesignResult r{set, density(set), epsilon, critical, Mat::Identity(3, 3), {}};
    r.verdict = check_uniform_d(set, omega);
    require_verdict(r.verdict);
    return r;
  }

  if (d < 2 || d > 4) throw Error(ErrorKind::InvalidInput, "orientation search supports 2 <= d <= 4");
  if (search.orientations < 1 || search.orientations > 10000) {
    throw Error(ErrorKind::InvalidInput, "orientation count must lie in [1, 10000]");
  }
  std::optional<DesignResult> best;
  for (const auto& dir : orientation_directions(d, search.orientations)) {
    const Mat U = frame_with_last_row(dir);
    ConvexBody slice = [&] {
      try {
        return cross_section(omega, U);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::EmptySlice) throw Error(ErrorKind::DegenerateBody, "slice through the origin is empty");
        throw;
      }
    }();
    const auto lat = best_slice_lattice(slice, epsilon);
    const int k = d - 1;
    const Mat Ws = 2.0 * kPi * lat.reciprocal.inverse().transpose();
    std::vector<Vec> basis;
    for (int i = 0; i < k; ++i) {
      Vec full = Vec::Zero(d);
      full.head(k) = Ws.col(i);
      Vec v = U.transpose() * full;
      v -= v.dot(dir) * dir;
      basis.push_back(v);
    }
    basis.push_back(dir);
    const double dens = lat.density;
    if (best) {
      const double rel = (dens - best->density) / best->density;
      if (rel > 1e-12) continue;
      if (std::abs(rel) <= 1e-12) {
        const Vec& cur = std::get<UniformLinesD>(best->set).basis.back();
        if (!std::lexicographical_compare(dir.data(), dir.data() + d, cur.data(), cur.data() + d)) continue;
      }
    }
    const UniformLinesD set(basis);
    best = DesignResult{set, density(set), epsilon, dens * std::pow(shrink, k), U, {}};
  }
  best->verdict = check_uniform_d(std::get<UniformLinesD>(best->set), omega);
  require_verdict(best->verdict);
  return *best;
}

UniformLinesD uniform_from_lattice(const std::vector<Vec>& basis) {
  const int d = static_cast<int>(basis.size());
  if (d < 2) throw Error(ErrorKind::InvalidInput, "lattice needs d >= 2");
  Mat B(d, d);
  for (int i = 0; i < d; ++i) {
    if (basis[i].size() != d || !basis[i].allFinite()) throw Error(ErrorKind::InvalidInput, "bad basis vector");
    B.col(i) = basis[i];
  }
  {
    Eigen::JacobiSVD<Mat> svd(B);
    const auto& sv = svd.singularValues();
    if (sv[d - 1] <= 1e-12 * sv[0]) throw Error(ErrorKind::SingularBasis, "lattice basis is singular");
  }

  // Pairwise size reduction.
  for (int pass = 0; pass < 1000; ++pass) {
    bool changed = false;
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        if (i == j) continue;
        const double q = std::round(B.col(i).dot(B.col(j)) / B.col(j).squaredNorm());
        if (q != 0.0 && (B.col(i) - q * B.col(j)).squaredNorm() < B.col(i).squaredNorm() * (1.0 - 1e-12)) {
          B.col(i) -= q * B.col(j);
          changed = true;
        }
      }
    }
    if (!changed) break;
  }

  // Shortest vector by enumeration of |m|_inf <= 8, canonical sign, then lexicographically largest.
  constexpr long kRange = 8;
  std::vector<long> m(d, -kRange), best_m;
  Vec best_v;
  double best_n = std::numeric_limits<double>::infinity();
  auto better = [&](const Vec& v, double n) {
    if (n < best_n * (1.0 - 1e-12)) return true;
    if (n > best_n * (1.0 + 1e-12)) return false;
    for (int i = 0; i < d; ++i) {
      if (std::abs(v[i] - best_v[i]) > 1e-12) return v[i] > best_v[i];
    }
    return false;
  };
  while (true) {
    bool zero = true;
    for (long x : m) zero = zero && x == 0;
    if (!zero) {
      Vec v = Vec::Zero(d);
      for (int i = 0; i < d; ++i) v += static_cast<double>(m[i]) * B.col(i);
      for (int i = 0; i < d; ++i) {
        if (std::abs(v[i]) > 1e-12) {
          if (v[i] < 0) v = -v;
          break;
        }
      }
      const double n = v.norm();
      if (better(v, n)) {
        best_n = n;
        best_v = v;
        best_m = m;
        // Keep the coefficient sign consistent with the canonical vector.
        Vec check = Vec::Zero(d);
        for (int i = 0; i < d; ++i) check += static_cast<double>(m[i]) * B.col(i);
        if (check.dot(v) < 0) {
          for (auto& x : best_m) x = -x;
        }
      }
    }
    int i = d - 1;
    while (i >= 0 && m[i] == kRange) {
      m[i] = -kRange;
      --i;
    }
    if (i < 0) break;
    ++m[i];
  }

  // Unimodular completion: integer column operations carry best_m to e_1.
  Eigen::Matrix<long, Eigen::Dynamic, Eigen::Dynamic> M =
      Eigen::Matrix<long, Eigen::Dynamic, Eigen::Dynamic>::Identity(d, d);
  std::vector<long> a = best_m;
  while (true) {
    int p = -1;
    int nonzero = 0;
    for (int i = 0; i < d; ++i) {
      if (a[i] == 0) continue;
      ++nonzero;
      if (p < 0 || std::abs(a[i]) < std::abs(a[p])) p = i;
    }
    if (nonzero <= 1) {
      if (p != 0) {
        M.col(0).swap(M.col(p));
        std::swap(a[0], a[p]);
      }
      if (a[0] < 0) {
        M.col(0) = -M.col(0);
        a[0] = -a[0];
      }
      break;
    }
    for (int i = 0; i < d; ++i) {
      if (i == p || a[i] == 0) continue;
      const long q = a[i] / a[p];
      a[i] -= q * a[p];
      M.col(p) += q * M.col(i);
    }
  }
  if (a[0] != 1) throw Error(ErrorKind::SingularBasis, "shortest vector is not primitive");

  const Mat C = B * M.cast<double>();
  const Vec vd = C.col(0).normalized();
  std::vector<Vec> out;
  for (int i = 1; i < d; ++i) {
    Vec v = C.col(i);
    v -= v.dot(vd) * vd;
    out.push_back(v);
  }
  out.push_back(vd);
  return UniformLinesD(out);
}

}  // namespace trajnyq
