#include "trajnyq/nyquist.hpp"

#include "trajnyq/error.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace trajnyq {
namespace {

constexpr const char* kC2Note = "path condition holds analytically for this built-in set type";

NyquistVerdict q_fit_verdict(const std::vector<Vec>& q, const ConvexBody& omega, bool full_theorem,
                             const std::string& family, double tol) {
  NyquistVerdict v;
  v.c2_certified = true;
  const auto open = fits_in_translate(q, omega, FitMode::Open, tol);
  v.margin = open.margin;
  if (open.verdict == FitVerdict::Fits) {
    v.status = Status::NotNyquist;
    v.shift = open.shift;
    v.basis = family + ": Q lies inside an open translate of the spectral support (null field exists)";
    return v;
  }
  if (!full_theorem) {
    v.status = Status::Unknown;
    v.basis = family + ": necessary-only (sufficiency is not established for this configuration)";
    return v;
  }
  const auto closed = fits_in_translate(q, omega, FitMode::Closed, tol);
  if (closed.verdict == FitVerdict::NoFit) {
    v.status = Status::Nyquist;
    v.basis = family + ": Q fits in no closed translate of the spectral support";
  } else {
    v.status = Status::Critical;
    v.shift = closed.shift;
    v.basis = family + ": Q touches the boundary of a translate (within tolerance)";
  }
  return v;
}

bool canonical_sign(const std::vector<long>& m) {
  for (long x : m) {
    if (x != 0) return x > 0;
  }
  return false;
}

void require_centered_ball(const ConvexBody& omega) {
  if (!omega.is_ball() || omega.dim() != 2 || omega.center().norm() > 1e-12) {
    throw Error(ErrorKind::NonIsotropicOmega, "covering checks need a disc centred at the origin");
  }
}

// Empirical covering test for on-trajectory points of a set with radial gap `gap`.
NyquistVerdict covering_verdict(const TrajectorySet& set, double gap, double rho, const std::string& family) {
  NyquistVerdict v;
  v.c2_certified = true;
  const double limit = kPi / rho;
  if (!(gap < limit)) {
    v.status = Status::Unknown;
    v.basis = family + ": covering condition not met; the covering criterion is only sufficient";
    v.margin = limit - gap;
    return v;
  }
  v.status = Status::SufficientOnly;
  v.basis = family + ": covering radius below pi/(2 rho) (sufficient condition)";
  v.margin = limit - gap;

  const double eps = (kPi / (2.0 * rho) - gap / 2.0) / 2.0;
  const double pitch = eps / 4.0;
  double rp = 4.0 * gap;
  const double max_probes = 4e6;
  if (std::pow(2.0 * rp / pitch, 2) > max_probes) rp = 0.5 * pitch * std::sqrt(max_probes);
  if (rp < 1.5 * gap) {
    v.diagnostic = "empirical covering check skipped: probe grid would be too fine";
    return v;
  }
  const Window gen{Vec::Zero(2), rp + gap + eps};
  std::vector<Vec> pts;
  for (auto& s : sample_points(set, gen, eps)) pts.push_back(std::move(s.x));
  const auto cov = covering_radius(pts, Window{Vec::Zero(2), rp}, pitch);
  std::ostringstream os;
  os.precision(12);
  os << "covering radius " << cov.radius << " (probe pitch " << cov.pitch << ") vs bound " << kPi / (2.0 * rho)
     << " with arc pitch " << eps;
  v.diagnostic = os.str();
  if (!(cov.radius < kPi / (2.0 * rho))) {
    v.status = Status::Unknown;
    v.diagnostic = "empirical covering check failed: " + v.diagnostic;
  }
  return v;
}

}  // namespace

const char* to_string(Status s) {
  switch (s) {
    case Status::Nyquist: return "Nyquist";
    case Status::NotNyquist: return "NotNyquist";
    case Status::Critical: return "Critical";
    case Status::SufficientOnly: return "SufficientOnly";
    case Status::Unknown: return "Unknown";
  }
  return "Unknown";
}

NyquistVerdict check_union_uniform_2d(const UnionUniform2D& set, const ConvexBody& omega, double tol) {
  if (omega.dim() != 2) throw Error(ErrorKind::InvalidInput, "line unions in the plane need a 2D body");
  const std::size_t n = set.parts.size();
  if (n == 2) {
    const Vec& a = set.parts[0].v;
    const Vec& b = set.parts[1].v;
    if (std::abs(a[0] * b[1] - a[1] * b[0]) <= 1e-12) {
      throw Error(ErrorKind::CollinearParts, "the two families have parallel lines");
    }
  }
  const auto rq = reciprocal_and_qset(set);
  return q_fit_verdict(rq.q, omega, n <= 2, "line union (" + std::to_string(n) + " families)", tol);
}

NyquistVerdict check_uniform_d(const UniformLinesD& set, const ConvexBody& omega, double tol) {
  if (!omega.symmetric()) throw Error(ErrorKind::SymmetryRequired, "body must be flagged symmetric about the origin");
  if (omega.dim() != set.dim) throw Error(ErrorKind::InvalidInput, "dimension mismatch between set and body");
  const Mat U = set.reciprocal();
  const int k = set.dim - 1;
  const double R = omega.circumradius();

  std::vector<long> bound(k);
  double count = 1.0;
  for (int i = 0; i < k; ++i) {
    bound[i] = static_cast<long>(std::floor(R * set.basis[i].norm() / kPi + 1e-9));
    count *= 2.0 * static_cast<double>(bound[i]) + 1.0;
  }
  if (count - 1.0 > 1e7) throw Error(ErrorKind::EnumerationOverflow, "too many lattice candidates");

  NyquistVerdict v;
  v.c2_certified = true;
  std::optional<IndexVec> interior, boundary;
  double best_interior = -1.0;
  double closest = -std::numeric_limits<double>::infinity();
  std::vector<long> m(k);
  for (int i = 0; i < k; ++i) m[i] = -bound[i];
  while (true) {
    bool zero = true;
    for (long x : m) zero = zero && x == 0;
    if (!zero && canonical_sign(m)) {
      Vec y = Vec::Zero(set.dim);
      for (int i = 0; i < k; ++i) y += 0.5 * static_cast<double>(m[i]) * U.col(i);
      if (y.norm() <= R + tol) {
        const double mg = omega.margin(y);
        closest = std::max(closest, mg);
        if (mg > tol) {
          if (mg > best_interior) {
            best_interior = mg;
            interior = IndexVec(m.begin(), m.end());
          }
        } else if (mg >= -tol && !boundary) {
          boundary = IndexVec(m.begin(), m.end());
        }
      }
    }
    int i = k - 1;
    while (i >= 0 && m[i] == bound[i]) {
      m[i] = -bound[i];
      --i;
    }
    if (i < 0) break;
    ++m[i];
  }

  if (interior) {
    v.status = Status::NotNyquist;
    v.index = interior;
    v.margin = best_interior;
    v.basis = "uniform lines in R^d: a reciprocal half-sum lies inside the body";
  } else if (boundary) {
    v.status = Status::Critical;
    v.index = boundary;
    v.margin = closest;
    v.basis = "uniform lines in R^d: a reciprocal half-sum touches the boundary (within tolerance)";
  } else {
    v.status = Status::Nyquist;
    v.margin = std::isfinite(closest) ? closest : -R;
    v.basis = "uniform lines in R^d: no nonzero reciprocal half-sum lies in the closed body";
  }
  return v;
}

NyquistVerdict check_hyperplane_union(const UnionHyperplanes& set, const ConvexBody& omega, double tol) {
  const int d = set.dim();
  if (omega.dim() != d) throw Error(ErrorKind::InvalidInput, "dimension mismatch between set and body");
  const int n = static_cast<int>(set.parts.size());
  bool independent = n <= d;
  if (independent) {
    Mat H(d, n);
    for (int i = 0; i < n; ++i) H.col(i) = set.parts[i].h;
    Eigen::JacobiSVD<Mat> svd(H);
    independent = svd.singularValues()[n - 1] > 1e-9;
  }
  const auto rq = reciprocal_and_qset(set);
  return q_fit_verdict(rq.q, omega, independent,
                       "hyperplane union (" + std::to_string(n) + (independent ? " independent" : " dependent") +
                           " normals)",
                       tol);
}

NyquistVerdict check_nonaffine(const CircleSet& set, const ConvexBody& omega) {
  require_centered_ball(omega);
  return covering_verdict(set, set.delta, omega.radius(), "concentric circles");
}

NyquistVerdict check_nonaffine(const SpiralSet& set, const ConvexBody& omega) {
  require_centered_ball(omega);
  return covering_verdict(set, set.c / set.n, omega.radius(), "interleaved spirals");
}

NyquistVerdict check(const TrajectorySet& set, const ConvexBody& omega, double tol) {
  if (const auto* s = std::get_if<UniformLines2D>(&set)) return check_union_uniform_2d(UnionUniform2D({*s}), omega, tol);
  if (const auto* s = std::get_if<UnionUniform2D>(&set)) return check_union_uniform_2d(*s, omega, tol);
  if (const auto* s = std::get_if<UniformLinesD>(&set)) return check_uniform_d(*s, omega, tol);
  if (const auto* s = std::get_if<CircleSet>(&set)) return check_nonaffine(*s, omega);
  if (const auto* s = std::get_if<SpiralSet>(&set)) return check_nonaffine(*s, omega);
  if (const auto* s = std::get_if<HyperplaneSet>(&set)) return check_hyperplane_union(UnionHyperplanes({*s}), omega, tol);
  return check_hyperplane_union(std::get<UnionHyperplanes>(set), omega, tol);
}

}  // namespace trajnyq
