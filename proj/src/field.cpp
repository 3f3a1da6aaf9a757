#include "trajnyq/field.hpp"

#include "trajnyq/bessel.hpp"
#include "trajnyq/error.hpp"
#include "trajnyq/lp.hpp"
#include "trajnyq/nyquist.hpp"
#include "trajnyq/rng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

namespace trajnyq {
namespace {

constexpr double kCosetExact = 1e-12;
constexpr double kCosetNear = 1e-7;
constexpr double kResidualTol = 1e-8;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

Complex expi(double phase) { return {std::cos(phase), std::sin(phase)}; }

// Integer m with delta = U m, or nullopt when delta is far from the lattice.
std::optional<IndexVec> lattice_offset(const Mat& U, const Eigen::CompleteOrthogonalDecomposition<Mat>& cod,
                                       const Vec& delta) {
  const Vec real_m = cod.solve(delta);
  IndexVec m(static_cast<std::size_t>(U.cols()));
  Vec rounded(U.cols());
  for (Eigen::Index i = 0; i < U.cols(); ++i) {
    if (!(std::abs(real_m[i]) < 1e9)) return std::nullopt;
    rounded[i] = std::round(real_m[i]);
    m[static_cast<std::size_t>(i)] = static_cast<long>(rounded[i]);
  }
  const double residual = (delta - U * rounded).norm();
  const double scale = std::max(1.0, delta.norm());
  if (residual <= kCosetExact * scale) return m;
  if (residual < kCosetNear * scale) {
    throw Error(ErrorKind::NearCosetAmbiguity,
                "two atoms differ from an exact alias by " + fmt(residual) + "; refusing to snap");
  }
  return std::nullopt;
}

struct Coset {
  std::vector<std::size_t> atoms;  // first entry is the base
  std::vector<IndexVec> offsets;
};

std::vector<Coset> group_cosets(const std::vector<Atom>& atoms, const Mat& U) {
  const Eigen::CompleteOrthogonalDecomposition<Mat> cod(U);
  if (cod.rank() < U.cols()) throw Error(ErrorKind::InvalidInput, "reciprocal vectors are linearly dependent");
  std::vector<Coset> out;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    bool placed = false;
    for (auto& c : out) {
      const auto m = lattice_offset(U, cod, atoms[k].omega - atoms[c.atoms.front()].omega);
      if (m) {
        c.atoms.push_back(k);
        c.offsets.push_back(*m);
        placed = true;
        break;
      }
    }
    if (!placed) out.push_back({{k}, {IndexVec(static_cast<std::size_t>(U.cols()), 0)}});
  }
  return out;
}

AliasSystem system_for(const AtomField& field, const Coset& coset, const PartLattice& lat) {
  AliasSystem s;
  s.base = field.atoms[coset.atoms.front()].omega;
  s.U = lat.U;
  s.w = lat.w;
  s.occupied = coset.offsets;
  s.atom_ids = coset.atoms;
  s.indices = lattice_hull(coset.offsets);
  s.g.assign(static_cast<std::size_t>(lat.U.cols()), {});
  for (int i = 0; i < s.parts(); ++i) {
    for (const auto& m : s.indices) s.g[static_cast<std::size_t>(i)][AliasSystem::line_key(m, i)] = Complex(0.0);
  }
  return s;
}

std::vector<Vec> probe_grid_points(const Window& win, int n) {
  const int d = static_cast<int>(win.center.size());
  if (d >= 4) n = std::min(n, 16);
  n = std::max(n, 2);
  std::vector<Vec> out;
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  while (true) {
    Vec x(d);
    for (int i = 0; i < d; ++i) x[i] = win.center[i] - win.radius + 2.0 * win.radius * idx[static_cast<std::size_t>(i)] / (n - 1);
    if ((x - win.center).norm() <= win.radius) out.push_back(x);
    int i = d - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - 1) {
      idx[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
  }
  return out;
}

// Least-squares amplitudes of exp(i <freq_j, p - w>) over the given samples.
std::vector<Complex> fit_amplitudes(const std::vector<const SamplePoint*>& pts, const std::vector<Complex>& vals,
                                    const std::vector<Vec>& freqs, const Vec& w) {
  const auto rows = static_cast<Eigen::Index>(pts.size());
  const auto cols = static_cast<Eigen::Index>(freqs.size());
  if (rows < cols) throw Error(ErrorKind::WindowTooSmall, "fewer samples than aliased classes on a path family");
  Eigen::MatrixXcd A(rows, cols);
  Eigen::VectorXcd b(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Vec rel = pts[static_cast<std::size_t>(r)]->x - w;
    for (Eigen::Index c = 0; c < cols; ++c) A(r, c) = expi(freqs[static_cast<std::size_t>(c)].dot(rel));
    b[r] = vals[static_cast<std::size_t>(r)];
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(A);
  if (qr.rank() < cols) throw Error(ErrorKind::WindowTooSmall, "samples in the window cannot separate the aliased classes");
  const Eigen::VectorXcd x = qr.solve(b);
  return {x.data(), x.data() + x.size()};
}

void error_metrics(const AtomField& truth, const AtomField& est, const Window& win, int grid, Reconstruction& out) {
  double sup = 0.0, sq = 0.0;
  const auto probes = probe_grid_points(win, grid);
  for (const auto& p : probes) {
    const double e = std::abs(evaluate(truth, p) - evaluate(est, p));
    sup = std::max(sup, e);
    sq += e * e;
  }
  out.sup_error = sup;
  out.rms_error = probes.empty() ? 0.0 : std::sqrt(sq / static_cast<double>(probes.size()));
}

}  // namespace

double AtomField::coefficient_l1() const {
  double s = 0.0;
  for (const auto& a : atoms) s += std::abs(a.c);
  return s;
}

AtomField make_atom_field(int dim, std::vector<Atom> atoms, std::optional<ConvexBody> omega_ref, double margin) {
  if (dim < 1) throw Error(ErrorKind::InvalidInput, "field dimension must be positive");
  if (omega_ref && omega_ref->dim() != dim) throw Error(ErrorKind::InvalidInput, "field and body dimensions differ");
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const auto& a = atoms[k];
    if (a.omega.size() != dim || !a.omega.allFinite() || !std::isfinite(a.c.real()) || !std::isfinite(a.c.imag())) {
      throw Error(ErrorKind::InvalidInput, "atom " + std::to_string(k) + " is malformed");
    }
    for (std::size_t j = 0; j < k; ++j) {
      if ((atoms[j].omega - a.omega).norm() <= 1e-9) {
        throw Error(ErrorKind::InvalidInput, "atoms " + std::to_string(j) + " and " + std::to_string(k) + " share a frequency");
      }
    }
    if (omega_ref) {
      const double mg = omega_ref->margin(a.omega);
      if (!(mg > 0.0) || mg < margin) {
        throw Error(ErrorKind::InvalidInput, "atom " + std::to_string(k) + " is not inside the body with the declared margin");
      }
    }
  }
  return AtomField{dim, std::move(atoms), std::move(omega_ref), margin};
}

AtomField make_field(const ConvexBody& omega, int n_atoms, double margin, std::uint64_t seed) {
  if (n_atoms < 0) throw Error(ErrorKind::InvalidInput, "atom count must be non-negative");
  if (!(margin > 0.0 && margin < 0.5)) throw Error(ErrorKind::InvalidInput, "margin must lie in (0, 0.5)");
  const int d = omega.dim();
  const double slack = margin * width_direction(omega).width;
  const auto inner = omega.shrunk(slack);
  if (!inner) throw Error(ErrorKind::EmptyInterior, "body shrunk by margin*W has empty interior");
  Vec lo(d), hi(d);
  for (int i = 0; i < d; ++i) {
    hi[i] = support(*inner, Direction(Vec::Unit(d, i)));
    lo[i] = -support(*inner, Direction(-Vec::Unit(d, i)));
  }
  Rng rng(seed);
  std::vector<Atom> atoms;
  constexpr int kMaxTries = 1000000;
  for (int k = 0; k < n_atoms; ++k) {
    bool done = false;
    for (int t = 0; t < kMaxTries && !done; ++t) {
      Vec x(d);
      for (int i = 0; i < d; ++i) x[i] = rng.uniform(lo[i], hi[i]);
      if (!(inner->margin(x) > 0.0)) continue;
      bool distinct = true;
      for (const auto& a : atoms) distinct = distinct && (a.omega - x).norm() > 1e-9;
      if (!distinct) continue;
      const double re = rng.normal(), im = rng.normal();
      atoms.push_back({x, Complex(re, im) / std::sqrt(2.0)});
      done = true;
    }
    if (!done) throw Error(ErrorKind::EmptyInterior, "rejection sampling found no interior point");
  }
  return AtomField{d, std::move(atoms), omega, slack};
}

Complex evaluate(const AtomField& field, const Vec& r) {
  if (r.size() != field.dim) throw Error(ErrorKind::InvalidInput, "evaluation point has the wrong dimension");
  Complex s(0.0);
  for (const auto& a : field.atoms) s += a.c * expi(a.omega.dot(r));
  return s;
}

Interval restriction_band(const ConvexBody& omega, const Direction& v) {
  return {-support(omega, -v), support(omega, v)};
}

Interval restriction_band(const AtomField& field, const Direction& v) {
  if (field.atoms.empty()) return {};
  Interval b{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& a : field.atoms) {
    const double x = a.omega.dot(v.vec());
    b.lo = std::min(b.lo, x);
    b.hi = std::max(b.hi, x);
  }
  return b;
}

ConvexBody restriction_band(const ConvexBody& omega, const Mat& A) { return project(omega, A); }

double max_path_pitch(const AtomField& field, const TrajectorySet& set) {
  if (dimension(set) != field.dim) throw Error(ErrorKind::InvalidInput, "field and set dimensions differ");
  auto half = [&](const Vec& v) {
    const Direction dir(v);
    return field.omega_ref ? restriction_band(*field.omega_ref, dir).half_width()
                           : restriction_band(field, dir).half_width();
  };
  auto radial = [&] {
    if (field.omega_ref) return field.omega_ref->circumradius();
    double r = 0.0;
    for (const auto& a : field.atoms) r = std::max(r, a.omega.norm());
    return r;
  };
  const double hw = std::visit(overloaded{
                                   [&](const UniformLines2D& s) { return half(s.v); },
                                   [&](const UnionUniform2D& s) {
                                     double h = 0.0;
                                     for (const auto& p : s.parts) h = std::max(h, half(p.v));
                                     return h;
                                   },
                                   [&](const UniformLinesD& s) { return half(s.basis.back()); },
                                   [&](const CircleSet&) { return radial(); },
                                   [&](const SpiralSet&) { return radial(); },
                                   [&](const HyperplaneSet& s) {
                                     const Mat F = s.frame();
                                     double h = 0.0;
                                     for (Eigen::Index j = 0; j < F.cols(); ++j) h = std::max(h, half(F.col(j)));
                                     return h;
                                   },
                                   [&](const UnionHyperplanes& s) {
                                     double h = 0.0;
                                     for (const auto& p : s.parts) {
                                       const Mat F = p.frame();
                                       for (Eigen::Index j = 0; j < F.cols(); ++j) h = std::max(h, half(F.col(j)));
                                     }
                                     return h;
                                   },
                               },
                               set);
  return hw > 0.0 ? kPi / hw : std::numeric_limits<double>::infinity();
}

SampleBatch sample_on_set(const AtomField& field, const TrajectorySet& set, const Window& window, double eps) {
  const double bound = max_path_pitch(field, set);
  if (!(eps > 0.0)) throw Error(ErrorKind::InvalidInput, "sampling pitch must be positive");
  if (eps > bound * (1.0 + 1e-12)) {
    throw Error(ErrorKind::EpsTooCoarse, "along-path pitch " + fmt(eps) + " exceeds the unaliased bound " + fmt(bound));
  }
  SampleBatch batch{sample_points(set, window, eps), {}, set, eps};
  batch.values.reserve(batch.points.size());
  for (const auto& p : batch.points) batch.values.push_back(evaluate(field, p.x));
  return batch;
}

Complex AliasSystem::tau(int part, const IndexVec& m) const {
  Vec f = base;
  for (int j = 0; j < parts(); ++j) f += static_cast<double>(m[static_cast<std::size_t>(j)]) * U.col(j);
  return expi(f.dot(w[static_cast<std::size_t>(part)]));
}

IndexVec AliasSystem::line_key(const IndexVec& m, int part) {
  IndexVec k = m;
  k[static_cast<std::size_t>(part)] = 0;
  return k;
}

AliasSystem AliasSystem::from_coefficients(const Vec& base, const Mat& U, const std::vector<Vec>& w,
                                           std::vector<IndexVec> indices, const std::vector<Complex>& v) {
  if (indices.size() != v.size()) throw Error(ErrorKind::InvalidInput, "one coefficient per index is required");
  if (static_cast<Eigen::Index>(w.size()) != U.cols()) throw Error(ErrorKind::InvalidInput, "one offset per part is required");
  AliasSystem s;
  s.base = base;
  s.U = U;
  s.w = w;
  std::vector<std::pair<IndexVec, Complex>> pairs;
  for (std::size_t k = 0; k < indices.size(); ++k) pairs.emplace_back(indices[k], v[k]);
  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  s.g.assign(w.size(), {});
  for (const auto& [m, val] : pairs) {
    s.indices.push_back(m);
    for (int i = 0; i < s.parts(); ++i) s.g[static_cast<std::size_t>(i)][line_key(m, i)] += s.tau(i, m) * val;
  }
  return s;
}

DenseRelations relation_matrix(const AliasSystem& sys) {
  std::vector<std::pair<int, IndexVec>> rows;
  for (int i = 0; i < sys.parts(); ++i) {
    std::set<IndexVec> keys;
    for (const auto& [k, _] : sys.g[static_cast<std::size_t>(i)]) keys.insert(k);
    for (const auto& m : sys.indices) keys.insert(AliasSystem::line_key(m, i));
    for (const auto& k : keys) rows.emplace_back(i, k);
  }
  DenseRelations out{Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(sys.indices.size())),
                     Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(rows.size()))};
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& [i, key] = rows[r];
    const auto& gi = sys.g[static_cast<std::size_t>(i)];
    if (auto it = gi.find(key); it != gi.end()) out.g[static_cast<Eigen::Index>(r)] = it->second;
    for (std::size_t c = 0; c < sys.indices.size(); ++c) {
      if (AliasSystem::line_key(sys.indices[c], i) == key) {
        out.A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = sys.tau(i, sys.indices[c]);
      }
    }
  }
  return out;
}

std::vector<IndexVec> lattice_hull(const std::vector<IndexVec>& points) {
  if (points.empty()) return {};
  const std::size_t n = points.front().size();
  std::set<IndexVec> given(points.begin(), points.end());
  IndexVec lo = points.front(), hi = points.front();
  for (const auto& p : points) {
    if (p.size() != n) throw Error(ErrorKind::InvalidInput, "index vectors differ in length");
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  }
  double count = 1.0;
  for (std::size_t i = 0; i < n; ++i) count *= static_cast<double>(hi[i] - lo[i] + 1);
  if (count > 1e6) throw Error(ErrorKind::EnumerationOverflow, "occupied index set spans too many lattice points");

  const std::vector<IndexVec> pts(given.begin(), given.end());
  const auto np = static_cast<Eigen::Index>(pts.size());
  const auto nn = static_cast<Eigen::Index>(n);
  // Feasibility of lambda >= 0, sum lambda = 1, P lambda = x.
  Mat A = Mat::Zero(2 * nn + 2 + np, np);
  for (Eigen::Index j = 0; j < np; ++j) {
    for (Eigen::Index i = 0; i < nn; ++i) {
      A(i, j) = static_cast<double>(pts[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
      A(nn + i, j) = -A(i, j);
    }
    A(2 * nn, j) = 1.0;
    A(2 * nn + 1, j) = -1.0;
    A(2 * nn + 2 + j, j) = -1.0;
  }
  Vec b = Vec::Zero(A.rows());
  b[2 * nn] = 1.0;
  b[2 * nn + 1] = -1.0;
  const Vec c = Vec::Zero(np);

  std::vector<IndexVec> out;
  IndexVec m = lo;
  while (true) {
    bool member = given.count(m) > 0;
    if (!member && pts.size() > 1) {
      for (Eigen::Index i = 0; i < nn; ++i) {
        b[i] = static_cast<double>(m[static_cast<std::size_t>(i)]);
        b[nn + i] = -b[i];
      }
      member = lp::maximize(c, A, b).status != lp::Status::Infeasible;
    }
    if (member) out.push_back(m);
    std::size_t i = n;
    while (i > 0 && m[i - 1] == hi[i - 1]) {
      m[i - 1] = lo[i - 1];
      --i;
    }
    if (i == 0) break;
    ++m[i - 1];
  }
  return out;
}

bool is_lattice_convex(const std::vector<IndexVec>& points) {
  const std::set<IndexVec> uniq(points.begin(), points.end());
  return lattice_hull(points).size() == uniq.size();
}

std::optional<IndexVec> find_unit_cell(const std::vector<IndexVec>& points) {
  if (points.empty()) return std::nullopt;
  const std::set<IndexVec> s(points.begin(), points.end());
  const std::size_t n = points.front().size();
  for (const auto& m : s) {
    bool all = true;
    for (unsigned long mask = 1; mask < (1ul << n) && all; ++mask) {
      IndexVec c = m;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (1ul << i)) ++c[i];
      }
      all = s.count(c) > 0;
    }
    if (all) return m;
  }
  return std::nullopt;
}

PartLattice part_lattice(const TrajectorySet& set) {
  PartLattice out;
  std::vector<Vec> u;
  auto add_lines = [&](const UnionUniform2D& s) {
    u = reciprocal_and_qset(s).u;
    for (const auto& p : s.parts) out.w.push_back(p.w);
  };
  auto add_planes = [&](const UnionHyperplanes& s) {
    u = reciprocal_and_qset(s).u;
    for (const auto& p : s.parts) out.w.push_back(p.w);
  };
  if (const auto* s = std::get_if<UniformLines2D>(&set)) add_lines(UnionUniform2D({*s}));
  else if (const auto* s = std::get_if<UnionUniform2D>(&set)) add_lines(*s);
  else if (const auto* s = std::get_if<HyperplaneSet>(&set)) add_planes(UnionHyperplanes({*s}));
  else if (const auto* s = std::get_if<UnionHyperplanes>(&set)) add_planes(*s);
  else throw Error(ErrorKind::InvalidInput, "alias structure is defined for line and hyperplane unions");
  out.U = Mat(u.front().size(), static_cast<Eigen::Index>(u.size()));
  for (std::size_t i = 0; i < u.size(); ++i) out.U.col(static_cast<Eigen::Index>(i)) = u[i];
  return out;
}

std::vector<AliasSystem> alias_atoms(const AtomField& field, const TrajectorySet& set) {
  if (dimension(set) != field.dim) throw Error(ErrorKind::InvalidInput, "field and set dimensions differ");
  const PartLattice lat = part_lattice(set);
  std::vector<AliasSystem> out;
  for (const auto& coset : group_cosets(field.atoms, lat.U)) {
    AliasSystem s = system_for(field, coset, lat);
    for (std::size_t k = 0; k < coset.atoms.size(); ++k) {
      const auto& m = coset.offsets[k];
      for (int i = 0; i < s.parts(); ++i) {
        s.g[static_cast<std::size_t>(i)][AliasSystem::line_key(m, i)] += s.tau(i, m) * field.atoms[coset.atoms[k]].c;
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Complex> unfold_decode(const AliasSystem& sys) {
  const int n = sys.parts();
  if (static_cast<int>(sys.g.size()) != n || static_cast<int>(sys.w.size()) != n) {
    throw Error(ErrorKind::InvalidInput, "alias system has inconsistent part counts");
  }
  for (const auto& m : sys.indices) {
    if (static_cast<int>(m.size()) != n) throw Error(ErrorKind::InvalidInput, "index length differs from part count");
  }
  if (sys.indices.empty()) return {};
  if (auto corner = find_unit_cell(sys.indices)) {
    throw Error(ErrorKind::UnitCellPresent, "index set contains a translate of the unit cell", *corner);
  }

  std::vector<std::map<IndexVec, Complex>> residual = sys.g;
  std::vector<std::map<IndexVec, int>> open(static_cast<std::size_t>(n));
  for (const auto& m : sys.indices) {
    for (int i = 0; i < n; ++i) ++open[static_cast<std::size_t>(i)][AliasSystem::line_key(m, i)];
  }
  std::map<IndexVec, Complex> value;
  auto settle = [&](const IndexVec& m, Complex v) {
    value[m] = v;
    for (int i = 0; i < n; ++i) {
      const auto key = AliasSystem::line_key(m, i);
      residual[static_cast<std::size_t>(i)][key] -= sys.tau(i, m) * v;
      --open[static_cast<std::size_t>(i)][key];
    }
  };

  // Peel the slice of largest coordinate k-1; singletons on their axis-(k-1) line are read
  // off directly, the rest form a problem in k-1 axes.
  std::function<void(std::vector<IndexVec>, int)> peel = [&](std::vector<IndexVec> s, int k) {
    while (!s.empty()) {
      if (k == 0) throw Error(ErrorKind::UnitCellPresent, "peeling left an undetermined index", s.front());
      const auto axis = static_cast<std::size_t>(k - 1);
      long top = std::numeric_limits<long>::min();
      for (const auto& m : s) top = std::max(top, m[axis]);
      std::vector<IndexVec> slice, rest, sub;
      for (auto& m : s) (m[axis] == top ? slice : rest).push_back(std::move(m));
      for (const auto& m : slice) {
        const auto key = AliasSystem::line_key(m, k - 1);
        if (open[axis][key] == 1) settle(m, residual[axis][key] / sys.tau(k - 1, m));
        else sub.push_back(m);
      }
      if (!sub.empty()) peel(std::move(sub), k - 1);
      s = std::move(rest);
    }
  };
  peel(sys.indices, n);

  double gmax = 0.0, rmax = 0.0;
  for (int i = 0; i < n; ++i) {
    for (const auto& [key, g] : sys.g[static_cast<std::size_t>(i)]) gmax = std::max(gmax, std::abs(g));
    for (const auto& [key, r] : residual[static_cast<std::size_t>(i)]) rmax = std::max(rmax, std::abs(r));
  }
  if (rmax > kResidualTol * std::max(gmax, std::numeric_limits<double>::min())) {
    throw Error(ErrorKind::InconsistentSystem, "relations are inconsistent (residual " + fmt(rmax) + ")");
  }
  std::vector<Complex> out;
  out.reserve(sys.indices.size());
  for (const auto& m : sys.indices) out.push_back(value.at(m));
  return out;
}

Reconstruction reconstruct_and_error(const AtomField& field, const TrajectorySet& set, const Window& window,
                                     double eps, int probe_grid) {
  if (std::holds_alternative<CircleSet>(set) || std::holds_alternative<SpiralSet>(set)) {
    throw Error(ErrorKind::InvalidInput, "reconstruction covers line and hyperplane families only");
  }
  if (probe_grid < 2) throw Error(ErrorKind::InvalidInput, "probe grid needs at least 2 points per axis");
  Reconstruction out;
  if (field.omega_ref) {
    try {
      out.certified = check(set, *field.omega_ref).status == Status::Nyquist;
    } catch (const Error&) {
      out.certified = false;
    }
  }
  const SampleBatch batch = sample_on_set(field, set, window, eps);
  out.samples = batch.points.size();
  std::vector<Atom> est_atoms = field.atoms;
  for (auto& a : est_atoms) a.c = 0.0;

  if (!field.atoms.empty()) {
    if (const auto* lines = std::get_if<UniformLinesD>(&set)) {
      const Mat U = lines->reciprocal();
      std::vector<Vec> freqs;
      for (const auto& coset : group_cosets(field.atoms, U)) {
        if (coset.atoms.size() > 1) {
          throw Error(ErrorKind::ReconstructionImpossible, "atoms alias onto the same lines", coset.offsets[1]);
        }
      }
      for (const auto& a : field.atoms) freqs.push_back(a.omega);
      std::vector<const SamplePoint*> pts;
      for (const auto& p : batch.points) pts.push_back(&p);
      const auto amp = fit_amplitudes(pts, batch.values, freqs, lines->w);
      for (std::size_t k = 0; k < est_atoms.size(); ++k) est_atoms[k].c = amp[k] * expi(-field.atoms[k].omega.dot(lines->w));
    } else {
      const PartLattice lat = part_lattice(set);
      const int n = static_cast<int>(lat.U.cols());
      // Per family: the amplitude carried by each atom's alias class modulo u_i.
      std::vector<std::vector<Complex>> class_amp(static_cast<std::size_t>(n),
                                                  std::vector<Complex>(field.atoms.size()));
      for (int i = 0; i < n; ++i) {
        const Mat ui = lat.U.col(i);
        const auto classes = group_cosets(field.atoms, ui);
        std::vector<Vec> freqs;
        for (const auto& c : classes) freqs.push_back(field.atoms[c.atoms.front()].omega);
        std::vector<const SamplePoint*> pts;
        std::vector<Complex> vals;
        for (std::size_t r = 0; r < batch.points.size(); ++r) {
          if (batch.points[r].part == i) {
            pts.push_back(&batch.points[r]);
            vals.push_back(batch.values[r]);
          }
        }
        const auto amp = fit_amplitudes(pts, vals, freqs, lat.w[static_cast<std::size_t>(i)]);
        for (std::size_t c = 0; c < classes.size(); ++c) {
          for (auto id : classes[c].atoms) class_amp[static_cast<std::size_t>(i)][id] = amp[c];
        }
      }
      for (const auto& coset : group_cosets(field.atoms, lat.U)) {
        AliasSystem s = system_for(field, coset, lat);
        for (std::size_t k = 0; k < coset.atoms.size(); ++k) {
          for (int i = 0; i < n; ++i) {
            s.g[static_cast<std::size_t>(i)][AliasSystem::line_key(coset.offsets[k], i)] =
                class_amp[static_cast<std::size_t>(i)][coset.atoms[k]];
          }
        }
        std::vector<Complex> v;
        try {
          v = unfold_decode(s);
        } catch (const Error& e) {
          if (e.kind() == ErrorKind::UnitCellPresent) {
            throw Error(ErrorKind::ReconstructionImpossible, "aliased spectrum covers a full unit cell", e.witness());
          }
          throw;
        }
        for (std::size_t k = 0; k < coset.atoms.size(); ++k) {
          const auto pos = std::lower_bound(s.indices.begin(), s.indices.end(), coset.offsets[k]) - s.indices.begin();
          est_atoms[coset.atoms[k]].c = v[static_cast<std::size_t>(pos)];
        }
      }
    }
  }
  out.estimate = AtomField{field.dim, std::move(est_atoms), field.omega_ref, field.margin};
  error_metrics(field, out.estimate, window, probe_grid, out);
  return out;
}

Complex CircleSeries::operator()(double t) const {
  Complex s(0.0);
  for (int k = -kbar; k <= kbar; ++k) s += coefficient(k) * expi(k * nu * t);
  return s;
}

CircleSeries circle_series(const AtomField& field, double a, double nu, std::optional<int> kbar) {
  if (field.dim != 2) throw Error(ErrorKind::InvalidInput, "circle series needs a planar field");
  if (!(a > 0.0) || !(nu > 0.0)) throw Error(ErrorKind::InvalidInput, "radius and angular velocity must be positive");
  CircleSeries out{a, nu, 0, {}};
  if (kbar) {
    if (*kbar < 0) throw Error(ErrorKind::InvalidInput, "truncation order must be non-negative");
    out.kbar = *kbar;
  } else {
    double r = 0.0;
    if (field.omega_ref) r = field.omega_ref->circumradius();
    else for (const auto& at : field.atoms) r = std::max(r, at.omega.norm());
    const double rho_s = nu * (1.0 + a * r);
    out.kbar = static_cast<int>(std::ceil(rho_s / nu - 1e-12));
  }
  static const Complex ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  out.coeffs.assign(static_cast<std::size_t>(2 * out.kbar + 1), Complex(0.0));
  for (const auto& at : field.atoms) {
    const double rad = at.omega.norm();
    const double beta = std::atan2(at.omega[1], at.omega[0]);
    for (int k = -out.kbar; k <= out.kbar; ++k) {
      out.coeffs[static_cast<std::size_t>(k + out.kbar)] +=
          at.c * ipow[((k % 4) + 4) % 4] * bessel_j(k, a * rad) * expi(-k * beta);
    }
  }
  return out;
}

AtomField null_field(const TrajectorySet& set, const Vec& shift) {
  const PartLattice lat = part_lattice(set);
  const int d = static_cast<int>(lat.U.rows());
  const int n = static_cast<int>(lat.U.cols());
  if (shift.size() != d) throw Error(ErrorKind::InvalidInput, "shift has the wrong dimension");
  if (n > 20) throw Error(ErrorKind::EnumerationOverflow, "too many families for the product expansion");
  std::vector<Atom> atoms;
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    Vec f = -shift;
    Complex c(1.0);
    for (int i = 0; i < n; ++i) {
      const double sg = (mask & (1ul << i)) ? -1.0 : 1.0;
      f += 0.5 * sg * lat.U.col(i);
      c *= sg / Complex(0.0, 2.0) * expi(-0.5 * sg * lat.U.col(i).dot(lat.w[static_cast<std::size_t>(i)]));
    }
    auto it = std::find_if(atoms.begin(), atoms.end(), [&](const Atom& a) { return (a.omega - f).norm() <= 1e-12; });
    if (it != atoms.end()) it->c += c;
    else atoms.push_back({f, c});
  }
  std::erase_if(atoms, [](const Atom& a) { return std::abs(a.c) < 1e-15; });
  return AtomField{d, std::move(atoms), std::nullopt, 0.0};
}

AtomField null_field(const UniformLinesD& set, const IndexVec& m) {
  const Mat U = set.reciprocal();
  if (static_cast<Eigen::Index>(m.size()) != U.cols()) throw Error(ErrorKind::InvalidInput, "index has the wrong length");
  Vec y = Vec::Zero(set.dim);
  for (std::size_t i = 0; i < m.size(); ++i) y += 0.5 * static_cast<double>(m[i]) * U.col(static_cast<Eigen::Index>(i));
  if (y.norm() == 0.0) throw Error(ErrorKind::InvalidInput, "index must be nonzero");
  const double ph = y.dot(set.w);
  const Complex two_i(0.0, 2.0);
  return AtomField{set.dim, {{y, expi(-ph) / two_i}, {-y, -expi(ph) / two_i}}, std::nullopt, 0.0};
}

}  // namespace trajnyq
