#include "trajnyq/trajectory.hpp"

#include "trajnyq/error.hpp"
#include "trajnyq/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <unordered_map>

namespace trajnyq {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) throw Error(ErrorKind::InvalidInput, std::string(what) + " must be positive");
}

void require_vec(const Vec& x, int d, const char* what) {
  if (x.size() != d || !x.allFinite()) throw Error(ErrorKind::InvalidInput, std::string(what) + ": bad vector");
}

long ceil_index(double x) { return static_cast<long>(std::ceil(x - 1e-12)); }
long floor_index(double x) { return static_cast<long>(std::floor(x + 1e-12)); }

// Parameters k*eps on [lo, hi].
template <class F>
void for_each_grid(double lo, double hi, double eps, F&& f) {
  for (long k = ceil_index(lo / eps); k <= floor_index(hi / eps); ++k) f(static_cast<double>(k) * eps);
}

bool inside(const Vec& p, const Window& win) { return (p - win.center).norm() <= win.radius * (1.0 + 1e-12); }

void sample_line_family(const UniformLines2D& L, int part, const Window& win, double eps,
                        std::vector<SamplePoint>& out) {
  const Vec n = L.normal();
  const double a = win.radius;
  const double o0 = (L.w - win.center).dot(n);
  const double tau0 = (win.center - L.w).dot(L.v);
  for (long j = ceil_index((-a - o0) / L.delta); j <= floor_index((a - o0) / L.delta); ++j) {
    const double o = o0 + static_cast<double>(j) * L.delta;
    const double h = std::sqrt(std::max(0.0, a * a - o * o));
    const Vec base = L.w + static_cast<double>(j) * L.delta * n;
    for_each_grid(tau0 - h, tau0 + h, eps, [&](double t) {
      Vec p = base + t * L.v;
      if (inside(p, win)) out.push_back({part, j, t, std::move(p)});
    });
  }
}

// Enumerates integer vectors in the box [lo, hi] (inclusive) in lexicographic order.
void for_each_box(const std::vector<long>& lo, const std::vector<long>& hi,
                  const std::function<void(const std::vector<long>&)>& f) {
  const std::size_t n = lo.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (lo[i] > hi[i]) return;
  }
  std::vector<long> m = lo;
  while (true) {
    f(m);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (m[i] < hi[i]) {
        ++m[i];
        for (std::size_t j = i + 1; j < n; ++j) m[j] = lo[j];
        break;
      }
      if (i == 0) return;
    }
    if (n == 0) return;
  }
}

double box_count(const std::vector<long>& lo, const std::vector<long>& hi) {
  double c = 1.0;
  for (std::size_t i = 0; i < lo.size(); ++i) c *= std::max(0.0, static_cast<double>(hi[i] - lo[i] + 1));
  return c;
}

// Index box of line (or lattice) offsets m whose lines can meet B(x, a).
void linesd_box(const UniformLinesD& L, const Vec& x, double a, std::vector<long>& lo, std::vector<long>& hi) {
  const Mat U = L.reciprocal();
  const Vec r = L.w - x;
  lo.clear();
  hi.clear();
  for (int i = 0; i + 1 < L.dim; ++i) {
    const double c = -r.dot(U.col(i)) / (2.0 * kPi);
    const double s = a * U.col(i).norm() / (2.0 * kPi);
    lo.push_back(ceil_index(c - s));
    hi.push_back(floor_index(c + s));
  }
  if (box_count(lo, hi) > 1e7) throw Error(ErrorKind::InvalidInput, "window too large for line enumeration");
}

template <class F>
void for_each_line_d(const UniformLinesD& L, const Vec& x, double a, F&& f) {
  std::vector<long> lo, hi;
  linesd_box(L, x, a, lo, hi);
  const Vec& vd = L.basis.back();
  long ordinal = 0;
  for_each_box(lo, hi, [&](const std::vector<long>& m) {
    Vec base = L.w;
    for (std::size_t i = 0; i < m.size(); ++i) base += static_cast<double>(m[i]) * L.basis[i];
    const Vec r = base - x;
    const double along = r.dot(vd);
    const double o2 = std::max(0.0, r.squaredNorm() - along * along);
    if (o2 > a * a * (1.0 + 1e-12)) return;
    f(ordinal++, base, -along, std::sqrt(std::max(0.0, a * a - o2)));
  });
}

template <class F>
void for_each_plane(const HyperplaneSet& H, const Vec& x, double a, F&& f) {
  const double o0 = (H.w - x).dot(H.h);
  for (long j = ceil_index((-a - o0) / H.delta); j <= floor_index((a - o0) / H.delta); ++j) {
    const double o = o0 + static_cast<double>(j) * H.delta;
    f(j, H.w + static_cast<double>(j) * H.delta * H.h, std::sqrt(std::max(0.0, a * a - o * o)));
  }
}

void sample_planes(const HyperplaneSet& H, int part, const Window& win, double eps, std::vector<SamplePoint>& out) {
  const Mat B = H.frame();
  const int k = static_cast<int>(B.cols());
  for_each_plane(H, win.center, win.radius, [&](long j, const Vec& base, double r) {
    const Vec c = B.transpose() * (win.center - base);
    std::vector<long> lo(k), hi(k);
    for (int i = 0; i < k; ++i) {
      lo[i] = ceil_index((c[i] - r) / eps);
      hi[i] = floor_index((c[i] + r) / eps);
    }
    if (box_count(lo, hi) > 5e7) throw Error(ErrorKind::InvalidInput, "window too large for plane sampling");
    for_each_box(lo, hi, [&](const std::vector<long>& n) {
      Vec y(k);
      for (int i = 0; i < k; ++i) y[i] = static_cast<double>(n[i]) * eps;
      Vec p = base + B * y;
      if (inside(p, win)) out.push_back({part, j, y[0], std::move(p)});
    });
  });
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  if (b <= a) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

// Parameter t1 >= t0 with spiral arc length from t0 equal to s.
double spiral_advance(double c, double t0, double s) {
  auto speed = [c](double t) { return c * std::sqrt(1.0 + 4.0 * kPi * kPi * t * t); };
  double t = t0 + s / speed(t0);
  for (int it = 0; it < 50; ++it) {
    const double err = spiral_arc_length(c, t0, t) - s;
    const double step = err / speed(t);
    t -= step;
    if (t < t0) t = t0;
    if (std::abs(step) <= 1e-15 * std::max(1.0, t)) break;
  }
  return t;
}

void sample_spirals(const SpiralSet& S, const Window& win, double eps, std::vector<SamplePoint>& out) {
  const double D = win.center.norm();
  const double t_lo = std::max(0.0, (D - win.radius) / S.c);
  const double t_hi = (D + win.radius) / S.c;
  for (int i = 0; i < S.n; ++i) {
    const long k0 = ceil_index(spiral_arc_length(S.c, 0.0, t_lo) / eps);
    double t = k0 == 0 ? 0.0 : spiral_advance(S.c, 0.0, static_cast<double>(k0) * eps);
    while (t <= t_hi * (1.0 + 1e-12)) {
      // The origin is shared by every spiral; keep it once.
      if (!(t == 0.0 && i > 0)) {
        Vec p = S.point(i, t);
        if (inside(p, win)) out.push_back({i, 0, t, std::move(p)});
      }
      t = spiral_advance(S.c, t, eps);
    }
  }
}

void sample_circles(const CircleSet& C, const Window& win, double eps, std::vector<SamplePoint>& out) {
  const double D = win.center.norm();
  const long i0 = std::max(0L, ceil_index((D - win.radius) / C.delta));
  const long i1 = floor_index((D + win.radius) / C.delta);
  for (long i = i0; i <= i1; ++i) {
    const double r = static_cast<double>(i) * C.delta;
    if (i == 0) {
      Vec p = Vec::Zero(2);
      if (inside(p, win)) out.push_back({0, 0, 0.0, std::move(p)});
      continue;
    }
    const long n = std::max(1L, static_cast<long>(std::ceil(2.0 * kPi * r / eps)));
    for (long k = 0; k < n; ++k) {
      const double th = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
      Vec p(2);
      p << r * std::cos(th), r * std::sin(th);
      if (inside(p, win)) out.push_back({0, i, r * th, std::move(p)});
    }
  }
}

double circle_arc_in_ball(double r, double D, double a) {
  if (r <= 0.0) return 0.0;
  if (r + D <= a) return 2.0 * kPi * r;
  if (r >= D + a || r <= D - a) return 0.0;
  const double cphi = std::clamp((r * r + D * D - a * a) / (2.0 * r * D), -1.0, 1.0);
  return 2.0 * r * std::acos(cphi);
}

double spiral_length_in_ball(const SpiralSet& S, int i, double a, const Vec& x) {
  const double D = x.norm();
  const double t_lo = std::max(0.0, (D - a) / S.c);
  const double t_hi = (D + a) / S.c;
  auto g = [&](double t) { return a * a - (S.point(i, t) - x).squaredNorm(); };
  // Roots of g bracketed on a grid fine relative to one turn.
  const int steps = std::max(64, static_cast<int>(std::ceil((t_hi - t_lo) * 256.0)));
  const double dt = (t_hi - t_lo) / steps;
  double total = 0.0;
  double start = g(t_lo) >= 0.0 ? t_lo : -1.0;
  double prev_t = t_lo, prev_g = g(t_lo);
  auto bisect = [&](double lo, double hi) {
    const bool lo_in = g(lo) >= 0.0;
    for (int k = 0; k < 100; ++k) {
      const double mid = 0.5 * (lo + hi);
      if ((g(mid) >= 0.0) == lo_in) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
  };
  auto speed = [&](double t) { return S.speed(t); };
  for (int k = 1; k <= steps; ++k) {
    const double t = t_lo + k * dt;
    const double gt = g(t);
    if ((prev_g >= 0.0) != (gt >= 0.0)) {
      const double root = bisect(prev_t, t);
      if (gt < 0.0) {
        total += integrate(speed, start, root, 1e-13);
        start = -1.0;
      } else {
        start = root;
      }
    }
    prev_t = t;
    prev_g = gt;
  }
  if (start >= 0.0) total += integrate(speed, start, t_hi, 1e-13);
  return total;
}

// Static k-d tree for nearest-point queries.
class KdTree {
 public:
  explicit KdTree(const std::vector<Vec>& pts) : pts_(pts), idx_(pts.size()) {
    for (std::size_t i = 0; i < idx_.size(); ++i) idx_[i] = static_cast<int>(i);
    nodes_.reserve(2 * idx_.size());
    build(0, idx_.size());
  }

  double nearest(const Vec& q) const {
    double best = std::numeric_limits<double>::infinity();
    search(0, q, best);
    return std::sqrt(best);
  }

 private:
  struct Node {
    std::size_t lo, hi;
    int axis = -1;
    double split = 0.0;
    int left = -1, right = -1;
  };
  static constexpr std::size_t kLeaf = 8;

  int build(std::size_t lo, std::size_t hi) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back({lo, hi});
    if (hi - lo <= kLeaf) return id;
    Vec mn = pts_[idx_[lo]], mx = mn;
    for (std::size_t i = lo; i < hi; ++i) {
      mn = mn.cwiseMin(pts_[idx_[i]]);
      mx = mx.cwiseMax(pts_[idx_[i]]);
    }
    Eigen::Index axis = 0;
    (mx - mn).maxCoeff(&axis);
    if (mx[axis] - mn[axis] <= 0.0) return id;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::nth_element(idx_.begin() + static_cast<long>(lo), idx_.begin() + static_cast<long>(mid),
                     idx_.begin() + static_cast<long>(hi),
                     [&](int a, int b) { return pts_[a][axis] < pts_[b][axis]; });
    const double split = pts_[idx_[mid]][axis];
    const int left = build(lo, mid);
    const int right = build(mid, hi);
    Node& n = nodes_[id];
    n.axis = static_cast<int>(axis);
    n.split = split;
    n.left = left;
    n.right = right;
    return id;
  }

  void search(int id, const Vec& q, double& best) const {
    const Node& n = nodes_[id];
    if (n.axis < 0) {
      for (std::size_t i = n.lo; i < n.hi; ++i) best = std::min(best, (pts_[idx_[i]] - q).squaredNorm());
      return;
    }
    const double diff = q[n.axis] - n.split;
    const int first = diff < 0.0 ? n.left : n.right;
    const int second = diff < 0.0 ? n.right : n.left;
    search(first, q, best);
    if (diff * diff < best) search(second, q, best);
  }

  const std::vector<Vec>& pts_;
  std::vector<int> idx_;
  std::vector<Node> nodes_;
};

}  // namespace

UniformLines2D::UniformLines2D(const Vec& w_, const Vec& v_, double delta_) : w(w_), v(v_), delta(delta_) {
  require_vec(w, 2, "line offset");
  require_vec(v, 2, "line direction");
  if (v.norm() <= 0.0) throw Error(ErrorKind::InvalidInput, "line direction must be nonzero");
  v.normalize();
  require_positive(delta, "line spacing");
}

Vec UniformLines2D::normal() const {
  Vec n(2);
  n << -v[1], v[0];
  return n;
}

UnionUniform2D::UnionUniform2D(std::vector<UniformLines2D> parts_) : parts(std::move(parts_)) {
  if (parts.empty()) throw Error(ErrorKind::InvalidInput, "union needs at least one part");
}

UniformLinesD::UniformLinesD(std::vector<Vec> basis_, std::optional<Vec> w_) : basis(std::move(basis_)) {
  dim = static_cast<int>(basis.size());
  if (dim < 2) throw Error(ErrorKind::InvalidInput, "uniform line set needs d >= 2");
  for (const auto& b : basis) require_vec(b, dim, "basis vector");
  w = w_.value_or(Vec::Zero(dim));
  require_vec(w, dim, "offset");
  const Vec& vd = basis.back();
  if (std::abs(vd.norm() - 1.0) > 1e-12) throw Error(ErrorKind::InvalidInput, "line direction v_d must be unit");
  for (int i = 0; i + 1 < dim; ++i) {
    if (std::abs(basis[i].dot(vd)) > 1e-12) {
      throw Error(ErrorKind::InvalidInput, "transverse vectors must be orthogonal to the line direction");
    }
  }
  Mat V(dim, dim);
  for (int i = 0; i < dim; ++i) V.col(i) = basis[i];
  Eigen::JacobiSVD<Mat> svd(V);
  const auto& sv = svd.singularValues();
  if (sv[dim - 1] <= 1e-12 * sv[0]) throw Error(ErrorKind::SingularBasis, "basis vectors are dependent");
}

Mat UniformLinesD::reciprocal() const {
  Mat V(dim, dim);
  for (int i = 0; i < dim; ++i) V.col(i) = basis[i];
  const Mat U = 2.0 * kPi * V.inverse().transpose();
  return U.leftCols(dim - 1);
}

Mat UniformLinesD::gram() const {
  Mat G(dim - 1, dim - 1);
  for (int i = 0; i + 1 < dim; ++i) {
    for (int j = 0; j + 1 < dim; ++j) G(i, j) = basis[i].dot(basis[j]);
  }
  return G;
}

CircleSet::CircleSet(double delta_) : delta(delta_) { require_positive(delta, "circle spacing"); }

SpiralSet::SpiralSet(double c_, int n_) : c(c_), n(n_) {
  require_positive(c, "spiral pitch");
  if (n < 1) throw Error(ErrorKind::InvalidInput, "spiral count must be >= 1");
}

Vec SpiralSet::point(int i, double t) const {
  const double ang = 2.0 * kPi * (t - static_cast<double>(i) / n);
  Vec p(2);
  p << c * t * std::cos(ang), c * t * std::sin(ang);
  return p;
}

double SpiralSet::speed(double t) const { return c * std::sqrt(1.0 + 4.0 * kPi * kPi * t * t); }

HyperplaneSet::HyperplaneSet(const Vec& w_, const Vec& h_, double delta_) : w(w_), h(h_), delta(delta_) {
  const int d = static_cast<int>(h.size());
  if (d < 1) throw Error(ErrorKind::InvalidInput, "hyperplane normal is empty");
  require_vec(w, d, "plane offset");
  require_vec(h, d, "plane normal");
  if (std::abs(h.norm() - 1.0) > 1e-12) throw Error(ErrorKind::InvalidInput, "plane normal must be unit");
  require_positive(delta, "plane spacing");
}

Mat HyperplaneSet::frame() const {
  const int d = static_cast<int>(h.size());
  Eigen::Index skip = 0;
  h.cwiseAbs().maxCoeff(&skip);
  std::vector<Vec> cols;
  for (int i = 0; i < d; ++i) {
    if (i == skip) continue;
    Vec e = Vec::Unit(d, i);
    e -= e.dot(h) * h;
    for (const auto& c : cols) e -= e.dot(c) * c;
    cols.push_back(e.normalized());
  }
  Mat B(d, d - 1);
  for (int i = 0; i + 1 < d; ++i) B.col(i) = cols[i];
  return B;
}

UnionHyperplanes::UnionHyperplanes(std::vector<HyperplaneSet> parts_) : parts(std::move(parts_)) {
  if (parts.empty()) throw Error(ErrorKind::InvalidInput, "union needs at least one part");
  for (const auto& p : parts) {
    if (p.h.size() != parts.front().h.size()) throw Error(ErrorKind::InvalidInput, "parts differ in dimension");
  }
}

int dimension(const TrajectorySet& set) {
  return std::visit(overloaded{
                        [](const UniformLines2D&) { return 2; },
                        [](const UnionUniform2D&) { return 2; },
                        [](const UniformLinesD& s) { return s.dim; },
                        [](const CircleSet&) { return 2; },
                        [](const SpiralSet&) { return 2; },
                        [](const HyperplaneSet& s) { return static_cast<int>(s.h.size()); },
                        [](const UnionHyperplanes& s) { return s.dim(); },
                    },
                    set);
}

std::string kind_name(const TrajectorySet& set) {
  static const char* names[] = {"uniform_lines_2d", "union_uniform_2d", "uniform_lines_d", "circles",
                                "spirals",          "hyperplanes",      "union_hyperplanes"};
  return names[set.index()];
}

namespace {
Reciprocal qset_from(std::vector<Vec> u) {
  Reciprocal r;
  r.u = std::move(u);
  const std::size_t n = r.u.size();
  const int d = static_cast<int>(r.u.front().size());
  for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
    Vec q = Vec::Zero(d);
    for (std::size_t i = 0; i < n; ++i) q += ((bits >> i) & 1u ? -0.5 : 0.5) * r.u[i];
    r.q.push_back(q);
  }
  return r;
}
}  // namespace

Reciprocal reciprocal_and_qset(const UnionUniform2D& set) {
  std::vector<Vec> u;
  for (const auto& p : set.parts) u.push_back(2.0 * kPi / p.delta * p.normal());
  return qset_from(std::move(u));
}

Reciprocal reciprocal_and_qset(const UnionHyperplanes& set) {
  std::vector<Vec> u;
  for (const auto& p : set.parts) u.push_back(2.0 * kPi / p.delta * p.h);
  return qset_from(std::move(u));
}

double density(const TrajectorySet& set) {
  return std::visit(overloaded{
                        [](const UniformLines2D& s) { return 1.0 / s.delta; },
                        [](const UnionUniform2D& s) {
                          double t = 0.0;
                          for (const auto& p : s.parts) t += 1.0 / p.delta;
                          return t;
                        },
                        [](const UniformLinesD& s) {
                          const Mat G = s.gram();
                          const double det = G.determinant();
                          const double scale = std::pow(G.diagonal().maxCoeff(), s.dim - 1);
                          if (!(det > 1e-14 * scale)) throw Error(ErrorKind::SingularBasis, "Gram matrix is singular");
                          return 1.0 / std::sqrt(det);
                        },
                        [](const CircleSet& s) { return 1.0 / s.delta; },
                        [](const SpiralSet& s) { return static_cast<double>(s.n) / s.c; },
                        [](const HyperplaneSet& s) { return 1.0 / s.delta; },
                        [](const UnionHyperplanes& s) {
                          double t = 0.0;
                          for (const auto& p : s.parts) t += 1.0 / p.delta;
                          return t;
                        },
                    },
                    set);
}

std::vector<SamplePoint> sample_points(const TrajectorySet& set, const Window& win, double eps) {
  require_positive(eps, "sampling pitch");
  require_positive(win.radius, "window radius");
  require_vec(win.center, dimension(set), "window center");
  std::vector<SamplePoint> out;
  std::visit(overloaded{
                 [&](const UniformLines2D& s) { sample_line_family(s, 0, win, eps, out); },
                 [&](const UnionUniform2D& s) {
                   for (std::size_t i = 0; i < s.parts.size(); ++i) {
                     sample_line_family(s.parts[i], static_cast<int>(i), win, eps, out);
                   }
                 },
                 [&](const UniformLinesD& s) {
                   for_each_line_d(s, win.center, win.radius, [&](long ord, const Vec& base, double tau0, double h) {
                     for_each_grid(tau0 - h, tau0 + h, eps, [&](double t) {
                       Vec p = base + t * s.basis.back();
                       if (inside(p, win)) out.push_back({0, ord, t, std::move(p)});
                     });
                   });
                 },
                 [&](const CircleSet& s) { sample_circles(s, win, eps, out); },
                 [&](const SpiralSet& s) { sample_spirals(s, win, eps, out); },
                 [&](const HyperplaneSet& s) { sample_planes(s, 0, win, eps, out); },
                 [&](const UnionHyperplanes& s) {
                   for (std::size_t i = 0; i < s.parts.size(); ++i) {
                     sample_planes(s.parts[i], static_cast<int>(i), win, eps, out);
                   }
                 },
             },
             set);
  if (out.empty()) throw Error(ErrorKind::WindowTooSmall, "no sample point falls inside the window");
  std::sort(out.begin(), out.end(), [](const SamplePoint& a, const SamplePoint& b) {
    if (a.part != b.part) return a.part < b.part;
    if (a.member != b.member) return a.member < b.member;
    if (a.param != b.param) return a.param < b.param;
    return std::lexicographical_compare(a.x.data(), a.x.data() + a.x.size(), b.x.data(), b.x.data() + b.x.size());
  });
  return out;
}

CoveringEstimate covering_radius(const std::vector<Vec>& points, const Window& win, double pitch,
                                 double boundary_layer) {
  if (points.empty()) throw Error(ErrorKind::InvalidInput, "covering_radius: no points");
  require_positive(pitch, "probe pitch");
  const int d = static_cast<int>(win.center.size());
  const double r = win.radius - boundary_layer;
  require_positive(r, "shrunk window radius");

  for (const auto& p : points) require_vec(p, d, "point");
  const KdTree tree(points);
  auto nearest = [&](const Vec& q) { return tree.nearest(q); };

  const long n = static_cast<long>(std::floor(r / pitch));
  std::vector<long> box_lo(d, -n), box_hi(d, n);
  CoveringEstimate est{0.0, pitch};
  for_each_box(box_lo, box_hi, [&](const std::vector<long>& k) {
    Vec q = win.center;
    for (int i = 0; i < d; ++i) q[i] += static_cast<double>(k[i]) * pitch;
    if ((q - win.center).norm() > r) return;
    est.radius = std::max(est.radius, nearest(q));
  });
  return est;
}

double spiral_arc_length(double c, double t0, double t1) {
  auto speed = [c](double t) { return c * std::sqrt(1.0 + 4.0 * kPi * kPi * t * t); };
  return integrate(speed, t0, t1, 1e-14 * std::max(1.0, c * (t1 - t0)));
}

double arc_length_in_ball(const TrajectorySet& set, double a, const Vec& x) {
  require_positive(a, "ball radius");
  require_vec(x, dimension(set), "ball center");
  auto lines2d = [&](const UniformLines2D& L) {
    const Vec n = L.normal();
    const double o0 = (L.w - x).dot(n);
    double total = 0.0;
    for (long j = ceil_index((-a - o0) / L.delta); j <= floor_index((a - o0) / L.delta); ++j) {
      const double o = o0 + static_cast<double>(j) * L.delta;
      total += 2.0 * std::sqrt(std::max(0.0, a * a - o * o));
    }
    return total;
  };
  auto planes = [&](const HyperplaneSet& H) {
    const int k = static_cast<int>(H.h.size()) - 1;
    double total = 0.0;
    for_each_plane(H, x, a, [&](long, const Vec&, double r) { total += unit_ball_volume(k) * std::pow(r, k); });
    return total;
  };
  return std::visit(overloaded{
                        [&](const UniformLines2D& s) { return lines2d(s); },
                        [&](const UnionUniform2D& s) {
                          double t = 0.0;
                          for (const auto& p : s.parts) t += lines2d(p);
                          return t;
                        },
                        [&](const UniformLinesD& s) {
                          double t = 0.0;
                          for_each_line_d(s, x, a, [&](long, const Vec&, double, double h) { t += 2.0 * h; });
                          return t;
                        },
                        [&](const CircleSet& s) {
                          const double D = x.norm();
                          double t = 0.0;
                          for (long i = 1; i <= floor_index((D + a) / s.delta); ++i) {
                            t += circle_arc_in_ball(static_cast<double>(i) * s.delta, D, a);
                          }
                          return t;
                        },
                        [&](const SpiralSet& s) {
                          double t = 0.0;
                          for (int i = 0; i < s.n; ++i) t += spiral_length_in_ball(s, i, a, x);
                          return t;
                        },
                        [&](const HyperplaneSet& s) { return planes(s); },
                        [&](const UnionHyperplanes& s) {
                          double t = 0.0;
                          for (const auto& p : s.parts) t += planes(p);
                          return t;
                        },
                    },
                    set);
}

}  // namespace trajnyq
