#include "trajnyq/geometry.hpp"

#include "trajnyq/error.hpp"
#include "trajnyq/lp.hpp"
#include "trajnyq/rng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace trajnyq {
namespace {

constexpr int kMaxVertexDim = 4;
constexpr std::size_t kMaxVertices = 64;

void require_dim(const Vec& x, int d, const char* what) {
  if (x.size() != d) throw Error(ErrorKind::InvalidInput, std::string(what) + ": dimension mismatch");
  if (!x.allFinite()) throw Error(ErrorKind::InvalidInput, std::string(what) + ": non-finite entry");
}

double point_scale(const std::vector<Vec>& pts) {
  double s = 0.0;
  for (const auto& p : pts) s = std::max(s, p.cwiseAbs().maxCoeff());
  return std::max(s, 1.0);
}

std::vector<Vec> dedupe(const std::vector<Vec>& pts, double tol) {
  std::vector<Vec> out;
  for (const auto& p : pts) {
    bool seen = false;
    for (const auto& q : out) {
      if ((p - q).norm() <= tol) {
        seen = true;
        break;
      }
    }
    if (!seen) out.push_back(p);
  }
  return out;
}

int affine_rank(const std::vector<Vec>& pts, double tol) {
  if (pts.size() < 2) return 0;
  const int d = static_cast<int>(pts[0].size());
  Mat M(d, static_cast<int>(pts.size()) - 1);
  for (std::size_t i = 1; i < pts.size(); ++i) M.col(static_cast<int>(i) - 1) = pts[i] - pts[0];
  Eigen::JacobiSVD<Mat> svd(M);
  const auto& sv = svd.singularValues();
  int r = 0;
  for (int i = 0; i < sv.size(); ++i) r += sv[i] > tol ? 1 : 0;
  return r;
}

// Counter-clockwise hull of 2D points (monotone chain), collinear points dropped.
std::vector<Vec> hull_2d(std::vector<Vec> pts, double tol) {
  std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  auto cross = [](const Vec& o, const Vec& a, const Vec& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<Vec> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= tol) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= tol) --k;
    h[k++] = pts[i];
  }
  h.resize(k > 0 ? k - 1 : 0);
  return h;
}

std::vector<Halfspace> edges_of_hull_2d(const std::vector<Vec>& hull) {
  std::vector<Halfspace> hs;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Vec& p = hull[i];
    const Vec& q = hull[(i + 1) % hull.size()];
    Vec a(2);
    a << q[1] - p[1], -(q[0] - p[0]);
    a.normalize();
    hs.push_back({a, a.dot(p)});
  }
  return hs;
}

// Calls fn on every k-subset of {0..n-1} in lexicographic order.
void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  if (k > n) return;
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

bool same_halfspace(const Halfspace& a, const Halfspace& b, double tol) {
  return (a.a - b.a).norm() <= 1e-9 && std::abs(a.b - b.b) <= tol;
}

// Facets of the hull of full-dimensional points in d >= 3 by brute force over d-subsets.
std::vector<Halfspace> facets_brute_force(const std::vector<Vec>& pts, double tol) {
  const int d = static_cast<int>(pts[0].size());
  const int n = static_cast<int>(pts.size());
  std::vector<Halfspace> facets;
  for_each_subset(n, d, [&](const std::vector<int>& s) {
    Mat M(d - 1, d);
    for (int i = 1; i < d; ++i) M.row(i - 1) = (pts[s[i]] - pts[s[0]]).transpose();
    Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv[sv.size() - 1] <= tol) return;
    Vec nrm = svd.matrixV().col(d - 1);
    const double off = nrm.dot(pts[s[0]]);
    bool pos = false, neg = false;
    for (const auto& p : pts) {
      const double v = nrm.dot(p) - off;
      if (v > tol) pos = true;
      if (v < -tol) neg = true;
      if (pos && neg) return;
    }
    Halfspace h{pos ? Vec(-nrm) : nrm, pos ? -off : off};
    for (const auto& f : facets) {
      if (same_halfspace(f, h, tol)) return;
    }
    facets.push_back(h);
  });
  return facets;
}

// Keeps the points where the tight constraints have full rank.
std::vector<Vec> extreme_points(const std::vector<Vec>& pts, const std::vector<Halfspace>& hs,
                                double tol) {
  const int d = static_cast<int>(pts[0].size());
  std::vector<Vec> out;
  for (const auto& p : pts) {
    std::vector<Vec> normals;
    for (const auto& h : hs) {
      if (std::abs(h.a.dot(p) - h.b) <= tol) normals.push_back(h.a);
    }
    if (static_cast<int>(normals.size()) < d) continue;
    Mat N(d, static_cast<int>(normals.size()));
    for (std::size_t i = 0; i < normals.size(); ++i) N.col(static_cast<int>(i)) = normals[i];
    Eigen::JacobiSVD<Mat> svd(N);
    if (svd.singularValues()[d - 1] > 1e-9) out.push_back(p);
  }
  return out;
}

std::vector<Vec> vertices_from_halfspaces(const std::vector<Halfspace>& hs, int d, double tol) {
  const int m = static_cast<int>(hs.size());
  double combos = 1.0;
  for (int i = 0; i < d; ++i) combos = combos * (m - i) / (i + 1);
  if (combos > 5e6) throw Error(ErrorKind::InvalidInput, "too many halfspaces for vertex enumeration");
  std::vector<Vec> verts;
  for_each_subset(m, d, [&](const std::vector<int>& s) {
    Mat A(d, d);
    Vec b(d);
    for (int i = 0; i < d; ++i) {
      A.row(i) = hs[s[i]].a.transpose();
      b[i] = hs[s[i]].b;
    }
    Eigen::FullPivLU<Mat> lu(A);
    if (lu.rank() < d) return;
    Vec x = lu.solve(b);
    for (const auto& h : hs) {
      if (h.a.dot(x) - h.b > tol) return;
    }
    for (const auto& v : verts) {
      if ((v - x).norm() <= tol) return;
    }
    verts.push_back(x);
  });
  return verts;
}

std::vector<Vec> probe_directions(int d) {
  std::vector<Vec> dirs;
  for (int i = 0; i < d; ++i) dirs.push_back(Vec::Unit(d, i));
  Rng rng(0x5EED5EEDull + static_cast<std::uint64_t>(d));
  for (int k = 0; k < 64; ++k) {
    Vec u(d);
    for (int i = 0; i < d; ++i) u[i] = rng.normal();
    if (u.norm() > 1e-6) dirs.push_back(u.normalized());
  }
  return dirs;
}

double vertex_support(const std::vector<Vec>& verts, const Vec& u) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : verts) best = std::max(best, v.dot(u));
  return best;
}

double lp_support(const std::vector<Halfspace>& hs, const Vec& u) {
  const int d = static_cast<int>(u.size());
  Mat A(static_cast<int>(hs.size()), d);
  Vec b(static_cast<int>(hs.size()));
  for (std::size_t k = 0; k < hs.size(); ++k) {
    A.row(static_cast<int>(k)) = hs[k].a.transpose();
    b[static_cast<int>(k)] = hs[k].b;
  }
  const auto r = lp::maximize(u, A, b);
  if (r.status == lp::Status::Unbounded) throw Error(ErrorKind::UnboundedBody, "support is unbounded");
  if (r.status == lp::Status::Infeasible) throw Error(ErrorKind::InvalidInput, "halfspaces are infeasible");
  return r.value;
}

// Nelder-Mead on an unnormalized direction; the objective normalizes internally.
Vec nelder_mead(const std::function<double(const Vec&)>& f, const Vec& x0, double step, double ftol,
                int max_iter) {
  const int n = static_cast<int>(x0.size());
  std::vector<Vec> simplex{x0};
  for (int i = 0; i < n; ++i) {
    Vec x = x0;
    x[i] += step;
    simplex.push_back(x);
  }
  std::vector<double> fv;
  for (const auto& x : simplex) fv.push_back(f(x));
  std::vector<int> order(n + 1);
  for (int iter = 0; iter < max_iter; ++iter) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return fv[a] < fv[b]; });
    const int best = order[0], worst = order[n], second = order[n - 1];
    if (std::abs(fv[worst] - fv[best]) <= ftol * std::max(1.0, std::abs(fv[best]))) break;
    Vec centroid = Vec::Zero(n);
    for (int i = 0; i < n; ++i) centroid += simplex[order[i]];
    centroid /= n;
    const Vec xr = centroid + (centroid - simplex[worst]);
    const double fr = f(xr);
    if (fr < fv[best]) {
      const Vec xe = centroid + 2.0 * (centroid - simplex[worst]);
      const double fe = f(xe);
      if (fe < fr) {
        simplex[worst] = xe;
        fv[worst] = fe;
      } else {
        simplex[worst] = xr;
        fv[worst] = fr;
      }
    } else if (fr < fv[second]) {
      simplex[worst] = xr;
      fv[worst] = fr;
    } else {
      const Vec xc = centroid + 0.5 * (simplex[worst] - centroid);
      const double fc = f(xc);
      if (fc < fv[worst]) {
        simplex[worst] = xc;
        fv[worst] = fc;
      } else {
        for (int i = 1; i <= n; ++i) {
          simplex[order[i]] = simplex[best] + 0.5 * (simplex[order[i]] - simplex[best]);
          fv[order[i]] = f(simplex[order[i]]);
        }
      }
    }
  }
  int best = 0;
  for (int i = 1; i <= n; ++i) {
    if (fv[i] < fv[best]) best = i;
  }
  return simplex[best];
}

std::vector<Vec> sphere_samples(int d, int count) {
  std::vector<Vec> out;
  if (d == 3) {
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
      const double z = 1.0 - (2.0 * i + 1.0) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      Vec u(3);
      u << r * std::cos(golden * i), r * std::sin(golden * i), z;
      out.push_back(u);
    }
    return out;
  }
  Rng rng(0xC0FFEEull + static_cast<std::uint64_t>(d));
  while (static_cast<int>(out.size()) < count) {
    Vec u(d);
    for (int i = 0; i < d; ++i) u[i] = rng.normal();
    if (u.norm() > 1e-6) out.push_back(u.normalized());
  }
  return out;
}

// Polytope edges in d = 3: vertex pairs sharing at least two facets.
std::vector<Vec> polytope_edges(const std::vector<Vec>& verts, const std::vector<Halfspace>& hs,
                                double tol) {
  std::vector<std::vector<int>> tight(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (std::size_t k = 0; k < hs.size(); ++k) {
      if (std::abs(hs[k].a.dot(verts[i]) - hs[k].b) <= tol) tight[i].push_back(static_cast<int>(k));
    }
  }
  std::vector<Vec> edges;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (std::size_t j = i + 1; j < verts.size(); ++j) {
      std::vector<int> common;
      std::set_intersection(tight[i].begin(), tight[i].end(), tight[j].begin(), tight[j].end(),
                            std::back_inserter(common));
      if (common.size() >= 2) edges.push_back(verts[j] - verts[i]);
    }
  }
  return edges;
}

EnclosingBall ball_through(const std::vector<Vec>& R, int d) {
  if (R.empty()) return {Vec::Zero(d), -1.0};
  if (R.size() == 1) return {R[0], 0.0};
  const int k = static_cast<int>(R.size()) - 1;
  Mat M(d, k);
  for (int i = 0; i < k; ++i) M.col(i) = R[i + 1] - R[0];
  const Mat G = M.transpose() * M;
  const Vec rhs = 0.5 * G.diagonal();
  const Vec lambda = G.completeOrthogonalDecomposition().solve(rhs);
  EnclosingBall b{R[0] + M * lambda, 0.0};
  for (const auto& p : R) b.radius = std::max(b.radius, (p - b.center).norm());
  return b;
}

EnclosingBall welzl(const std::vector<Vec>& P, std::size_t n, std::vector<Vec>& R, int d, double tol) {
  if (n == 0 || static_cast<int>(R.size()) == d + 1) return ball_through(R, d);
  EnclosingBall D = welzl(P, n - 1, R, d, tol);
  if (D.radius >= 0 && (P[n - 1] - D.center).norm() <= D.radius + tol) return D;
  R.push_back(P[n - 1]);
  D = welzl(P, n - 1, R, d, tol);
  R.pop_back();
  return D;
}

}  // namespace

Direction::Direction(const Vec& u) {
  const double n = u.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw Error(ErrorKind::InvalidInput, "direction must be nonzero");
  u_ = u / n;
}

ConvexBody ConvexBody::ball(const Vec& center, double radius, bool symmetric) {
  if (center.size() < 1) throw Error(ErrorKind::InvalidInput, "ball: empty center");
  require_dim(center, static_cast<int>(center.size()), "ball center");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw Error(ErrorKind::InvalidInput, "ball: radius must be positive");
  ConvexBody b;
  b.dim_ = static_cast<int>(center.size());
  b.kind_ = Kind::Ball;
  b.center_ = center;
  b.radius_ = radius;
  b.symmetric_ = symmetric;
  if (symmetric) b.verify_symmetry();
  return b;
}

ConvexBody ConvexBody::from_vertices(const std::vector<Vec>& vertices, bool symmetric) {
  if (vertices.empty()) throw Error(ErrorKind::InvalidInput, "polytope: no vertices");
  const int d = static_cast<int>(vertices[0].size());
  if (d < 1) throw Error(ErrorKind::InvalidInput, "polytope: zero dimension");
  if (d > kMaxVertexDim) throw Error(ErrorKind::InvalidInput, "vertex input supported only for d <= 4");
  if (vertices.size() > kMaxVertices) throw Error(ErrorKind::InvalidInput, "vertex input capped at 64 points");
  for (const auto& v : vertices) require_dim(v, d, "vertex");
  const double tol = 1e-10 * point_scale(vertices);
  const auto pts = dedupe(vertices, tol);
  if (static_cast<int>(pts.size()) < d + 1 || affine_rank(pts, tol) < d) {
    throw Error(ErrorKind::DegenerateBody, "vertices do not span a full-dimensional body");
  }

  ConvexBody b;
  b.dim_ = d;
  b.kind_ = Kind::Polytope;
  b.symmetric_ = symmetric;
  if (d == 1) {
    double lo = pts[0][0], hi = pts[0][0];
    for (const auto& p : pts) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    b.halfspaces_ = {{Vec::Constant(1, 1.0), hi}, {Vec::Constant(1, -1.0), -lo}};
    b.vertices_ = {Vec::Constant(1, lo), Vec::Constant(1, hi)};
  } else if (d == 2) {
    b.vertices_ = hull_2d(pts, tol * tol);
    b.halfspaces_ = edges_of_hull_2d(b.vertices_);
  } else {
    b.halfspaces_ = facets_brute_force(pts, tol);
    b.vertices_ = extreme_points(pts, b.halfspaces_, 1e-9 * point_scale(pts));
  }
  if (symmetric) b.verify_symmetry();
  return b;
}

ConvexBody ConvexBody::from_halfspaces(const std::vector<Halfspace>& halfspaces, bool symmetric) {
  if (halfspaces.empty()) throw Error(ErrorKind::UnboundedBody, "no halfspaces");
  const int d = static_cast<int>(halfspaces[0].a.size());
  if (d < 1) throw Error(ErrorKind::InvalidInput, "halfspace: zero dimension");
  std::vector<Halfspace> hs;
  for (const auto& h : halfspaces) {
    require_dim(h.a, d, "halfspace normal");
    if (!std::isfinite(h.b)) throw Error(ErrorKind::InvalidInput, "halfspace: non-finite offset");
    const double n = h.a.norm();
    if (n <= 1e-14) {
      if (h.b < 0) throw Error(ErrorKind::InvalidInput, "halfspaces are infeasible");
      continue;
    }
    hs.push_back({h.a / n, h.b / n});
  }
  if (hs.empty()) throw Error(ErrorKind::UnboundedBody, "no effective halfspaces");
  for (int i = 0; i < d; ++i) {
    lp_support(hs, Vec::Unit(d, i));
    lp_support(hs, -Vec::Unit(d, i));
  }
  double scale = 1.0;
  for (const auto& h : hs) scale = std::max(scale, std::abs(h.b));
  const double tol = 1e-10 * scale;
  auto verts = vertices_from_halfspaces(hs, d, tol);
  if (static_cast<int>(verts.size()) < d + 1 || affine_rank(verts, tol) < d) {
    throw Error(ErrorKind::DegenerateBody, "halfspaces describe a body without interior");
  }
  ConvexBody b;
  b.dim_ = d;
  b.kind_ = Kind::Polytope;
  b.symmetric_ = symmetric;
  b.halfspace_input_ = true;
  b.halfspaces_ = std::move(hs);
  b.vertices_ = std::move(verts);
  if (symmetric) b.verify_symmetry();
  return b;
}

ConvexBody ConvexBody::from_both(const std::vector<Vec>& vertices, const std::vector<Halfspace>& halfspaces,
                                 bool symmetric) {
  ConvexBody bv = from_vertices(vertices, symmetric);
  const ConvexBody bh = from_halfspaces(halfspaces, false);
  if (bh.dim() != bv.dim()) throw Error(ErrorKind::InvalidInput, "vertex and halfspace forms differ in dimension");
  const double scale = std::max(1.0, bv.circumradius());
  for (const auto& u : probe_directions(bv.dim())) {
    const Direction dir(u);
    if (std::abs(support(bv, dir) - support(bh, dir)) > 1e-8 * scale) {
      throw Error(ErrorKind::InvalidInput, "vertex and halfspace forms describe different bodies");
    }
  }
  return bv;
}

ConvexBody ConvexBody::box(const Vec& half_extents) {
  const int d = static_cast<int>(half_extents.size());
  std::vector<Halfspace> hs;
  for (int i = 0; i < d; ++i) {
    if (!(half_extents[i] > 0.0)) throw Error(ErrorKind::InvalidInput, "box: extents must be positive");
    hs.push_back({Vec::Unit(d, i), half_extents[i]});
    hs.push_back({-Vec::Unit(d, i), half_extents[i]});
  }
  return from_halfspaces(hs, true);
}

void ConvexBody::verify_symmetry() const {
  const double scale = std::max(1.0, circumradius());
  for (const auto& u : probe_directions(dim_)) {
    const Direction dir(u);
    if (std::abs(support(*this, dir) - support(*this, -dir)) > 1e-9 * scale) {
      throw Error(ErrorKind::AsymmetricBody, "body flagged symmetric is not symmetric about the origin");
    }
  }
}

double ConvexBody::margin(const Vec& x) const {
  require_dim(x, dim_, "point");
  if (kind_ == Kind::Ball) return radius_ - (x - center_).norm();
  double m = std::numeric_limits<double>::infinity();
  for (const auto& h : halfspaces_) m = std::min(m, h.b - h.a.dot(x));
  return m;
}

double ConvexBody::circumradius() const {
  if (kind_ == Kind::Ball) return center_.norm() + radius_;
  double r = 0.0;
  for (const auto& v : vertices_) r = std::max(r, v.norm());
  return r;
}

ConvexBody ConvexBody::scaled(double alpha) const {
  if (!(alpha > 0.0)) throw Error(ErrorKind::InvalidInput, "scale factor must be positive");
  ConvexBody b = *this;
  if (kind_ == Kind::Ball) {
    b.center_ = alpha * center_;
    b.radius_ = alpha * radius_;
    return b;
  }
  for (auto& h : b.halfspaces_) h.b *= alpha;
  for (auto& v : b.vertices_) v *= alpha;
  return b;
}

std::optional<ConvexBody> ConvexBody::shrunk(double t) const {
  if (kind_ == Kind::Ball) {
    if (radius_ - t <= 0.0) return std::nullopt;
    ConvexBody b = *this;
    b.radius_ = radius_ - t;
    return b;
  }
  std::vector<Halfspace> hs = halfspaces_;
  for (auto& h : hs) h.b -= t;
  try {
    return from_halfspaces(hs, false);
  } catch (const Error&) {
    return std::nullopt;
  }
}

double support(const ConvexBody& body, const Direction& u) {
  if (u.dim() != body.dim()) throw Error(ErrorKind::InvalidInput, "support: dimension mismatch");
  if (body.is_ball()) return body.center().dot(u.vec()) + body.radius();
  if (body.halfspace_input()) return lp_support(body.halfspaces(), u.vec());
  return vertex_support(body.vertices(), u.vec());
}

double breadth(const ConvexBody& body, const Direction& u) { return support(body, u) + support(body, -u); }

WidthResult width_direction(const ConvexBody& body) {
  const int d = body.dim();
  if (body.is_ball()) return {2.0 * body.radius(), Direction(Vec::Unit(d, 0))};

  const auto& verts = body.vertices();
  auto vbreadth = [&](const Vec& u) {
    const Vec n = u.normalized();
    return vertex_support(verts, n) + vertex_support(verts, -n);
  };
  const double scale = std::max(1.0, body.circumradius());

  std::vector<Vec> candidates;
  for (const auto& h : body.halfspaces()) candidates.push_back(h.a);
  if (d == 1) candidates = {Vec::Unit(1, 0)};

  double best = std::numeric_limits<double>::infinity();
  Vec best_u = Vec::Unit(d, 0);
  auto consider = [&](const Vec& u) {
    if (u.norm() < 1e-12) return;
    const double b = vbreadth(u);
    if (b < best - 1e-15 * scale) {
      best = b;
      best_u = u.normalized();
    }
  };
  for (const auto& u : candidates) consider(u);

  if (d >= 3) {
    if (d == 3) {
      const auto edges = polytope_edges(verts, body.halfspaces(), 1e-9 * scale);
      for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
          const Eigen::Vector3d a = edges[i], b = edges[j];
          const Eigen::Vector3d c = a.cross(b);
          if (c.norm() > 1e-9 * a.norm() * b.norm()) consider(Vec(c));
        }
      }
    }
    std::vector<std::pair<double, Vec>> seeds;
    for (const auto& u : sphere_samples(d, 2048)) seeds.emplace_back(vbreadth(u), u);
    seeds.emplace_back(best, best_u);
    std::sort(seeds.begin(), seeds.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t k = 0; k < std::min<std::size_t>(6, seeds.size()); ++k) {
      const Vec x = nelder_mead(vbreadth, seeds[k].second, 0.05, 1e-13, 4000);
      consider(x);
    }
  }
  if (!(best > 1e-12 * scale)) throw Error(ErrorKind::DegenerateBody, "body has zero width");
  return {best, Direction(best_u)};
}

FitResult fits_in_translate(std::span<const Vec> points, const ConvexBody& body, FitMode mode, double tol) {
  if (points.empty()) throw Error(ErrorKind::InvalidInput, "fits_in_translate: no points");
  const int d = body.dim();
  for (const auto& q : points) require_dim(q, d, "point");

  FitResult r;
  if (body.is_ball()) {
    const auto meb = min_enclosing_ball(points);
    r.margin = body.radius() - meb.radius;
    r.shift = meb.center - body.center();
  } else {
    const auto& hs = body.halfspaces();
    const int m = static_cast<int>(hs.size());
    // Variables (s, t): maximize t subject to -<a_k, s> + t <= b_k - max_q <a_k, q>.
    Mat A(m, d + 1);
    Vec b(m);
    for (int k = 0; k < m; ++k) {
      double hq = -std::numeric_limits<double>::infinity();
      for (const auto& q : points) hq = std::max(hq, hs[k].a.dot(q));
      A.row(k).head(d) = -hs[k].a.transpose();
      A(k, d) = 1.0;
      b[k] = hs[k].b - hq;
    }
    Vec c = Vec::Zero(d + 1);
    c[d] = 1.0;
    const auto res = lp::maximize(c, A, b);
    if (res.status != lp::Status::Optimal) throw Error(ErrorKind::InvalidInput, "fit program failed");
    r.shift = res.x.head(d);
    r.margin = res.x[d];
  }

  if (mode == FitMode::Closed) {
    r.verdict = r.margin >= -tol ? FitVerdict::Fits : FitVerdict::NoFit;
  } else if (r.margin > tol) {
    r.verdict = FitVerdict::Fits;
  } else if (r.margin >= -tol) {
    r.verdict = FitVerdict::Boundary;
  } else {
    r.verdict = FitVerdict::NoFit;
  }
  return r;
}

ConvexBody cross_section(const ConvexBody& body, const Mat& U) {
  const int d = body.dim();
  if (d < 2) throw Error(ErrorKind::InvalidInput, "cross_section needs d >= 2");
  if (U.rows() != d || U.cols() != d) throw Error(ErrorKind::InvalidInput, "cross_section: U must be d x d");
  if ((U.transpose() * U - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-12) {
    throw Error(ErrorKind::InvalidInput, "cross_section: U is not orthonormal");
  }
  if (body.is_ball()) {
    const Vec z = U * body.center();
    const double h2 = body.radius() * body.radius() - z[d - 1] * z[d - 1];
    if (h2 <= 0.0) throw Error(ErrorKind::EmptySlice, "hyperplane misses the ball");
    return ConvexBody::ball(z.head(d - 1), std::sqrt(h2), body.symmetric());
  }
  std::vector<Halfspace> hs;
  for (const auto& h : body.halfspaces()) {
    const Vec a = (U * h.a).head(d - 1);
    if (a.norm() <= 1e-12) {
      if (h.b < 0.0) throw Error(ErrorKind::EmptySlice, "hyperplane misses the body");
      continue;
    }
    hs.push_back({a, h.b});
  }
  try {
    return ConvexBody::from_halfspaces(hs, body.symmetric());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::AsymmetricBody) throw;
    throw Error(ErrorKind::EmptySlice, std::string("slice has no interior: ") + e.what());
  }
}

ConvexBody project(const ConvexBody& body, const Mat& A) {
  const int d = body.dim();
  if (A.rows() != d || A.cols() < 1 || A.cols() > d) throw Error(ErrorKind::InvalidInput, "project: bad shape");
  const int k = static_cast<int>(A.cols());
  if ((A.transpose() * A - Mat::Identity(k, k)).cwiseAbs().maxCoeff() > 1e-12) {
    throw Error(ErrorKind::InvalidInput, "project: columns are not orthonormal");
  }
  if (body.is_ball()) return ConvexBody::ball(A.transpose() * body.center(), body.radius(), body.symmetric());
  std::vector<Vec> pts;
  for (const auto& v : body.vertices()) pts.push_back(A.transpose() * v);
  const double tol = 1e-10 * point_scale(pts);
  pts = dedupe(pts, tol);
  if (k == 2 && pts.size() > kMaxVertices) pts = hull_2d(pts, tol * tol);
  return ConvexBody::from_vertices(pts, body.symmetric());
}

EnclosingBall min_enclosing_ball(std::span<const Vec> points) {
  if (points.empty()) throw Error(ErrorKind::InvalidInput, "min_enclosing_ball: no points");
  const int d = static_cast<int>(points[0].size());
  std::vector<Vec> pts(points.begin(), points.end());
  const double scale = point_scale(pts);
  pts = dedupe(pts, 1e-14 * scale);
  Rng rng(0xBA11ull);
  for (std::size_t i = pts.size(); i > 1; --i) std::swap(pts[i - 1], pts[rng.next() % i]);
  std::vector<Vec> R;
  return welzl(pts, pts.size(), R, d, 1e-13 * scale);
}

double unit_ball_volume(int d) { return std::pow(kPi, d / 2.0) / std::tgamma(d / 2.0 + 1.0); }

}  // namespace trajnyq
