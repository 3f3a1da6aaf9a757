#pragma once

#include "trajnyq/geometry.hpp"
#include "trajnyq/rng.hpp"
#include "trajnyq/trajectory.hpp"

#include <cmath>
#include <vector>

namespace testing {

using trajnyq::ConvexBody;
using trajnyq::Vec;
using trajnyq::kPi;

inline Vec v2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

inline Vec v3(double x, double y, double z) {
  Vec v(3);
  v << x, y, z;
  return v;
}

inline ConvexBody disc(double rho) { return ConvexBody::ball(Vec::Zero(2), rho, true); }

// {y >= 0, |x| + |y| <= rho}
inline ConvexBody right_triangle(double rho) {
  return ConvexBody::from_vertices({v2(-rho, 0), v2(rho, 0), v2(0, rho)});
}

inline ConvexBody rectangle(double a, double b) { return ConvexBody::box(v2(a, b)); }

// Two line families: horizontal lines spaced d1 and vertical lines spaced d2.
inline trajnyq::UnionUniform2D orthogonal_union(double d1, double d2, const Vec& w1 = Vec::Zero(2),
                                                const Vec& w2 = Vec::Zero(2)) {
  return trajnyq::UnionUniform2D({trajnyq::UniformLines2D(w1, v2(1, 0), d1), trajnyq::UniformLines2D(w2, v2(0, 1), d2)});
}

// Hull of n random points in a disc of the given radius around c.
inline ConvexBody random_polygon(trajnyq::Rng& rng, int n, double radius, const Vec& c = Vec::Zero(2)) {
  std::vector<Vec> pts;
  for (int i = 0; i < n; ++i) {
    const double r = radius * std::sqrt(rng.uniform());
    const double t = 2.0 * kPi * rng.uniform();
    pts.push_back(c + v2(r * std::cos(t), r * std::sin(t)));
  }
  return ConvexBody::from_vertices(pts);
}

inline Vec random_unit(trajnyq::Rng& rng, int d) {
  Vec u(d);
  do {
    for (int i = 0; i < d; ++i) u[i] = rng.normal();
  } while (u.norm() < 1e-6);
  return u.normalized();
}

// Random rotation via QR of a Gaussian matrix.
inline trajnyq::Mat random_rotation(trajnyq::Rng& rng, int d) {
  trajnyq::Mat g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = rng.normal();
  Eigen::HouseholderQR<trajnyq::Mat> qr(g);
  return qr.householderQ() * trajnyq::Mat::Identity(d, d);
}

// Bisection on a monotone predicate: returns x in [lo, hi] where pred flips from true to false.
template <class Pred>
double bisect(double lo, double hi, Pred pred, int iters = 80) {
  for (int i = 0; i < iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    (pred(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace testing
