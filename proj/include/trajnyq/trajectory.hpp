#pragma once

#include "trajnyq/types.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace trajnyq {

/// Parallel lines p_j(t) = w + j*delta*n + t*v in the plane, n = v rotated by +90 degrees.
struct UniformLines2D {
  UniformLines2D(const Vec& w, const Vec& v, double delta);
  Vec w;
  Vec v;  // unit direction
  double delta;
  Vec normal() const;
};

struct UnionUniform2D {
  explicit UnionUniform2D(std::vector<UniformLines2D> parts);
  std::vector<UniformLines2D> parts;
};

/// Lines p_m(t) = w + sum_{i<d} m_i v_i + t v_d in R^d with <v_i, v_d> = delta_{id}.
struct UniformLinesD {
  explicit UniformLinesD(std::vector<Vec> basis, std::optional<Vec> w = std::nullopt);
  int dim;
  std::vector<Vec> basis;
  Vec w;
  /// Columns u_1..u_{d-1} with <u_i, v_j> = 2 pi delta_ij for all j <= d.
  Mat reciprocal() const;
  /// Gram matrix of v_1..v_{d-1}.
  Mat gram() const;
};

/// Concentric circles of radius i*delta about the origin, plus the origin itself.
struct CircleSet {
  explicit CircleSet(double delta);
  double delta;
};

/// N interleaved spirals sp_i(t) = c t (cos 2pi(t - i/N), sin 2pi(t - i/N)), t >= 0.
struct SpiralSet {
  SpiralSet(double c, int n);
  double c;
  int n;
  Vec point(int i, double t) const;
  double speed(double t) const;
};

/// Parallel hyperplanes {x : <x - w, h> = j*delta}.
struct HyperplaneSet {
  HyperplaneSet(const Vec& w, const Vec& h, double delta);
  Vec w;
  Vec h;  // unit normal
  double delta;
  /// Orthonormal basis of the plane directions, built from the coordinate axes.
  Mat frame() const;
};

struct UnionHyperplanes {
  explicit UnionHyperplanes(std::vector<HyperplaneSet> parts);
  std::vector<HyperplaneSet> parts;
  int dim() const { return static_cast<int>(parts.front().h.size()); }
};

using TrajectorySet =
    std::variant<UniformLines2D, UnionUniform2D, UniformLinesD, CircleSet, SpiralSet, HyperplaneSet, UnionHyperplanes>;

int dimension(const TrajectorySet& set);
std::string kind_name(const TrajectorySet& set);

/// Reciprocal vectors u_i and the 2^N half-sum set Q (a multiset, ordered by sign pattern bits).
struct Reciprocal {
  std::vector<Vec> u;
  std::vector<Vec> q;
};

Reciprocal reciprocal_and_qset(const UnionUniform2D& set);
Reciprocal reciprocal_and_qset(const UnionHyperplanes& set);

/// Closed-form path density (lines, circles, spirals) or manifold density (hyperplanes).
double density(const TrajectorySet& set);

struct Window {
  Vec center;
  double radius = 0.0;
};

struct SamplePoint {
  int part = 0;     // family index (spiral index for spirals)
  long member = 0;  // line, circle or plane index within the family
  double param = 0.0;
  Vec x;
};

/// On-trajectory points at pitch eps inside the window, sorted by (part, member, param, x).
std::vector<SamplePoint> sample_points(const TrajectorySet& set, const Window& window, double eps);

struct CoveringEstimate {
  double radius = 0.0;  // largest probe-to-nearest-point distance
  double pitch = 0.0;   // probe spacing; true supremum is within pitch*sqrt(d)/2
};

/// Sup over a probe grid in the window (shrunk by boundary_layer) of the distance to the
/// nearest point.
CoveringEstimate covering_radius(const std::vector<Vec>& points, const Window& window, double pitch,
                                 double boundary_layer = 0.0);

/// Total trajectory length (or (d-1)-volume for hyperplanes) inside B(x, a).
double arc_length_in_ball(const TrajectorySet& set, double a, const Vec& x);

/// Spiral arc length between parameters t0 <= t1, by adaptive Simpson quadrature.
double spiral_arc_length(double c, double t0, double t1);

}  // namespace trajnyq
