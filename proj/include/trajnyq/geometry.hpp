#pragma once

#include "trajnyq/types.hpp"

#include <optional>
#include <span>
#include <vector>

namespace trajnyq {

/// Unit vector; normalized on construction.
class Direction {
 public:
  explicit Direction(const Vec& u);
  const Vec& vec() const { return u_; }
  int dim() const { return static_cast<int>(u_.size()); }
  Direction operator-() const { return Direction(-u_); }

 private:
  Vec u_;
};

/// Closed halfspace {x : <a, x> <= b}; stored with |a| = 1.
struct Halfspace {
  Vec a;
  double b = 0.0;
};

/// Compact convex set in R^d, either an exact ball or a polytope.
/// Polytopes keep both representations; the halfspace list is canonical.
class ConvexBody {
 public:
  enum class Kind { Ball, Polytope };

  static ConvexBody ball(const Vec& center, double radius, bool symmetric = false);
  /// Convex hull of the given points. Supported for d <= 4 and at most 64 points.
  static ConvexBody from_vertices(const std::vector<Vec>& vertices, bool symmetric = false);
  static ConvexBody from_halfspaces(const std::vector<Halfspace>& halfspaces, bool symmetric = false);
  /// Both forms supplied; their support functions must agree.
  static ConvexBody from_both(const std::vector<Vec>& vertices,
                              const std::vector<Halfspace>& halfspaces, bool symmetric = false);
  /// Axis-aligned box {|x_i| <= half_extents_i}, flagged symmetric.
  static ConvexBody box(const Vec& half_extents);

  int dim() const { return dim_; }
  Kind kind() const { return kind_; }
  bool is_ball() const { return kind_ == Kind::Ball; }
  bool symmetric() const { return symmetric_; }
  // True when the body was supplied in halfspace form (support then goes through an LP).
  bool halfspace_input() const { return halfspace_input_; }

  const Vec& center() const { return center_; }
  double radius() const { return radius_; }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  const std::vector<Vec>& vertices() const { return vertices_; }

  /// Signed slack of x: positive inside, zero on the boundary, negative outside.
  /// For balls this is the distance to the sphere; for polytopes min_k (b_k - <a_k, x>).
  double margin(const Vec& x) const;
  bool contains(const Vec& x, double tol = kBoundaryTol) const { return margin(x) >= -tol; }

  /// max |x| over the body.
  double circumradius() const;
  /// Returns alpha * body.
  ConvexBody scaled(double alpha) const;
  /// Body shrunk inward by t (balls: radius - t; polytopes: every offset minus t).
  std::optional<ConvexBody> shrunk(double t) const;

 private:
  ConvexBody() = default;
  void verify_symmetry() const;

  int dim_ = 0;
  Kind kind_ = Kind::Ball;
  bool symmetric_ = false;
  bool halfspace_input_ = false;
  Vec center_;
  double radius_ = 0.0;
  std::vector<Halfspace> halfspaces_;
  std::vector<Vec> vertices_;
};

/// h(u) = max over the body of <x, u>.
double support(const ConvexBody& body, const Direction& u);
/// B^u = h(u) + h(-u).
double breadth(const ConvexBody& body, const Direction& u);

struct WidthResult {
  double width;
  Direction direction;
};

/// Minimum breadth and a direction attaining it.
WidthResult width_direction(const ConvexBody& body);

enum class FitMode { Closed, Open };
enum class FitVerdict { Fits, NoFit, Boundary };

struct FitResult {
  FitVerdict verdict = FitVerdict::NoFit;
  Vec shift;            // s with q - s inside the body for all q (best found)
  double margin = 0.0;  // largest achievable slack; sign decides the verdict
};

/// Decides whether some translate of the body contains all points, i.e. there is s
/// with q - s in the body for every q. Closed mode answers Fits when the best slack is
/// >= -tol and NoFit otherwise. Open mode answers Fits when the slack exceeds tol,
/// NoFit below -tol and Boundary inside the band.
FitResult fits_in_translate(std::span<const Vec> points, const ConvexBody& body, FitMode mode,
                            double tol = kBoundaryTol);

/// Slice {s in R^{d-1} : U^T (s, 0) in body} for orthonormal U.
ConvexBody cross_section(const ConvexBody& body, const Mat& U);

/// Orthogonal projection {A^T x : x in body} for A with orthonormal columns.
ConvexBody project(const ConvexBody& body, const Mat& A);

struct EnclosingBall {
  Vec center;
  double radius = 0.0;
};

/// Smallest ball containing the points (Welzl).
EnclosingBall min_enclosing_ball(std::span<const Vec> points);

/// Volume of the unit ball in R^d.
double unit_ball_volume(int d);

}  // namespace trajnyq
