#pragma once

#include "trajnyq/geometry.hpp"
#include "trajnyq/trajectory.hpp"

#include <optional>
#include <string>

namespace trajnyq {

enum class Status { Nyquist, NotNyquist, Critical, SufficientOnly, Unknown };

const char* to_string(Status s);

struct NyquistVerdict {
  Status status = Status::Unknown;
  std::optional<Vec> shift;        // offending translate s (line/hyperplane unions)
  std::optional<IndexVec> index;   // offending lattice index m (uniform sets in R^d)
  std::string basis;               // which result produced the verdict
  std::string diagnostic;
  double margin = 0.0;             // geometric slack behind the verdict
  bool c2_certified = false;       // path condition holds analytically for the set type
};

NyquistVerdict check_union_uniform_2d(const UnionUniform2D& set, const ConvexBody& omega,
                                      double tol = kBoundaryTol);

/// Requires omega flagged symmetric about the origin.
NyquistVerdict check_uniform_d(const UniformLinesD& set, const ConvexBody& omega, double tol = kBoundaryTol);

NyquistVerdict check_hyperplane_union(const UnionHyperplanes& set, const ConvexBody& omega,
                                      double tol = kBoundaryTol);

/// Covering-radius (Beurling) checks; omega must be a ball centred at the origin.
NyquistVerdict check_nonaffine(const CircleSet& set, const ConvexBody& omega);
NyquistVerdict check_nonaffine(const SpiralSet& set, const ConvexBody& omega);

/// Dispatches on the set type. Single families are treated as one-part unions.
NyquistVerdict check(const TrajectorySet& set, const ConvexBody& omega, double tol = kBoundaryTol);

}  // namespace trajnyq
