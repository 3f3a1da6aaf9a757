#pragma once

#include "trajnyq/geometry.hpp"
#include "trajnyq/nyquist.hpp"
#include "trajnyq/trajectory.hpp"

namespace trajnyq {

struct DesignResult {
  TrajectorySet set;
  double density = 0.0;
  double epsilon = 0.0;
  double critical_density = 0.0;  // value approached as epsilon -> 0
  Mat orientation;                // width direction as a column, or the rotation U
  NyquistVerdict verdict;         // re-check of the emitted set
};

/// Minimum-density single family of lines: spacing 2pi/W - epsilon, offsets along the width direction.
DesignResult optimal_uniform_2d(const ConvexBody& omega, double epsilon);

/// Single hyperplane family normal to the width direction, spacing 2pi/W - epsilon.
DesignResult optimal_hyperplane_set(const ConvexBody& omega, double epsilon);

enum class SearchKind { ClosedForm, OrientationGrid };

struct DesignSearch {
  SearchKind kind = SearchKind::ClosedForm;
  int orientations = 0;  // OrientationGrid only
};

/// Uniform lines in R^d for a symmetric body. ClosedForm handles the centred ball and the
/// axis-aligned box in R^3; transverse vectors are scaled by (1 - epsilon).
DesignResult optimal_uniform_d(const ConvexBody& omega, double epsilon, DesignSearch search);

/// Uniform line set whose lines run along a shortest vector of the lattice and visit every
/// lattice point.
UniformLinesD uniform_from_lattice(const std::vector<Vec>& basis);

}  // namespace trajnyq
