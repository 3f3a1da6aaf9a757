#pragma once

#include "trajnyq/types.hpp"

namespace trajnyq::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  Vec x;
  double value = 0.0;
};

/// Maximize c^T x subject to A x <= b with x unrestricted in sign.
/// Dense two-phase simplex with Bland's rule; intended for a handful of variables.
Result maximize(const Vec& c, const Mat& A, const Vec& b);

}  // namespace trajnyq::lp
