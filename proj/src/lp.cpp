#include "trajnyq/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace trajnyq::lp {
namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-11;

struct Tableau {
  Mat T;  // constraint rows, last column is the right-hand side
  std::vector<int> basis;
  int ncol = 0;

  void pivot(int row, int col) {
    T.row(row) /= T(row, col);
    for (int i = 0; i < T.rows(); ++i) {
      if (i == row) continue;
      const double f = T(i, col);
      if (f != 0.0) T.row(i) -= f * T.row(row);
    }
    for (int i = 0; i < T.rows(); ++i) {
      if (std::abs(T(i, ncol)) < 1e-14) T(i, ncol) = 0.0;
    }
    basis[row] = col;
  }
};

Status run(Tableau& tb, const Vec& cost, const std::vector<bool>& blocked) {
  const int m = static_cast<int>(tb.T.rows());
  for (int iter = 0; iter < 100000; ++iter) {
    int enter = -1;
    for (int j = 0; j < tb.ncol && enter < 0; ++j) {
      if (blocked[j]) continue;
      double r = cost[j];
      for (int i = 0; i < m; ++i) r -= cost[tb.basis[i]] * tb.T(i, j);
      if (r > kCostTol) enter = j;
    }
    if (enter < 0) return Status::Optimal;

    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      const double a = tb.T(i, enter);
      if (a <= kPivotTol) continue;
      const double ratio = tb.T(i, tb.ncol) / a;
      if (ratio < best - 1e-13 ||
          (std::abs(ratio - best) <= 1e-13 && tb.basis[i] < tb.basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave < 0) return Status::Unbounded;
    tb.pivot(leave, enter);
  }
  throw std::logic_error("simplex iteration limit reached");
}

}  // namespace

Result maximize(const Vec& c, const Mat& A, const Vec& b) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (c.size() != n || b.size() != m) throw std::invalid_argument("lp::maximize: shape mismatch");

  int nart = 0;
  for (int i = 0; i < m; ++i) nart += b[i] < 0 ? 1 : 0;

  // Columns: x+ (n), x- (n), slacks (m), artificials (nart).
  Tableau tb;
  tb.ncol = 2 * n + m + nart;
  tb.T = Mat::Zero(m, tb.ncol + 1);
  tb.basis.assign(m, -1);
  int k = 0;
  for (int i = 0; i < m; ++i) {
    const double sign = b[i] < 0 ? -1.0 : 1.0;
    tb.T.row(i).segment(0, n) = sign * A.row(i);
    tb.T.row(i).segment(n, n) = -sign * A.row(i);
    tb.T(i, 2 * n + i) = sign;
    tb.T(i, tb.ncol) = sign * b[i];
    if (sign < 0) {
      tb.T(i, 2 * n + m + k) = 1.0;
      tb.basis[i] = 2 * n + m + k;
      ++k;
    } else {
      tb.basis[i] = 2 * n + i;
    }
  }

  std::vector<bool> blocked(tb.ncol, false);
  const int art0 = 2 * n + m;
  Result res;

  if (nart > 0) {
    Vec cost1 = Vec::Zero(tb.ncol);
    cost1.tail(nart).setConstant(-1.0);
    run(tb, cost1, blocked);
    double infeas = 0.0;
    for (int i = 0; i < m; ++i) {
      if (tb.basis[i] >= art0) infeas += tb.T(i, tb.ncol);
    }
    if (infeas > 1e-9 * std::max(1.0, b.cwiseAbs().maxCoeff())) {
      res.status = Status::Infeasible;
      return res;
    }
    for (int i = 0; i < m; ++i) {
      if (tb.basis[i] < art0) continue;
      for (int j = 0; j < art0; ++j) {
        if (std::abs(tb.T(i, j)) > kPivotTol) {
          tb.pivot(i, j);
          break;
        }
      }
    }
    for (int j = art0; j < tb.ncol; ++j) blocked[j] = true;
  }

  Vec cost2 = Vec::Zero(tb.ncol);
  cost2.segment(0, n) = c;
  cost2.segment(n, n) = -c;
  if (run(tb, cost2, blocked) == Status::Unbounded) {
    res.status = Status::Unbounded;
    return res;
  }

  Vec full = Vec::Zero(tb.ncol);
  for (int i = 0; i < m; ++i) full[tb.basis[i]] = tb.T(i, tb.ncol);
  res.x = full.segment(0, n) - full.segment(n, n);
  res.value = c.dot(res.x);
  res.status = Status::Optimal;
  return res;
}

}  // namespace trajnyq::lp
