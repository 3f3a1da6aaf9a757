#include "trajnyq/bessel.hpp"

#include <cmath>
#include <cstdlib>

namespace trajnyq {
namespace {

double series(int n, double x) {
  const double h = 0.5 * x;
  double term = 1.0;
  for (int k = 1; k <= n; ++k) term *= h / k;
  double sum = term;
  const double h2 = h * h;
  for (int k = 1; k < 200; ++k) {
    term *= -h2 / (static_cast<double>(k) * (k + n));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

double miller(int n, double x) {
  const int top = std::max(n, static_cast<int>(x));
  int m = top + 20 + static_cast<int>(std::sqrt(40.0 * top));
  m += m % 2;
  const double two_over_x = 2.0 / x;
  double next = 0.0, cur = 1e-300, norm = 0.0, result = 0.0;
  for (int k = m; k >= 1; --k) {
    const double prev = k * two_over_x * cur - next;  // J_{k-1}
    next = cur;
    cur = prev;
    if (k - 1 == n) result = cur;
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * cur;
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      next *= 1e-250;
      norm *= 1e-250;
      result *= 1e-250;
    }
  }
  norm += cur;  // J_0
  return result / norm;
}

}  // namespace

double bessel_j(int n, double x) {
  double sign = 1.0;
  if (n < 0) {
    n = -n;
    if (n % 2) sign = -sign;
  }
  if (x < 0.0) {
    x = -x;
    if (n % 2) sign = -sign;
  }
  if (x == 0.0) return n == 0 ? sign : 0.0;
  return sign * (x <= 1.0 ? series(n, x) : miller(n, x));
}

}  // namespace trajnyq
