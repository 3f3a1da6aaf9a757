#pragma once

namespace trajnyq {

/// Bessel function of the first kind J_n(x) for integer order.
/// Power series for |x| <= 1, Miller backward recurrence otherwise.
double bessel_j(int n, double x);

}  // namespace trajnyq
