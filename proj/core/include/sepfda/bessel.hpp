#pragma once

namespace sepfda {

/// Modified Bessel function of the second kind K_nu(x) for real order
/// nu >= 0 and x > 0.  Temme series for small arguments, Steed continued
/// fraction otherwise, upward recurrence in the order.
double bessel_k(double nu, double x);

} // namespace sepfda
