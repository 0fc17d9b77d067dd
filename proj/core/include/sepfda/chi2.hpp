#pragma once

namespace sepfda {

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

double chi2_cdf(double x, int dof);

/// Chi-square quantile by Newton iteration on the CDF, absolute accuracy 1e-8.
double chi2_quantile(double prob, int dof);

} // namespace sepfda
