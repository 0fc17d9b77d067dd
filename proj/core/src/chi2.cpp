#include "sepfda/chi2.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sepfda/errors.hpp"

namespace sepfda {

namespace {

constexpr double kEps = 1e-15;
constexpr int kMaxIter = 500;

// series expansion, converges fast for x < a + 1
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < kMaxIter; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz continued fraction for Q(a, x), for x >= a + 1
double gamma_q_cont_fraction(double a, double x) {
    const double tiny = std::numeric_limits<double>::min() / kEps;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

// Acklam's rational approximation of the standard normal quantile
// (relative error below 1.2e-9; refined downstream by Newton on the chi2 CDF).
double normal_quantile(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double e[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((e[0] * q + e[1]) * q + e[2]) * q + e[3]) * q + 1.0);
    }
    if (p > 1.0 - plow) {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((e[0] * q + e[1]) * q + e[2]) * q + e[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

} // namespace

double gamma_p(double a, double x) {
    if (a <= 0.0 || x < 0.0)
        throw InvalidInputError("gamma_p: requires a > 0 and x >= 0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cont_fraction(a, x);
}

double chi2_cdf(double x, int dof) {
    if (dof < 1) throw InvalidInputError("chi2_cdf: dof must be >= 1");
    if (x <= 0.0) return 0.0;
    return gamma_p(dof / 2.0, x / 2.0);
}

double chi2_quantile(double prob, int dof) {
    if (dof < 1) throw InvalidInputError("chi2_quantile: dof must be >= 1");
    if (!(prob > 0.0 && prob < 1.0))
        throw InvalidInputError("chi2_quantile: probability must be in (0, 1), got " +
                                std::to_string(prob));

    // Wilson-Hilferty starting point from the normal quantile (Acklam seed)
    const double d = static_cast<double>(dof);
    const double z = normal_quantile(prob);
    const double wh = d * std::pow(1.0 - 2.0 / (9.0 * d) + z * std::sqrt(2.0 / (9.0 * d)), 3.0);
    double x = std::max(wh, 1e-8);

    // Newton with bisection safeguarding
    double lo = 0.0;
    double hi = std::max(4.0 * x, d + 40.0 * std::sqrt(2.0 * d));
    while (chi2_cdf(hi, dof) < prob) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double f = chi2_cdf(x, dof) - prob;
        if (std::abs(f) < 1e-15) break;
        if (f > 0.0)
            hi = x;
        else
            lo = x;
        const double logpdf = (d / 2.0 - 1.0) * std::log(x) - x / 2.0 -
                              (d / 2.0) * std::log(2.0) - std::lgamma(d / 2.0);
        const double pdf = std::exp(logpdf);
        double next = (pdf > 0.0) ? x - f / pdf : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) < 1e-12 * (1.0 + x)) {
            x = next;
            break;
        }
        x = next;
    }
    return x;
}

} // namespace sepfda
