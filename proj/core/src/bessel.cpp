#include "sepfda/bessel.hpp"

#include <cmath>
#include <string>

#include "sepfda/errors.hpp"

namespace sepfda {

namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 10000;

double chebyshev(const double* c, int n, double x) {
    double d = 0.0, dd = 0.0;
    const double x2 = 2.0 * x;
    for (int j = n - 1; j >= 1; --j) {
        const double sv = d;
        d = x2 * d - dd + c[j];
        dd = sv;
    }
    return x * d - dd + 0.5 * c[0];
}

// Temme's gamma coefficients for |x| <= 1/2:
//   gam1 = [1/Gamma(1-x) - 1/Gamma(1+x)] / (2x),
//   gam2 = [1/Gamma(1-x) + 1/Gamma(1+x)] / 2.
void temme_gamma(double x, double& gam1, double& gam2, double& gampl, double& gammi) {
    static const double c1[] = {-1.142022680371168e0, 6.5165112670737e-3,
                                3.087090173086e-4,    -3.4706269649e-6,
                                6.9437664e-9,         3.67795e-11,
                                -1.356e-13};
    static const double c2[] = {1.843740587300905e0,  -7.68528408447867e-2,
                                1.2719271366546e-3,   -4.9717367042e-6,
                                -3.31261198e-8,       2.423096e-10,
                                -1.702e-13,           -1.49e-15};
    const double xx = 8.0 * x * x - 1.0;
    gam1 = chebyshev(c1, 7, xx);
    gam2 = chebyshev(c2, 8, xx);
    gampl = gam2 - x * gam1;
    gammi = gam2 + x * gam1;
}

} // namespace

double bessel_k(double nu, double x) {
    if (!(x > 0.0) || nu < 0.0)
        throw InvalidInputError("bessel_k: requires x > 0 and nu >= 0");

    const int nl = static_cast<int>(nu + 0.5);
    const double xmu = nu - nl; // in [-1/2, 1/2]
    const double xmu2 = xmu * xmu;
    const double xi = 1.0 / x;
    double rkmu, rk1;

    if (x < 2.0) {
        // Temme series
        const double x2 = 0.5 * x;
        const double pimu = M_PI * xmu;
        const double fact = (std::abs(pimu) < kEps) ? 1.0 : pimu / std::sin(pimu);
        double d = -std::log(x2);
        double e = xmu * d;
        const double fact2 = (std::abs(e) < kEps) ? 1.0 : std::sinh(e) / e;
        double gam1, gam2, gampl, gammi;
        temme_gamma(xmu, gam1, gam2, gampl, gammi);
        double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
        double sum = ff;
        e = std::exp(e);
        double p = 0.5 * e / gampl;
        double q = 0.5 / (e * gammi);
        double c = 1.0;
        const double d2 = x2 * x2;
        double sum1 = p;
        int i = 1;
        for (; i <= kMaxIter; ++i) {
            ff = (i * ff + p + q) / (i * i - xmu2);
            c *= d2 / i;
            p /= (i - xmu);
            q /= (i + xmu);
            const double del = c * ff;
            sum += del;
            const double del1 = c * (p - i * ff);
            sum1 += del1;
            if (std::abs(del) < std::abs(sum) * kEps) break;
        }
        if (i > kMaxIter) throw NumericError("bessel_k: series did not converge");
        rkmu = sum;
        rk1 = sum1 * 2.0 * xi;
    } else {
        // Steed continued fraction CF2
        double b = 2.0 * (1.0 + x);
        double d = 1.0 / b;
        double h = d, delh = d;
        double q1 = 0.0, q2 = 1.0;
        const double a1 = 0.25 - xmu2;
        double q = a1, c = a1;
        double a = -a1;
        double s = 1.0 + q * delh;
        int i = 2;
        for (; i <= kMaxIter; ++i) {
            a -= 2 * (i - 1);
            c = -a * c / i;
            const double qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh = (b * d - 1.0) * delh;
            h += delh;
            const double dels = q * delh;
            s += dels;
            if (std::abs(dels / s) < kEps) break;
        }
        if (i > kMaxIter) throw NumericError("bessel_k: continued fraction did not converge");
        h = a1 * h;
        rkmu = std::sqrt(M_PI / (2.0 * x)) * std::exp(-x) / s;
        rk1 = rkmu * (xmu + x + 0.5 - h) * xi;
    }

    for (int i = 1; i <= nl; ++i) {
        const double rktemp = (xmu + i) * 2.0 * xi * rk1 + rkmu;
        rkmu = rk1;
        rk1 = rktemp;
    }
    return rkmu;
}

} // namespace sepfda
