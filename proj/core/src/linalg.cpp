#include "sepfda/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sepfda/errors.hpp"

namespace sepfda {

void require_finite(const Matrix& m, const char* what) {
    if (!m.allFinite())
        throw InvalidInputError(std::string(what) + ": non-finite entries");
}

void require_symmetric(const Matrix& s, const char* what) {
    if (s.rows() != s.cols())
        throw InvalidInputError(std::string(what) + ": matrix not square");
    require_finite(s, what);
    for (Eigen::Index i = 0; i < s.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < s.cols(); ++j) {
            const double tol = 1e-12 * std::max(1.0, std::abs(s(i, j)));
            if (std::abs(s(i, j) - s(j, i)) > tol)
                throw InvalidInputError(std::string(what) + ": matrix not symmetric");
        }
    }
}

namespace {

double off_diagonal_norm(const Matrix& a) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (i != j) acc += a(i, j) * a(i, j);
    return std::sqrt(acc);
}

// Sign convention: largest-magnitude component positive, ties by lowest index.
void fix_column_sign(Matrix& v, Eigen::Index col) {
    Eigen::Index arg = 0;
    double best = 0.0;
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
        const double mag = std::abs(v(i, col));
        if (mag > best) {
            best = mag;
            arg = i;
        }
    }
    if (v(arg, col) < 0.0) v.col(col) = -v.col(col);
}

} // namespace

EigenPairs sym_eigen(const Matrix& s) {
    require_symmetric(s, "sym_eigen");
    const Eigen::Index n = s.rows();
    Matrix a = symmetrized(s);
    Matrix v = Matrix::Identity(n, n);

    const double total = a.norm();
    const double threshold = 1e-13 * total;
    const int max_sweeps = 100;

    for (int sweep = 0; sweep < max_sweeps && off_diagonal_norm(a) > threshold; ++sweep) {
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) == 0.0) continue;
                const double app = a(p, p);
                const double aqq = a(q, q);
                const double tau = (aqq - app) / (2.0 * apq);
                // smaller-magnitude root of t^2 + 2 tau t - 1 = 0
                const double t = (tau >= 0.0)
                                     ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                     : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double sgn = t * c;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - sgn * akq;
                    a(k, q) = sgn * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - sgn * aqk;
                    a(q, k) = sgn * apk + c * aqk;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - sgn * vkq;
                    v(k, q) = sgn * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index i, Eigen::Index j) { return a(i, i) > a(j, j); });

    EigenPairs out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values(k) = a(order[k], order[k]);
        out.vectors.col(k) = v.col(order[k]);
        fix_column_sign(out.vectors, k);
    }
    return out;
}

Matrix spd_factor(const Matrix& s) {
    require_symmetric(s, "spd_factor");
    const Eigen::Index n = s.rows();
    const double pivot_floor = n * 1e-14 * s.diagonal().maxCoeff();
    Matrix l = Matrix::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        double d = s(j, j) - l.row(j).head(j).squaredNorm();
        if (d <= pivot_floor)
            throw NumericError("spd_factor: matrix not positive definite (pivot " +
                               std::to_string(d) + " at index " + std::to_string(j) + ")");
        l(j, j) = std::sqrt(d);
        for (Eigen::Index i = j + 1; i < n; ++i) {
            const double acc = l.row(i).head(j).dot(l.row(j).head(j));
            l(i, j) = (s(i, j) - acc) / l(j, j);
        }
    }
    return l;
}

Matrix spd_inverse(const Matrix& s) {
    const Matrix l = spd_factor(s);
    const Eigen::Index n = s.rows();
    // S^{-1} = L'^{-1} L^{-1} via triangular solves against the identity
    Matrix inv = l.triangularView<Eigen::Lower>().solve(Matrix::Identity(n, n));
    inv = l.transpose().triangularView<Eigen::Upper>().solve(inv);
    return symmetrized(inv);
}

double spd_logdet(const Matrix& s) {
    const Matrix l = spd_factor(s);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < l.rows(); ++i) acc += 2.0 * std::log(l(i, i));
    return acc;
}

namespace {

Matrix sym_power_with_floor(const Matrix& s, double exponent, const char* what) {
    const EigenPairs eig = sym_eigen(s);
    const Eigen::Index n = s.rows();
    const double lambda_max = eig.values(0);
    const double floor_at = n * 1e-12 * std::max(lambda_max, 0.0);
    const double reject_below = -n * 1e-10 * std::max(lambda_max, 0.0);
    Vector powered(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double lambda = eig.values(i);
        if (lambda < reject_below)
            throw InvalidInputError(std::string(what) + ": matrix has a significantly negative eigenvalue (" +
                                    std::to_string(lambda) + ")");
        lambda = std::max(lambda, floor_at);
        if (lambda <= 0.0)
            throw InvalidInputError(std::string(what) + ": matrix is zero");
        powered(i) = std::pow(lambda, exponent);
    }
    Matrix out = eig.vectors * powered.asDiagonal() * eig.vectors.transpose();
    return symmetrized(out);
}

} // namespace

Matrix sym_sqrt(const Matrix& s) { return sym_power_with_floor(s, 0.5, "sym_sqrt"); }

Matrix sym_inv_sqrt(const Matrix& s) { return sym_power_with_floor(s, -0.5, "sym_inv_sqrt"); }

} // namespace sepfda
