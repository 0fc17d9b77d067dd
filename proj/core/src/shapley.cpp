#include "sepfda/shapley.hpp"

#include <cmath>
#include <string>

#include "sepfda/errors.hpp"

namespace sepfda {

void DomainPartition::validate(const Interval& domain) const {
    if (intervals.empty()) throw InvalidInputError("partition: no intervals");
    const double tol = 1e-9 * std::max(1.0, std::abs(domain.length()));
    if (std::abs(intervals.front().lo - domain.lo) > tol ||
        std::abs(intervals.back().hi - domain.hi) > tol)
        throw InvalidInputError("partition: does not cover the domain");
    for (const Interval& iv : intervals)
        if (!(iv.lo < iv.hi))
            throw InvalidInputError("partition: interval with non-positive length");
    for (std::size_t a = 0; a + 1 < intervals.size(); ++a)
        if (std::abs(intervals[a].hi - intervals[a + 1].lo) > tol)
            throw InvalidInputError("partition: intervals are not contiguous");
}

DomainPartition DomainPartition::equal(const Interval& domain, int d) {
    if (d < 1) throw InvalidInputError("partition: needs at least one interval");
    DomainPartition out;
    out.intervals.reserve(d);
    for (int a = 0; a < d; ++a) {
        Interval iv;
        iv.lo = domain.lo + domain.length() * a / d;
        iv.hi = (a + 1 == d) ? domain.hi : domain.lo + domain.length() * (a + 1) / d;
        out.intervals.push_back(iv);
    }
    return out;
}

Vector shapley_multivariate(const Vector& x, const Vector& mean, const Matrix& covariance) {
    if (x.size() != mean.size() || covariance.rows() != x.size() || covariance.cols() != x.size())
        throw InvalidInputError("shapley_multivariate: dimension mismatch");
    const Vector centered = x - mean;
    const Matrix omega = spd_inverse(covariance);
    return centered.cwiseProduct(omega * centered);
}

Vector shapley_time_univariate(const Vector& a, const Vector& mean, const Matrix& sigma_col,
                               const BasisSystem& basis, const DomainPartition& partition) {
    const int m = basis.size;
    if (a.size() != m || mean.size() != m || sigma_col.rows() != m)
        throw InvalidInputError("shapley_time_univariate: coefficient length mismatch");
    partition.validate(basis.domain);
    const Vector centered = a - mean;
    const Matrix w = gram(basis, basis.domain);
    const Matrix l_sigma = spd_factor(sigma_col);
    const Matrix l_w = spd_factor(w);
    // u = W^{-1} Sigma^{-1} (a - m)
    Vector u = l_sigma.triangularView<Eigen::Lower>().solve(centered);
    u = l_sigma.transpose().triangularView<Eigen::Upper>().solve(u);
    u = l_w.triangularView<Eigen::Lower>().solve(u);
    u = l_w.transpose().triangularView<Eigen::Upper>().solve(u);

    Vector out(partition.size());
    for (int idx = 0; idx < partition.size(); ++idx)
        out(idx) = centered.dot(gram(basis, partition.intervals[idx]) * u);
    return out;
}

ShapleyMap shapley_time_coordinate(const Matrix& a, const SeparableFit& fit,
                                   const BasisSystem& basis, const DomainPartition& partition) {
    if (a.rows() != fit.rows() || a.cols() != fit.cols())
        throw InvalidInputError("shapley_time_coordinate: sample shape mismatch");
    if (basis.size != fit.rows())
        throw InvalidInputError("shapley_time_coordinate: basis size does not match the fit");
    partition.validate(basis.domain);

    // Theta_{k,a} = [(A-M)' W_a W^{-1} Sigma_col^{-1} (A-M) Sigma_row^{-1}]_{kk}:
    // the own coordinate carries the interval-restricted inner product, the
    // aggregate factor runs over the full domain.
    const Matrix centered = a - fit.mean;                       // m x p
    const Matrix w = gram(basis, basis.domain);
    const Matrix row_inv = spd_inverse(fit.sigma_row);
    const Matrix col_inv = spd_inverse(fit.sigma_col);
    const Matrix w_inv = spd_inverse(w);
    const Matrix aggregate = w_inv * col_inv * centered * row_inv; // m x p

    ShapleyMap map;
    const int p = fit.cols();
    const int d = partition.size();
    map.cell.resize(p, d);
    for (int idx = 0; idx < d; ++idx) {
        const Matrix w_a = gram(basis, partition.intervals[idx]);
        map.cell.col(idx) = ((w_a * aggregate).cwiseProduct(centered)).colwise().sum().transpose();
    }
    map.row_sums = map.cell.rowwise().sum();
    map.col_sums = map.cell.colwise().sum().transpose();
    map.total = map.cell.sum();
    map.normalized = (map.total != 0.0) ? Matrix(map.cell / map.total)
                                        : Matrix(Matrix::Zero(p, d));
    return map;
}

Vector shapley_coordinate(const Matrix& a, const SeparableFit& fit) {
    if (a.rows() != fit.rows() || a.cols() != fit.cols())
        throw InvalidInputError("shapley_coordinate: sample shape mismatch");
    const Matrix centered = a - fit.mean;
    const Matrix row_inv = spd_inverse(fit.sigma_row);
    const Matrix col_inv = spd_inverse(fit.sigma_col);
    return ((col_inv * centered).cwiseProduct(centered * row_inv)).colwise().sum().transpose();
}

Vector shapley_time(const Matrix& a, const SeparableFit& fit, const BasisSystem& basis,
                    const DomainPartition& partition) {
    return shapley_time_coordinate(a, fit, basis, partition).col_sums;
}

Matrix shapley_matrix_cellwise(const Matrix& a, const SeparableFit& fit) {
    if (a.rows() != fit.rows() || a.cols() != fit.cols())
        throw InvalidInputError("shapley_matrix_cellwise: sample shape mismatch");
    const Matrix centered = a - fit.mean;
    const Matrix row_inv = spd_inverse(fit.sigma_row);
    const Matrix col_inv = spd_inverse(fit.sigma_col);
    return (centered.cwiseProduct(col_inv * centered * row_inv)).transpose(); // p x m
}

Vector shapley_bruteforce(const std::function<double(const std::vector<bool>&)>& value,
                          int n_players) {
    if (n_players < 1 || n_players > 12)
        throw InvalidInputError("shapley_bruteforce: player count must be in [1, 12]");
    const int n_coalitions = 1 << n_players;
    std::vector<double> values(n_coalitions);
    std::vector<bool> mask(n_players);
    for (int s = 0; s < n_coalitions; ++s) {
        for (int k = 0; k < n_players; ++k) mask[k] = (s >> k) & 1;
        values[s] = value(mask);
    }
    std::vector<double> factorial(n_players + 1, 1.0);
    for (int i = 1; i <= n_players; ++i) factorial[i] = factorial[i - 1] * i;

    Vector out = Vector::Zero(n_players);
    for (int s = 0; s < n_coalitions; ++s) {
        const int cardinality = __builtin_popcount(static_cast<unsigned>(s));
        for (int k = 0; k < n_players; ++k) {
            if ((s >> k) & 1) continue;
            const double weight = factorial[cardinality] *
                                  factorial[n_players - cardinality - 1] / factorial[n_players];
            out(k) += weight * (values[s | (1 << k)] - values[s]);
        }
    }
    return out;
}

} // namespace sepfda
