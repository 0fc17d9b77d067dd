#pragma once

#include <functional>
#include <vector>

#include "sepfda/basis.hpp"
#include "sepfda/matnorm.hpp"

namespace sepfda {

/// Ordered disjoint sub-intervals covering the domain.
struct DomainPartition {
    std::vector<Interval> intervals;

    int size() const { return static_cast<int>(intervals.size()); }
    void validate(const Interval& domain) const;
    static DomainPartition equal(const Interval& domain, int d);
};

/// Time-coordinate outlyingness decomposition of one sample.  The grand sum
/// equals the squared distance (efficiency); row sums are coordinate
/// contributions and column sums are interval contributions.
struct ShapleyMap {
    Matrix cell;       // p x d
    Vector row_sums;   // p
    Vector col_sums;   // d
    double total = 0.0;
    Matrix normalized; // cell / total, zero map when total == 0
};

/// theta_k = (x_k - mu_k) * sum_j (x_j - mu_j) Omega_jk for a plain vector
/// observation; sums to the squared Mahalanobis distance.
Vector shapley_multivariate(const Vector& x, const Vector& mean, const Matrix& covariance);

/// Interval contributions of a univariate coefficient vector:
/// theta_a = (a - m)' W_{T_a} W^{-1} Sigma^{-1} (a - m).
Vector shapley_time_univariate(const Vector& a, const Vector& mean, const Matrix& sigma_col,
                               const BasisSystem& basis, const DomainPartition& partition);

ShapleyMap shapley_time_coordinate(const Matrix& a, const SeparableFit& fit,
                                   const BasisSystem& basis, const DomainPartition& partition);

/// Coordinate contributions diag(sigma_row^{-1} (A-M)' sigma_col^{-1} (A-M)).
Vector shapley_coordinate(const Matrix& a, const SeparableFit& fit);

Vector shapley_time(const Matrix& a, const SeparableFit& fit, const BasisSystem& basis,
                    const DomainPartition& partition);

/// Cellwise contributions (coordinate x basis cell), the elementwise product
/// form transposed to p x m; the grand sum equals the squared distance.
Matrix shapley_matrix_cellwise(const Matrix& a, const SeparableFit& fit);

/// Exact Shapley values of an arbitrary coalition game by full enumeration
/// (test oracle; n_players <= 12).  The value function receives a membership
/// mask of length n_players.
Vector shapley_bruteforce(const std::function<double(const std::vector<bool>&)>& value,
                          int n_players);

} // namespace sepfda
