#pragma once

#include <vector>

#include "sepfda/fpca.hpp"

namespace sepfda {

struct DistanceResult {
    double squared_distance = 0.0;
    int truncation = 0;
    double cutoff = 0.0;
    bool flagged = false; // squared_distance strictly above the cutoff
};

/// Squared functional Mahalanobis distance at full truncation M = m*p,
/// computed in coefficient space (equals the matrix Mahalanobis distance).
double fmmd2_coef(const Matrix& a, const SeparableFit& fit);

/// Spectral route: sum over the leading `truncation` product eigenpairs of
/// score^2 / pi.  At truncation m*p this equals fmmd2_coef.
double fmmd2_spectral(const Matrix& a, const SeparableFit& fit, const FpcaModel& model,
                      int truncation);
double fmmd2_spectral(const Matrix& a, const SeparableFit& fit, const BasisSystem& basis,
                      int truncation);

/// Univariate squared functional Mahalanobis distance of a single coefficient
/// vector, truncated to the leading kernel eigenpairs.  At full truncation it
/// equals the quadratic form (a - mean)' sigma_col^{-1} (a - mean).
double fmd2(const Vector& a, const Vector& mean, const Matrix& sigma_col,
            const BasisSystem& basis, int truncation);

/// Chi-square quantile, absolute accuracy 1e-8.
double chi2_cutoff(int dof, double quantile);

std::vector<DistanceResult> flag_outliers(const std::vector<double>& squared_distances,
                                          int dof, double quantile);

} // namespace sepfda
