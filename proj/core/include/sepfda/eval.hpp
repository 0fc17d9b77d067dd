#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "sepfda/basis.hpp"
#include "sepfda/matnorm.hpp"
#include "sepfda/simgen.hpp"

namespace sepfda {

struct Confusion {
    double precision = 0.0;
    double recall = 0.0;
    double f_score = 0.0;
    int tp = 0, fp = 0, tn = 0, fn = 0;
};

struct MetricReport {
    Confusion confusion;
    double auc = 0.0;
    std::optional<double> mean_error;
    std::optional<double> cov_error;
    std::optional<double> relative_mean_error;
    std::optional<double> relative_cov_error;
};

/// Precision, recall and F-score with the 0/0 conventions: precision is 0
/// with no predicted positives, recall is 0 with no true outliers, F is 0
/// when precision + recall is 0.
Confusion confusion_metrics(const std::vector<bool>& flags, const std::vector<bool>& labels);

/// Mann-Whitney AUC with midranks for ties; requires both classes present.
double auc(const std::vector<double>& scores, const std::vector<bool>& labels);

/// (p |T|)^{-1} integral of || mu - mu_hat ||^2 over the grid (trapezoid);
/// every coordinate shares the true mean function.
double mean_error(const Matrix& mean_coefs, const std::function<double(double)>& true_mean,
                  const BasisSystem& basis, const TimeGrid& grid);

/// (p |T|)^{-2} double integral of the squared Frobenius norm of
/// sigma_row kappa(s,t) - sigma_row_hat kappa_hat(s,t), with
/// kappa_hat(s,t) = phi(s)' sigma_col phi(t); invariant under the scale
/// trade-off of either factorization.
double cov_error(const SeparableFit& fit, const Matrix& true_sigma_row,
                 const KernelSpec& true_kernel, const BasisSystem& basis, const TimeGrid& grid);

} // namespace sepfda
