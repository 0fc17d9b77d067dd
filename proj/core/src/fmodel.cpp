#include "sepfda/fmodel.hpp"

#include <cmath>
#include <string>

#include "sepfda/chi2.hpp"
#include "sepfda/errors.hpp"

namespace sepfda {

double fmmd2_coef(const Matrix& a, const SeparableFit& fit) { return mmd2(a, fit); }

double fmmd2_spectral(const Matrix& a, const SeparableFit& fit, const FpcaModel& model,
                      int truncation) {
    if (truncation < 1 || truncation > model.max_truncation())
        throw InvalidInputError("fmmd2_spectral: truncation " + std::to_string(truncation) +
                                " outside [1, " + std::to_string(model.max_truncation()) + "]");
    if (!(model.product_values(truncation - 1) > 0.0))
        throw InvalidInputError("fmmd2_spectral: truncation reaches a non-positive eigenvalue");
    const Vector scores = fpca_scores(a, fit, model, truncation);
    double acc = 0.0;
    for (int k = 0; k < truncation; ++k)
        acc += scores(k) * scores(k) / model.product_values(k);
    return acc;
}

double fmmd2_spectral(const Matrix& a, const SeparableFit& fit, const BasisSystem& basis,
                      int truncation) {
    return fmmd2_spectral(a, fit, separable_fpca(fit, basis), truncation);
}

double fmd2(const Vector& a, const Vector& mean, const Matrix& sigma_col,
            const BasisSystem& basis, int truncation) {
    const int m = basis.size;
    if (a.size() != m || mean.size() != m || sigma_col.rows() != m || sigma_col.cols() != m)
        throw InvalidInputError("fmd2: coefficient length does not match the basis");
    if (truncation < 1 || truncation > m)
        throw InvalidInputError("fmd2: truncation " + std::to_string(truncation) +
                                " outside [1, " + std::to_string(m) + "]");
    const Matrix w = gram(basis, basis.domain);
    const Matrix w_half = sym_sqrt(w);
    const EigenPairs kernel = sym_eigen(w_half * sigma_col * w_half);
    if (!(kernel.values(truncation - 1) > 0.0))
        throw InvalidInputError("fmd2: truncation reaches a non-positive eigenvalue");
    const Matrix coefs = sym_inv_sqrt(w) * kernel.vectors; // columns b_i
    const Vector centered = a - mean;
    double acc = 0.0;
    for (int i = 0; i < truncation; ++i) {
        const double score = centered.dot(w * coefs.col(i));
        acc += score * score / kernel.values(i);
    }
    return acc;
}

double chi2_cutoff(int dof, double quantile) { return chi2_quantile(quantile, dof); }

std::vector<DistanceResult> flag_outliers(const std::vector<double>& squared_distances,
                                          int dof, double quantile) {
    const double cutoff = chi2_cutoff(dof, quantile);
    std::vector<DistanceResult> out;
    out.reserve(squared_distances.size());
    for (double d : squared_distances) {
        if (d < 0.0)
            throw InvalidInputError("flag_outliers: negative squared distance");
        out.push_back(DistanceResult{d, dof, cutoff, d > cutoff});
    }
    return out;
}

} // namespace sepfda
