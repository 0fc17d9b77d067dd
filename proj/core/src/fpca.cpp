#include "sepfda/fpca.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sepfda/errors.hpp"

namespace sepfda {

FpcaModel separable_fpca(const SeparableFit& fit, const BasisSystem& basis) {
    if (basis.size != fit.rows())
        throw InvalidInputError("separable_fpca: basis size does not match the fit");
    FpcaModel model;
    model.w = gram(basis, basis.domain);
    const Matrix w_half = sym_sqrt(model.w);
    const Matrix w_inv_half = sym_inv_sqrt(model.w);

    const EigenPairs kernel = sym_eigen(w_half * fit.sigma_col * w_half);
    model.kernel_values = kernel.values;
    model.kernel_coefs = w_inv_half * kernel.vectors;

    const EigenPairs row = sym_eigen(fit.sigma_row);
    model.row_values = row.values;
    model.row_vectors = row.vectors;

    const int m = fit.rows();
    const int p = fit.cols();
    model.product_index.reserve(m * p);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < p; ++j) model.product_index.emplace_back(i, j);
    std::sort(model.product_index.begin(), model.product_index.end(),
              [&](const std::pair<int, int>& a, const std::pair<int, int>& b) {
                  const double pa = model.kernel_values(a.first) * model.row_values(a.second);
                  const double pb = model.kernel_values(b.first) * model.row_values(b.second);
                  if (pa != pb) return pa > pb;
                  return a < b;
              });
    model.product_values.resize(m * p);
    for (int k = 0; k < m * p; ++k) {
        const auto& [i, j] = model.product_index[k];
        model.product_values(k) = model.kernel_values(i) * model.row_values(j);
    }
    return model;
}

Vector fpca_scores(const Matrix& a, const SeparableFit& fit, const FpcaModel& model,
                   int truncation) {
    if (a.rows() != fit.rows() || a.cols() != fit.cols())
        throw InvalidInputError("fpca_scores: sample shape does not match the fit");
    if (truncation < 1 || truncation > model.max_truncation())
        throw InvalidInputError("fpca_scores: truncation " + std::to_string(truncation) +
                                " outside [1, " + std::to_string(model.max_truncation()) + "]");
    // score(i, j) = v_j' (A - M)' W b_i, all pairs at once
    const Matrix all = model.row_vectors.transpose() * (a - fit.mean).transpose() * model.w *
                       model.kernel_coefs; // p x m, entry (j, i)
    Vector out(truncation);
    for (int k = 0; k < truncation; ++k) {
        const auto& [i, j] = model.product_index[k];
        out(k) = all(j, i);
    }
    return out;
}

bool truncation_splits_tie(const FpcaModel& model, int truncation) {
    if (truncation <= 0 || truncation >= model.max_truncation()) return false;
    const double at = model.product_values(truncation - 1);
    const double next = model.product_values(truncation);
    return std::abs(at - next) <= 1e-12 * std::max(1.0, std::abs(at));
}

} // namespace sepfda
