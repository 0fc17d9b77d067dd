#pragma once

#include <utility>
#include <vector>

#include "sepfda/basis.hpp"
#include "sepfda/matnorm.hpp"

namespace sepfda {

/// Eigenstructure of a separable fit: kernel eigenpairs from
/// W^{1/2} sigma_col W^{1/2}, row eigenpairs from sigma_row, and the product
/// spectrum pi_{k(i,j)} = lambda_i^ker * lambda_j^row sorted descending
/// (ties broken by kernel index, then row index).
struct FpcaModel {
    Vector kernel_values;  // m, descending
    Matrix kernel_coefs;   // m x m; column i holds b_i with b_i' W b_j = delta_ij
    Vector row_values;     // p, descending
    Matrix row_vectors;    // p x p, orthonormal columns
    Vector product_values; // m*p, descending
    std::vector<std::pair<int, int>> product_index; // k -> (kernel i, row j)
    Matrix w;              // Gram matrix of the basis on the full domain

    int max_truncation() const { return static_cast<int>(product_values.size()); }
};

FpcaModel separable_fpca(const SeparableFit& fit, const BasisSystem& basis);

/// Projection scores score_k = v_j' (A - M)' W b_i for the first `truncation`
/// product eigenpairs.
Vector fpca_scores(const Matrix& a, const SeparableFit& fit, const FpcaModel& model,
                   int truncation);

/// True when the requested truncation would split a group of (numerically)
/// equal product eigenvalues.
bool truncation_splits_tie(const FpcaModel& model, int truncation);

} // namespace sepfda
