#pragma once

#include <Eigen/Dense>

namespace sepfda {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Full spectral decomposition of a symmetric matrix.
struct EigenPairs {
    Vector values;  ///< eigenvalues, descending
    Matrix vectors; ///< orthonormal columns; the largest-magnitude entry of
                    ///< each column is positive (ties broken by lowest index)
};

void require_finite(const Matrix& m, const char* what);
void require_symmetric(const Matrix& s, const char* what);

/// (S + S') / 2 into fresh storage (safe to assign back to the argument).
inline Matrix symmetrized(const Matrix& s) { return 0.5 * (s + s.transpose()); }

/// Cyclic Jacobi eigendecomposition.  Deterministic: same input bits give the
/// same output bits within one build.
EigenPairs sym_eigen(const Matrix& s);

/// Lower-triangular Cholesky factor L with L L' = S.  Throws NumericError if a
/// pivot falls at or below dim * 1e-14 * max-diagonal.
Matrix spd_factor(const Matrix& s);

Matrix spd_inverse(const Matrix& s);

/// log det S from the Cholesky diagonal (sum of 2 log L_ii).
double spd_logdet(const Matrix& s);

/// Symmetric PSD square root.  Eigenvalues below dim * 1e-12 * lambda_max are
/// floored at that threshold; eigenvalues below -dim * 1e-10 * lambda_max are
/// rejected.
Matrix sym_sqrt(const Matrix& s);

/// Inverse square root under the same flooring policy as sym_sqrt.
Matrix sym_inv_sqrt(const Matrix& s);

} // namespace sepfda
