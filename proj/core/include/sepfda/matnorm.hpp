#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sepfda/linalg.hpp"
#include "sepfda/rng.hpp"

namespace sepfda {

enum class FitProvenance { mmle, mmcd_raw, mmcd_reweighted };

/// Separable second-moment model for m x p coefficient matrices:
/// vec(A) has mean vec(mean) and covariance sigma_row (x) sigma_col.
/// The multiplicative trade-off between the two factors is resolved by the
/// convention trace(sigma_row) = p.
struct SeparableFit {
    Matrix mean;       // m x p
    Matrix sigma_row;  // p x p, between coordinates
    Matrix sigma_col;  // m x m, between coefficient rows
    std::string scale_convention = "trace_row_equals_p";
    FitProvenance provenance = FitProvenance::mmle;
    std::optional<std::vector<int>> h_subset;
    std::optional<std::vector<double>> distances;
    bool converged = true; // false when the flip-flop stopped at max_iter
    bool floored = false;  // covariance eigenvalues were floored

    int rows() const { return static_cast<int>(mean.rows()); } // m
    int cols() const { return static_cast<int>(mean.cols()); } // p
};

/// Cached inverses and log-determinants for repeated evaluation.
struct FitInverses {
    Matrix row_inv;
    Matrix col_inv;
    double logdet_row;
    double logdet_col;
    explicit FitInverses(const SeparableFit& fit);
};

/// Squared matrix Mahalanobis distance
/// tr(sigma_row^{-1} (A-M)' sigma_col^{-1} (A-M)).
double mmd2(const Matrix& a, const SeparableFit& fit);
double mmd2(const Matrix& a, const SeparableFit& fit, const FitInverses& cache);
std::vector<double> mmd2_all(const std::vector<Matrix>& samples, const SeparableFit& fit);

double matnorm_logpdf(const Matrix& a, const SeparableFit& fit);
double matnorm_logpdf(const Matrix& a, const SeparableFit& fit, const FitInverses& cache);

/// Smallest sample count for which the flip-flop estimates exist,
/// floor(rows/cols + cols/rows) + 2.
int mmle_min_samples(int rows, int cols);

/// Log-determinant objective ln det(sigma_row (x) sigma_col)
/// = cols * logdet(sigma_col) + rows * logdet(sigma_row); invariant under the
/// scale trade-off.
double separable_objective(const SeparableFit& fit);

struct MmleOptions {
    double tol = 1e-8;
    int max_iter = 100;
    bool track_loglik = false; // record mean log-likelihood per iteration
};

struct MmleResult {
    SeparableFit fit;
    double objective = 0.0;
    int iterations = 0;
    bool converged = true;
    std::vector<double> mean_loglik_trace; // filled when track_loglik is set
};

/// Alternating closed-form covariance updates from a sigma_col = identity
/// start, stopping when the relative change of the objective falls below tol.
/// The scale convention is applied to the returned fit.
MmleResult mmle_flipflop(const std::vector<Matrix>& samples, const MmleOptions& options = {});

/// Rescales so that trace(sigma_row) = p, compensating sigma_col.
void apply_scale_convention(SeparableFit& fit);

/// Draws A = mean + L_col Z L_row' with Z iid standard normal, so that
/// vec(A) has covariance sigma_row (x) sigma_col.
Matrix sample_matrix_normal(const SeparableFit& fit, Rng& rng);

} // namespace sepfda
