#include "sepfda/matnorm.hpp"

#include <cmath>
#include <string>

#include "sepfda/errors.hpp"

namespace sepfda {

namespace {

void require_fit_shapes(const SeparableFit& fit) {
    if (fit.sigma_row.rows() != fit.mean.cols() || fit.sigma_row.cols() != fit.mean.cols())
        throw InvalidInputError("separable fit: sigma_row does not match the mean width");
    if (fit.sigma_col.rows() != fit.mean.rows() || fit.sigma_col.cols() != fit.mean.rows())
        throw InvalidInputError("separable fit: sigma_col does not match the mean height");
}

void require_sample_shape(const Matrix& a, const SeparableFit& fit) {
    if (a.rows() != fit.mean.rows() || a.cols() != fit.mean.cols())
        throw InvalidInputError("sample shape " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " does not match fit " +
                                std::to_string(fit.mean.rows()) + "x" +
                                std::to_string(fit.mean.cols()));
}

// Projects a symmetric matrix to positive definiteness by flooring its
// eigenvalues at 1e-12 * lambda_max.  Returns false when even the largest
// eigenvalue is not positive.
bool floor_eigenvalues(Matrix& s) {
    const EigenPairs eig = sym_eigen(s);
    const double lambda_max = eig.values(0);
    if (!(lambda_max > 0.0)) return false;
    const double floor_at = 1e-12 * lambda_max;
    Vector fixed = eig.values.cwiseMax(floor_at);
    s = eig.vectors * fixed.asDiagonal() * eig.vectors.transpose();
    s = symmetrized(s);
    return true;
}

} // namespace

FitInverses::FitInverses(const SeparableFit& fit)
    : row_inv(spd_inverse(fit.sigma_row)),
      col_inv(spd_inverse(fit.sigma_col)),
      logdet_row(spd_logdet(fit.sigma_row)),
      logdet_col(spd_logdet(fit.sigma_col)) {}

double mmd2(const Matrix& a, const SeparableFit& fit, const FitInverses& cache) {
    require_sample_shape(a, fit);
    const Matrix centered = a - fit.mean;
    // tr(row_inv C' col_inv C) as an elementwise contraction
    return (cache.col_inv * centered * cache.row_inv).cwiseProduct(centered).sum();
}

double mmd2(const Matrix& a, const SeparableFit& fit) {
    require_fit_shapes(fit);
    return mmd2(a, fit, FitInverses(fit));
}

std::vector<double> mmd2_all(const std::vector<Matrix>& samples, const SeparableFit& fit) {
    require_fit_shapes(fit);
    const FitInverses cache(fit);
    std::vector<double> out;
    out.reserve(samples.size());
    for (const Matrix& a : samples) out.push_back(mmd2(a, fit, cache));
    return out;
}

double matnorm_logpdf(const Matrix& a, const SeparableFit& fit, const FitInverses& cache) {
    const double m = static_cast<double>(fit.rows());
    const double p = static_cast<double>(fit.cols());
    return -0.5 * mmd2(a, fit, cache) - 0.5 * m * p * std::log(2.0 * M_PI) -
           0.5 * p * cache.logdet_col - 0.5 * m * cache.logdet_row;
}

double matnorm_logpdf(const Matrix& a, const SeparableFit& fit) {
    require_fit_shapes(fit);
    return matnorm_logpdf(a, fit, FitInverses(fit));
}

int mmle_min_samples(int rows, int cols) {
    const double r = static_cast<double>(rows);
    const double c = static_cast<double>(cols);
    return static_cast<int>(std::floor(r / c + c / r)) + 2;
}

double separable_objective(const SeparableFit& fit) {
    return fit.cols() * spd_logdet(fit.sigma_col) + fit.rows() * spd_logdet(fit.sigma_row);
}

void apply_scale_convention(SeparableFit& fit) {
    const double trace = fit.sigma_row.trace();
    if (!(trace > 0.0))
        throw NumericError("scale convention: sigma_row trace is not positive");
    const double c = fit.cols() / trace;
    fit.sigma_row *= c;
    fit.sigma_col /= c;
}

MmleResult mmle_flipflop(const std::vector<Matrix>& samples, const MmleOptions& options) {
    const int n = static_cast<int>(samples.size());
    if (n == 0) throw InvalidInputError("mmle_flipflop: no samples");
    const int m = static_cast<int>(samples.front().rows());
    const int p = static_cast<int>(samples.front().cols());
    const int n_min = mmle_min_samples(m, p);
    if (n < n_min)
        throw InvalidInputError("mmle_flipflop: needs at least " + std::to_string(n_min) +
                                " samples for " + std::to_string(m) + "x" + std::to_string(p) +
                                " matrices, got " + std::to_string(n));
    for (const Matrix& a : samples) {
        require_finite(a, "mmle_flipflop");
        if (a.rows() != m || a.cols() != p)
            throw InvalidInputError("mmle_flipflop: samples have mixed shapes");
    }

    Matrix mean = Matrix::Zero(m, p);
    for (const Matrix& a : samples) mean += a;
    mean /= n;

    std::vector<Matrix> centered;
    centered.reserve(n);
    double scale = 0.0;
    double total_ss = 0.0;
    for (const Matrix& a : samples) {
        scale = std::max(scale, a.cwiseAbs().maxCoeff());
        centered.push_back(a - mean);
        total_ss += centered.back().squaredNorm();
    }
    const double rms_variation = std::sqrt(total_ss / (static_cast<double>(n) * m * p));
    if (rms_variation <= 1e-13 * (1.0 + scale))
        throw NumericError("mmle_flipflop: samples have insufficient variation "
                           "(all observations effectively identical)");

    MmleResult result;
    result.fit.mean = mean;
    result.fit.sigma_col = Matrix::Identity(m, m);
    result.fit.sigma_row = Matrix::Identity(p, p);
    result.fit.provenance = FitProvenance::mmle;

    auto safe_inverse = [&](Matrix& s, const char* side) {
        try {
            return spd_inverse(s);
        } catch (const NumericError&) {
            if (!floor_eigenvalues(s))
                throw NumericError(std::string("mmle_flipflop: singular ") + side +
                                   " update; samples have insufficient variation");
            result.fit.floored = true;
            return spd_inverse(s);
        }
    };

    double objective = 0.0;
    bool have_objective = false;
    result.converged = false;
    int iter = 0;
    for (; iter < options.max_iter; ++iter) {
        const Matrix col_inv = safe_inverse(result.fit.sigma_col, "column");
        Matrix row_scatter = Matrix::Zero(p, p);
        for (const Matrix& d : centered) row_scatter += d.transpose() * col_inv * d;
        result.fit.sigma_row = row_scatter / (static_cast<double>(m) * n);
        result.fit.sigma_row = symmetrized(result.fit.sigma_row);

        const Matrix row_inv = safe_inverse(result.fit.sigma_row, "row");
        Matrix col_scatter = Matrix::Zero(m, m);
        for (const Matrix& d : centered) col_scatter += d * row_inv * d.transpose();
        result.fit.sigma_col = col_scatter / (static_cast<double>(p) * n);
        result.fit.sigma_col = symmetrized(result.fit.sigma_col);

        if (!result.fit.sigma_col.allFinite() || !result.fit.sigma_row.allFinite())
            throw NumericError("mmle_flipflop: update diverged");

        double next;
        try {
            next = separable_objective(result.fit);
        } catch (const NumericError&) {
            if (!floor_eigenvalues(result.fit.sigma_col) || !floor_eigenvalues(result.fit.sigma_row))
                throw NumericError("mmle_flipflop: singular update; samples have insufficient variation");
            result.fit.floored = true;
            next = separable_objective(result.fit);
        }

        if (options.track_loglik) {
            const FitInverses cache(result.fit);
            double acc = 0.0;
            for (const Matrix& a : samples) acc += matnorm_logpdf(a, result.fit, cache);
            result.mean_loglik_trace.push_back(acc / n);
        }

        if (have_objective && std::abs(next - objective) <= options.tol * (1.0 + std::abs(objective))) {
            objective = next;
            ++iter;
            result.converged = true;
            break;
        }
        objective = next;
        have_objective = true;
    }

    result.iterations = iter;
    result.objective = objective;
    result.fit.converged = result.converged;
    apply_scale_convention(result.fit);
    return result;
}

Matrix sample_matrix_normal(const SeparableFit& fit, Rng& rng) {
    require_fit_shapes(fit);
    const Matrix l_col = spd_factor(fit.sigma_col);
    const Matrix l_row = spd_factor(fit.sigma_row);
    Matrix z(fit.rows(), fit.cols());
    for (int i = 0; i < z.rows(); ++i)
        for (int j = 0; j < z.cols(); ++j) z(i, j) = rng.normal();
    return fit.mean + l_col * z * l_row.transpose();
}

} // namespace sepfda
