#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "sepfda/chi2.hpp"
#include "sepfda/errors.hpp"
#include "sepfda/fmodel.hpp"
#include "sepfda/rng.hpp"

using namespace sepfda;

namespace {

const Interval kUnit{0.0, 1.0};

Matrix random_spd(int dim, Rng& rng, double jitter = 0.4) {
    Matrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = rng.normal();
    return symmetrized(Matrix(g * g.transpose() / dim + jitter * Matrix::Identity(dim, dim)));
}

SeparableFit random_fit(int m, int p, Rng& rng) {
    SeparableFit fit;
    fit.mean.resize(m, p);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < p; ++j) fit.mean(i, j) = rng.normal();
    fit.sigma_col = random_spd(m, rng);
    fit.sigma_row = random_spd(p, rng);
    return fit;
}

} // namespace

TEST_CASE("full-truncation spectral distance equals the coefficient route") {
    Rng rng(3);
    for (int rep = 0; rep < 30; ++rep) {
        const int m = 4 + static_cast<int>(rng.uniform_int(5)); // up to 8
        const int p = 2 + static_cast<int>(rng.uniform_int(4)); // up to 5
        const BasisSystem basis = make_basis(kUnit, m, 3);
        const SeparableFit fit = random_fit(m, p, rng);
        Rng draw(100 + rep);
        const Matrix a = sample_matrix_normal(fit, draw);
        const double coef = fmmd2_coef(a, fit);
        const double spectral = fmmd2_spectral(a, fit, basis, m * p);
        CHECK(std::abs(spectral - coef) <= 1e-8 * (1.0 + coef));
    }
}

TEST_CASE("diagonal sigma_row splits the distance across coordinates") {
    // Corollary-style reduction: with uncorrelated coordinates the distance is
    // the sum of scaled univariate distances.
    Rng rng(7);
    const int m = 5, p = 3;
    const BasisSystem basis = make_basis(kUnit, m, 3);
    SeparableFit fit;
    fit.mean.resize(m, p);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < p; ++j) fit.mean(i, j) = rng.normal();
    fit.sigma_col = random_spd(m, rng);
    fit.sigma_row = Matrix::Zero(p, p);
    fit.sigma_row.diagonal() << 1.5, 0.7, 2.2;

    Rng draw(11);
    const Matrix a = sample_matrix_normal(fit, draw);
    const double whole = fmmd2_coef(a, fit);
    double parts = 0.0;
    for (int j = 0; j < p; ++j) {
        const double uni = fmd2(a.col(j), fit.mean.col(j), fit.sigma_col, basis, m);
        parts += uni / fit.sigma_row(j, j);
    }
    CHECK(parts == doctest::Approx(whole).epsilon(1e-9));
}

TEST_CASE("whitening the coordinates splits the distance into univariate terms") {
    // full-rank reduction: after mixing by sigma_row^{-1/2} the coordinates are
    // uncorrelated with common kernel, so the distance is the plain sum of
    // univariate distances of the whitened coefficient columns.
    Rng rng(11);
    const int m = 5, p = 3;
    const BasisSystem basis = make_basis(kUnit, m, 3);
    const SeparableFit fit = random_fit(m, p, rng);
    Rng draw(13);
    const Matrix a = sample_matrix_normal(fit, draw);

    const Matrix whiten = sym_inv_sqrt(fit.sigma_row);
    const Matrix a_w = a * whiten;
    const Matrix mean_w = fit.mean * whiten;
    double parts = 0.0;
    for (int j = 0; j < p; ++j)
        parts += fmd2(a_w.col(j), mean_w.col(j), fit.sigma_col, basis, m);
    CHECK(parts == doctest::Approx(fmmd2_coef(a, fit)).epsilon(1e-9));
}

TEST_CASE("block-diagonal sigma_row splits the distance across blocks") {
    Rng rng(13);
    const int m = 4;
    const BasisSystem basis = make_basis(kUnit, m, 3);
    SeparableFit fit;
    fit.mean = Matrix::Zero(m, 5);
    fit.sigma_col = random_spd(m, rng);
    fit.sigma_row = Matrix::Zero(5, 5);
    fit.sigma_row.block(0, 0, 2, 2) = random_spd(2, rng);
    fit.sigma_row.block(2, 2, 3, 3) = random_spd(3, rng);

    Rng draw(17);
    const Matrix a = sample_matrix_normal(fit, draw);

    SeparableFit first;
    first.mean = Matrix::Zero(m, 2);
    first.sigma_col = fit.sigma_col;
    first.sigma_row = fit.sigma_row.block(0, 0, 2, 2);
    SeparableFit second;
    second.mean = Matrix::Zero(m, 3);
    second.sigma_col = fit.sigma_col;
    second.sigma_row = fit.sigma_row.block(2, 2, 3, 3);

    const double whole = fmmd2_coef(a, fit);
    const double parts = fmmd2_coef(a.leftCols(2), first) + fmmd2_coef(a.rightCols(3), second);
    CHECK(std::abs(whole - parts) < 1e-9 * (1.0 + whole));
}

TEST_CASE("fmd2: quadratic-form identity at full truncation and monotonicity") {
    Rng rng(19);
    const int m = 6;
    const BasisSystem basis = make_basis(kUnit, m, 3);
    const Matrix sigma = random_spd(m, rng);
    Vector mean(m), a(m);
    for (int i = 0; i < m; ++i) {
        mean(i) = rng.normal();
        a(i) = rng.normal();
    }

    CHECK(fmd2(mean, mean, sigma, basis, m) == doctest::Approx(0.0));

    const Vector diff = a - mean;
    const double quad = diff.dot(spd_inverse(sigma) * diff);
    CHECK(fmd2(a, mean, sigma, basis, m) == doctest::Approx(quad).epsilon(1e-10));

    double last = 0.0;
    for (int trunc = 1; trunc <= m; ++trunc) {
        const double v = fmd2(a, mean, sigma, basis, trunc);
        CHECK(v >= last - 1e-12);
        last = v;
    }

    CHECK_THROWS_AS(fmd2(a, mean, sigma, basis, m + 1), InvalidInputError);
    CHECK_THROWS_AS(fmd2(a, mean, sigma, basis, 0), InvalidInputError);
}

TEST_CASE("single-component spectral distance matches a hand evaluation") {
    Rng rng(23);
    const int m = 4, p = 2;
    const BasisSystem basis = make_basis(kUnit, m, 3);
    const SeparableFit fit = random_fit(m, p, rng);
    const FpcaModel model = separable_fpca(fit, basis);

    // data aligned with the leading eigenfunction pair
    const auto [i0, j0] = model.product_index[0];
    const Matrix a = fit.mean + 3.0 * (fit.sigma_col * model.w * model.kernel_coefs.col(i0)) *
                                    model.row_vectors.col(j0).transpose() /
                                    model.kernel_values(i0);
    // score of component 1: v' (A-M)' W b  computed by hand
    const double score = model.row_vectors.col(j0).dot(
        (a - fit.mean).transpose() * model.w * model.kernel_coefs.col(i0));
    const double expected = score * score / model.product_values(0);
    CHECK(fmmd2_spectral(a, fit, model, 1) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("affine invariance under regular coordinate mixing") {
    Rng rng(29);
    for (int rep = 0; rep < 20; ++rep) {
        const int m = 4, p = 3;
        const SeparableFit fit = random_fit(m, p, rng);
        Rng draw(400 + rep);
        const Matrix a = sample_matrix_normal(fit, draw);

        Matrix g(p, p);
        do {
            for (int i = 0; i < p; ++i)
                for (int j = 0; j < p; ++j) g(i, j) = draw.normal();
        } while (std::abs(g.determinant()) < 0.1);
        Matrix shift(m, p);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < p; ++j) shift(i, j) = draw.normal();

        SeparableFit moved = fit;
        moved.mean = fit.mean * g.transpose() + shift;
        moved.sigma_row = symmetrized(Matrix(g * fit.sigma_row * g.transpose()));
        const Matrix a_moved = a * g.transpose() + shift;

        const double base = fmmd2_coef(a, fit);
        const double trans = fmmd2_coef(a_moved, moved);
        CHECK(std::abs(base - trans) <= 1e-8 * (1.0 + base));
    }
}

TEST_CASE("chi2_cutoff special cases") {
    CHECK(chi2_cutoff(2, 1.0 - std::exp(-1.0)) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(chi2_cutoff(1, 0.99) == doctest::Approx(6.6348966010212145).epsilon(1e-8));
}

TEST_CASE("flag_outliers conventions") {
    CHECK(flag_outliers({}, 3, 0.99).empty());

    const double cutoff = chi2_cutoff(4, 0.95);
    const auto results = flag_outliers({cutoff, cutoff + 1e-9, 0.0}, 4, 0.95);
    CHECK_FALSE(results[0].flagged); // exactly at the cutoff: not flagged
    CHECK(results[1].flagged);
    CHECK_FALSE(results[2].flagged);
    CHECK(results[0].cutoff == doctest::Approx(cutoff));

    CHECK_THROWS_AS(flag_outliers({-0.1}, 4, 0.95), InvalidInputError);
}

TEST_CASE("flagged fraction of true-model draws matches the quantile") {
    Rng rng(31);
    SeparableFit fit = random_fit(5, 3, rng);
    const int n = 20000;
    Rng draw(37);
    std::vector<double> distances;
    distances.reserve(n);
    const FitInverses cache(fit);
    for (int i = 0; i < n; ++i)
        distances.push_back(mmd2(sample_matrix_normal(fit, draw), fit, cache));
    const auto flagged = flag_outliers(distances, 15, 0.99);
    int count = 0;
    for (const auto& r : flagged) count += r.flagged;
    const double rate = static_cast<double>(count) / n;
    CHECK(std::abs(rate - 0.01) < 3.0 * std::sqrt(0.0099 / n));
}

TEST_CASE("empirical law: Kolmogorov distance to chi-square") {
    Rng rng(41);
    SeparableFit fit = random_fit(5, 3, rng);
    const int n = 5000;
    Rng draw(43);
    std::vector<double> distances;
    distances.reserve(n);
    const FitInverses cache(fit);
    for (int i = 0; i < n; ++i)
        distances.push_back(mmd2(sample_matrix_normal(fit, draw), fit, cache));
    std::sort(distances.begin(), distances.end());
    double ks = 0.0;
    for (int i = 0; i < n; ++i) {
        const double cdf = chi2_cdf(distances[i], 15);
        ks = std::max(ks, std::abs(cdf - (i + 1.0) / n));
        ks = std::max(ks, std::abs(cdf - static_cast<double>(i) / n));
    }
    CHECK(ks <= 1.63 / std::sqrt(static_cast<double>(n)));
}
