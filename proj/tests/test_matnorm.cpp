#include <doctest.h>

#include <cmath>

#include "sepfda/errors.hpp"
#include "sepfda/matnorm.hpp"
#include "sepfda/rng.hpp"

using namespace sepfda;

namespace {

Matrix random_spd(int dim, Rng& rng, double jitter = 0.4) {
    Matrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = rng.normal();
    Matrix s = g * g.transpose() / dim + jitter * Matrix::Identity(dim, dim);
    return (s + s.transpose()) / 2.0;
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

Matrix kronecker(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Vector vectorize(const Matrix& a) {
    Vector v(a.size());
    Eigen::Index k = 0;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i) v(k++) = a(i, j);
    return v;
}

} // namespace

TEST_CASE("mmd2 basics") {
    Rng rng(7);
    const SeparableFit fit = random_fit(4, 3, rng);
    CHECK(mmd2(fit.mean, fit) == doctest::Approx(0.0));

    SeparableFit identity_fit = fit;
    identity_fit.sigma_row = Matrix::Identity(3, 3);
    identity_fit.sigma_col = Matrix::Identity(4, 4);
    Matrix a = fit.mean;
    a(1, 2) += 2.0;
    a(0, 0) -= 1.0;
    CHECK(mmd2(a, identity_fit) ==
          doctest::Approx((a - fit.mean).squaredNorm()).epsilon(1e-12));

    Matrix wrong(5, 3);
    wrong.setZero();
    CHECK_THROWS_AS(mmd2(wrong, fit), InvalidInputError);
}

TEST_CASE("mmd2 equals the Kronecker vectorized quadratic form") {
    Rng rng(13);
    for (int rep = 0; rep < 10; ++rep) {
        const int m = 2 + static_cast<int>(rng.uniform_int(3));
        const int p = 2 + static_cast<int>(rng.uniform_int(2));
        const SeparableFit fit = random_fit(m, p, rng);
        Matrix a(m, p);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < p; ++j) a(i, j) = rng.normal();

        const Vector diff = vectorize(a) - vectorize(fit.mean);
        const Matrix big = kronecker(fit.sigma_row, fit.sigma_col);
        const double oracle = diff.dot(spd_inverse(big) * diff);
        CHECK(mmd2(a, fit) == doctest::Approx(oracle).epsilon(1e-9));
    }
}

TEST_CASE("mmd2 is invariant under the scale trade-off") {
    Rng rng(17);
    const SeparableFit fit = random_fit(5, 3, rng);
    Matrix a = fit.mean;
    a.array() += 0.7;
    const double base = mmd2(a, fit);
    for (double c : {0.2, 3.0, 11.0}) {
        SeparableFit scaled = fit;
        scaled.sigma_row *= c;
        scaled.sigma_col /= c;
        CHECK(std::abs(mmd2(a, scaled) - base) <= 1e-10 * (1.0 + base));
    }
}

TEST_CASE("matnorm_logpdf closed forms") {
    SeparableFit unit;
    unit.mean = Matrix::Zero(1, 1);
    unit.sigma_row = Matrix::Identity(1, 1);
    unit.sigma_col = Matrix::Identity(1, 1);
    CHECK(matnorm_logpdf(Matrix::Zero(1, 1), unit) ==
          doctest::Approx(-0.5 * std::log(2.0 * M_PI)).epsilon(1e-14));

    // mode at the mean
    Rng rng(19);
    const SeparableFit fit = random_fit(3, 2, rng);
    const double at_mean = matnorm_logpdf(fit.mean, fit);
    for (int rep = 0; rep < 5; ++rep) {
        Matrix a = fit.mean;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 2; ++j) a(i, j) += 0.3 * rng.normal();
        CHECK(matnorm_logpdf(a, fit) <= at_mean);
    }
}

TEST_CASE("matnorm_logpdf equals the vectorized normal logpdf") {
    Rng rng(23);
    const SeparableFit fit = random_fit(2, 3, rng);
    Matrix a(2, 3);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) a(i, j) = rng.normal();
    const Matrix big = kronecker(fit.sigma_row, fit.sigma_col);
    const Vector diff = vectorize(a) - vectorize(fit.mean);
    const double quad = diff.dot(spd_inverse(big) * diff);
    const double oracle =
        -0.5 * quad - 0.5 * 6.0 * std::log(2.0 * M_PI) - 0.5 * spd_logdet(big);
    CHECK(matnorm_logpdf(a, fit) == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("scale convention is idempotent") {
    Rng rng(29);
    SeparableFit fit = random_fit(4, 3, rng);
    apply_scale_convention(fit);
    CHECK(fit.sigma_row.trace() == doctest::Approx(3.0).epsilon(1e-12));
    const Matrix once_row = fit.sigma_row;
    const Matrix once_col = fit.sigma_col;
    apply_scale_convention(fit);
    CHECK((fit.sigma_row - once_row).norm() < 1e-14 * once_row.norm());
    CHECK((fit.sigma_col - once_col).norm() < 1e-14 * once_col.norm());
}

TEST_CASE("sample_matrix_normal: determinism and moments") {
    Rng rng(31);
    SeparableFit fit = random_fit(3, 2, rng);
    fit.mean.setZero();

    Rng a_stream(77);
    Rng b_stream(77);
    const Matrix a = sample_matrix_normal(fit, a_stream);
    const Matrix b = sample_matrix_normal(fit, b_stream);
    CHECK(a == b); // bit identical for a fixed seed

    // empirical covariance of vec(A) vs the Kronecker product
    const int n = 100000;
    Rng draw(5);
    Matrix acc = Matrix::Zero(6, 6);
    Vector mean_acc = Vector::Zero(6);
    for (int i = 0; i < n; ++i) {
        const Vector v = vectorize(sample_matrix_normal(fit, draw));
        acc += v * v.transpose();
        mean_acc += v;
    }
    mean_acc /= n;
    const Matrix empirical = acc / n - mean_acc * mean_acc.transpose();
    const Matrix truth = kronecker(fit.sigma_row, fit.sigma_col);
    CHECK((empirical - truth).cwiseAbs().maxCoeff() < 0.05 * truth.cwiseAbs().maxCoeff());

    // CLT band for the mean (4 sigma)
    for (int k = 0; k < 6; ++k)
        CHECK(std::abs(mean_acc(k)) < 4.0 * std::sqrt(truth(k, k) / n));
}

TEST_CASE("mmd2 of true-model samples has chi-square mean") {
    Rng rng(37);
    SeparableFit fit = random_fit(4, 3, rng);
    const int n = 20000;
    Rng draw(11);
    double acc = 0.0;
    const FitInverses cache(fit);
    for (int i = 0; i < n; ++i) acc += mmd2(sample_matrix_normal(fit, draw), fit, cache);
    const double dof = 12.0;
    CHECK(std::abs(acc / n - dof) < 3.0 * std::sqrt(2.0 * dof / n));
}

TEST_CASE("mmle_flipflop preconditions") {
    Rng rng(41);
    const SeparableFit truth = random_fit(3, 3, rng);
    std::vector<Matrix> two;
    Rng draw(3);
    two.push_back(sample_matrix_normal(truth, draw));
    two.push_back(sample_matrix_normal(truth, draw));
    // floor(1 + 1) + 2 = 4 > 2
    CHECK_THROWS_AS(mmle_flipflop(two), InvalidInputError);

    // identical samples: singular update
    std::vector<Matrix> constant(6, truth.mean);
    CHECK_THROWS_AS(mmle_flipflop(constant), NumericError);
}

TEST_CASE("mmle_flipflop recovers a known Kronecker covariance") {
    Rng rng(43);
    SeparableFit truth = random_fit(5, 3, rng);
    apply_scale_convention(truth);
    std::vector<Matrix> samples;
    Rng draw(7);
    for (int i = 0; i < 500; ++i) samples.push_back(sample_matrix_normal(truth, draw));

    const MmleResult res = mmle_flipflop(samples);
    CHECK(res.converged);
    CHECK(res.fit.sigma_row.trace() == doctest::Approx(3.0).epsilon(1e-9));
    const Matrix est = kronecker(res.fit.sigma_row, res.fit.sigma_col);
    const Matrix tru = kronecker(truth.sigma_row, truth.sigma_col);
    CHECK((est - tru).norm() < 0.10 * tru.norm());
    CHECK((res.fit.mean - truth.mean).norm() < 0.1 * (1.0 + truth.mean.norm()));
}

TEST_CASE("flip-flop likelihood never decreases") {
    Rng rng(47);
    SeparableFit truth = random_fit(4, 2, rng);
    std::vector<Matrix> samples;
    Rng draw(9);
    for (int i = 0; i < 40; ++i) samples.push_back(sample_matrix_normal(truth, draw));

    MmleOptions options;
    options.track_loglik = true;
    const MmleResult res = mmle_flipflop(samples, options);
    REQUIRE(res.mean_loglik_trace.size() >= 2);
    for (std::size_t i = 1; i < res.mean_loglik_trace.size(); ++i)
        CHECK(res.mean_loglik_trace[i] >= res.mean_loglik_trace[i - 1] - 1e-9);
}
