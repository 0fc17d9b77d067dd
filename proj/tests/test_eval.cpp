#include <doctest.h>

#include <cmath>

#include "sepfda/errors.hpp"
#include "sepfda/eval.hpp"
#include "sepfda/rng.hpp"

using namespace sepfda;

namespace {
const Interval kUnit{0.0, 1.0};
}

TEST_CASE("confusion metrics: conventions and hand counts") {
    const Confusion perfect =
        confusion_metrics({true, false, true, false}, {true, false, true, false});
    CHECK(perfect.precision == 1.0);
    CHECK(perfect.recall == 1.0);
    CHECK(perfect.f_score == 1.0);
    CHECK(perfect.tp == 2);
    CHECK(perfect.tn == 2);

    // no predicted positives but true outliers exist
    const Confusion none = confusion_metrics({false, false, false}, {true, false, true});
    CHECK(none.precision == 0.0);
    CHECK(none.recall == 0.0);
    CHECK(none.f_score == 0.0);

    // TP=2, FP=1, FN=1
    const Confusion hand = confusion_metrics({true, true, true, false, false},
                                             {true, true, false, true, false});
    CHECK(hand.precision == doctest::Approx(2.0 / 3.0));
    CHECK(hand.recall == doctest::Approx(2.0 / 3.0));
    CHECK(hand.f_score == doctest::Approx(2.0 / 3.0));
    CHECK(hand.tp + hand.fp + hand.tn + hand.fn == 5);

    CHECK(hand.f_score <= 2.0 * hand.precision);
    CHECK(hand.f_score <= 2.0 * hand.recall);

    CHECK_THROWS_AS(confusion_metrics({true}, {true, false}), InvalidInputError);
}

TEST_CASE("auc: separation, ties, and the pairwise oracle") {
    CHECK(auc({1.0, 2.0, 9.0, 10.0}, {false, false, true, true}) == doctest::Approx(1.0));
    CHECK(auc({5.0, 5.0, 5.0, 5.0}, {false, true, false, true}) == doctest::Approx(0.5));
    CHECK(auc({1.0, 2.0, 3.0, 4.0}, {false, true, false, true}) == doctest::Approx(0.75));

    CHECK_THROWS_AS(auc({1.0, 2.0}, {true, true}), InvalidInputError);
    CHECK_THROWS_AS(auc({1.0, 2.0}, {false, false}), InvalidInputError);

    // pairwise comparison oracle with ties counted half
    Rng rng(5);
    std::vector<double> scores;
    std::vector<bool> labels;
    for (int i = 0; i < 60; ++i) {
        scores.push_back(std::round(rng.normal() * 3.0) / 3.0); // induce ties
        labels.push_back(rng.bernoulli(0.4));
    }
    double wins = 0.0;
    int pairs = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (!labels[i]) continue;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (labels[j]) continue;
            ++pairs;
            if (scores[i] > scores[j]) wins += 1.0;
            else if (scores[i] == scores[j]) wins += 0.5;
        }
    }
    CHECK(auc(scores, labels) == doctest::Approx(wins / pairs).epsilon(1e-12));

    // invariance under strictly increasing transforms
    std::vector<double> warped;
    for (double s : scores) warped.push_back(std::exp(0.3 * s) + 2.0);
    CHECK(auc(warped, labels) == doctest::Approx(auc(scores, labels)).epsilon(1e-12));
}

TEST_CASE("mean_error: exact fit, constant offset, grid refinement") {
    const BasisSystem basis = make_basis(kUnit, 8, 3);
    const TimeGrid grid = uniform_grid(kUnit, 100);

    // coefficients reproducing the target mean exactly (constant function)
    auto constant_mean = [](double) { return 2.5; };
    Matrix coefs = Matrix::Constant(8, 3, 2.5); // partition of unity
    CHECK(mean_error(coefs, constant_mean, basis, grid) == doctest::Approx(0.0));

    // constant offset c per coordinate gives c^2
    Matrix off = Matrix::Constant(8, 3, 3.2);
    CHECK(mean_error(off, constant_mean, basis, grid) ==
          doctest::Approx(0.49).epsilon(1e-9));

    // random case: coarse vs 10x finer grid agree within 1 percent
    Rng rng(7);
    Matrix rand_coefs(8, 2);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 2; ++j) rand_coefs(i, j) = rng.normal();
    auto target = [](double t) { return std::sin(3.0 * t); };
    const double coarse = mean_error(rand_coefs, target, basis, grid);
    const double fine = mean_error(rand_coefs, target, basis, uniform_grid(kUnit, 1000));
    CHECK(std::abs(coarse - fine) < 0.01 * fine);
}

TEST_CASE("cov_error: exact reproduction and scale invariance") {
    Rng rng(11);
    const BasisSystem basis = make_basis(kUnit, 8, 3);
    const TimeGrid grid = uniform_grid(kUnit, 60);
    const KernelSpec kernel = KernelSpec::ou(0.3, 0.3);

    // fitted kernel equal to the truth: project kappa onto the basis pair grid
    // by least squares on a fine evaluation
    const int fine_n = 200;
    const TimeGrid fine = uniform_grid(kUnit, fine_n);
    Matrix design(fine_n, 8);
    for (int l = 0; l < fine_n; ++l)
        design.row(l) = eval_basis(basis, fine.points[l]).transpose();
    Matrix kappa(fine_n, fine_n);
    for (int s = 0; s < fine_n; ++s)
        for (int t = 0; t < fine_n; ++t)
            kappa(s, t) = kernel_eval(kernel, fine.points[s], fine.points[t]);
    // sigma_col from the two-sided least squares fit of the kernel surface
    const Matrix gram_d = design.transpose() * design;
    const Matrix proj = spd_inverse(gram_d) * design.transpose();
    Matrix sigma_col = proj * kappa * proj.transpose();
    sigma_col = symmetrized(sigma_col);

    Matrix sigma_row(2, 2);
    sigma_row << 1.3, 0.4, 0.4, 0.9;

    SeparableFit fit;
    fit.mean = Matrix::Zero(8, 2);
    fit.sigma_row = sigma_row;
    fit.sigma_col = sigma_col;

    const double base = cov_error(fit, sigma_row, kernel, basis, grid);
    CHECK(base < 1e-4); // small projection error only

    // scale trade-off leaves the error unchanged
    SeparableFit scaled = fit;
    scaled.sigma_row *= 7.0;
    scaled.sigma_col /= 7.0;
    CHECK(cov_error(scaled, sigma_row, kernel, basis, grid) ==
          doctest::Approx(base).epsilon(1e-10));

    // doubling sigma_row with a fixed kernel: difference equals the original
    // surface, so the error equals the norm of the true surface
    SeparableFit doubled = fit;
    doubled.sigma_row = 2.0 * sigma_row;
    const double err2 = cov_error(doubled, sigma_row, kernel, basis, grid);
    SeparableFit null_fit = fit;
    null_fit.sigma_col = 1e-300 * Matrix::Identity(8, 8); // fitted surface ~ 0
    const double norm_truth = cov_error(null_fit, sigma_row, kernel, basis, grid);
    CHECK(err2 == doctest::Approx(norm_truth).epsilon(0.02));
}
