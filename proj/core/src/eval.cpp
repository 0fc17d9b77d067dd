#include "sepfda/eval.hpp"

#include <algorithm>
#include <numeric>

#include "sepfda/errors.hpp"

namespace sepfda {

Confusion confusion_metrics(const std::vector<bool>& flags, const std::vector<bool>& labels) {
    if (flags.size() != labels.size())
        throw InvalidInputError("confusion_metrics: flags and labels differ in length");
    Confusion c;
    for (std::size_t i = 0; i < flags.size(); ++i) {
        if (flags[i] && labels[i]) ++c.tp;
        else if (flags[i] && !labels[i]) ++c.fp;
        else if (!flags[i] && labels[i]) ++c.fn;
        else ++c.tn;
    }
    c.precision = (c.tp + c.fp > 0) ? static_cast<double>(c.tp) / (c.tp + c.fp) : 0.0;
    c.recall = (c.tp + c.fn > 0) ? static_cast<double>(c.tp) / (c.tp + c.fn) : 0.0;
    c.f_score = (c.precision + c.recall > 0.0)
                    ? 2.0 * c.precision * c.recall / (c.precision + c.recall)
                    : 0.0;
    return c;
}

double auc(const std::vector<double>& scores, const std::vector<bool>& labels) {
    if (scores.size() != labels.size())
        throw InvalidInputError("auc: scores and labels differ in length");
    const std::size_t n = scores.size();
    std::size_t n_pos = 0;
    for (bool l : labels) n_pos += l;
    const std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0)
        throw InvalidInputError("auc: undefined with a single class");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // midranks over tied groups
    std::vector<double> rank(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
        const double mid = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) rank[order[k]] = mid;
        i = j + 1;
    }

    double rank_sum = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        if (labels[k]) rank_sum += rank[k];
    const double u = rank_sum - static_cast<double>(n_pos) * (n_pos + 1) / 2.0;
    return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

namespace {

Vector trapezoid_weights(const TimeGrid& grid) {
    const int q = grid.size();
    Vector w(q);
    w(0) = (grid.points[1] - grid.points[0]) / 2.0;
    w(q - 1) = (grid.points[q - 1] - grid.points[q - 2]) / 2.0;
    for (int l = 1; l < q - 1; ++l) w(l) = (grid.points[l + 1] - grid.points[l - 1]) / 2.0;
    return w;
}

} // namespace

double mean_error(const Matrix& mean_coefs, const std::function<double(double)>& true_mean,
                  const BasisSystem& basis, const TimeGrid& grid) {
    grid.validate();
    if (mean_coefs.rows() != basis.size)
        throw InvalidInputError("mean_error: coefficient height does not match the basis");
    const int p = static_cast<int>(mean_coefs.cols());
    const Vector w = trapezoid_weights(grid);
    double acc = 0.0;
    for (int l = 0; l < grid.size(); ++l) {
        const double t = grid.points[l];
        const Vector fitted = mean_coefs.transpose() * eval_basis(basis, t); // p
        const double truth = true_mean(t);
        acc += w(l) * (fitted.array() - truth).square().sum();
    }
    return acc / (p * grid.domain.length());
}

double cov_error(const SeparableFit& fit, const Matrix& true_sigma_row,
                 const KernelSpec& true_kernel, const BasisSystem& basis, const TimeGrid& grid) {
    grid.validate();
    const int p = fit.cols();
    if (true_sigma_row.rows() != p || true_sigma_row.cols() != p)
        throw InvalidInputError("cov_error: true sigma_row must be p x p");
    if (basis.size != fit.rows())
        throw InvalidInputError("cov_error: basis size does not match the fit");

    const int q = grid.size();
    Matrix design(q, basis.size);
    for (int l = 0; l < q; ++l)
        design.row(l) = eval_basis(basis, grid.points[l]).transpose();
    const Matrix kappa_hat = design * fit.sigma_col * design.transpose(); // q x q

    // || A k1 - B k2 ||_F^2 = k1^2 <A,A> - 2 k1 k2 <A,B> + k2^2 <B,B>
    const double aa = true_sigma_row.squaredNorm();
    const double ab = true_sigma_row.cwiseProduct(fit.sigma_row).sum();
    const double bb = fit.sigma_row.squaredNorm();

    const Vector w = trapezoid_weights(grid);
    double acc = 0.0;
    for (int s = 0; s < q; ++s) {
        for (int t = 0; t < q; ++t) {
            const double k_true = kernel_eval(true_kernel, grid.points[s], grid.points[t]);
            const double k_hat = kappa_hat(s, t);
            acc += w(s) * w(t) * (k_true * k_true * aa - 2.0 * k_true * k_hat * ab + k_hat * k_hat * bb);
        }
    }
    const double norm = p * grid.domain.length();
    return acc / (norm * norm);
}

} // namespace sepfda
