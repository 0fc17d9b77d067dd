#include "sepfda/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sepfda/bessel.hpp"
#include "sepfda/errors.hpp"

namespace sepfda {

KernelSpec KernelSpec::ou(double variance, double range) {
    if (!(variance > 0.0 && range > 0.0))
        throw InvalidInputError("kernel: Ornstein-Uhlenbeck parameters must be positive");
    KernelSpec spec;
    spec.kind = Kind::ornstein_uhlenbeck;
    spec.ou_variance = variance;
    spec.ou_range = range;
    return spec;
}

KernelSpec KernelSpec::matern(double sigma, double tau, double nu) {
    if (!(sigma > 0.0 && tau > 0.0 && nu > 0.0))
        throw InvalidInputError("kernel: Matern parameters must be positive");
    KernelSpec spec;
    spec.kind = Kind::matern;
    spec.matern_sigma = sigma;
    spec.matern_tau = tau;
    spec.matern_nu = nu;
    return spec;
}

double KernelSpec::variance() const {
    return kind == Kind::ornstein_uhlenbeck ? ou_variance : matern_sigma * matern_sigma;
}

double kernel_eval(const KernelSpec& spec, double s, double t) {
    const double dist = std::abs(s - t);
    if (spec.kind == KernelSpec::Kind::ornstein_uhlenbeck)
        return spec.ou_variance * std::exp(-dist / spec.ou_range);
    if (dist == 0.0) return spec.variance();
    const double nu = spec.matern_nu;
    const double z = spec.matern_tau * dist;
    return spec.variance() * std::pow(2.0, 1.0 - nu) / std::tgamma(nu) * std::pow(z, nu) *
           bessel_k(nu, z);
}

Matrix kernel_gram(const KernelSpec& spec, const TimeGrid& grid) {
    const int q = grid.size();
    Matrix k(q, q);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j <= i; ++j) {
            k(i, j) = kernel_eval(spec, grid.points[i], grid.points[j]);
            k(j, i) = k(i, j);
        }
    k.diagonal().array() += 1e-10 * spec.variance();
    return k;
}

Matrix make_sigma_row(int p, Rng& rng) {
    if (p < 1) throw InvalidInputError("make_sigma_row: p must be >= 1");
    if (p == 1) return Matrix::Ones(1, 1);

    // Dirichlet(1,...,1) eigenvalues scaled to sum p
    Vector lambda(p);
    double total = 0.0;
    for (int i = 0; i < p; ++i) {
        lambda(i) = rng.gamma(1.0);
        total += lambda(i);
    }
    lambda *= p / total;

    // random orthogonal basis with a deterministic sign fix
    Matrix g(p, p);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) g(i, j) = rng.normal();
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix qmat = qr.householderQ();
    const Matrix rmat = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < p; ++j)
        if (rmat(j, j) < 0.0) qmat.col(j) = -qmat.col(j);

    Matrix s = qmat * lambda.asDiagonal() * qmat.transpose();
    const Vector scale = s.diagonal().cwiseSqrt().cwiseInverse();
    s = scale.asDiagonal() * s * scale.asDiagonal();
    s = symmetrized(s);
    s.diagonal().setOnes();
    return s;
}

double mean_bump(double t) { return 30.0 * t * std::pow(1.0 - t, 1.5); }
double mean_linear(double t) { return 4.0 * t; }

DiscreteCurves sample_process(int n, int p, const TimeGrid& grid, const Matrix& sigma_row,
                              const KernelSpec& kernel, const ProcessOptions& options,
                              const Rng& rng) {
    if (n < 1 || p < 1) throw InvalidInputError("sample_process: n and p must be positive");
    grid.validate();
    if (sigma_row.rows() != p || sigma_row.cols() != p)
        throw InvalidInputError("sample_process: sigma_row must be p x p");
    const int q = grid.size();

    Matrix l_grid;
    try {
        l_grid = spd_factor(kernel_gram(kernel, grid));
    } catch (const NumericError&) {
        throw NumericError("sample_process: kernel matrix on the grid is degenerate after jitter");
    }
    const Matrix l_row = spd_factor(sigma_row);

    Vector mean_values(q);
    for (int l = 0; l < q; ++l) mean_values(l) = options.mean(grid.points[l]);

    DiscreteCurves curves;
    curves.grid = grid;
    curves.samples.reserve(n);
    curves.ids.reserve(n);
    for (int i = 0; i < n; ++i) {
        Rng stream = rng.substream(static_cast<std::uint64_t>(i));
        Matrix z(p, q);
        for (int r = 0; r < p; ++r)
            for (int c = 0; c < q; ++c) z(r, c) = stream.normal();
        Matrix centered = l_row * z * l_grid.transpose();
        if (options.innovation == Innovation::student_t) {
            if (!(options.t_dof > 0.0))
                throw InvalidInputError("sample_process: t degrees of freedom must be positive");
            centered /= std::sqrt(stream.chi_squared(options.t_dof) / options.t_dof);
        }
        centered.rowwise() += mean_values.transpose();
        curves.samples.push_back(std::move(centered));
        curves.ids.push_back("s" + std::to_string(i + 1));
    }
    return curves;
}

KernelGridEigens kernel_grid_eigens(const KernelSpec& spec, const TimeGrid& grid, int count) {
    grid.validate();
    const int q = grid.size();
    if (count < 1 || count > q)
        throw InvalidInputError("kernel_grid_eigens: count outside [1, q]");

    Vector weights(q);
    weights(0) = (grid.points[1] - grid.points[0]) / 2.0;
    weights(q - 1) = (grid.points[q - 1] - grid.points[q - 2]) / 2.0;
    for (int l = 1; l < q - 1; ++l)
        weights(l) = (grid.points[l + 1] - grid.points[l - 1]) / 2.0;

    const Vector root = weights.cwiseSqrt();
    Matrix k(q, q);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j <= i; ++j) {
            k(i, j) = root(i) * kernel_eval(spec, grid.points[i], grid.points[j]) * root(j);
            k(j, i) = k(i, j);
        }
    const EigenPairs eig = sym_eigen(k);

    KernelGridEigens out;
    out.values = eig.values.head(count);
    out.functions.resize(q, count);
    for (int c = 0; c < count; ++c)
        out.functions.col(c) = eig.vectors.col(c).cwiseQuotient(root);
    return out;
}

DiscreteCurves inject_outliers(const DiscreteCurves& curves, const OutlierSpec& spec,
                               const KernelGridEigens& eigens, const Vector& mean_on_grid,
                               const Rng& rng, std::vector<std::string>* warnings) {
    if (!(spec.fraction >= 0.0 && spec.fraction <= 1.0) ||
        !(spec.coordinate_fraction >= 0.0 && spec.coordinate_fraction <= 1.0))
        throw InvalidInputError("inject_outliers: fractions must be in [0, 1]");

    DiscreteCurves out = curves;
    const int n = curves.n();
    const int p = curves.p();
    const int q = curves.q();
    out.labels.assign(n, false);
    if (spec.fraction == 0.0) return out;

    const int n_outliers = static_cast<int>(std::ceil(spec.fraction * n));
    const int n_coords = static_cast<int>(std::floor(spec.coordinate_fraction * p));
    if (n_coords == 0) {
        if (warnings)
            warnings->push_back("outlier coordinate fraction selects zero of " +
                                std::to_string(p) + " coordinates; samples are labeled "
                                "but unchanged");
    }

    if (spec.type == OutlierSpec::Type::shift && eigens.functions.cols() < 1)
        throw InvalidInputError("inject_outliers: shift type needs the first kernel eigenfunction");
    if (spec.type == OutlierSpec::Type::shape && eigens.functions.cols() < 10)
        throw InvalidInputError("inject_outliers: shape type needs kernel rank >= 10");

    Rng pick_stream = rng.substream(0);
    const std::vector<int> chosen = sample_without_replacement(n, n_outliers, pick_stream);

    Matrix l_cov; // covariance-type replacement factor, built on demand
    if (spec.type == OutlierSpec::Type::covariance) {
        const KernelSpec repl = KernelSpec::matern(spec.cov_sigma, spec.cov_tau, spec.cov_nu);
        l_cov = spd_factor(kernel_gram(repl, curves.grid));
        if (mean_on_grid.size() != q)
            throw InvalidInputError("inject_outliers: mean_on_grid must match the grid");
    }

    for (int rank = 0; rank < n_outliers; ++rank) {
        const int i = chosen[rank];
        out.labels[i] = true;
        if (n_coords == 0) continue;
        Rng stream = rng.substream(static_cast<std::uint64_t>(i) + 1);
        const std::vector<int> coords = sample_without_replacement(p, n_coords, stream);
        Matrix& x = out.samples[i];
        switch (spec.type) {
        case OutlierSpec::Type::shift:
        case OutlierSpec::Type::shape: {
            const int which = spec.type == OutlierSpec::Type::shift ? 0 : 9;
            const Vector bump = spec.magnitude * eigens.functions.col(which);
            for (int j : coords) x.row(j) += bump.transpose();
            break;
        }
        case OutlierSpec::Type::covariance: {
            for (int j : coords) {
                Vector z(q);
                for (int l = 0; l < q; ++l) z(l) = stream.normal();
                x.row(j) = (mean_on_grid + l_cov * z).transpose();
            }
            break;
        }
        case OutlierSpec::Type::isolated: {
            for (int j : coords) {
                const double sign = stream.bernoulli(0.5) ? -1.0 : 1.0;
                const double center = stream.uniform(0.25, 0.75);
                for (int l = 0; l < q; ++l) {
                    const double t = curves.grid.points[l];
                    const double bump =
                        1.8 - std::exp(-(t - center) * (t - center) / 0.02) /
                                  std::sqrt(0.02 * M_PI);
                    x(j, l) += spec.magnitude * sign * bump;
                }
            }
            break;
        }
        }
    }
    return out;
}

DiscreteCurves sample_nonseparable(int n, int p, const TimeGrid& grid,
                                   const std::vector<std::pair<Matrix, KernelSpec>>& components,
                                   const std::function<double(double)>& mean, const Rng& rng) {
    if (components.empty())
        throw InvalidInputError("sample_nonseparable: needs at least one component");
    const int q = grid.size();

    DiscreteCurves out;
    out.grid = grid;
    out.samples.assign(n, Matrix::Zero(p, q));
    out.ids.reserve(n);
    for (int i = 0; i < n; ++i) out.ids.push_back("s" + std::to_string(i + 1));

    ProcessOptions zero_mean;
    zero_mean.mean = [](double) { return 0.0; };
    for (std::size_t c = 0; c < components.size(); ++c) {
        const DiscreteCurves draw = sample_process(
            n, p, grid, components[c].first, components[c].second, zero_mean,
            rng.substream(static_cast<std::uint64_t>(c)));
        for (int i = 0; i < n; ++i) out.samples[i] += draw.samples[i];
    }
    Vector mean_values(q);
    for (int l = 0; l < q; ++l) mean_values(l) = mean(grid.points[l]);
    for (int i = 0; i < n; ++i) out.samples[i].rowwise() += mean_values.transpose();
    return out;
}

} // namespace sepfda
