#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "sepfda/basis.hpp"
#include "sepfda/rng.hpp"

namespace sepfda {

struct KernelSpec {
    enum class Kind { ornstein_uhlenbeck, matern };
    Kind kind = Kind::ornstein_uhlenbeck;
    double ou_variance = 0.3; // sigma_1^2
    double ou_range = 0.3;   // sigma_2
    double matern_sigma = 1.0;
    double matern_tau = 5.0;
    double matern_nu = 0.5;

    static KernelSpec ou(double variance, double range);
    static KernelSpec matern(double sigma, double tau, double nu);
    double variance() const; // kernel value at s == t
};

double kernel_eval(const KernelSpec& spec, double s, double t);

/// Kernel matrix on the grid with the documented 1e-10 * variance jitter on
/// the diagonal.
Matrix kernel_gram(const KernelSpec& spec, const TimeGrid& grid);

/// Random correlation matrix: Dirichlet eigenvalues scaled to sum p, random
/// orthogonal basis, rescaled to a unit diagonal.
Matrix make_sigma_row(int p, Rng& rng);

double mean_bump(double t);   // 30 t (1-t)^{3/2}
double mean_linear(double t); // 4 t

enum class Innovation { gaussian, student_t };

struct ProcessOptions {
    std::function<double(double)> mean = mean_bump;
    Innovation innovation = Innovation::gaussian;
    double t_dof = 5.0;
};

/// n draws of a separable process on the grid (p x q each); sample i consumes
/// the substream keyed by (rng, i).
DiscreteCurves sample_process(int n, int p, const TimeGrid& grid, const Matrix& sigma_row,
                              const KernelSpec& kernel, const ProcessOptions& options,
                              const Rng& rng);

/// Kernel eigenpairs on the grid under trapezoid quadrature weights,
/// normalized so the discrete integral of xi^2 is one.
struct KernelGridEigens {
    Vector values;    // descending
    Matrix functions; // q x count
};
KernelGridEigens kernel_grid_eigens(const KernelSpec& spec, const TimeGrid& grid, int count);

struct OutlierSpec {
    enum class Type { shift, shape, isolated, covariance };
    Type type = Type::shift;
    double fraction = 0.1;            // epsilon
    double coordinate_fraction = 1.0; // epsilon_coord
    double magnitude = 15.0;          // lambda
    double cov_nu = 0.2;              // covariance type replacement kernel
    double cov_tau = 10.0;
    double cov_sigma = 1.0;
};

/// Replaces ceil(fraction * n) randomly chosen samples, contaminating
/// floor(coordinate_fraction * p) coordinates each, and sets the labels.
/// `mean_on_grid` is the clean mean evaluated on the grid (used by the
/// covariance type, which redraws coordinates around it).
DiscreteCurves inject_outliers(const DiscreteCurves& curves, const OutlierSpec& spec,
                               const KernelGridEigens& eigens, const Vector& mean_on_grid,
                               const Rng& rng, std::vector<std::string>* warnings = nullptr);

/// Sum of independent separable components; the covariance is the sum of the
/// per-component Kronecker terms.
DiscreteCurves sample_nonseparable(int n, int p, const TimeGrid& grid,
                                   const std::vector<std::pair<Matrix, KernelSpec>>& components,
                                   const std::function<double(double)>& mean, const Rng& rng);

} // namespace sepfda
