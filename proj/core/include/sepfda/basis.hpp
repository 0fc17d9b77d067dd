#pragma once

#include <string>
#include <vector>

#include "sepfda/linalg.hpp"

namespace sepfda {

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
    double length() const { return hi - lo; }
};

/// Shared observation grid: strictly increasing points inside the domain.
struct TimeGrid {
    Interval domain;
    std::vector<double> points;

    int size() const { return static_cast<int>(points.size()); }
    void validate() const;
};

TimeGrid uniform_grid(const Interval& domain, int q);

/// Clamped B-spline family of a given size and degree on a closed interval.
/// Knots are clamped (endpoints repeated degree+1 times) with equally spaced
/// interior knots.
struct BasisSystem {
    Interval domain;
    int degree = 3;
    int size = 0;               // m
    std::vector<double> knots;  // length size + degree + 1
};

/// n discretely observed curves, each a p x q matrix on a shared grid.
struct DiscreteCurves {
    TimeGrid grid;
    std::vector<Matrix> samples;      // each p x q
    std::vector<std::string> ids;
    std::vector<bool> labels;         // outlier flags; empty when unknown

    int n() const { return static_cast<int>(samples.size()); }
    int p() const { return samples.empty() ? 0 : static_cast<int>(samples.front().rows()); }
    int q() const { return grid.size(); }
};

BasisSystem make_basis(const Interval& domain, int m, int degree = 3);

/// Basis values at t by the Cox-de Boor recursion; entries are nonnegative
/// and sum to one on the domain.
Vector eval_basis(const BasisSystem& basis, double t);

/// Inner-product matrix of the basis restricted to a sub-interval,
/// W[i,j] = int_{interval} phi_i phi_j dt, computed exactly by per-knot-span
/// Gauss-Legendre quadrature with degree+1 nodes.  Spans are split at the
/// interval endpoints.
Matrix gram(const BasisSystem& basis, const Interval& interval);

/// Least-squares coefficients for every sample; result i is the m x p matrix
/// whose column j holds the coefficients of coordinate j of sample i.  Solved
/// through an orthogonal decomposition of the q x m design matrix.
std::vector<Matrix> smooth(const DiscreteCurves& curves, const BasisSystem& basis);

} // namespace sepfda
