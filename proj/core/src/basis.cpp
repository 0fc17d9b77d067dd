#include "sepfda/basis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sepfda/errors.hpp"

namespace sepfda {

void TimeGrid::validate() const {
    if (points.size() < 2)
        throw InvalidInputError("time grid needs at least 2 points");
    for (std::size_t l = 0; l + 1 < points.size(); ++l)
        if (!(points[l] < points[l + 1]))
            throw InvalidInputError("time grid must be strictly increasing");
    if (points.front() < domain.lo || points.back() > domain.hi)
        throw InvalidInputError("time grid points fall outside the domain");
}

TimeGrid uniform_grid(const Interval& domain, int q) {
    if (q < 2) throw InvalidInputError("uniform_grid: q must be >= 2");
    TimeGrid grid;
    grid.domain = domain;
    grid.points.resize(q);
    for (int l = 0; l < q; ++l)
        grid.points[l] = domain.lo + domain.length() * l / (q - 1);
    grid.points.back() = domain.hi;
    return grid;
}

BasisSystem make_basis(const Interval& domain, int m, int degree) {
    if (degree < 0) throw InvalidInputError("make_basis: degree must be >= 0");
    if (m < degree + 1)
        throw InvalidInputError("make_basis: basis size " + std::to_string(m) +
                                " is below degree+1 = " + std::to_string(degree + 1));
    if (!(domain.lo < domain.hi))
        throw InvalidInputError("make_basis: empty domain");

    BasisSystem basis;
    basis.domain = domain;
    basis.degree = degree;
    basis.size = m;
    basis.knots.resize(m + degree + 1);
    const int n_spans = m - degree; // interior knot count + 1
    for (int i = 0; i <= degree; ++i) {
        basis.knots[i] = domain.lo;
        basis.knots[m + i] = domain.hi;
    }
    for (int k = 1; k < n_spans; ++k)
        basis.knots[degree + k] = domain.lo + domain.length() * k / n_spans;
    return basis;
}

namespace {

// span index j with knots[j] <= t < knots[j+1], clamped so j in [degree, m-1]
int find_span(const BasisSystem& basis, double t) {
    const int m = basis.size;
    const int d = basis.degree;
    if (t >= basis.knots[m]) return m - 1;
    int lo = d, hi = m;
    while (hi - lo > 1) {
        const int mid = (lo + hi) / 2;
        if (t < basis.knots[mid])
            hi = mid;
        else
            lo = mid;
    }
    return lo;
}

// nonzero basis values N_{span-degree..span} at t (Cox-de Boor)
void basis_in_span(const BasisSystem& basis, double t, int span, Vector& values) {
    const int d = basis.degree;
    values.setZero(d + 1);
    values(0) = 1.0;
    std::vector<double> left(d + 1), right(d + 1);
    for (int j = 1; j <= d; ++j) {
        left[j] = t - basis.knots[span + 1 - j];
        right[j] = basis.knots[span + j] - t;
        double saved = 0.0;
        for (int r = 0; r < j; ++r) {
            const double temp = values(r) / (right[r + 1] + left[j - r]);
            values(r) = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        values(j) = saved;
    }
}

// Gauss-Legendre nodes/weights on [-1, 1]
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            dp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[n - 1 - i] = weights[i];
    }
}

} // namespace

Vector eval_basis(const BasisSystem& basis, double t) {
    if (t < basis.domain.lo || t > basis.domain.hi)
        throw InvalidInputError("eval_basis: t = " + std::to_string(t) + " outside domain");
    const int span = find_span(basis, t);
    Vector local;
    basis_in_span(basis, t, span, local);
    Vector out = Vector::Zero(basis.size);
    out.segment(span - basis.degree, basis.degree + 1) = local;
    return out;
}

Matrix gram(const BasisSystem& basis, const Interval& interval) {
    if (!(interval.lo < interval.hi))
        throw InvalidInputError("gram: interval is empty");
    if (interval.lo < basis.domain.lo - 1e-12 || interval.hi > basis.domain.hi + 1e-12)
        throw InvalidInputError("gram: interval exceeds the basis domain");

    // breakpoints: knots strictly inside the interval, plus its endpoints
    std::vector<double> breaks{interval.lo};
    for (double k : basis.knots)
        if (k > interval.lo && k < interval.hi &&
            (breaks.empty() || k > breaks.back()))
            breaks.push_back(k);
    breaks.push_back(interval.hi);

    std::vector<double> nodes, weights;
    gauss_legendre(basis.degree + 1, nodes, weights);

    Matrix w = Matrix::Zero(basis.size, basis.size);
    Vector local;
    for (std::size_t piece = 0; piece + 1 < breaks.size(); ++piece) {
        const double a = breaks[piece];
        const double b = breaks[piece + 1];
        const double mid = (a + b) / 2.0;
        const double half = (b - a) / 2.0;
        for (std::size_t g = 0; g < nodes.size(); ++g) {
            const double t = mid + half * nodes[g];
            const int span = find_span(basis, t);
            basis_in_span(basis, t, span, local);
            const int first = span - basis.degree;
            const double scale = half * weights[g];
            for (int i = 0; i <= basis.degree; ++i)
                for (int j = 0; j <= basis.degree; ++j)
                    w(first + i, first + j) += scale * local(i) * local(j);
        }
    }
    return symmetrized(w);
}

std::vector<Matrix> smooth(const DiscreteCurves& curves, const BasisSystem& basis) {
    curves.grid.validate();
    const int q = curves.q();
    const int m = basis.size;
    if (q < m)
        throw InvalidInputError("smooth: grid size " + std::to_string(q) +
                                " is below basis size " + std::to_string(m));
    if (curves.grid.points.front() < basis.domain.lo ||
        curves.grid.points.back() > basis.domain.hi)
        throw InvalidInputError("smooth: grid points outside the basis domain");

    Matrix design(q, m);
    for (int l = 0; l < q; ++l)
        design.row(l) = eval_basis(basis, curves.grid.points[l]).transpose();

    Eigen::ColPivHouseholderQR<Matrix> qr(design);
    if (qr.rank() < m)
        throw InvalidInputError("smooth: design matrix is rank deficient for basis size " +
                                std::to_string(m) + "; reduce the basis or refine the grid");

    std::vector<Matrix> coefs;
    coefs.reserve(curves.n());
    for (const Matrix& x : curves.samples) {
        require_finite(x, "smooth");
        if (x.cols() != q)
            throw InvalidInputError("smooth: sample width does not match the grid");
        coefs.push_back(qr.solve(x.transpose())); // m x p
    }
    return coefs;
}

} // namespace sepfda
