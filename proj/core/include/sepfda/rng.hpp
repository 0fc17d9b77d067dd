#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace sepfda {

/// Seedable random stream with derived substreams.  Substreams are keyed by
/// (seed, index), so work items that each consume their own substream produce
/// results independent of scheduling order.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    /// Derives an independent stream for the given index.
    Rng substream(std::uint64_t index) const;

    double normal();
    double uniform();                 // [0, 1)
    double uniform(double lo, double hi);
    double gamma(double shape);       // scale 1
    double chi_squared(double dof);
    bool bernoulli(double prob);
    std::uint64_t uniform_int(std::uint64_t n); // [0, n)

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// k distinct indices from {0,...,n-1}, in draw order.
std::vector<int> sample_without_replacement(int n, int k, Rng& rng);

} // namespace sepfda
