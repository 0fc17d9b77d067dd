#include "sepfda/rng.hpp"

#include <algorithm>

namespace sepfda {

namespace {

// splitmix64 finalizer
std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

Rng Rng::substream(std::uint64_t index) const {
    return Rng(mix(seed_ ^ mix(index)));
}

double Rng::normal() { return normal_(engine_); }

double Rng::uniform() {
    return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

double Rng::gamma(double shape) {
    return std::gamma_distribution<double>(shape, 1.0)(engine_);
}

double Rng::chi_squared(double dof) {
    return std::gamma_distribution<double>(dof / 2.0, 2.0)(engine_);
}

bool Rng::bernoulli(double prob) { return uniform() < prob; }

std::uint64_t Rng::uniform_int(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
}

std::vector<int> sample_without_replacement(int n, int k, Rng& rng) {
    // partial Fisher-Yates on an index vector
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::vector<int> out;
    out.reserve(k);
    for (int i = 0; i < k; ++i) {
        const int j = i + static_cast<int>(rng.uniform_int(n - i));
        std::swap(idx[i], idx[j]);
        out.push_back(idx[i]);
    }
    return out;
}

} // namespace sepfda
