#include "sepfda/mmcd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "sepfda/chi2.hpp"
#include "sepfda/errors.hpp"
#include "sepfda/parallel.hpp"
#include "sepfda/rng.hpp"

namespace sepfda {

namespace {

std::vector<Matrix> gather(const std::vector<Matrix>& samples, const std::vector<int>& idx) {
    std::vector<Matrix> out;
    out.reserve(idx.size());
    for (int i : idx) out.push_back(samples[i]);
    return out;
}

std::vector<int> smallest_h(const std::vector<double>& distances, int h) {
    std::vector<int> order(distances.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (distances[a] != distances[b]) return distances[a] < distances[b];
        return a < b; // boundary ties go to the lower index
    });
    order.resize(h);
    std::sort(order.begin(), order.end());
    return order;
}

void scale_covariance(SeparableFit& fit, double factor) {
    fit.sigma_col *= factor;
    if (fit.distances) {
        for (double& d : *fit.distances) d /= factor;
    }
}

} // namespace

SubsetFit subset_mmle(const std::vector<Matrix>& samples, const std::vector<int>& h_subset) {
    if (h_subset.empty()) throw InvalidInputError("subset_mmle: empty subset");
    for (int i : h_subset)
        if (i < 0 || i >= static_cast<int>(samples.size()))
            throw InvalidInputError("subset_mmle: subset index out of range");
    MmleOptions options;
    const MmleResult res = mmle_flipflop(gather(samples, h_subset), options);
    return SubsetFit{res.fit, res.objective};
}

CstepResult cstep(const std::vector<Matrix>& samples, const SeparableFit& current, int h) {
    const std::vector<double> distances = mmd2_all(samples, current);
    CstepResult out;
    out.h_subset = smallest_h(distances, h);
    SubsetFit refit = subset_mmle(samples, out.h_subset);
    out.fit = std::move(refit.fit);
    out.objective = refit.objective;
    return out;
}

double consistency_factor(double alpha, int dof) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw InvalidInputError("consistency_factor: alpha must be in (0, 1]");
    if (dof < 1) throw InvalidInputError("consistency_factor: dof must be >= 1");
    if (alpha == 1.0) return 1.0;
    const double q_alpha = chi2_quantile(alpha, dof);
    return alpha / chi2_cdf(q_alpha, dof + 2);
}

RobustFitReport mmcd_fit(const std::vector<Matrix>& samples, const MmcdConfig& config) {
    const int n = static_cast<int>(samples.size());
    if (n == 0) throw InvalidInputError("mmcd_fit: no samples");
    const int m = static_cast<int>(samples.front().rows());
    const int p = static_cast<int>(samples.front().cols());
    if (!(config.alpha >= 0.5 && config.alpha <= 1.0))
        throw InvalidInputError("mmcd_fit: alpha must be in [0.5, 1]");
    if (!(config.reweight_quantile > 0.5 && config.reweight_quantile < 1.0))
        throw InvalidInputError("mmcd_fit: reweight quantile must be in (0.5, 1)");
    if (config.n_initial_subsets < 1 || config.n_best_kept < 1)
        throw InvalidInputError("mmcd_fit: subset counts must be positive");

    const int h = static_cast<int>(std::ceil(config.alpha * n));
    const int seed_size = mmle_min_samples(m, p);
    if (h < seed_size)
        throw InvalidInputError("mmcd_fit: h = ceil(alpha*n) = " + std::to_string(h) +
                                " is below the minimal subset size " + std::to_string(seed_size));
    if (h > n) throw InvalidInputError("mmcd_fit: h exceeds the sample count");
    const int dof = m * p;

    struct Candidate {
        bool valid = false;
        std::vector<int> h_subset;
        SeparableFit fit;
        double objective = std::numeric_limits<double>::infinity();
        int csteps = 0;
        std::vector<double> chain; // objective after every concentration step
    };

    // Elemental starts, two concentration steps each.  Each start consumes its
    // own substream so the outcome does not depend on scheduling.
    const Rng base(config.seed);
    std::vector<Candidate> candidates(config.n_initial_subsets);
    parallel_for(config.n_initial_subsets, config.n_threads, [&](int s) {
        Rng stream = base.substream(static_cast<std::uint64_t>(s));
        std::vector<int> seed_idx = sample_without_replacement(n, seed_size, stream);
        std::sort(seed_idx.begin(), seed_idx.end());
        Candidate& cand = candidates[s];
        try {
            SubsetFit fit = subset_mmle(samples, seed_idx);
            CstepResult step = cstep(samples, fit.fit, h);
            cand.chain.push_back(step.objective);
            step = cstep(samples, step.fit, h);
            cand.chain.push_back(step.objective);
            cand.valid = true;
            cand.h_subset = std::move(step.h_subset);
            cand.fit = std::move(step.fit);
            cand.objective = step.objective;
            cand.csteps = 2;
        } catch (const NumericError&) {
            // singular elemental subset; leave the slot invalid
        }
    });

    std::vector<int> ranking;
    for (int s = 0; s < config.n_initial_subsets; ++s)
        if (candidates[s].valid) ranking.push_back(s);
    if (ranking.empty())
        throw NumericError("mmcd_fit: all " + std::to_string(config.n_initial_subsets) +
                           " initial subsets were singular (n = " + std::to_string(n) +
                           ", shape " + std::to_string(m) + "x" + std::to_string(p) +
                           ", seed size " + std::to_string(seed_size) + ")");

    auto better = [&](const Candidate& a, const Candidate& b) {
        if (a.objective != b.objective) return a.objective < b.objective;
        return a.h_subset < b.h_subset; // lexicographic tie break
    };
    std::sort(ranking.begin(), ranking.end(),
              [&](int a, int b) { return better(candidates[a], candidates[b]); });
    const int kept = std::min<int>(config.n_best_kept, static_cast<int>(ranking.size()));

    std::vector<Candidate> finalists(kept);
    parallel_for(kept, config.n_threads, [&](int k) {
        Candidate cand = candidates[ranking[k]];
        while (cand.csteps < config.max_csteps) {
            CstepResult step;
            try {
                step = cstep(samples, cand.fit, h);
            } catch (const NumericError&) {
                break; // keep the last valid state of this chain
            }
            ++cand.csteps;
            cand.chain.push_back(step.objective);
            const bool fixed_point = step.h_subset == cand.h_subset;
            cand.h_subset = std::move(step.h_subset);
            cand.fit = std::move(step.fit);
            cand.objective = step.objective;
            if (fixed_point) break;
        }
        finalists[k] = std::move(cand);
    });

    int best = 0;
    for (int k = 1; k < kept; ++k)
        if (better(finalists[k], finalists[best])) best = k;
    Candidate winner = std::move(finalists[best]);

    RobustFitReport report;
    report.objective = winner.objective;
    report.h_subset = winner.h_subset;
    report.n_csteps_used = winner.csteps;
    for (const Candidate& cand : finalists) report.objective_chains.push_back(cand.chain);
    for (std::size_t r = kept; r < ranking.size(); ++r)
        report.objective_chains.push_back(candidates[ranking[r]].chain);

    SeparableFit raw = std::move(winner.fit);
    raw.provenance = FitProvenance::mmcd_raw;
    raw.h_subset = winner.h_subset;
    raw.distances = mmd2_all(samples, raw);
    if (config.apply_consistency) {
        const double alpha_eff = static_cast<double>(h) / n;
        scale_covariance(raw, consistency_factor(alpha_eff, dof));
    }
    apply_scale_convention(raw);
    report.raw_fit = raw;

    // Reweighting: refit on the samples whose raw distance clears the cutoff.
    const double cutoff = chi2_quantile(config.reweight_quantile, dof);
    report.weights.assign(n, 0);
    std::vector<int> keep;
    for (int i = 0; i < n; ++i) {
        if ((*raw.distances)[i] <= cutoff) {
            report.weights[i] = 1;
            keep.push_back(i);
        }
    }

    if (static_cast<int>(keep.size()) >= h) {
        SubsetFit refit = subset_mmle(samples, keep);
        SeparableFit reweighted = std::move(refit.fit);
        reweighted.provenance = FitProvenance::mmcd_reweighted;
        reweighted.h_subset = keep;
        reweighted.distances = mmd2_all(samples, reweighted);
        if (config.apply_consistency) {
            const double alpha1 = static_cast<double>(keep.size()) / n;
            scale_covariance(reweighted, consistency_factor(alpha1, dof));
        }
        apply_scale_convention(reweighted);
        report.reweighted_fit = std::move(reweighted);
    } else {
        report.reweighted_fit = report.raw_fit;
        report.reweighted_fit.provenance = FitProvenance::mmcd_reweighted;
    }
    return report;
}

} // namespace sepfda
