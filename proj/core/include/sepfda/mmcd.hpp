#pragma once

#include <cstdint>
#include <vector>

#include "sepfda/matnorm.hpp"

namespace sepfda {

struct MmcdConfig {
    double alpha = 0.5;            // subset fraction, h = ceil(alpha * n)
    int n_initial_subsets = 500;
    int n_best_kept = 10;
    int max_csteps = 100;
    double reweight_quantile = 0.99;
    std::uint64_t seed = 0;
    bool apply_consistency = true; // MCD-style consistency correction
    int n_threads = 0;             // 0: SEPFDA_THREADS or hardware
};

struct RobustFitReport {
    SeparableFit raw_fit;
    SeparableFit reweighted_fit;
    double objective = 0.0;        // log-det objective of the winning subset
    std::vector<int> h_subset;     // ascending
    std::vector<int> weights;      // 0/1 per sample (reweighting step)
    int n_csteps_used = 0;
    // objective after every concentration step, one vector per start that
    // survived screening (finalists first, then the remaining screened starts)
    std::vector<std::vector<double>> objective_chains;
};

struct SubsetFit {
    SeparableFit fit;
    double objective;
};

/// Flip-flop MMLE restricted to the given subset, plus the log-det objective.
SubsetFit subset_mmle(const std::vector<Matrix>& samples, const std::vector<int>& h_subset);

struct CstepResult {
    std::vector<int> h_subset; // ascending; ties at the boundary resolved by lower index
    SeparableFit fit;
    double objective;
};

/// One concentration step: rank all samples by squared distance under the
/// current fit, keep the h closest, refit.  The objective never increases.
CstepResult cstep(const std::vector<Matrix>& samples, const SeparableFit& current, int h);

/// MCD-style consistency factor alpha / F_{chi2(dof+2)}(q_alpha) with q_alpha
/// the chi2(dof) quantile at alpha.  Multiplies the covariance of a trimmed
/// fit to make it consistent under normality.
double consistency_factor(double alpha, int dof);

/// Subset search: elemental starts, two concentration steps each, full
/// iteration on the best candidates, consistency scaling and reweighting.
/// Deterministic for a fixed seed; initial subsets consume independent
/// substreams keyed by (seed, subset index).
RobustFitReport mmcd_fit(const std::vector<Matrix>& samples, const MmcdConfig& config);

} // namespace sepfda
