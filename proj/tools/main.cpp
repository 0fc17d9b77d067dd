// Command-line front end: simulate / smooth / fit / distance / shapley /
// fpca / evaluate.  Exit codes: 0 success, 2 validation error, 3 numerical
// failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sepfda/chi2.hpp"
#include "sepfda/errors.hpp"
#include "sepfda/eval.hpp"
#include "sepfda/fmodel.hpp"
#include "sepfda/fpca.hpp"
#include "sepfda/io.hpp"
#include "sepfda/mmcd.hpp"
#include "sepfda/shapley.hpp"

namespace {

using namespace sepfda;

struct SimulateArgs {
    int n = 100, p = 3, q = 100;
    double domain_lo = 0.0, domain_hi = 1.0;
    std::string kernel = "ou";
    double ou_variance = 0.3, ou_range = 0.3;
    double matern_sigma = 1.0, matern_tau = 5.0, matern_nu = 0.5;
    std::string mean = "bump";
    bool mean_given = false;
    double t_df = 0.0;
    int nonseparable = 0;
    double eps = 0.0, eps_coord = 1.0, magnitude = 15.0;
    std::string outlier = "none";
    double outlier_nu = 0.2, outlier_tau = 10.0;
    std::uint64_t seed = 0;
    std::string out, labels_path, truth_path;
};

struct FitArgs {
    std::string input, output;
    int m = 10, degree = 3;
    std::string estimator = "mmcd";
    std::string mode = "smoothed";
    double alpha = 0.5;
    int n_subsets = 500, n_best = 10, max_csteps = 100;
    double reweight_quantile = 0.99, cutoff_quantile = 0.99;
    std::uint64_t seed = 0;
    bool seed_given = false;
    bool no_consistency = false;
    int threads = 0;
};

KernelSpec kernel_from_args(const SimulateArgs& args) {
    if (args.kernel == "ou") return KernelSpec::ou(args.ou_variance, args.ou_range);
    if (args.kernel == "matern")
        return KernelSpec::matern(args.matern_sigma, args.matern_tau, args.matern_nu);
    throw InvalidInputError("unknown kernel '" + args.kernel + "' (use ou or matern)");
}

void run_simulate(const SimulateArgs& args) {
    if (args.n < 1 || args.p < 1 || args.q < 2)
        throw InvalidInputError("simulate: need n >= 1, p >= 1, q >= 2");
    if (!(args.domain_lo < args.domain_hi))
        throw InvalidInputError("simulate: empty domain");

    const TimeGrid grid = uniform_grid(Interval{args.domain_lo, args.domain_hi}, args.q);
    const KernelSpec kernel = kernel_from_args(args);
    std::string mean_name = args.mean;
    if (!args.mean_given && args.outlier == "isolated") mean_name = "linear";
    auto mean_fn = [&](double t) { return mean_by_name(mean_name, t); };

    const Rng root(args.seed);
    Rng row_stream = root.substream(0);
    const Matrix sigma_row = make_sigma_row(args.p, row_stream);

    DiscreteCurves curves;
    if (args.nonseparable > 0) {
        std::vector<std::pair<Matrix, KernelSpec>> components;
        for (int c = 0; c < args.nonseparable; ++c) {
            Rng comp_stream = root.substream(100 + c);
            components.emplace_back(make_sigma_row(args.p, comp_stream),
                                    KernelSpec::matern(args.matern_sigma, args.matern_tau,
                                                       args.matern_nu));
        }
        curves = sample_nonseparable(args.n, args.p, grid, components, mean_fn,
                                     root.substream(1));
    } else {
        ProcessOptions options;
        options.mean = mean_fn;
        if (args.t_df > 0.0) {
            options.innovation = Innovation::student_t;
            options.t_dof = args.t_df;
        }
        curves = sample_process(args.n, args.p, grid, sigma_row, kernel, options,
                                root.substream(1));
    }

    if (args.outlier != "none" && args.eps > 0.0) {
        OutlierSpec spec;
        if (args.outlier == "shift") spec.type = OutlierSpec::Type::shift;
        else if (args.outlier == "shape") spec.type = OutlierSpec::Type::shape;
        else if (args.outlier == "isolated") spec.type = OutlierSpec::Type::isolated;
        else if (args.outlier == "covariance") spec.type = OutlierSpec::Type::covariance;
        else throw InvalidInputError("unknown outlier type '" + args.outlier + "'");
        spec.fraction = args.eps;
        spec.coordinate_fraction = args.eps_coord;
        spec.magnitude = args.magnitude;
        spec.cov_nu = args.outlier_nu;
        spec.cov_tau = args.outlier_tau;

        const int n_eigens = spec.type == OutlierSpec::Type::shape ? 10 : 1;
        if (args.q < n_eigens)
            throw InvalidInputError("simulate: grid too small for the requested outlier type");
        const KernelGridEigens eigens = kernel_grid_eigens(kernel, grid, n_eigens);
        Vector mean_on_grid(args.q);
        for (int l = 0; l < args.q; ++l) mean_on_grid(l) = mean_fn(grid.points[l]);
        std::vector<std::string> warnings;
        curves = inject_outliers(curves, spec, eigens, mean_on_grid, root.substream(2), &warnings);
        for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';
    } else {
        curves.labels.assign(curves.n(), false);
    }

    write_curves_csv(curves, args.out);
    if (!args.labels_path.empty()) write_labels_csv(curves, args.labels_path);
    if (!args.truth_path.empty()) {
        TruthDocument truth;
        truth.sigma_row = sigma_row;
        truth.kernel = kernel;
        truth.mean_name = mean_name;
        write_truth_json(truth, args.truth_path);
    }
}

std::vector<Matrix> samples_for_mode(const DiscreteCurves& curves, const std::string& mode,
                                     int m, int degree, std::optional<BasisSystem>* basis_out) {
    if (mode == "smoothed") {
        const BasisSystem basis = make_basis(curves.grid.domain, m, degree);
        *basis_out = basis;
        return smooth(curves, basis);
    }
    if (mode == "raw") {
        *basis_out = std::nullopt;
        std::vector<Matrix> samples;
        samples.reserve(curves.n());
        for (const Matrix& x : curves.samples) samples.push_back(x.transpose()); // q x p
        return samples;
    }
    throw InvalidInputError("unknown mode '" + mode + "' (use smoothed or raw)");
}

void run_fit(const FitArgs& args) {
    if (args.estimator != "mmle" && args.estimator != "mmcd")
        throw InvalidInputError("unknown estimator '" + args.estimator + "' (use mmle or mmcd)");
    if (args.estimator == "mmcd" && !args.seed_given)
        throw InvalidInputError("fit: --seed is required with --estimator mmcd");

    const DiscreteCurves curves = read_curves_csv(args.input);
    std::optional<BasisSystem> basis;
    const std::vector<Matrix> samples =
        samples_for_mode(curves, args.mode, args.m, args.degree, &basis);

    FitDocument doc;
    if (args.estimator == "mmle") {
        MmleResult res = mmle_flipflop(samples);
        doc.fit = std::move(res.fit);
        doc.fit.distances = mmd2_all(samples, doc.fit);
        if (!res.converged)
            std::cerr << "warning: flip-flop stopped at max_iter without convergence\n";
    } else {
        MmcdConfig config;
        config.alpha = args.alpha;
        config.n_initial_subsets = args.n_subsets;
        config.n_best_kept = args.n_best;
        config.max_csteps = args.max_csteps;
        config.reweight_quantile = args.reweight_quantile;
        config.seed = args.seed;
        config.apply_consistency = !args.no_consistency;
        config.n_threads = args.threads;
        RobustFitReport report = mmcd_fit(samples, config);
        doc.fit = std::move(report.reweighted_fit);
        doc.fit.h_subset = report.h_subset;
    }

    const int dof = doc.fit.rows() * doc.fit.cols();
    doc.cutoff = chi2_cutoff(dof, args.cutoff_quantile);
    doc.sample_ids = curves.ids;
    doc.flags.clear();
    for (double d : *doc.fit.distances) doc.flags.push_back(d > doc.cutoff);

    doc.config_echo = Json{{"subcommand", "fit"},
                           {"input", args.input},
                           {"mode", args.mode},
                           {"estimator", args.estimator},
                           {"m", basis ? basis->size : curves.q()},
                           {"degree", args.degree},
                           {"alpha", args.alpha},
                           {"n_subsets", args.n_subsets},
                           {"n_best", args.n_best},
                           {"max_csteps", args.max_csteps},
                           {"reweight_quantile", args.reweight_quantile},
                           {"cutoff_quantile", args.cutoff_quantile},
                           {"consistency", !args.no_consistency},
                           {"seed", args.seed},
                           {"dof", dof},
                           {"domain", {curves.grid.domain.lo, curves.grid.domain.hi}}};
    write_fit_json(doc, args.output);
}

struct DistanceArgs {
    std::string input, fit, output, qq_path;
    int truncation = 0; // 0: full m*p
    double quantile = 0.99;
};

void run_distance(const DistanceArgs& args) {
    const FitDocument doc = read_fit_json(args.fit);
    const DiscreteCurves curves = read_curves_csv(args.input);

    std::vector<Matrix> samples;
    std::optional<BasisSystem> basis;
    if (doc.mode() == "smoothed") {
        basis = doc.basis();
        samples = smooth(curves, *basis);
    } else {
        for (const Matrix& x : curves.samples) samples.push_back(x.transpose());
    }

    const int full = doc.fit.rows() * doc.fit.cols();
    const int truncation = args.truncation == 0 ? full : args.truncation;
    if (truncation < 1 || truncation > full)
        throw InvalidInputError("distance: truncation outside [1, " + std::to_string(full) + "]");
    if (truncation != full && doc.mode() != "smoothed")
        throw InvalidInputError("distance: spectral truncation requires a smoothed fit");

    std::vector<double> distances;
    if (truncation == full) {
        distances = mmd2_all(samples, doc.fit);
    } else {
        const FpcaModel model = separable_fpca(doc.fit, *basis);
        if (truncation_splits_tie(model, truncation))
            std::cerr << "warning: truncation " << truncation
                      << " splits a tied group of eigenvalues\n";
        const int p = doc.fit.cols();
        const Matrix identity_gap = doc.fit.sigma_row - Matrix::Identity(p, p);
        if (truncation % p != 0 && identity_gap.cwiseAbs().maxCoeff() < 1e-6)
            std::cerr << "warning: truncation " << truncation << " is not a multiple of p = "
                      << p << "; with near-identity sigma_row eigenvalues come in groups of p\n";
        for (const Matrix& a : samples)
            distances.push_back(fmmd2_spectral(a, doc.fit, model, truncation));
    }

    const double cutoff = chi2_cutoff(truncation, args.quantile);
    std::ofstream out(args.output);
    if (!out) throw InvalidInputError("cannot write '" + args.output + "'");
    out << "sample_id,squared_distance,cutoff,flag\n";
    for (int i = 0; i < curves.n(); ++i)
        out << curves.ids[i] << ',' << format_double(distances[i]) << ','
            << format_double(cutoff) << ',' << (distances[i] > cutoff ? 1 : 0) << '\n';

    if (!args.qq_path.empty()) {
        std::vector<double> sorted = distances;
        std::sort(sorted.begin(), sorted.end());
        std::ofstream qq(args.qq_path);
        if (!qq) throw InvalidInputError("cannot write '" + args.qq_path + "'");
        qq << "empirical_quantile,chi2_quantile\n";
        const int n = static_cast<int>(sorted.size());
        for (int i = 0; i < n; ++i) {
            const double prob = (i + 0.5) / n;
            qq << format_double(sorted[i]) << ',' << format_double(chi2_quantile(prob, truncation))
               << '\n';
        }
    }
}

struct ShapleyArgs {
    std::string input, fit, output;
    int intervals = 1;
};

void run_shapley(const ShapleyArgs& args) {
    const FitDocument doc = read_fit_json(args.fit);
    if (doc.mode() != "smoothed")
        throw InvalidInputError("shapley: requires a smoothed fit");
    const DiscreteCurves curves = read_curves_csv(args.input);
    const BasisSystem basis = doc.basis();
    const std::vector<Matrix> samples = smooth(curves, basis);
    const DomainPartition partition = DomainPartition::equal(basis.domain, args.intervals);

    std::ofstream out(args.output);
    if (!out) throw InvalidInputError("cannot write '" + args.output + "'");
    out << "sample_id,coordinate,interval_index,contribution,normalized_contribution\n";
    for (int i = 0; i < curves.n(); ++i) {
        const ShapleyMap map = shapley_time_coordinate(samples[i], doc.fit, basis, partition);
        for (int k = 0; k < map.cell.rows(); ++k)
            for (int a = 0; a < map.cell.cols(); ++a)
                out << curves.ids[i] << ',' << (k + 1) << ',' << (a + 1) << ','
                    << format_double(map.cell(k, a)) << ','
                    << format_double(map.normalized(k, a)) << '\n';
    }
}

struct FpcaArgs {
    std::string fit, output;
    int truncation = 0;
};

void run_fpca(const FpcaArgs& args) {
    const FitDocument doc = read_fit_json(args.fit);
    if (doc.mode() != "smoothed")
        throw InvalidInputError("fpca: requires a smoothed fit");
    const BasisSystem basis = doc.basis();
    const FpcaModel model = separable_fpca(doc.fit, basis);
    const int full = model.max_truncation();
    const int truncation = args.truncation == 0 ? full : args.truncation;
    if (truncation < 1 || truncation > full)
        throw InvalidInputError("fpca: truncation outside [1, " + std::to_string(full) + "]");

    Json j;
    Json kernel_values = Json::array();
    for (int i = 0; i < model.kernel_values.size(); ++i)
        kernel_values.push_back(model.kernel_values(i));
    j["kernel_eigenvalues"] = std::move(kernel_values);
    Json row_values = Json::array();
    for (int i = 0; i < model.row_values.size(); ++i) row_values.push_back(model.row_values(i));
    j["row_eigenvalues"] = std::move(row_values);
    Json product = Json::array();
    for (int k = 0; k < truncation; ++k) product.push_back(model.product_values(k));
    j["product_eigenvalues"] = std::move(product);
    j["eigenfunction_coefficients"] = matrix_to_json(model.kernel_coefs.transpose());
    std::ofstream out(args.output);
    if (!out) throw InvalidInputError("cannot write '" + args.output + "'");
    out << j.dump(2) << '\n';
}

struct EvaluateArgs {
    std::string fit, labels, truth, input, output;
    double benchmark_mean_error = 0.0, benchmark_cov_error = 0.0;
};

void run_evaluate(const EvaluateArgs& args) {
    const FitDocument doc = read_fit_json(args.fit);
    const auto label_rows = read_labels_csv(args.labels);
    std::map<std::string, bool> label_map(label_rows.begin(), label_rows.end());

    if (!doc.fit.distances || doc.sample_ids.empty())
        throw InvalidInputError("evaluate: fit document has no distances");
    std::vector<bool> labels;
    for (const std::string& id : doc.sample_ids) {
        const auto it = label_map.find(id);
        if (it == label_map.end())
            throw InvalidInputError("evaluate: no label for sample '" + id + "'");
        labels.push_back(it->second);
    }

    MetricReport report;
    report.confusion = confusion_metrics(doc.flags, labels);
    report.auc = auc(*doc.fit.distances, labels);

    if (!args.truth.empty()) {
        if (args.input.empty())
            throw InvalidInputError("evaluate: --truth requires --input for the grid");
        if (doc.mode() != "smoothed")
            throw InvalidInputError("evaluate: estimation errors require a smoothed fit");
        const TruthDocument truth = read_truth_json(args.truth);
        const DiscreteCurves curves = read_curves_csv(args.input);
        const BasisSystem basis = doc.basis();
        report.mean_error = mean_error(
            doc.fit.mean, [&](double t) { return mean_by_name(truth.mean_name, t); }, basis,
            curves.grid);
        report.cov_error = cov_error(doc.fit, truth.sigma_row, truth.kernel, basis, curves.grid);
        if (args.benchmark_mean_error > 0.0)
            report.relative_mean_error = *report.mean_error / args.benchmark_mean_error;
        if (args.benchmark_cov_error > 0.0)
            report.relative_cov_error = *report.cov_error / args.benchmark_cov_error;
    }

    Json j{{"precision", report.confusion.precision},
           {"recall", report.confusion.recall},
           {"f_score", report.confusion.f_score},
           {"auc", report.auc},
           {"tp", report.confusion.tp},
           {"fp", report.confusion.fp},
           {"tn", report.confusion.tn},
           {"fn", report.confusion.fn}};
    if (report.mean_error) j["mean_error"] = *report.mean_error;
    if (report.cov_error) j["cov_error"] = *report.cov_error;
    if (report.relative_mean_error) j["relative_mean_error"] = *report.relative_mean_error;
    if (report.relative_cov_error) j["relative_cov_error"] = *report.relative_cov_error;
    std::ofstream out(args.output);
    if (!out) throw InvalidInputError("cannot write '" + args.output + "'");
    out << j.dump(2) << '\n';
}

struct SmoothArgs {
    std::string input, output;
    int m = 10, degree = 3;
};

void run_smooth(const SmoothArgs& args) {
    const DiscreteCurves curves = read_curves_csv(args.input);
    const BasisSystem basis = make_basis(curves.grid.domain, args.m, args.degree);
    const std::vector<Matrix> coefs = smooth(curves, basis);

    Json j;
    j["domain"] = {basis.domain.lo, basis.domain.hi};
    j["m"] = basis.size;
    j["degree"] = basis.degree;
    j["shape"] = {basis.size, curves.p()};
    j["sample_ids"] = curves.ids;
    Json all = Json::array();
    for (const Matrix& a : coefs) {
        Json flat = Json::array();
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            for (Eigen::Index k = 0; k < a.cols(); ++k) flat.push_back(a(i, k));
        all.push_back(std::move(flat));
    }
    j["coefficients"] = std::move(all);
    std::ofstream out(args.output);
    if (!out) throw InvalidInputError("cannot write '" + args.output + "'");
    out << j.dump(2) << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Robust covariance estimation and explainable outlier detection "
                 "for multivariate functional data with separable covariance"};
    app.require_subcommand(1);

    SimulateArgs sim;
    CLI::App* simulate = app.add_subcommand("simulate", "Generate synthetic curves");
    simulate->add_option("--n", sim.n, "sample count");
    simulate->add_option("--p", sim.p, "coordinate count");
    simulate->add_option("--q", sim.q, "grid size");
    simulate->add_option("--domain-lo", sim.domain_lo);
    simulate->add_option("--domain-hi", sim.domain_hi);
    simulate->add_option("--kernel", sim.kernel, "ou | matern");
    simulate->add_option("--ou-variance", sim.ou_variance);
    simulate->add_option("--ou-range", sim.ou_range);
    simulate->add_option("--matern-sigma", sim.matern_sigma);
    simulate->add_option("--matern-tau", sim.matern_tau);
    simulate->add_option("--matern-nu", sim.matern_nu);
    auto* mean_opt = simulate->add_option("--mean", sim.mean, "bump | linear | zero");
    simulate->add_option("--t-df", sim.t_df, "t innovations with this df (0: gaussian)");
    simulate->add_option("--nonseparable", sim.nonseparable,
                         "sum of this many separable Matern components (0: separable)");
    simulate->add_option("--eps", sim.eps, "outlier fraction");
    simulate->add_option("--eps-coord", sim.eps_coord, "contaminated coordinate fraction");
    simulate->add_option("--outlier", sim.outlier, "none | shift | shape | isolated | covariance");
    simulate->add_option("--magnitude", sim.magnitude, "outlier magnitude");
    simulate->add_option("--outlier-nu", sim.outlier_nu);
    simulate->add_option("--outlier-tau", sim.outlier_tau);
    simulate->add_option("--seed", sim.seed, "rng seed")->required();
    simulate->add_option("--out", sim.out, "output curve csv")->required();
    simulate->add_option("--labels", sim.labels_path, "output label csv");
    simulate->add_option("--truth", sim.truth_path, "output truth json");

    FitArgs fit;
    CLI::App* fit_cmd = app.add_subcommand("fit", "Estimate mean and separable covariance");
    fit_cmd->add_option("--input", fit.input)->required();
    fit_cmd->add_option("--output", fit.output)->required();
    fit_cmd->add_option("--m", fit.m, "basis size");
    fit_cmd->add_option("--degree", fit.degree, "spline degree");
    fit_cmd->add_option("--estimator", fit.estimator, "mmle | mmcd");
    fit_cmd->add_option("--mode", fit.mode, "smoothed | raw");
    fit_cmd->add_option("--alpha", fit.alpha, "subset fraction");
    fit_cmd->add_option("--n-subsets", fit.n_subsets, "initial subset count");
    fit_cmd->add_option("--n-best", fit.n_best, "candidates kept after screening");
    fit_cmd->add_option("--max-csteps", fit.max_csteps);
    fit_cmd->add_option("--reweight-quantile", fit.reweight_quantile);
    fit_cmd->add_option("--cutoff-quantile", fit.cutoff_quantile);
    auto* seed_opt = fit_cmd->add_option("--seed", fit.seed, "rng seed (required for mmcd)");
    fit_cmd->add_flag("--no-consistency", fit.no_consistency,
                      "skip the consistency correction");
    fit_cmd->add_option("--threads", fit.threads, "worker threads (0: auto)");

    DistanceArgs dist;
    CLI::App* dist_cmd = app.add_subcommand("distance", "Distances under an existing fit");
    dist_cmd->add_option("--input", dist.input)->required();
    dist_cmd->add_option("--fit", dist.fit)->required();
    dist_cmd->add_option("--output", dist.output)->required();
    dist_cmd->add_option("--truncation", dist.truncation, "spectral cutoff (0: full)");
    dist_cmd->add_option("--quantile", dist.quantile, "cutoff quantile");
    dist_cmd->add_option("--emit-qq", dist.qq_path, "write a qq csv against chi2 quantiles");

    ShapleyArgs shap;
    CLI::App* shap_cmd = app.add_subcommand("shapley", "Time-coordinate outlyingness decomposition");
    shap_cmd->add_option("--input", shap.input)->required();
    shap_cmd->add_option("--fit", shap.fit)->required();
    shap_cmd->add_option("--output", shap.output)->required();
    shap_cmd->add_option("--intervals", shap.intervals, "number of equal domain intervals");

    FpcaArgs fpca_args;
    CLI::App* fpca_cmd = app.add_subcommand("fpca", "Separable functional principal components");
    fpca_cmd->add_option("--fit", fpca_args.fit)->required();
    fpca_cmd->add_option("--output", fpca_args.output)->required();
    fpca_cmd->add_option("--truncation", fpca_args.truncation, "exported eigenpairs (0: full)");

    EvaluateArgs eval_args;
    CLI::App* eval_cmd = app.add_subcommand("evaluate", "Detection metrics against labels");
    eval_cmd->add_option("--fit", eval_args.fit)->required();
    eval_cmd->add_option("--labels", eval_args.labels)->required();
    eval_cmd->add_option("--output", eval_args.output)->required();
    eval_cmd->add_option("--truth", eval_args.truth, "truth json for estimation errors");
    eval_cmd->add_option("--input", eval_args.input, "curve csv (grid for error integrals)");
    eval_cmd->add_option("--benchmark-mean-error", eval_args.benchmark_mean_error);
    eval_cmd->add_option("--benchmark-cov-error", eval_args.benchmark_cov_error);

    SmoothArgs smooth_args;
    CLI::App* smooth_cmd = app.add_subcommand("smooth", "Basis coefficients of the curves");
    smooth_cmd->add_option("--input", smooth_args.input)->required();
    smooth_cmd->add_option("--output", smooth_args.output)->required();
    smooth_cmd->add_option("--m", smooth_args.m, "basis size");
    smooth_cmd->add_option("--degree", smooth_args.degree, "spline degree");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    sim.mean_given = mean_opt->count() > 0;
    fit.seed_given = seed_opt->count() > 0;

    try {
        if (simulate->parsed()) run_simulate(sim);
        else if (fit_cmd->parsed()) run_fit(fit);
        else if (dist_cmd->parsed()) run_distance(dist);
        else if (shap_cmd->parsed()) run_shapley(shap);
        else if (fpca_cmd->parsed()) run_fpca(fpca_args);
        else if (eval_cmd->parsed()) run_evaluate(eval_args);
        else if (smooth_cmd->parsed()) run_smooth(smooth_args);
    } catch (const InvalidInputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
