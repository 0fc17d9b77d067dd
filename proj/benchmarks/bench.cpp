#include <benchmark/benchmark.h>

#include "sepfda/basis.hpp"
#include "sepfda/fmodel.hpp"
#include "sepfda/mmcd.hpp"
#include "sepfda/shapley.hpp"
#include "sepfda/simgen.hpp"

namespace {

using namespace sepfda;

Matrix bench_spd(int dim, Rng& rng) {
    Matrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = rng.normal();
    Matrix s = g * g.transpose() / dim + 0.5 * Matrix::Identity(dim, dim);
    return (s + s.transpose()) / 2.0;
}

SeparableFit bench_fit(int m, int p, Rng& rng) {
    SeparableFit fit;
    fit.mean = Matrix::Zero(m, p);
    fit.sigma_col = bench_spd(m, rng);
    fit.sigma_row = bench_spd(p, rng);
    apply_scale_convention(fit);
    return fit;
}

void BM_SymEigen(benchmark::State& state) {
    Rng rng(1);
    const Matrix s = bench_spd(static_cast<int>(state.range(0)), rng);
    for (auto _ : state) benchmark::DoNotOptimize(sym_eigen(s));
}
BENCHMARK(BM_SymEigen)->Arg(10)->Arg(30)->Arg(60);

void BM_Smooth(benchmark::State& state) {
    Rng rng(2);
    const TimeGrid grid = uniform_grid(Interval{0.0, 1.0}, 100);
    const Matrix sigma_row = make_sigma_row(3, rng);
    const DiscreteCurves curves = sample_process(
        static_cast<int>(state.range(0)), 3, grid, sigma_row,
        KernelSpec::ou(0.3, 0.3), ProcessOptions{}, rng.substream(7));
    const BasisSystem basis = make_basis(grid.domain, 10, 3);
    for (auto _ : state) benchmark::DoNotOptimize(smooth(curves, basis));
}
BENCHMARK(BM_Smooth)->Arg(100)->Arg(300);

void BM_MmcdFit(benchmark::State& state) {
    Rng rng(3);
    SeparableFit truth = bench_fit(10, 3, rng);
    std::vector<Matrix> samples;
    Rng draw = rng.substream(11);
    for (int i = 0; i < static_cast<int>(state.range(0)); ++i)
        samples.push_back(sample_matrix_normal(truth, draw));
    MmcdConfig config;
    config.seed = 4;
    config.n_initial_subsets = 100;
    for (auto _ : state) benchmark::DoNotOptimize(mmcd_fit(samples, config));
}
BENCHMARK(BM_MmcdFit)->Arg(150)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_ShapleyMap(benchmark::State& state) {
    Rng rng(5);
    SeparableFit fit = bench_fit(20, 5, rng);
    Rng draw = rng.substream(13);
    const Matrix a = sample_matrix_normal(fit, draw);
    const BasisSystem basis = make_basis(Interval{0.0, 1.0}, 20, 3);
    const DomainPartition partition =
        DomainPartition::equal(basis.domain, static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(shapley_time_coordinate(a, fit, basis, partition));
}
BENCHMARK(BM_ShapleyMap)->Arg(4)->Arg(16);

} // namespace

BENCHMARK_MAIN();
