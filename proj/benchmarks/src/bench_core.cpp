// Microbenchmarks for the hot paths: graph generation, Laplacian matvecs,
// the low-degree scan, dense eigensolves and the iterative lambda2 route.
// Run with --benchmark_filter=... to pick a subset.

#include <benchmark/benchmark.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "gaplab/gap_solver.hpp"
#include "gaplab/graph.hpp"
#include "gaplab/rng.hpp"
#include "gaplab/scan.hpp"
#include "gaplab/tree_spectra.hpp"

namespace {

gaplab::Graph make_er(std::uint32_t n, double d, std::uint64_t stream) {
    return gaplab::generate_er(n, d, gaplab::RngSeed{12345, stream});
}

void bm_generate_er(benchmark::State& state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    std::uint64_t stream = 0;
    for (auto _ : state) {
        auto g = make_er(n, 5.0, stream++);
        benchmark::DoNotOptimize(g.edge_count());
    }
    state.SetItemsProcessed(state.iterations() * n);
}

void bm_laplacian_apply(benchmark::State& state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    auto g = make_er(n, 5.0, 7);
    std::vector<double> x(n), y(n);
    gaplab::Xoshiro256PlusPlus rng({99, 0});
    for (auto& v : x) v = rng.next_double() - 0.5;
    for (auto _ : state) {
        gaplab::laplacian_apply(g, x, y);
        benchmark::DoNotOptimize(y.data());
        std::swap(x, y);
    }
    state.SetItemsProcessed(state.iterations() * g.edge_count());
}

void bm_low_degree_scan(benchmark::State& state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    const double d = std::log(static_cast<double>(n)) / 2.5;
    auto g = make_er(n, d, 3);
    const double tau = gaplab::choose_tau(0.2);
    for (auto _ : state) {
        auto scan = gaplab::low_degree_scan(g, tau, d);
        benchmark::DoNotOptimize(scan.vset.size());
    }
}

void bm_find_pendant_lines(benchmark::State& state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    const double d = std::log(static_cast<double>(n)) / 2.5;
    auto g = make_er(n, d, 3);
    for (auto _ : state) {
        auto dets = gaplab::find_pendant_lines(g, 2);
        benchmark::DoNotOptimize(dets.size());
    }
}

void bm_sym_eigen(benchmark::State& state) {
    const auto dim = static_cast<std::size_t>(state.range(0));
    gaplab::DenseSymMatrix m(dim);
    gaplab::Xoshiro256PlusPlus rng({4242, 0});
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const double v = rng.next_double() - 0.5;
            m.at(i, j) = v;
            m.at(j, i) = v;
        }
    for (auto _ : state) {
        auto spec = gaplab::sym_eigen(m);
        benchmark::DoNotOptimize(spec.eigenvalues.data());
    }
}

void bm_lambda2_iterative(benchmark::State& state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    const double d = std::log(static_cast<double>(n)) / 2.0;
    auto g = make_er(n, d, 11);
    for (auto _ : state) {
        auto rep = gaplab::lambda2(g, 1e-8, gaplab::SolveMethod::iterative);
        benchmark::DoNotOptimize(rep.lambda2);
    }
}

void bm_enumerate_trees(benchmark::State& state) {
    const auto t = static_cast<std::uint32_t>(state.range(0));
    for (auto _ : state) {
        auto trees = gaplab::enumerate_trees(t);
        benchmark::DoNotOptimize(trees.size());
    }
}

}  // namespace

BENCHMARK(bm_generate_er)->Arg(1000)->Arg(10000)->Arg(100000);
BENCHMARK(bm_laplacian_apply)->Arg(1000)->Arg(10000)->Arg(100000);
BENCHMARK(bm_low_degree_scan)->Arg(10000)->Arg(100000);
BENCHMARK(bm_find_pendant_lines)->Arg(10000)->Arg(100000);
BENCHMARK(bm_sym_eigen)->Arg(16)->Arg(64)->Arg(128);
BENCHMARK(bm_lambda2_iterative)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_enumerate_trees)->Arg(8)->Arg(10);

BENCHMARK_MAIN();
