#include <benchmark/benchmark.h>

#include <cstdint>

#include "qmc/bitmatrix.hpp"
#include "qmc/faber.hpp"
#include "qmc/kernels.hpp"
#include "qmc/net.hpp"
#include "qmc/pointsets.hpp"
#include "qmc/rng.hpp"
#include "qmc/tent.hpp"
#include "qmc/testfunction.hpp"

namespace {

qmc::PointSet coprime_lattice(std::size_t n) {
    // denominators 65537 and 65539: lcm too large for the scaled pair sum,
    // forces the generic rational path
    qmc::PointSet p(2);
    for (std::size_t k = 0; k < n; ++k) {
        p.append({qmc::Rational(static_cast<long>(k * 40503 % 65537), 65537),
                  qmc::Rational(static_cast<long>(k * 12345 % 65539), 65539)});
    }
    return p;
}

void run_wce(benchmark::State& state, const qmc::PointSet& p, qmc::WceMode mode) {
    qmc::WceOptions opts;
    opts.mode = mode;
    for (auto _ : state)
        benchmark::DoNotOptimize(qmc::wce_squared(qmc::KernelId::K1, p, opts));
    std::size_t n = p.size();
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n * (n + 1) / 2));
}

}  // namespace

static void BM_WceExactScaled(benchmark::State& state) {
    run_wce(state, qmc::tent_pullback(qmc::halton2d(static_cast<int>(state.range(0)))),
            qmc::WceMode::Exact);
}
BENCHMARK(BM_WceExactScaled)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_WceExactGeneric(benchmark::State& state) {
    run_wce(state, coprime_lattice(static_cast<std::size_t>(state.range(0))),
            qmc::WceMode::Exact);
}
BENCHMARK(BM_WceExactGeneric)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_WceFixed60(benchmark::State& state) {
    run_wce(state, qmc::tent_pullback(qmc::halton2d(static_cast<int>(state.range(0)))),
            qmc::WceMode::Fixed60);
}
BENCHMARK(BM_WceFixed60)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_RankGf2(benchmark::State& state) {
    std::size_t n = static_cast<std::size_t>(state.range(0));
    qmc::SplitMix64 rng(7);
    qmc::BitMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r) m.set_row_word(r, rng.next() >> (64 - n));
    for (auto _ : state) benchmark::DoNotOptimize(qmc::rank_gf2(m));
}
BENCHMARK(BM_RankGf2)->Arg(24)->Arg(64);

static void BM_MinimalT(benchmark::State& state) {
    qmc::GeneratorMatrixSet g = qmc::load_matrix_file(QMC_DATA_DIR "/sobol_d6_n16.txt");
    g.d = static_cast<int>(state.range(0));
    g.matrices.resize(static_cast<std::size_t>(g.d));
    for (auto _ : state) benchmark::DoNotOptimize(qmc::minimal_t(g));
}
BENCHMARK(BM_MinimalT)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_NetPoints(benchmark::State& state) {
    qmc::GeneratorMatrixSet g = qmc::load_matrix_file(QMC_DATA_DIR "/order2_d2_n10.txt");
    for (auto _ : state) benchmark::DoNotOptimize(qmc::net_points(g));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * 1024);
}
BENCHMARK(BM_NetPoints)->Unit(benchmark::kMillisecond);

static void BM_Halton2d(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(qmc::halton2d(12));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * 4096);
}
BENCHMARK(BM_Halton2d)->Unit(benchmark::kMillisecond);

static void BM_TentPullback(benchmark::State& state) {
    qmc::PointSet p = qmc::halton2d(12);
    for (auto _ : state) benchmark::DoNotOptimize(qmc::tent_pullback(p));
}
BENCHMARK(BM_TentPullback)->Unit(benchmark::kMillisecond);

static void BM_FaberAnalyze(benchmark::State& state) {
    qmc::TestFunction f = qmc::TestFunction::bspline(1);
    auto eval = [&](const std::vector<qmc::Rational>& x) { return f.evaluate(x); };
    int level = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(qmc::analyze(eval, 1, level, qmc::DomainKind::NonPeriodic));
}
BENCHMARK(BM_FaberAnalyze)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
