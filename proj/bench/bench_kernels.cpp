// Serial reference vs OpenMP kernels on the orbit-parallel workloads.
// Arguments: 0 = Serial, 1 = Parallel.

#include <benchmark/benchmark.h>

#include "domsplit/cocycle.hpp"
#include "domsplit/domination.hpp"
#include "domsplit/shadowlab.hpp"
#include "domsplit/spectrum.hpp"

using namespace domsplit;

namespace {

Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
    Matrix m(rows.size(), rows.begin()->size());
    Eigen::Index r = 0;
    for (const auto& row : rows) {
        Eigen::Index c = 0;
        for (double v : row) m(r, c++) = v;
        ++r;
    }
    return m;
}

const ShiftSpace& shift() {
    static const ShiftSpace s = ShiftSpace::build({{1, 1, 1}, {1, 1, 1}, {1, 1, 0}});
    return s;
}

const FiniteRangeCocycle& cocycle() {
    static const FiniteRangeCocycle a = FiniteRangeCocycle::locally_constant({
        mat({{2, 1, 0}, {1, 1, 0.5}, {0, 0.2, 0.6}}),
        mat({{3, 1, 0.1}, {2, 1, 0}, {0.3, 0, 0.5}}),
        mat({{2.5, 0.2, 0}, {0.4, 1.2, 0.1}, {0, 0.3, 0.4}}),
    });
    return a;
}

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::Parallel : Execution::Serial; }

void BM_SpectrumReport(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(spectrum_report(cocycle(), shift(), 9, mode(state)));
    state.SetLabel(state.range(0) ? "parallel" : "serial");
}

void BM_DominationTest(benchmark::State& state) {
    DominationOptions options;
    options.exec = mode(state);
    for (auto _ : state) benchmark::DoNotOptimize(domination_test(cocycle(), shift(), 1, 40, {7, 256, 1}, options));
    state.SetLabel(state.range(0) ? "parallel" : "serial");
}

void BM_KalininGap(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(kalinin_gap(cocycle(), shift(), 1.5, 200, {6, 256, 1}, mode(state)));
    state.SetLabel(state.range(0) ? "parallel" : "serial");
}

}  // namespace

BENCHMARK(BM_SpectrumReport)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_DominationTest)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_KalininGap)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
