#include <benchmark/benchmark.h>

#include "rkb/kernels.hpp"

namespace {

const rkb::PhysParams kP = rkb::make_params(2.5, 2.0, 2.0, 1.0);

std::vector<rkb::BoundaryState> seeds(const rkb::PerturbationProfile& prof) {
    std::vector<rkb::BoundaryState> s;
    for (int i = 0; i < 16; ++i) s.push_back(rkb::make_state(0.0, -1.2 + 2.4 * (i + 0.5) / 16, prof, kP));
    return s;
}

void BM_SectionSerial(benchmark::State& st) {
    const auto prof = rkb::PerturbationProfile::cos_mode(2, 0.02);
    const auto s = seeds(prof);
    for (auto _ : st) benchmark::DoNotOptimize(rkb::serial::section_sweep(s, 50, prof, kP));
}

void BM_SectionParallel(benchmark::State& st) {
    const auto prof = rkb::PerturbationProfile::cos_mode(2, 0.02);
    const auto s = seeds(prof);
    for (auto _ : st)
        benchmark::DoNotOptimize(rkb::section_sweep(s, 50, prof, kP, static_cast<int>(st.range(0))));
}

void BM_JacobianSerial(benchmark::State& st) {
    const auto prof = rkb::PerturbationProfile::cos_mode(2, 0.02);
    const std::vector<double> xi{0.0, 1.0, 2.0, 3.0}, I{-0.8, -0.2, 0.4, 1.0};
    for (auto _ : st) benchmark::DoNotOptimize(rkb::serial::jacobian_determinant_grid(xi, I, prof, kP, 1e-6));
}

void BM_JacobianParallel(benchmark::State& st) {
    const auto prof = rkb::PerturbationProfile::cos_mode(2, 0.02);
    const std::vector<double> xi{0.0, 1.0, 2.0, 3.0}, I{-0.8, -0.2, 0.4, 1.0};
    for (auto _ : st)
        benchmark::DoNotOptimize(
            rkb::jacobian_determinant_grid(xi, I, prof, kP, 1e-6, static_cast<int>(st.range(0))));
}

}  // namespace

BENCHMARK(BM_SectionSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SectionParallel)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_JacobianSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_JacobianParallel)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
