// Copyright 2026 The nhzm Authors
// SPDX-License-Identifier: Apache-2.0

#include <nhzm/nhzm.hpp>

#include <benchmark/benchmark.h>

namespace {

nhzm::LatticeSpec chain(double gamma, std::size_t n_reservoir = 10) {
    nhzm::CoupledChainParams p;
    p.gamma = gamma;
    p.n_reservoir = n_reservoir;
    return nhzm::build_coupled_chain(p);
}

void BM_Eigendecompose(benchmark::State& state) {
    const nhzm::Hamiltonian h =
        nhzm::assemble_hamiltonian(chain(2.0, static_cast<std::size_t>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(nhzm::eigendecompose(h));
    state.SetComplexityN(h.dim());
}
BENCHMARK(BM_Eigendecompose)->Arg(10)->Arg(40)->Arg(160)->Complexity();

void BM_SweepAndTrack(benchmark::State& state) {
    std::vector<double> grid(static_cast<std::size_t>(state.range(0)));
    for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = 3.0 * i / (grid.size() - 1);
    for (auto _ : state) {
        const auto sweep = nhzm::sweep_gamma([](double g) { return chain(g); }, grid, {}, 1);
        benchmark::DoNotOptimize(nhzm::track_modes(sweep));
    }
}
BENCHMARK(BM_SweepAndTrack)->Arg(31)->Arg(301)->Unit(benchmark::kMillisecond);

void BM_Classify(benchmark::State& state) {
    const nhzm::LatticeSpec spec = chain(2.0);
    const nhzm::ModeSet ms = nhzm::eigendecompose(nhzm::assemble_hamiltonian(spec));
    const nhzm::ReservoirGeometry geo = nhzm::reservoir_geometry(spec);
    const auto zm = nhzm::baseline_zero_mode(ms, 0.0, nhzm::kZeroModeTolerance, geo);
    for (auto _ : state) benchmark::DoNotOptimize(nhzm::classify_regime(*zm, geo));
}
BENCHMARK(BM_Classify);

void BM_BandScan(benchmark::State& state) {
    nhzm::BandParams p;
    p.gamma = 1.0;
    p.n_k = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(nhzm::band_energies(p));
}
BENCHMARK(BM_BandScan)->Arg(1001);

}  // namespace
