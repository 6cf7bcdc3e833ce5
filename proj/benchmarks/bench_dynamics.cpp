// Copyright 2026 The nhzm Authors
// SPDX-License-Identifier: Apache-2.0

#include <nhzm/nhzm.hpp>

#include <benchmark/benchmark.h>

namespace {

struct Fixture {
    nhzm::LatticeSpec spec;
    nhzm::Hamiltonian h;
    nhzm::ModeSet ms;
    nhzm::ZeroMode zm;
};

const Fixture& fixture() {
    static const Fixture f = [] {
        nhzm::CoupledChainParams p;
        p.gamma = 2.0;
        nhzm::LatticeSpec spec = nhzm::build_coupled_chain(p);
        nhzm::Hamiltonian h = nhzm::assemble_hamiltonian(spec);
        nhzm::ModeSet ms = nhzm::eigendecompose(h);
        nhzm::ZeroMode zm =
            *nhzm::baseline_zero_mode(ms, 0.0, nhzm::kZeroModeTolerance, nhzm::reservoir_geometry(spec));
        return Fixture{std::move(spec), std::move(h), std::move(ms), std::move(zm)};
    }();
    return f;
}

void BM_Propagate(benchmark::State& state) {
    const Fixture& f = fixture();
    const double t = static_cast<double>(state.range(0)) * nhzm::kPeriod;
    for (auto _ : state) benchmark::DoNotOptimize(nhzm::propagate(f.h, f.zm.wavefunction, t, true));
}
BENCHMARK(BM_Propagate)->Arg(1)->Arg(100);

void BM_PropagateEigen(benchmark::State& state) {
    const Fixture& f = fixture();
    for (auto _ : state) {
        benchmark::DoNotOptimize(nhzm::propagate_eigen(f.ms, f.zm.wavefunction, nhzm::kPeriod));
    }
}
BENCHMARK(BM_PropagateEigen);

void BM_Ensemble(benchmark::State& state) {
    const Fixture& f = fixture();
    nhzm::EnsembleOptions o;
    o.n = static_cast<std::size_t>(state.range(0));
    o.periods = 0.1663;
    o.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(nhzm::ensemble_experiment(f.spec, f.zm, o));
}
BENCHMARK(BM_Ensemble)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
