// Copyright 2026 The nhzm Authors
// SPDX-License-Identifier: Apache-2.0

// Shared fixtures for the test binaries.

#pragma once

#include <nhzm/nhzm.hpp>

#include <optional>
#include <random>

namespace nhzm::test {

/// The 9 + 10 site chain used throughout (t_A = 1, t_B = 0.2, uniform t = 1).
inline LatticeSpec reference_chain(double gamma, double t_prime = 0.2) {
    CoupledChainParams p;
    p.gamma = gamma;
    p.t_prime = t_prime;
    return build_coupled_chain(p);
}

struct Solved {
    LatticeSpec spec;
    Hamiltonian h;
    ModeSet modes;
    ReservoirGeometry geometry;
};

inline Solved solve(const LatticeSpec& spec) {
    Hamiltonian h = assemble_hamiltonian(spec);
    ModeSet ms = eigendecompose(h);
    return {spec, h, std::move(ms), reservoir_geometry(spec)};
}

inline ZeroMode baseline(const Solved& s, double tol = kZeroModeTolerance) {
    std::optional<ZeroMode> zm = baseline_zero_mode(s.modes, 0.0, tol, s.geometry);
    if (!zm) throw std::runtime_error("no zero mode");
    return *zm;
}

/// Random coupled chain with NHPH symmetry: zero onsite energies, real
/// positive bonds, alternating gain/loss in the reservoir.
inline LatticeSpec random_nhph_spec(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> ns(2, 9);
    std::uniform_int_distribution<int> nr(2, 10);
    std::uniform_real_distribution<double> t(0.1, 1.5);
    std::uniform_real_distribution<double> g(0.0, 3.0);
    CoupledChainParams p;
    p.n_system = static_cast<std::size_t>(ns(rng));
    p.n_reservoir = static_cast<std::size_t>(nr(rng));
    p.system_t_a = t(rng);
    p.system_t_b = t(rng);
    p.reservoir_t_a = t(rng);
    p.reservoir_t_b = t(rng);
    p.t_prime = t(rng);
    p.gamma = g(rng);
    p.reservoir_first_sign = rng() % 2 ? GainSign::Gain : GainSign::Loss;
    return build_coupled_chain(p);
}

}  // namespace nhzm::test
