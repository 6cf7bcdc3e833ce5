// Copyright 2026 The nhzm Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file perturbation.hpp
 * @brief First-order biorthogonal perturbation theory in a weak coupling,
 *        H = H0 + t' H'.
 */

#pragma once

#include <nhzm/spectral.hpp>

namespace nhzm {

/// Unperturbed problem plus the perturbation structure. The modes of h0 are
/// biorthonormalised; when h0 splits into decoupled blocks at a partition the
/// blocks are decomposed separately so that no mode mixes them.
struct PerturbationSetup {
    Hamiltonian h0;
    CMatrix h_prime;
    double t_prime = 0.0;
    ModeSet modes;

    /// H' is symmetric with exactly two unit entries bridging the partition.
    [[nodiscard]] bool is_junction_only(std::size_t partition) const;
};

/// General setup. If partition is given and h0 has no entries coupling
/// [0, partition) with [partition, n), the two blocks are decomposed apart.
[[nodiscard]] PerturbationSetup make_perturbation_setup(const Hamiltonian& h0, CMatrix h_prime,
                                                        double t_prime,
                                                        std::optional<std::size_t> partition = {},
                                                        const EigenOptions& opts = {});

/// Setup of a partitioned spec: h0 is the spec without its junction bond,
/// H' the unit junction matrix and t' the junction coupling.
[[nodiscard]] PerturbationSetup make_junction_setup(const LatticeSpec& spec,
                                                    const EigenOptions& opts = {});

/// The unperturbed mode closest to omega0 (the system edge state for the
/// coupled chain).
[[nodiscard]] std::size_t zero_mode_index(const PerturbationSetup& setup, double omega0 = 0.0);

/// t' <phi_mu|H'|psi_mu>. Throws DegeneratePerturbation for a near-defective mode.
[[nodiscard]] Complex first_order_energy(const PerturbationSetup& setup, std::size_t mu);

/// t' sum_{nu != mu} <phi_nu|H'|psi_mu> / (omega_mu - omega_nu) |psi_nu>.
/// Throws DegeneratePerturbation when a coupled denominator is below min_gap.
[[nodiscard]] CVector first_order_wavefunction(const PerturbationSetup& setup, std::size_t mu,
                                               double min_gap = 1e-8);

struct PerturbationComparison {
    std::size_t unperturbed_index = 0;
    std::size_t exact_index = 0;
    Complex omega_exact{};
    Complex omega_perturbed{};  ///< omega^(0) + omega^(1)
    double energy_error = 0.0;
    double vector_error = 0.0;  ///< ||c e - p|| / ||p|| with c the least-squares scale
    double overlap = 0.0;       ///< |<e|p>| / (||e|| ||p||)
    CVector exact;              ///< c e, aligned with perturbed
    CVector perturbed;          ///< psi^(0) + psi^(1)
};

/// Compares psi^(0) + psi^(1) of mode mu (default: the zero mode) with the
/// exact eigenvector of the full spec it overlaps best. Throws MatchingError
/// when that overlap is below min_overlap.
[[nodiscard]] PerturbationComparison perturbation_vs_exact(const LatticeSpec& spec,
                                                           std::optional<std::size_t> mu = {},
                                                           double min_overlap = 0.5,
                                                           const EigenOptions& opts = {});

}  // namespace nhzm
