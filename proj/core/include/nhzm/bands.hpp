// Copyright 2026 The nhzm Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file bands.hpp
 * @brief Bloch bands and exceptional points of the periodic gain/loss SSH
 *        reservoir. Lattice constant is 1; k means k*Lambda.
 */

#pragma once

#include <nhzm/common.hpp>

#include <vector>

namespace nhzm {

/// [[omega0 + i gamma, t_b + t_a e^{ik}], [t_b + t_a e^{-ik}, omega0 - i gamma]].
[[nodiscard]] Eigen::Matrix2cd bloch_hamiltonian(double k, double t_a, double t_b, double gamma,
                                                 double onsite = 0.0);

/// t_a^2 + t_b^2 + 2 t_a t_b cos k - gamma^2; omega_+- = omega0 +- sqrt of it.
[[nodiscard]] double band_radicand(double k, double t_a, double t_b, double gamma) noexcept;

struct Coalescence {
    double measure = 1.0;  ///< 1 - |<v1|v2>| for unit eigenvectors; 0 at an EP
    double gap = 0.0;      ///< |lambda1 - lambda2|
    /// Degenerate eigenvalues with independent eigenvectors (not an EP).
    bool non_ep_degeneracy = false;
};

[[nodiscard]] Coalescence coalescence_measure(const Eigen::Matrix2cd& m);

struct ExceptionalPoint {
    double k = 0.0;
    Eigen::Vector2cd coalesced_vector;  ///< [i (t_b + t_a e^{ik}) / gamma, 1]
    Coalescence coalescence;
};

struct EpSearch {
    std::vector<ExceptionalPoint> points;  ///< ascending k
    /// gamma = 0 with t_a == t_b: the zone-edge touching is a Hermitian
    /// degeneracy, not an EP.
    bool degenerate_band_warning = false;
};

/// EPs on k in (-pi, pi]: cos k = (gamma^2 - t_a^2 - t_b^2) / (2 t_a t_b),
/// refined by bisection on the radicand. Empty when gamma lies outside
/// [|t_a - t_b|, t_a + t_b].
[[nodiscard]] EpSearch locate_exceptional_points(double t_a, double t_b, double gamma,
                                                 double onsite = 0.0);

struct BandParams {
    double t_a = 1.0;
    double t_b = 0.5;
    double gamma = 0.0;
    double onsite = 0.0;
    std::size_t n_k = 1001;
};

struct BlochScan {
    std::vector<double> k;
    std::vector<Complex> omega_plus;
    std::vector<Complex> omega_minus;
    EpSearch eps;
};

/// n_k points from -pi to pi, both ends included (n_k >= 2).
[[nodiscard]] std::vector<double> k_grid(std::size_t n_k);

/// Both branches on k_grid(n_k). The radicand is real, so the root is taken
/// as sqrt(rad) or i*sqrt(-rad): continuous wherever the radicand keeps its sign.
[[nodiscard]] BlochScan band_energies(const BandParams& p);

}  // namespace nhzm
