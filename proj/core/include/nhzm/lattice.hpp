// Copyright 2026 The nhzm Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file lattice.hpp
 * @brief Declarative 1D chain descriptions and their dense Hamiltonians.
 *
 * Conventions:
 * - Natural units: nearest-neighbour coupling t = 1, reference onsite energy 0.
 * - Site indices are 0-based along the full chain.
 * - Sublattice labels are structural parity labels: they alternate A, B, A, ...
 *   along the whole chain, including across a system/reservoir junction.
 * - onsite_imag > 0 is gain, < 0 is loss.
 */

#pragma once

#include <nhzm/common.hpp>

#include <optional>
#include <vector>

namespace nhzm {

enum class Sublattice { A, B };

[[nodiscard]] constexpr Sublattice other(Sublattice s) noexcept {
    return s == Sublattice::A ? Sublattice::B : Sublattice::A;
}

/// Sign of the gain/loss modulation on the first site of a modulated block.
enum class GainSign { Gain, Loss };

struct Site {
    double onsite_real = 0.0;
    double onsite_imag = 0.0;
    Sublattice sublattice = Sublattice::A;

    friend bool operator==(const Site&, const Site&) = default;
};

struct Coupling {
    std::size_t left = 0;
    std::size_t right = 0;
    double strength = 0.0;

    friend bool operator==(const Coupling&, const Coupling&) = default;
};

/// Immutable, validated description of a finite chain.
class LatticeSpec {
public:
    /// Throws InvalidSpec unless: at least one site; couplings join (n, n+1)
    /// only, are unique and strictly positive; labels alternate; the
    /// partition (if any) lies strictly inside the chain.
    LatticeSpec(std::vector<Site> sites, std::vector<Coupling> couplings,
                std::optional<std::size_t> partition = std::nullopt);

    [[nodiscard]] std::size_t size() const noexcept { return sites_.size(); }
    [[nodiscard]] const std::vector<Site>& sites() const noexcept { return sites_; }
    [[nodiscard]] const std::vector<Coupling>& couplings() const noexcept { return couplings_; }

    /// Index of the first reservoir site, if this chain has a system/reservoir split.
    [[nodiscard]] std::optional<std::size_t> partition() const noexcept { return partition_; }

    [[nodiscard]] SiteRange system_range() const noexcept;
    /// Empty when there is no partition.
    [[nodiscard]] SiteRange reservoir_range() const noexcept;

    /// Strength of the bond (i, i+1), 0 when the sites are not coupled.
    [[nodiscard]] double coupling(std::size_t i) const noexcept;

    [[nodiscard]] bool is_hermitian() const noexcept;
    [[nodiscard]] bool has_uniform_onsite_real() const noexcept;

    friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;

private:
    std::vector<Site> sites_;
    std::vector<Coupling> couplings_;  // sorted by left index
    std::optional<std::size_t> partition_;
};

/// Dense complex Hamiltonian. Immutable once constructed.
class Hamiltonian {
public:
    /// Throws InvalidSpec for non-square or non-finite matrices.
    explicit Hamiltonian(CMatrix matrix);

    [[nodiscard]] Eigen::Index dim() const noexcept { return matrix_.rows(); }
    [[nodiscard]] const CMatrix& matrix() const noexcept { return matrix_; }
    [[nodiscard]] Complex operator()(Eigen::Index i, Eigen::Index j) const { return matrix_(i, j); }
    /// Frobenius norm; the scale used by all relative tolerances.
    [[nodiscard]] double norm() const noexcept { return norm_; }

private:
    CMatrix matrix_;
    double norm_;
};

/// Hermitian SSH chain; bonds alternate t_a, t_b starting with t_a.
[[nodiscard]] LatticeSpec build_ssh_chain(std::size_t n_sites, double t_a, double t_b,
                                          double onsite = 0.0,
                                          Sublattice first = Sublattice::A);

/// Gain/loss reservoir: onsite_imag alternates +gamma, -gamma starting with
/// first_sign; bonds alternate t_a, t_b (t_a == t_b is the uniform reservoir).
[[nodiscard]] LatticeSpec build_reservoir(std::size_t n_sites, double t_a, double t_b,
                                          double gamma, double onsite = 0.0,
                                          GainSign first_sign = GainSign::Gain,
                                          Sublattice first = Sublattice::A);

/// Concatenates system and reservoir with one junction bond of strength
/// t_prime. The reservoir's first label must differ from the system's last.
[[nodiscard]] LatticeSpec couple(const LatticeSpec& system, const LatticeSpec& reservoir,
                                 double t_prime);

/// Copy of spec with alternating gain/loss of strength gamma on the sites in range.
[[nodiscard]] LatticeSpec with_gain_loss(const LatticeSpec& spec, SiteRange range, double gamma,
                                         GainSign first_sign = GainSign::Gain);

/// Copy of spec without the bond (i, i+1).
[[nodiscard]] LatticeSpec without_coupling(const LatticeSpec& spec, std::size_t i);

[[nodiscard]] Hamiltonian assemble_hamiltonian(const LatticeSpec& spec);

/// Inverse of assemble_hamiltonian. Labels cannot be read off the matrix, so
/// the first site's label is supplied. Throws InvalidSpec for matrices that are
/// not symmetric tridiagonal with real positive off-diagonals.
[[nodiscard]] LatticeSpec extract_spec(const Hamiltonian& h, Sublattice first = Sublattice::A,
                                       std::optional<std::size_t> partition = std::nullopt);

/// Parameters of the system + reservoir geometry used throughout: an SSH
/// system coupled at its right edge to a gain/loss reservoir.
struct CoupledChainParams {
    std::size_t n_system = 9;
    double system_t_a = 1.0;
    double system_t_b = 0.2;
    /// Optional gain/loss inside the system (defect-state study), applied
    /// starting from site 0 with system_first_sign.
    double system_gamma = 0.0;
    GainSign system_first_sign = GainSign::Gain;

    std::size_t n_reservoir = 10;
    double reservoir_t_a = 1.0;
    double reservoir_t_b = 1.0;
    double gamma = 2.0;
    GainSign reservoir_first_sign = GainSign::Gain;

    double t_prime = 0.2;
    double onsite = 0.0;
    /// Reservoir onsite energy; defaults to onsite (detuning study otherwise).
    std::optional<double> reservoir_onsite;
};

[[nodiscard]] LatticeSpec build_coupled_chain(const CoupledChainParams& p);

/// Reservoir parameters a zero mode sees: used for kappa, r, alpha and for
/// classifying its tail.
struct ReservoirGeometry {
    SiteRange sites{};
    double t_a = 1.0;
    double t_b = 1.0;
    double gamma = 0.0;
    double omega0 = 0.0;
    /// Whether the first reservoir site is a gain site; the gain sublattice is
    /// called A in recurrence reports.
    bool first_is_gain = true;
};

/// Reads the reservoir geometry off a partitioned spec (couplings of its first
/// two reservoir bonds, |onsite_imag| of its first site).
[[nodiscard]] ReservoirGeometry reservoir_geometry(const LatticeSpec& spec);

}  // namespace nhzm
