// Copyright 2026 The nhzm Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file dynamics.hpp
 * @brief Time evolution i dpsi/dt = H psi, the noisy zero-mode ensemble, and
 *        closed-form evolution at an exceptional point.
 *
 * Time is in units of 1/t; one period is kPeriod = 2*pi/t.
 */

#pragma once

#include <nhzm/localization.hpp>

#include <cstdint>

namespace nhzm {

struct Propagation {
    CVector state;
    /// psi(T) = state * exp(log_scale); 0 unless renormalisation was requested.
    double log_scale = 0.0;
};

/// psi(T) = exp(-i H T) psi0 by scaling-and-squaring Pade exponentials, which
/// stays exact for defective H. With renormalize_each_period the state is
/// rescaled to unit max amplitude after every period (and at the end).
/// Throws OverflowError if the unscaled state leaves the double range.
[[nodiscard]] Propagation propagate(const Hamiltonian& h, const CVector& psi0, double duration,
                                    bool renormalize_each_period = false);

/// Eigen-expansion route: sum_mu e^{-i omega_mu T} <phi_mu|psi0> psi_mu.
/// Throws DomainError if any mode is near-defective.
[[nodiscard]] CVector propagate_eigen(const ModeSet& ms, const CVector& psi0, double duration);

/// exp(-i H T) up to a positive scalar: returns the matrix divided by
/// exp(log_scale). Used when only the shape of the evolved state matters.
struct ScaledPropagator {
    CMatrix matrix;
    double log_scale = 0.0;
};

[[nodiscard]] ScaledPropagator scaled_propagator(const Hamiltonian& h, double duration);

// ---------------------------------------------------------------------------
// Ensemble experiment
// ---------------------------------------------------------------------------

enum class FinalNorm { MaxAmplitude, TwoNorm };

struct EnsembleOptions {
    double sigma = 0.1;
    std::size_t n = 1000;
    double periods = 1e4;
    std::uint64_t seed = 0;
    FinalNorm normalization = FinalNorm::MaxAmplitude;
    unsigned threads = 0;  ///< 0 picks hardware concurrency
};

struct EnsembleResult {
    std::vector<double> mean_abs_profile;  ///< over reservoir sites
    std::vector<double> std_profile;       ///< population standard deviation
    double r_squared = 0.0;                ///< linear fit of the mean profile vs site
    std::size_t n_realizations = 0;
    double duration = 0.0;  ///< in periods
    std::uint64_t seed = 0;
    double sigma = 0.0;
    /// exp((max Im omega - Im omega_zm) T): growth of the dominant mode relative
    /// to the zero mode over the run.
    double amplification = 1.0;
};

/// splitmix64 finaliser; per-realisation seeds are derive_seed(seed, index).
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Draws n standard normals from a generator seeded with `seed` (mt19937_64,
/// Box-Muller on 53-bit uniforms).
[[nodiscard]] std::vector<double> standard_normals(std::uint64_t seed, std::size_t n);

/// Each realisation multiplies the zero mode's reservoir amplitudes by
/// independent e^{sigma s}, evolves for `periods` periods, normalises, and
/// contributes |Psi_n| on the reservoir. Deterministic for a given seed and
/// independent of the thread count.
[[nodiscard]] EnsembleResult ensemble_experiment(const LatticeSpec& spec, const ZeroMode& zm,
                                                 const EnsembleOptions& opts = {});

/// Periods after which the dominant mode outgrows the zero mode by `factor`.
[[nodiscard]] double periods_for_amplification(const ModeSet& ms, const ZeroMode& zm,
                                               double factor);

// ---------------------------------------------------------------------------
// Exceptional-point evolution
// ---------------------------------------------------------------------------

/// Jordan chain at an EP: (H - lambda) psi0 = 0, (H - lambda) psi1 = psi0.
struct EpEvolution {
    Complex lambda{};
    CVector psi0;
    CVector psi1;
    /// <phi0|psi1> with phi0 the unit left eigenvector; the alternative
    /// normalisation convention, reported only.
    Complex left_overlap{};
};

/// psi1 is the minimum-norm solution of (H - lambda) psi1 = psi0. Throws
/// SetupError if psi0 is not a null vector of H - lambda or the chain fails.
[[nodiscard]] EpEvolution make_ep_evolution(const Hamiltonian& h, Complex lambda,
                                            const CVector& psi0, double tol = 1e-10);

struct EpCoefficients {
    Complex c0{};
    Complex c1{};
};

/// Coordinates of psi_init on span{psi0, psi1}. Throws DomainError if
/// psi_init has a component outside the span.
[[nodiscard]] EpCoefficients ep_coefficients(const EpEvolution& ep, const CVector& psi_init,
                                             double tol = 1e-10);

/// e^{-i lambda t} [c0 psi0 + c1 (psi1 - i t psi0)]. Throws SetupError if ep
/// is not a Jordan chain of h.
[[nodiscard]] CVector ep_evolution(const Hamiltonian& h, const EpEvolution& ep,
                                   const CVector& psi_init, double t, double tol = 1e-10);

/// Critically damped oscillator: e^{-w0 t} (x0 + (w0 x0 + v0) t).
/// Throws DomainError for w0 < 0.
[[nodiscard]] double critical_damping(double x0, double v0, double omega0_mech, double t);

}  // namespace nhzm
