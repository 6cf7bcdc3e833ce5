// Copyright 2026 The nhzm Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file localization.hpp
 * @brief Recurrence analysis of zero-mode tails in a gain/loss reservoir.
 *
 * Inside a reservoir with alternating gain +i*gamma and loss -i*gamma, a zero
 * mode (Re omega = omega0) obeys a two-step recurrence on each sublattice,
 *
 *     Psi_n = alpha * Psi_{n-2} - Psi_{n-4},
 *
 * whose characteristic equation b^2 - alpha*b + 1 = 0 decides the tail shape:
 * |alpha| < 2 extended, |alpha| > 2 exponential, alpha = +-2 linear.
 *
 * "Sublattice A" in this module always means the gain sublattice of the
 * reservoir and "B" the loss sublattice, whatever their global parity labels.
 */

#pragma once

#include <nhzm/spectral.hpp>

#include <array>
#include <optional>
#include <string_view>

namespace nhzm {

/// Effective gain/loss coefficients seen by a zero mode: a = Im omega - gamma
/// (gain sublattice), b = Im omega + gamma (loss sublattice).
struct Kappa {
    double a = 0.0;
    double b = 0.0;
};

/// Throws DomainError when |Re omega - omega0| > tol (kappa is real only for
/// zero modes).
[[nodiscard]] Kappa compute_kappa(Complex omega, double gamma, double omega0 = 0.0,
                                  double tol = kZeroModeTolerance);

struct AlphaR {
    double alpha = 0.0;
    double r = 0.0;  ///< kappa_a * kappa_b / (t_a * t_b)
};

/// alpha = -(t_a/t_b + t_b/t_a + r); for t_a == t_b this is -(2 + r).
/// Throws DomainError unless t_a, t_b > 0.
[[nodiscard]] AlphaR compute_alpha(const Kappa& kappa, double t_a, double t_b);

struct Roots {
    Complex plus{};
    Complex minus{};
};

/// Roots of b^2 - alpha*b + 1 = 0, b_+- = alpha/2 +- sqrt(alpha^2/4 - 1). The
/// smaller-magnitude root is taken as the reciprocal of the larger one, so
/// b_+ * b_- = 1 holds to rounding for any alpha.
[[nodiscard]] Roots characteristic_roots(double alpha);

/// gamma values at which a zero mode with Im omega = 0 reaches alpha = +2
/// (gamma = t_a + t_b) and alpha = -2 (gamma = |t_a - t_b|).
struct CriticalGammas {
    double alpha_plus_two = 0.0;
    double alpha_minus_two = 0.0;
};

[[nodiscard]] CriticalGammas critical_gammas(double t_a, double t_b);

// ---------------------------------------------------------------------------
// Fits
// ---------------------------------------------------------------------------

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;  ///< 1 for an exact fit, including a constant series
    std::size_t n = 0;
};

/// Ordinary least squares y = slope*x + intercept. Throws FitError for fewer
/// than 2 points or a degenerate x.
[[nodiscard]] LinearFit fit_line(std::span<const double> x, std::span<const double> y);

enum class TailModel { Linear, Exponential };

/// Fit of |Psi| (Linear) or ln|Psi| (Exponential) over sites in range.
/// Single profile: x is the site offset from range.begin, one series.
/// Per sublattice: x is the sublattice index m, two series; series[0] holds
/// sites range.begin, range.begin + 2, ...
struct TailFit {
    TailModel model = TailModel::Linear;
    bool per_sublattice = false;
    std::vector<LinearFit> series;
};

/// Throws FitError with fewer than 3 points per series, DomainError for a zero
/// amplitude under the exponential model.
[[nodiscard]] TailFit fit_tail(const CVector& psi, SiteRange range, TailModel model,
                               bool per_sublattice);

/// Two-root expansion Psi_m = beta1 * b_+^m + beta2 * b_-^m of one sublattice
/// series (sites start, start + 2, ... < range.end), by least squares.
struct TwoRootFit {
    Complex beta1{};
    Complex beta2{};
    double lower = 0.0;  ///< ||beta1| - |beta2||
    double upper = 0.0;  ///< |beta1| + |beta2|
    double residual = 0.0;  ///< max |Psi_m - fit_m| / max |Psi|
};

[[nodiscard]] TwoRootFit fit_two_root_expansion(const CVector& psi, std::size_t start,
                                                SiteRange range, double alpha);

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

struct RecurrenceCheck {
    double max_residual = 0.0;  ///< relative to max |Psi| over the whole vector
    std::size_t checked = 0;
};

/// Max over n in [range.begin + 4, range.end) of |Psi_n - alpha*Psi_{n-2} +
/// Psi_{n-4}|. The junction row and the last site are never used as centre
/// rows. Throws DomainError when the range has fewer than 5 sites.
[[nodiscard]] RecurrenceCheck verify_recurrence(const CVector& psi, SiteRange range,
                                                double alpha);

/// One-step form: for every interior reservoir row m (both neighbours inside
/// range), |t_{m,m+1} Psi_{m+1} - (omega - H_mm) Psi_m + t_{m-1,m} Psi_{m-1}|.
[[nodiscard]] RecurrenceCheck verify_one_step(const Hamiltonian& h, const CVector& psi,
                                              Complex omega, SiteRange range);

struct StaggerReport {
    bool staggered = false;  ///< real on one parity, imaginary on the other
    bool in_phase_per_sublattice = false;
    double max_violation = 0.0;  ///< relative size of the largest wrong component
};

/// Removes one global phase (the largest entry made real positive) and checks
/// the stagger on the whole vector; the in-phase condition is checked on sites
/// from partition on (whole vector when absent). Entries below tol * max|Psi|
/// are ignored for signs.
[[nodiscard]] StaggerReport check_stagger_phase(const CVector& psi,
                                                std::optional<std::size_t> partition,
                                                double tol = 1e-8);

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

enum class Regime { Extended, ExponentiallyLocalized, LinearlyLocalized, ZigzagLinear,
                    ConstantDelocalized };

[[nodiscard]] std::string_view to_string(Regime r) noexcept;

struct ClassifyOptions {
    double alpha_tol = 2e-3;  ///< |alpha -+ 2| bound treated as critical
    double kappa_tol = 0.05;  ///< single-profile bound on ||kappa| - 2t|, in units of t
    double r_tol = 2e-3;      ///< |r| bound for the constant-delocalised case
};

struct RegimeReport {
    Regime regime = Regime::Extended;
    double alpha = 0.0;
    double r = 0.0;
    Roots roots;
    std::optional<double> decay_rate;  ///< ln max|b| per sublattice step, exponential only
    /// Linear fits of |Psi| per sublattice over the whole reservoir: [A, B].
    std::array<LinearFit, 2> fits{};
    /// Linear fit of |Psi| against site index over the whole reservoir.
    LinearFit single_fit;
    /// Exponential fit slopes per sublattice over the reservoir without its
    /// last site, exponential regime only: [A, B].
    std::optional<std::array<double, 2>> measured_decay;
};

/// Classifies the reservoir tail of zm against the geometry it was computed
/// with. The single-profile condition needs a uniform reservoir (t_a == t_b).
[[nodiscard]] RegimeReport classify_regime(const ZeroMode& zm, const ReservoirGeometry& geometry,
                                           const ClassifyOptions& opts = {});

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

/// Peak reservoir amplitude of a linear tail relative to a unit system peak:
/// t' / ((2 - (n_r - 1)/n_r) t). Throws DomainError for n_r == 0 or t <= 0.
[[nodiscard]] double linear_peak_amplitude(double t_prime, double t, std::size_t n_r);

/// One-step coefficient of a Hermitian reservoir: (omega - onsite) / t.
[[nodiscard]] double hermitian_alpha(double omega, double onsite_reservoir, double t);

struct LocalizationLength {
    double xi = 0.0;
    bool diverges = false;
};

/// xi = lattice_const / (ln t_a - ln t_b). Throws DomainError unless
/// t_a >= t_b > 0; t_a == t_b diverges.
[[nodiscard]] LocalizationLength ssh_localization_length(double t_a, double t_b,
                                                         double lattice_const = 1.0);

}  // namespace nhzm
