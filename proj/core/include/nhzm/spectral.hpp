// Copyright 2026 The nhzm Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file spectral.hpp
 * @brief Biorthogonal eigendecomposition, spectral-symmetry checks, zero-mode
 *        detection and parameter sweeps with mode tracking.
 */

#pragma once

#include <nhzm/lattice.hpp>

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace nhzm {

struct ModeDiagnostics {
    double min_gap = 0.0;       ///< min_nu |omega_mu - omega_nu|
    double self_overlap = 1.0;  ///< |<phi|psi>| for unit left/right vectors
    double residual = 0.0;      ///< ||H psi - omega psi|| for the unit right vector
    bool near_defective = false;
};

struct EigenOptions {
    double defect_gap = 1e-6;      ///< relative to ||H||
    double defect_overlap = 1e-6;  ///< left-right self-overlap threshold
    double residual_bound = 1e-10; ///< relative to ||H||; refinement kicks in above it
    int refine_steps = 3;
};

/// Eigenvalues with right vectors (unit 2-norm columns) and left vectors.
/// For modes that are not near-defective the left vectors are scaled so that
/// left(mu)^dagger * right(nu) = delta_{mu nu}; near-defective ones are only
/// unit-normalised. Modes are ordered by Re omega, then Im omega.
class ModeSet {
public:
    ModeSet(CVector eigenvalues, CMatrix right, CMatrix left,
            std::vector<ModeDiagnostics> diagnostics, double matrix_norm);

    [[nodiscard]] std::size_t size() const noexcept { return diagnostics_.size(); }
    [[nodiscard]] const CVector& eigenvalues() const noexcept { return eigenvalues_; }
    [[nodiscard]] Complex eigenvalue(std::size_t mu) const { return eigenvalues_(idx(mu)); }
    [[nodiscard]] const CMatrix& right() const noexcept { return right_; }
    [[nodiscard]] const CMatrix& left() const noexcept { return left_; }
    [[nodiscard]] CVector right_vector(std::size_t mu) const { return right_.col(idx(mu)); }
    [[nodiscard]] CVector left_vector(std::size_t mu) const { return left_.col(idx(mu)); }
    [[nodiscard]] const ModeDiagnostics& diagnostics(std::size_t mu) const {
        return diagnostics_.at(mu);
    }
    [[nodiscard]] bool near_defective(std::size_t mu) const {
        return diagnostics_.at(mu).near_defective;
    }
    [[nodiscard]] double matrix_norm() const noexcept { return matrix_norm_; }

private:
    static Eigen::Index idx(std::size_t mu) { return static_cast<Eigen::Index>(mu); }

    CVector eigenvalues_;
    CMatrix right_;
    CMatrix left_;
    std::vector<ModeDiagnostics> diagnostics_;
    double matrix_norm_;
};

[[nodiscard]] ModeSet eigendecompose(const Hamiltonian& h, const EigenOptions& opts = {});

// ---------------------------------------------------------------------------
// Spectral symmetry
// ---------------------------------------------------------------------------

/// NHPH: omega_mu - w0 = -(omega_nu - w0)^*. Chiral: omega_mu - w0 = -(omega_nu - w0).
enum class SymmetryKind { NHPH, Chiral };

struct PairingReport {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  ///< self-pairs have first == second
    std::vector<std::size_t> unmatched;
    double max_pair_error = 0.0;

    [[nodiscard]] bool symmetric() const noexcept { return unmatched.empty(); }
};

[[nodiscard]] PairingReport check_spectral_symmetry(const ModeSet& ms, double omega0,
                                                    SymmetryKind kind, double tol = 1e-8);

// ---------------------------------------------------------------------------
// Zero modes
// ---------------------------------------------------------------------------

inline constexpr double kZeroModeTolerance = 1e-8;

/// A mode with Re omega = omega0, with the recurrence quantities it induces in
/// the reservoir. kappa_a is the gain-sublattice coefficient.
struct ZeroMode {
    std::size_t mode_index = 0;
    Complex omega{};
    CVector wavefunction;  ///< unit 2-norm
    double kappa_a = 0.0;
    double kappa_b = 0.0;
    double r = 0.0;
    double alpha = 0.0;
};

/// Modes with |Re omega - omega0| <= tol, populated against reservoir (its
/// gamma, t_a, t_b). Near-defective modes are included; check the ModeSet.
[[nodiscard]] std::vector<ZeroMode> find_zero_modes(const ModeSet& ms, double omega0,
                                                    double tol = kZeroModeTolerance,
                                                    const ReservoirGeometry& reservoir = {});

/// The zero mode with Im omega closest to 0 (the "baseline" mode), if any.
[[nodiscard]] std::optional<ZeroMode> baseline_zero_mode(const ModeSet& ms, double omega0,
                                                         double tol = kZeroModeTolerance,
                                                         const ReservoirGeometry& reservoir = {});

// ---------------------------------------------------------------------------
// Sweeps and tracking
// ---------------------------------------------------------------------------

using SpecTemplate = std::function<LatticeSpec(double gamma)>;

/// One ModeSet per grid value; grid must be monotone. Grid points are
/// decomposed in parallel (threads = 0 picks hardware concurrency).
[[nodiscard]] std::vector<ModeSet> sweep_gamma(const SpecTemplate& spec_template,
                                               std::span<const double> gamma_grid,
                                               const EigenOptions& opts = {},
                                               unsigned threads = 0);

struct TrajectoryPoint {
    std::size_t step = 0;        ///< index into the sweep
    std::size_t mode_index = 0;  ///< index into that step's ModeSet
    Complex omega{};
    double overlap = 1.0;  ///< overlap with the next step's matched vector (1 at the last step)
};

struct ModeTrajectory {
    /// Report label. Labels 1..N follow the numbering at the last sweep step
    /// (zero modes by descending |Im omega|, positive first, then the rest by
    /// Re omega); split continuations get labels above N.
    int label = 0;
    std::vector<TrajectoryPoint> points;  ///< ascending step

    [[nodiscard]] const TrajectoryPoint* at_step(std::size_t step) const;
};

struct TrackWarning {
    std::size_t step = 0;  ///< step at which the trajectory could not be continued
    int label = 0;
    double overlap = 0.0;
};

struct TrackingResult {
    std::vector<ModeTrajectory> trajectories;
    std::vector<TrackWarning> warnings;

    /// Trajectory with the given label; throws std::out_of_range if absent.
    [[nodiscard]] const ModeTrajectory& by_label(int label) const;
};

struct TrackOptions {
    double omega0 = 0.0;
    double zero_tol = kZeroModeTolerance;
    double min_overlap = 0.5;
};

/// Greedy maximal-overlap matching between consecutive steps, run backwards
/// from the last step. Overlaps below min_overlap split the trajectory.
[[nodiscard]] TrackingResult track_modes(const std::vector<ModeSet>& sweep,
                                         const TrackOptions& opts = {});

/// Least-squares gamma_mu of Im omega = +-sqrt(gamma^2 - gamma_mu^2) over the
/// steps where both trajectories are zero modes with Im omega of opposite
/// sign. Throws FitError with fewer than 3 such steps.
[[nodiscard]] double fit_pair_threshold(const ModeTrajectory& first, const ModeTrajectory& second,
                                        std::span<const double> gamma_grid,
                                        const TrackOptions& opts = {});

/// Same fit on raw samples: im_first[i], im_second[i] observed at gamma[i].
[[nodiscard]] double fit_pair_threshold(std::span<const double> gamma,
                                        std::span<const double> im_first,
                                        std::span<const double> im_second);

/// Baseline mode and zero-mode count at one sweep step.
struct BaselinePoint {
    double gamma = 0.0;
    std::optional<ZeroMode> mode;
    std::size_t zero_mode_count = 0;
};

/// Baseline zero mode at every step; reservoir supplies t_a, t_b, omega0 and
/// gamma is taken from the grid.
[[nodiscard]] std::vector<BaselinePoint> baseline_trace(const std::vector<ModeSet>& sweep,
                                                        std::span<const double> gamma_grid,
                                                        const ReservoirGeometry& reservoir,
                                                        double zero_tol = kZeroModeTolerance);

/// Grid midpoints at which the number of zero modes changes: the avoided
/// crossings on the imaginary axis where a new pair joins.
[[nodiscard]] std::vector<double> zero_mode_onsets(const std::vector<BaselinePoint>& trace);

}  // namespace nhzm
