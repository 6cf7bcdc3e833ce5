// Copyright 2026 The nhzm Authors
// SPDX-License-Identifier: Apache-2.0

#include <nhzm/localization.hpp>
#include <nhzm/spectral.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

namespace nhzm {

namespace {

struct Candidate {
    std::size_t i;
    std::size_t j;
    double dist;
};

// Greedy bijection on ascending distance; returns partner[i] (or npos).
std::vector<std::size_t> greedy_match(std::vector<Candidate> cands, std::size_t n_left,
                                      std::size_t n_right) {
    std::stable_sort(cands.begin(), cands.end(),
                     [](const Candidate& a, const Candidate& b) { return a.dist < b.dist; });
    constexpr auto npos = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> partner(n_left, npos);
    std::vector<bool> used(n_right, false);
    for (const Candidate& c : cands) {
        if (partner[c.i] != npos || used[c.j]) continue;
        partner[c.i] = c.j;
        used[c.j] = true;
    }
    return partner;
}

void refine_mode(const CMatrix& m, Complex& omega, Eigen::Ref<CVector> right,
                 Eigen::Ref<const CVector> left, double norm, const EigenOptions& opts) {
    const Eigen::Index n = m.rows();
    const CMatrix id = CMatrix::Identity(n, n);
    for (int step = 0; step < opts.refine_steps; ++step) {
        const double res = (m * right - omega * right).norm();
        if (res <= opts.residual_bound * norm) return;
        const Complex shift = omega + Complex(opts.residual_bound * norm, 0.0);
        Eigen::PartialPivLU<CMatrix> lu(m - shift * id);
        CVector x = lu.solve(right);
        if (!x.allFinite() || x.norm() == 0.0) return;
        right = x / x.norm();
        const Complex denom = left.dot(right);
        omega = std::abs(denom) > opts.defect_overlap ? left.dot(m * right) / denom
                                                      : right.dot(m * right);
    }
}

}  // namespace

ModeSet::ModeSet(CVector eigenvalues, CMatrix right, CMatrix left,
                 std::vector<ModeDiagnostics> diagnostics, double matrix_norm)
    : eigenvalues_(std::move(eigenvalues)),
      right_(std::move(right)),
      left_(std::move(left)),
      diagnostics_(std::move(diagnostics)),
      matrix_norm_(matrix_norm) {}

ModeSet eigendecompose(const Hamiltonian& h, const EigenOptions& opts) {
    const CMatrix& m = h.matrix();
    const Eigen::Index n = m.rows();
    const auto un = static_cast<std::size_t>(n);
    const double norm = h.norm();

    Eigen::ComplexEigenSolver<CMatrix> right_solver(m, true);
    if (right_solver.info() != Eigen::Success) {
        throw ConvergenceError("eigendecomposition of the right problem did not converge", m,
                               right_solver.getMaxIterations());
    }
    Eigen::ComplexEigenSolver<CMatrix> left_solver(m.adjoint(), true);
    if (left_solver.info() != Eigen::Success) {
        throw ConvergenceError("eigendecomposition of the left problem did not converge", m,
                               left_solver.getMaxIterations());
    }

    const CVector& w_right = right_solver.eigenvalues();
    const CVector w_left = left_solver.eigenvalues().conjugate();

    std::vector<Candidate> cands;
    cands.reserve(un * un);
    for (std::size_t i = 0; i < un; ++i) {
        for (std::size_t j = 0; j < un; ++j) {
            cands.push_back({i, j,
                             std::abs(w_right(static_cast<Eigen::Index>(i)) -
                                      w_left(static_cast<Eigen::Index>(j)))});
        }
    }
    const std::vector<std::size_t> left_of = greedy_match(std::move(cands), un, un);

    // Deterministic order: Re omega (quantised so numerical noise cannot reorder
    // modes on the symmetry axis), then Im omega.
    const double quantum = 1e-9 * std::max(norm, 1.0);
    std::vector<std::size_t> order(un);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto key = [&](std::size_t i) {
        const Complex w = w_right(static_cast<Eigen::Index>(i));
        return std::pair{std::llround(w.real() / quantum), w.imag()};
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return key(a) < key(b); });

    CVector omega(n);
    CMatrix right(n, n);
    CMatrix left(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const std::size_t src = order[static_cast<std::size_t>(k)];
        const auto s = static_cast<Eigen::Index>(src);
        omega(k) = w_right(s);
        right.col(k) = right_solver.eigenvectors().col(s).normalized();
        left.col(k) = left_solver.eigenvectors().col(static_cast<Eigen::Index>(left_of[src]))
                          .normalized();
    }

    std::vector<ModeDiagnostics> diag(un);
    for (Eigen::Index k = 0; k < n; ++k) {
        refine_mode(m, omega(k), right.col(k), left.col(k), norm, opts);
    }
    for (Eigen::Index k = 0; k < n; ++k) {
        ModeDiagnostics& d = diag[static_cast<std::size_t>(k)];
        d.min_gap = std::numeric_limits<double>::infinity();
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j != k) d.min_gap = std::min(d.min_gap, std::abs(omega(k) - omega(j)));
        }
        d.self_overlap = std::abs(left.col(k).dot(right.col(k)));
        d.residual = (m * right.col(k) - omega(k) * right.col(k)).norm();
        d.near_defective =
            d.min_gap <= opts.defect_gap * norm || d.self_overlap < opts.defect_overlap;
        if (!d.near_defective) {
            // left^dagger right = 1
            const Complex s = left.col(k).dot(right.col(k));
            left.col(k) /= std::conj(s);
        }
    }
    return ModeSet(std::move(omega), std::move(right), std::move(left), std::move(diag), norm);
}

PairingReport check_spectral_symmetry(const ModeSet& ms, double omega0, SymmetryKind kind,
                                      double tol) {
    const std::size_t n = ms.size();
    auto target = [&](Complex w) {
        const double re = 2.0 * omega0 - w.real();
        return kind == SymmetryKind::NHPH ? Complex(re, w.imag()) : Complex(re, -w.imag());
    };

    std::vector<Candidate> cands;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double d = std::abs(ms.eigenvalue(j) - target(ms.eigenvalue(i)));
            if (d <= tol) cands.push_back({i, j, d});
        }
    }
    std::stable_sort(cands.begin(), cands.end(),
                     [](const Candidate& a, const Candidate& b) { return a.dist < b.dist; });

    PairingReport report;
    std::vector<bool> used(n, false);
    for (const Candidate& c : cands) {
        if (used[c.i] || used[c.j]) continue;
        used[c.i] = used[c.j] = true;
        report.pairs.emplace_back(c.i, c.j);
        report.max_pair_error = std::max(report.max_pair_error, c.dist);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!used[i]) report.unmatched.push_back(i);
    }
    return report;
}

std::vector<ZeroMode> find_zero_modes(const ModeSet& ms, double omega0, double tol,
                                      const ReservoirGeometry& reservoir) {
    if (!(tol > 0.0)) throw DomainError("zero-mode tolerance must be positive");
    std::vector<ZeroMode> out;
    for (std::size_t mu = 0; mu < ms.size(); ++mu) {
        const Complex w = ms.eigenvalue(mu);
        if (std::abs(w.real() - omega0) > tol) continue;
        ZeroMode zm;
        zm.mode_index = mu;
        zm.omega = w;
        zm.wavefunction = ms.right_vector(mu);
        const Kappa k = compute_kappa(w, reservoir.gamma, omega0, tol);
        const AlphaR ar = compute_alpha(k, reservoir.t_a, reservoir.t_b);
        zm.kappa_a = k.a;
        zm.kappa_b = k.b;
        zm.r = ar.r;
        zm.alpha = ar.alpha;
        out.push_back(std::move(zm));
    }
    return out;
}

std::optional<ZeroMode> baseline_zero_mode(const ModeSet& ms, double omega0, double tol,
                                           const ReservoirGeometry& reservoir) {
    std::vector<ZeroMode> modes = find_zero_modes(ms, omega0, tol, reservoir);
    if (modes.empty()) return std::nullopt;
    auto it = std::min_element(modes.begin(), modes.end(), [](const ZeroMode& a, const ZeroMode& b) {
        return std::abs(a.omega.imag()) < std::abs(b.omega.imag());
    });
    return std::move(*it);
}

std::vector<ModeSet> sweep_gamma(const SpecTemplate& spec_template,
                                 std::span<const double> gamma_grid, const EigenOptions& opts,
                                 unsigned threads) {
    const std::size_t n = gamma_grid.size();
    if (n == 0) throw DomainError("gamma grid is empty");
    const bool increasing = std::is_sorted(gamma_grid.begin(), gamma_grid.end());
    const bool decreasing = std::is_sorted(gamma_grid.begin(), gamma_grid.end(), std::greater<>{});
    if (!increasing && !decreasing) throw DomainError("gamma grid must be monotone");

    std::vector<std::optional<ModeSet>> slots(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                slots[i].emplace(eigendecompose(assemble_hamiltonian(spec_template(gamma_grid[i])),
                                                opts));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    std::vector<ModeSet> out;
    out.reserve(n);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

}  // namespace nhzm
