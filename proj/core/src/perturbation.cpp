// Copyright 2026 The nhzm Authors
// SPDX-License-Identifier: Apache-2.0

#include <nhzm/perturbation.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace nhzm {

bool PerturbationSetup::is_junction_only(std::size_t partition) const {
    const auto p = static_cast<Eigen::Index>(partition);
    if (p < 1 || p >= h_prime.rows() || h_prime.rows() != h_prime.cols()) return false;
    for (Eigen::Index i = 0; i < h_prime.rows(); ++i) {
        for (Eigen::Index j = 0; j < h_prime.cols(); ++j) {
            const bool junction = (i == p - 1 && j == p) || (i == p && j == p - 1);
            if (h_prime(i, j) != (junction ? Complex(1.0) : Complex(0.0))) return false;
        }
    }
    return true;
}

namespace {

bool blocks_decoupled(const CMatrix& m, Eigen::Index p) {
    const Eigen::Index n = m.rows();
    return m.topRightCorner(p, n - p).isZero(0.0) && m.bottomLeftCorner(n - p, p).isZero(0.0);
}

ModeSet embed_blocks(const CMatrix& m, Eigen::Index p, const EigenOptions& opts, double norm) {
    const Eigen::Index n = m.rows();
    ModeSet a = eigendecompose(Hamiltonian(m.topLeftCorner(p, p)), opts);
    ModeSet b = eigendecompose(Hamiltonian(m.bottomRightCorner(n - p, n - p)), opts);

    CVector omega(n);
    omega << a.eigenvalues(), b.eigenvalues();
    CMatrix right = CMatrix::Zero(n, n);
    CMatrix left = CMatrix::Zero(n, n);
    right.topLeftCorner(p, p) = a.right();
    right.bottomRightCorner(n - p, n - p) = b.right();
    left.topLeftCorner(p, p) = a.left();
    left.bottomRightCorner(n - p, n - p) = b.left();

    std::vector<ModeDiagnostics> diag;
    for (std::size_t mu = 0; mu < a.size(); ++mu) diag.push_back(a.diagnostics(mu));
    for (std::size_t mu = 0; mu < b.size(); ++mu) diag.push_back(b.diagnostics(mu));
    // Gaps across blocks matter for the denominators too.
    for (Eigen::Index k = 0; k < n; ++k) {
        double gap = std::numeric_limits<double>::infinity();
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j != k) gap = std::min(gap, std::abs(omega(k) - omega(j)));
        }
        diag[static_cast<std::size_t>(k)].min_gap = gap;
    }
    return ModeSet(std::move(omega), std::move(right), std::move(left), std::move(diag), norm);
}

}  // namespace

PerturbationSetup make_perturbation_setup(const Hamiltonian& h0, CMatrix h_prime, double t_prime,
                                          std::optional<std::size_t> partition,
                                          const EigenOptions& opts) {
    if (h_prime.rows() != h0.dim() || h_prime.cols() != h0.dim()) {
        throw DomainError("H' must have the dimensions of H0");
    }
    if (!std::isfinite(t_prime)) throw DomainError("t' must be finite");
    const CMatrix& m = h0.matrix();
    const auto p = static_cast<Eigen::Index>(partition.value_or(0));
    if (partition && p >= 1 && p < m.rows() && blocks_decoupled(m, p)) {
        return {h0, std::move(h_prime), t_prime, embed_blocks(m, p, opts, h0.norm())};
    }
    return {h0, std::move(h_prime), t_prime, eigendecompose(h0, opts)};
}

PerturbationSetup make_junction_setup(const LatticeSpec& spec, const EigenOptions& opts) {
    if (!spec.partition()) throw DomainError("junction setup needs a partitioned spec");
    const std::size_t p = *spec.partition();
    const double t_prime = spec.coupling(p - 1);
    const LatticeSpec bare = without_coupling(spec, p - 1);
    const auto n = static_cast<Eigen::Index>(spec.size());
    CMatrix hp = CMatrix::Zero(n, n);
    hp(static_cast<Eigen::Index>(p) - 1, static_cast<Eigen::Index>(p)) = 1.0;
    hp(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p) - 1) = 1.0;
    return make_perturbation_setup(assemble_hamiltonian(bare), std::move(hp), t_prime, p, opts);
}

std::size_t zero_mode_index(const PerturbationSetup& setup, double omega0) {
    const CVector& w = setup.modes.eigenvalues();
    Eigen::Index best = 0;
    (w.array() - omega0).abs().minCoeff(&best);
    return static_cast<std::size_t>(best);
}

namespace {

void require_biorthogonal(const PerturbationSetup& s, std::size_t mu) {
    if (mu >= s.modes.size()) throw DomainError("mode index out of range");
    if (s.modes.near_defective(mu)) {
        throw DegeneratePerturbation("unperturbed mode " + std::to_string(mu) +
                                     " is near-defective; first-order theory does not apply");
    }
}

}  // namespace

Complex first_order_energy(const PerturbationSetup& setup, std::size_t mu) {
    require_biorthogonal(setup, mu);
    if (setup.t_prime == 0.0) return {};
    const auto i = static_cast<Eigen::Index>(mu);
    return setup.t_prime *
           setup.modes.left().col(i).dot(setup.h_prime * setup.modes.right().col(i));
}

CVector first_order_wavefunction(const PerturbationSetup& setup, std::size_t mu, double min_gap) {
    require_biorthogonal(setup, mu);
    const ModeSet& ms = setup.modes;
    const auto n = static_cast<Eigen::Index>(ms.size());
    CVector out = CVector::Zero(n);
    if (setup.t_prime == 0.0) return out;

    const auto i = static_cast<Eigen::Index>(mu);
    const CVector hpsi = setup.h_prime * ms.right().col(i);
    const double coupled_floor = 1e-14 * std::max(setup.h_prime.norm(), 1.0);
    for (Eigen::Index nu = 0; nu < n; ++nu) {
        if (nu == i) continue;
        const Complex h_nm = ms.left().col(nu).dot(hpsi);
        if (std::abs(h_nm) <= coupled_floor) continue;
        const Complex denom = ms.eigenvalue(mu) - ms.eigenvalue(static_cast<std::size_t>(nu));
        if (std::abs(denom) <= min_gap) {
            std::ostringstream os;
            os << "vanishing denominator |omega_" << mu << " - omega_" << nu
               << "| = " << std::abs(denom) << " with non-zero coupling";
            throw DegeneratePerturbation(os.str());
        }
        if (ms.near_defective(static_cast<std::size_t>(nu))) {
            throw DegeneratePerturbation("unperturbed mode " + std::to_string(nu) +
                                         " is near-defective");
        }
        out += (setup.t_prime * h_nm / denom) * ms.right().col(nu);
    }
    return out;
}

PerturbationComparison perturbation_vs_exact(const LatticeSpec& spec, std::optional<std::size_t> mu,
                                             double min_overlap, const EigenOptions& opts) {
    const PerturbationSetup setup = make_junction_setup(spec, opts);
    const double omega0 = spec.sites().front().onsite_real;
    const std::size_t m = mu.value_or(zero_mode_index(setup, omega0));

    PerturbationComparison c;
    c.unperturbed_index = m;
    c.omega_perturbed = setup.modes.eigenvalue(m) + first_order_energy(setup, m);
    c.perturbed = setup.modes.right_vector(m) + first_order_wavefunction(setup, m);

    const ModeSet exact = eigendecompose(assemble_hamiltonian(spec), opts);
    const double pn = c.perturbed.norm();
    double best = -1.0;
    for (std::size_t k = 0; k < exact.size(); ++k) {
        const auto col = exact.right().col(static_cast<Eigen::Index>(k));
        const double ov = std::abs(col.dot(c.perturbed)) / (col.norm() * pn);
        if (ov > best) {
            best = ov;
            c.exact_index = k;
        }
    }
    c.overlap = best;
    if (best < min_overlap) {
        std::ostringstream os;
        os << "best overlap " << best << " between the perturbed mode and any exact eigenvector "
           << "is below " << min_overlap;
        throw MatchingError(os.str());
    }
    const CVector e = exact.right_vector(c.exact_index);
    const Complex scale = e.dot(c.perturbed) / e.squaredNorm();
    c.exact = scale * e;
    c.omega_exact = exact.eigenvalue(c.exact_index);
    c.energy_error = std::abs(c.omega_exact - c.omega_perturbed);
    c.vector_error = (c.exact - c.perturbed).norm() / pn;
    return c;
}

}  // namespace nhzm
