// Copyright 2026 The nhzm Authors
// SPDX-License-Identifier: Apache-2.0

#include <nhzm/lattice.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nhzm {

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw InvalidSpec(msg); }

void check_bond(double t, const char* name) {
    if (!(t > 0.0) || !std::isfinite(t)) {
        std::ostringstream os;
        os << name << " must be a finite positive coupling, got " << t;
        invalid(os.str());
    }
}

double sign_of(GainSign s) { return s == GainSign::Gain ? 1.0 : -1.0; }

}  // namespace

LatticeSpec::LatticeSpec(std::vector<Site> sites, std::vector<Coupling> couplings,
                         std::optional<std::size_t> partition)
    : sites_(std::move(sites)), couplings_(std::move(couplings)), partition_(partition) {
    const std::size_t n = sites_.size();
    if (n == 0) invalid("lattice needs at least one site");

    for (std::size_t i = 0; i < n; ++i) {
        const Site& s = sites_[i];
        if (!std::isfinite(s.onsite_real) || !std::isfinite(s.onsite_imag)) {
            invalid("site " + std::to_string(i) + " has a non-finite onsite energy");
        }
        if (i > 0 && s.sublattice == sites_[i - 1].sublattice) {
            invalid("sublattice labels must alternate; sites " + std::to_string(i - 1) + " and " +
                    std::to_string(i) + " share a label");
        }
    }

    std::sort(couplings_.begin(), couplings_.end(),
              [](const Coupling& a, const Coupling& b) { return a.left < b.left; });
    for (std::size_t k = 0; k < couplings_.size(); ++k) {
        const Coupling& c = couplings_[k];
        if (c.right != c.left + 1 || c.right >= n) {
            invalid("coupling (" + std::to_string(c.left) + "," + std::to_string(c.right) +
                    ") is not a nearest-neighbour bond of a " + std::to_string(n) + "-site chain");
        }
        if (!(c.strength > 0.0) || !std::isfinite(c.strength)) {
            invalid("coupling (" + std::to_string(c.left) + "," + std::to_string(c.right) +
                    ") must be strictly positive");
        }
        if (k > 0 && couplings_[k - 1].left == c.left) {
            invalid("duplicate coupling (" + std::to_string(c.left) + "," +
                    std::to_string(c.right) + ")");
        }
    }

    if (partition_ && (*partition_ == 0 || *partition_ >= n)) {
        invalid("partition index " + std::to_string(*partition_) + " must lie in [1, " +
                std::to_string(n - 1) + "]");
    }
}

SiteRange LatticeSpec::system_range() const noexcept {
    return {0, partition_.value_or(sites_.size())};
}

SiteRange LatticeSpec::reservoir_range() const noexcept {
    if (!partition_) return {sites_.size(), sites_.size()};
    return {*partition_, sites_.size()};
}

double LatticeSpec::coupling(std::size_t i) const noexcept {
    auto it = std::lower_bound(couplings_.begin(), couplings_.end(), i,
                               [](const Coupling& c, std::size_t v) { return c.left < v; });
    return (it != couplings_.end() && it->left == i) ? it->strength : 0.0;
}

bool LatticeSpec::is_hermitian() const noexcept {
    return std::all_of(sites_.begin(), sites_.end(),
                       [](const Site& s) { return s.onsite_imag == 0.0; });
}

bool LatticeSpec::has_uniform_onsite_real() const noexcept {
    return std::all_of(sites_.begin(), sites_.end(), [&](const Site& s) {
        return s.onsite_real == sites_.front().onsite_real;
    });
}

Hamiltonian::Hamiltonian(CMatrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols()) invalid("Hamiltonian must be square");
    if (matrix_.size() == 0) invalid("Hamiltonian must be non-empty");
    if (!matrix_.allFinite()) invalid("Hamiltonian has non-finite entries");
    norm_ = matrix_.norm();
}

LatticeSpec build_ssh_chain(std::size_t n_sites, double t_a, double t_b, double onsite,
                            Sublattice first) {
    if (n_sites == 0) invalid("chain needs at least one site");
    check_bond(t_a, "t_a");
    check_bond(t_b, "t_b");

    std::vector<Site> sites;
    sites.reserve(n_sites);
    Sublattice label = first;
    for (std::size_t i = 0; i < n_sites; ++i) {
        sites.push_back({onsite, 0.0, label});
        label = other(label);
    }
    std::vector<Coupling> bonds;
    for (std::size_t i = 0; i + 1 < n_sites; ++i) {
        bonds.push_back({i, i + 1, i % 2 == 0 ? t_a : t_b});
    }
    return LatticeSpec(std::move(sites), std::move(bonds));
}

LatticeSpec build_reservoir(std::size_t n_sites, double t_a, double t_b, double gamma,
                            double onsite, GainSign first_sign, Sublattice first) {
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) invalid("gamma must be finite and >= 0");
    LatticeSpec chain = build_ssh_chain(n_sites, t_a, t_b, onsite, first);
    return with_gain_loss(chain, {0, n_sites}, gamma, first_sign);
}

LatticeSpec couple(const LatticeSpec& system, const LatticeSpec& reservoir, double t_prime) {
    check_bond(t_prime, "t_prime");
    if (system.sites().back().sublattice == reservoir.sites().front().sublattice) {
        invalid("sublattice continuity violated at the junction: the system ends and the "
                "reservoir starts on the same label");
    }
    const std::size_t offset = system.size();

    std::vector<Site> sites = system.sites();
    sites.insert(sites.end(), reservoir.sites().begin(), reservoir.sites().end());

    std::vector<Coupling> bonds = system.couplings();
    bonds.push_back({offset - 1, offset, t_prime});
    for (const Coupling& c : reservoir.couplings()) {
        bonds.push_back({c.left + offset, c.right + offset, c.strength});
    }
    return LatticeSpec(std::move(sites), std::move(bonds), offset);
}

LatticeSpec with_gain_loss(const LatticeSpec& spec, SiteRange range, double gamma,
                           GainSign first_sign) {
    if (range.end > spec.size()) invalid("gain/loss range exceeds the chain");
    std::vector<Site> sites = spec.sites();
    double sign = sign_of(first_sign);
    for (std::size_t i = range.begin; i < range.end; ++i) {
        sites[i].onsite_imag = sign * gamma;
        sign = -sign;
    }
    return LatticeSpec(std::move(sites), spec.couplings(), spec.partition());
}

LatticeSpec without_coupling(const LatticeSpec& spec, std::size_t i) {
    std::vector<Coupling> bonds;
    for (const Coupling& c : spec.couplings()) {
        if (c.left != i) bonds.push_back(c);
    }
    return LatticeSpec(spec.sites(), std::move(bonds), spec.partition());
}

Hamiltonian assemble_hamiltonian(const LatticeSpec& spec) {
    const auto n = static_cast<Eigen::Index>(spec.size());
    CMatrix h = CMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Site& s = spec.sites()[static_cast<std::size_t>(i)];
        h(i, i) = Complex(s.onsite_real, s.onsite_imag);
    }
    for (const Coupling& c : spec.couplings()) {
        const auto l = static_cast<Eigen::Index>(c.left);
        const auto r = static_cast<Eigen::Index>(c.right);
        h(l, r) = c.strength;
        h(r, l) = c.strength;
    }
    return Hamiltonian(std::move(h));
}

LatticeSpec extract_spec(const Hamiltonian& h, Sublattice first,
                         std::optional<std::size_t> partition) {
    const CMatrix& m = h.matrix();
    const Eigen::Index n = m.rows();
    std::vector<Site> sites;
    std::vector<Coupling> bonds;
    Sublattice label = first;
    for (Eigen::Index i = 0; i < n; ++i) {
        sites.push_back({m(i, i).real(), m(i, i).imag(), label});
        label = other(label);
        for (Eigen::Index j = i + 1; j < n; ++j) {
            if (m(i, j) != m(j, i)) invalid("matrix is not symmetric");
            if (m(i, j) == Complex{}) continue;
            if (j != i + 1) invalid("matrix is not tridiagonal");
            if (m(i, j).imag() != 0.0 || m(i, j).real() <= 0.0) {
                invalid("off-diagonal entries must be real and positive");
            }
            bonds.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j),
                             m(i, j).real()});
        }
    }
    return LatticeSpec(std::move(sites), std::move(bonds), partition);
}

LatticeSpec build_coupled_chain(const CoupledChainParams& p) {
    LatticeSpec system = build_ssh_chain(p.n_system, p.system_t_a, p.system_t_b, p.onsite);
    if (p.system_gamma != 0.0) {
        system = with_gain_loss(system, {0, system.size()}, p.system_gamma, p.system_first_sign);
    }
    const Sublattice reservoir_first = other(system.sites().back().sublattice);
    LatticeSpec reservoir =
        build_reservoir(p.n_reservoir, p.reservoir_t_a, p.reservoir_t_b, p.gamma,
                        p.reservoir_onsite.value_or(p.onsite), p.reservoir_first_sign,
                        reservoir_first);
    return couple(system, reservoir, p.t_prime);
}

ReservoirGeometry reservoir_geometry(const LatticeSpec& spec) {
    if (!spec.partition()) throw DomainError("spec has no system/reservoir partition");
    ReservoirGeometry g;
    g.sites = spec.reservoir_range();
    const Site& first = spec.sites()[g.sites.begin];
    g.omega0 = first.onsite_real;
    g.gamma = std::abs(first.onsite_imag);
    g.first_is_gain = first.onsite_imag >= 0.0;
    if (g.sites.size() >= 2) g.t_a = spec.coupling(g.sites.begin);
    g.t_b = g.sites.size() >= 3 ? spec.coupling(g.sites.begin + 1) : g.t_a;
    if (!(g.t_a > 0.0) || !(g.t_b > 0.0)) {
        throw DomainError("reservoir must be internally coupled to define its geometry");
    }
    return g;
}

}  // namespace nhzm
