// Copyright 2026 The nhzm Authors
// SPDX-License-Identifier: Apache-2.0

#include <nhzm/bands.hpp>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

namespace nhzm {

Eigen::Matrix2cd bloch_hamiltonian(double k, double t_a, double t_b, double gamma, double onsite) {
    const Complex e = std::polar(1.0, k);
    Eigen::Matrix2cd m;
    m << Complex(onsite, gamma), t_b + t_a * e, t_b + t_a * std::conj(e), Complex(onsite, -gamma);
    return m;
}

double band_radicand(double k, double t_a, double t_b, double gamma) noexcept {
    return t_a * t_a + t_b * t_b + 2.0 * t_a * t_b * std::cos(k) - gamma * gamma;
}

Coalescence coalescence_measure(const Eigen::Matrix2cd& m) {
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(m, true);
    const Eigen::Vector2cd v1 = es.eigenvectors().col(0).normalized();
    const Eigen::Vector2cd v2 = es.eigenvectors().col(1).normalized();
    Coalescence c;
    c.measure = std::max(0.0, 1.0 - std::abs(v1.dot(v2)));
    c.gap = std::abs(es.eigenvalues()(0) - es.eigenvalues()(1));
    c.non_ep_degeneracy = c.gap <= 1e-8 * std::max(m.norm(), 1.0) && c.measure > 1e-6;
    return c;
}

namespace {

ExceptionalPoint make_ep(double k, double t_a, double t_b, double gamma, double onsite) {
    ExceptionalPoint ep;
    ep.k = k;
    ep.coalesced_vector << kI * (t_b + t_a * std::polar(1.0, k)) / gamma, 1.0;
    ep.coalescence = coalescence_measure(bloch_hamiltonian(k, t_a, t_b, gamma, onsite));
    return ep;
}

}  // namespace

EpSearch locate_exceptional_points(double t_a, double t_b, double gamma, double onsite) {
    EpSearch out;
    if (gamma == 0.0) {
        out.degenerate_band_warning = t_a == t_b;
        return out;
    }
    constexpr double pi = std::numbers::pi;
    const double c = (gamma * gamma - t_a * t_a - t_b * t_b) / (2.0 * t_a * t_b);
    constexpr double edge = 1e-12;
    if (c > 1.0 + edge || c < -1.0 - edge) return out;
    if (c >= 1.0 - edge) {
        out.points.push_back(make_ep(0.0, t_a, t_b, gamma, onsite));
        return out;
    }
    if (c <= -1.0 + edge) {
        out.points.push_back(make_ep(pi, t_a, t_b, gamma, onsite));
        return out;
    }
    // The radicand decreases monotonically on [0, pi].
    double lo = 0.0;
    double hi = pi;
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (band_radicand(mid, t_a, t_b, gamma) > 0.0 ? lo : hi) = mid;
    }
    const double k = 0.5 * (lo + hi);
    out.points.push_back(make_ep(-k, t_a, t_b, gamma, onsite));
    out.points.push_back(make_ep(k, t_a, t_b, gamma, onsite));
    return out;
}

std::vector<double> k_grid(std::size_t n_k) {
    if (n_k < 2) throw DomainError("k grid needs at least 2 points");
    constexpr double pi = std::numbers::pi;
    std::vector<double> k(n_k);
    for (std::size_t i = 0; i < n_k; ++i) {
        k[i] = -pi + 2.0 * pi * static_cast<double>(i) / static_cast<double>(n_k - 1);
    }
    // Exact symmetric points for odd grids.
    if (n_k % 2 == 1) k[n_k / 2] = 0.0;
    k.back() = pi;
    return k;
}

BlochScan band_energies(const BandParams& p) {
    BlochScan s;
    s.k = k_grid(p.n_k);
    s.omega_plus.reserve(p.n_k);
    s.omega_minus.reserve(p.n_k);
    for (double k : s.k) {
        const double rad = band_radicand(k, p.t_a, p.t_b, p.gamma);
        const Complex root = rad >= 0.0 ? Complex(std::sqrt(rad), 0.0) : Complex(0.0, std::sqrt(-rad));
        s.omega_plus.push_back(p.onsite + root);
        s.omega_minus.push_back(p.onsite - root);
    }
    s.eps = locate_exceptional_points(p.t_a, p.t_b, p.gamma, p.onsite);
    return s;
}

}  // namespace nhzm
