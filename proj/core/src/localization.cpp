// Copyright 2026 The nhzm Authors
// SPDX-License-Identifier: Apache-2.0

#include <nhzm/localization.hpp>

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace nhzm {

Kappa compute_kappa(Complex omega, double gamma, double omega0, double tol) {
    if (std::abs(omega.real() - omega0) > tol) {
        std::ostringstream os;
        os << "kappa is defined for zero modes only: |Re omega - omega0| = "
           << std::abs(omega.real() - omega0) << " exceeds the zero-mode tolerance " << tol;
        throw DomainError(os.str());
    }
    return {omega.imag() - gamma, omega.imag() + gamma};
}

AlphaR compute_alpha(const Kappa& kappa, double t_a, double t_b) {
    if (!(t_a > 0.0) || !(t_b > 0.0)) throw DomainError("reservoir couplings must be positive");
    const double r = kappa.a * kappa.b / (t_a * t_b);
    return {-(t_a / t_b + t_b / t_a + r), r};
}

Roots characteristic_roots(double alpha) {
    const double disc = alpha * alpha / 4.0 - 1.0;
    if (disc <= 0.0) {
        // Unimodular pair (double root at disc == 0).
        const double im = std::sqrt(-disc);
        return {Complex(alpha / 2.0, im), Complex(alpha / 2.0, -im)};
    }
    const double s = std::sqrt(disc);
    if (alpha >= 0.0) {
        const double big = alpha / 2.0 + s;
        return {big, 1.0 / big};
    }
    const double big = alpha / 2.0 - s;
    return {1.0 / big, big};
}

CriticalGammas critical_gammas(double t_a, double t_b) {
    if (!(t_a > 0.0) || !(t_b > 0.0)) throw DomainError("reservoir couplings must be positive");
    return {t_a + t_b, std::abs(t_a - t_b)};
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw FitError("fit_line: x and y differ in length");
    const std::size_t n = x.size();
    if (n < 2) throw FitError("fit_line needs at least 2 points");
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw FitError("fit_line: all x values coincide");

    LinearFit f;
    f.n = n;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = y[i] - (f.slope * x[i] + f.intercept);
        ss_res += e * e;
    }
    const double scale = std::max(syy, my * my * static_cast<double>(n));
    if (syy <= 1e-30 * std::max(scale, 1e-300)) {
        f.r_squared = ss_res <= 1e-24 * std::max(scale, 1e-300) ? 1.0 : 0.0;
    } else {
        f.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    }
    return f;
}

namespace {

LinearFit fit_series(const CVector& psi, std::size_t first, std::size_t stride, std::size_t end,
                     TailModel model, bool sublattice_x) {
    std::vector<double> x;
    std::vector<double> y;
    std::size_t m = 0;
    for (std::size_t i = first; i < end; i += stride, ++m) {
        const double a = std::abs(psi(static_cast<Eigen::Index>(i)));
        if (model == TailModel::Exponential) {
            if (!(a > 0.0)) {
                throw DomainError("exponential tail fit hit a zero amplitude at site " +
                                  std::to_string(i));
            }
            y.push_back(std::log(a));
        } else {
            y.push_back(a);
        }
        x.push_back(sublattice_x ? static_cast<double>(m) : static_cast<double>(i - first));
    }
    if (x.size() < 3) {
        throw FitError("tail fit needs at least 3 points per series, got " +
                       std::to_string(x.size()));
    }
    return fit_line(x, y);
}

double max_abs(const CVector& psi) { return psi.size() ? psi.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

TailFit fit_tail(const CVector& psi, SiteRange range, TailModel model, bool per_sublattice) {
    if (range.end > static_cast<std::size_t>(psi.size())) {
        throw DomainError("tail range exceeds the vector");
    }
    TailFit out;
    out.model = model;
    out.per_sublattice = per_sublattice;
    if (per_sublattice) {
        out.series.push_back(fit_series(psi, range.begin, 2, range.end, model, true));
        out.series.push_back(fit_series(psi, range.begin + 1, 2, range.end, model, true));
    } else {
        out.series.push_back(fit_series(psi, range.begin, 1, range.end, model, false));
    }
    return out;
}

TwoRootFit fit_two_root_expansion(const CVector& psi, std::size_t start, SiteRange range,
                                  double alpha) {
    if (range.end > static_cast<std::size_t>(psi.size()) || !range.contains(start)) {
        throw DomainError("two-root expansion: start site outside the range");
    }
    std::vector<Complex> ys;
    for (std::size_t i = start; i < range.end; i += 2) ys.push_back(psi(static_cast<Eigen::Index>(i)));
    if (ys.size() < 3) throw FitError("two-root expansion needs at least 3 sublattice sites");

    const Roots b = characteristic_roots(alpha);
    const auto m = static_cast<Eigen::Index>(ys.size());
    CMatrix basis(m, 2);
    CVector rhs(m);
    for (Eigen::Index k = 0; k < m; ++k) {
        basis(k, 0) = std::pow(b.plus, static_cast<double>(k));
        basis(k, 1) = std::pow(b.minus, static_cast<double>(k));
        rhs(k) = ys[static_cast<std::size_t>(k)];
    }
    const CVector beta = basis.completeOrthogonalDecomposition().solve(rhs);
    TwoRootFit f;
    f.beta1 = beta(0);
    f.beta2 = beta(1);
    f.lower = std::abs(std::abs(f.beta1) - std::abs(f.beta2));
    f.upper = std::abs(f.beta1) + std::abs(f.beta2);
    const double scale = std::max(max_abs(psi), std::numeric_limits<double>::min());
    f.residual = (basis * beta - rhs).cwiseAbs().maxCoeff() / scale;
    return f;
}

RecurrenceCheck verify_recurrence(const CVector& psi, SiteRange range, double alpha) {
    if (range.size() < 5) {
        throw DomainError("recurrence check needs at least 5 consecutive reservoir sites, got " +
                          std::to_string(range.size()));
    }
    if (range.end > static_cast<std::size_t>(psi.size())) {
        throw DomainError("recurrence range exceeds the vector");
    }
    const double scale = std::max(max_abs(psi), std::numeric_limits<double>::min());
    RecurrenceCheck c;
    for (std::size_t n = range.begin + 4; n < range.end; ++n) {
        const auto i = static_cast<Eigen::Index>(n);
        const double r = std::abs(psi(i) - alpha * psi(i - 2) + psi(i - 4)) / scale;
        c.max_residual = std::max(c.max_residual, r);
        ++c.checked;
    }
    return c;
}

RecurrenceCheck verify_one_step(const Hamiltonian& h, const CVector& psi, Complex omega,
                                SiteRange range) {
    if (range.size() < 3) throw DomainError("one-step check needs at least 3 reservoir sites");
    if (range.end > static_cast<std::size_t>(psi.size()) ||
        static_cast<Eigen::Index>(range.end) > h.dim()) {
        throw DomainError("one-step range exceeds the vector");
    }
    const double scale = std::max(max_abs(psi), std::numeric_limits<double>::min());
    RecurrenceCheck c;
    for (std::size_t m = range.begin + 1; m + 1 < range.end; ++m) {
        const auto i = static_cast<Eigen::Index>(m);
        const Complex lhs =
            h(i, i + 1) * psi(i + 1) - (omega - h(i, i)) * psi(i) + h(i, i - 1) * psi(i - 1);
        c.max_residual = std::max(c.max_residual, std::abs(lhs) / scale);
        ++c.checked;
    }
    return c;
}

StaggerReport check_stagger_phase(const CVector& psi, std::optional<std::size_t> partition,
                                  double tol) {
    StaggerReport rep;
    if (psi.size() == 0) return rep;
    Eigen::Index peak = 0;
    const double scale = psi.cwiseAbs().maxCoeff(&peak);
    if (!(scale > 0.0)) return rep;
    const Complex phase = std::abs(psi(peak)) / psi(peak);
    const CVector v = psi * phase;

    // The parity of the peak carries the real components.
    const Eigen::Index real_parity = peak % 2;
    double worst = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double wrong = (i % 2 == real_parity) ? std::abs(v(i).imag()) : std::abs(v(i).real());
        worst = std::max(worst, wrong / scale);
    }
    rep.max_violation = worst;
    rep.staggered = worst <= tol;
    if (!rep.staggered) return rep;

    const auto from = static_cast<Eigen::Index>(partition.value_or(0));
    std::array<int, 2> sign{0, 0};
    bool in_phase = true;
    for (Eigen::Index i = from; i < v.size(); ++i) {
        if (std::abs(v(i)) <= tol * scale) continue;
        const int parity = static_cast<int>(i % 2);
        const double comp = (i % 2 == real_parity) ? v(i).real() : v(i).imag();
        const int s = comp > 0.0 ? 1 : -1;
        if (sign[static_cast<std::size_t>(parity)] == 0) {
            sign[static_cast<std::size_t>(parity)] = s;
        } else if (sign[static_cast<std::size_t>(parity)] != s) {
            in_phase = false;
        }
    }
    rep.in_phase_per_sublattice = in_phase;
    return rep;
}

std::string_view to_string(Regime r) noexcept {
    switch (r) {
        case Regime::Extended: return "Extended";
        case Regime::ExponentiallyLocalized: return "ExponentiallyLocalized";
        case Regime::LinearlyLocalized: return "LinearlyLocalized";
        case Regime::ZigzagLinear: return "ZigzagLinear";
        case Regime::ConstantDelocalized: return "ConstantDelocalized";
    }
    return "Unknown";
}

RegimeReport classify_regime(const ZeroMode& zm, const ReservoirGeometry& geometry,
                             const ClassifyOptions& opts) {
    RegimeReport rep;
    rep.alpha = zm.alpha;
    rep.r = zm.r;
    rep.roots = characteristic_roots(zm.alpha);

    const double a = std::abs(zm.alpha);
    if (std::abs(zm.alpha - 2.0) <= opts.alpha_tol) {
        const bool uniform = geometry.t_a == geometry.t_b;
        const double t = geometry.t_a;
        const bool single = uniform && std::abs(std::abs(zm.kappa_a) - 2.0 * t) <= opts.kappa_tol * t &&
                            std::abs(std::abs(zm.kappa_b) - 2.0 * t) <= opts.kappa_tol * t;
        rep.regime = single ? Regime::LinearlyLocalized : Regime::ZigzagLinear;
    } else if (std::abs(zm.alpha + 2.0) <= opts.alpha_tol) {
        rep.regime = std::abs(zm.r) <= opts.r_tol ? Regime::ConstantDelocalized
                                                  : Regime::ZigzagLinear;
    } else if (a < 2.0) {
        rep.regime = Regime::Extended;
    } else {
        rep.regime = Regime::ExponentiallyLocalized;
        rep.decay_rate = std::log(std::max(std::abs(rep.roots.plus), std::abs(rep.roots.minus)));
    }

    const SiteRange res = geometry.sites;
    const CVector& psi = zm.wavefunction;
    if (res.size() >= 6 && res.end <= static_cast<std::size_t>(psi.size())) {
        // Series 0 starts on the first reservoir site; map it onto gain/loss.
        const std::size_t gain = geometry.first_is_gain ? 0 : 1;
        const TailFit per = fit_tail(psi, res, TailModel::Linear, true);
        rep.fits[0] = per.series[gain];
        rep.fits[1] = per.series[1 - gain];
        rep.single_fit = fit_tail(psi, res, TailModel::Linear, false).series[0];
        if (rep.regime == Regime::ExponentiallyLocalized && res.size() >= 7) {
            const TailFit ex =
                fit_tail(psi, {res.begin, res.end - 1}, TailModel::Exponential, true);
            rep.measured_decay = std::array<double, 2>{-ex.series[gain].slope,
                                                       -ex.series[1 - gain].slope};
        }
    }
    return rep;
}

double linear_peak_amplitude(double t_prime, double t, std::size_t n_r) {
    if (n_r == 0) throw DomainError("reservoir must have at least one site");
    if (!(t > 0.0)) throw DomainError("reservoir coupling must be positive");
    const double nr = static_cast<double>(n_r);
    return t_prime / ((2.0 - (nr - 1.0) / nr) * t);
}

double hermitian_alpha(double omega, double onsite_reservoir, double t) {
    if (!(t > 0.0)) throw DomainError("reservoir coupling must be positive");
    return (omega - onsite_reservoir) / t;
}

LocalizationLength ssh_localization_length(double t_a, double t_b, double lattice_const) {
    if (!(t_b > 0.0) || !(t_a >= t_b)) {
        throw DomainError("localization length needs t_a >= t_b > 0");
    }
    if (t_a == t_b) return {std::numeric_limits<double>::infinity(), true};
    return {lattice_const / (std::log(t_a) - std::log(t_b)), false};
}

}  // namespace nhzm
