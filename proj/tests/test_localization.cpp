// Copyright 2026 The nhzm Authors
// SPDX-License-Identifier: Apache-2.0

#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace nhzm {
namespace {

using test::solve;

TEST(Kappa, SignsAndDomain) {
    const Kappa k = compute_kappa(Complex(0.0, 0.0356), 2.0);
    EXPECT_DOUBLE_EQ(k.a, 0.0356 - 2.0);
    EXPECT_DOUBLE_EQ(k.b, 0.0356 + 2.0);
    EXPECT_THROW((void)compute_kappa(Complex(0.1, 0.0), 1.0), DomainError);
    EXPECT_NO_THROW((void)compute_kappa(Complex(1.0 + 1e-10, 0.3), 1.0, 1.0));
}

TEST(Alpha, ReferenceValues) {
    auto alpha_at = [](double im, double gamma) {
        return compute_alpha(compute_kappa(Complex(0.0, im), gamma), 1.0, 1.0).alpha;
    };
    EXPECT_NEAR(alpha_at(0.0251, 0.5), -1.75, 0.01);
    EXPECT_NEAR(alpha_at(0.0147, 3.0), 7.0, 0.01);
    const AlphaR ar = compute_alpha(compute_kappa(Complex(0.0, 0.0), 2.0), 1.0, 1.0);
    EXPECT_DOUBLE_EQ(ar.r, -4.0);
    EXPECT_DOUBLE_EQ(ar.alpha, 2.0);
    // Dimerised reservoir: -(t_a/t_b + t_b/t_a + r).
    const AlphaR dim = compute_alpha({0.5, -0.5}, 1.0, 0.5);
    EXPECT_DOUBLE_EQ(dim.r, -0.5);
    EXPECT_DOUBLE_EQ(dim.alpha, -(2.0 + 0.5 - 0.5));
    EXPECT_THROW((void)compute_alpha({1, 1}, 0.0, 1.0), DomainError);
}

TEST(Roots, VietaOverRandomAlpha) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    for (int i = 0; i < 1000; ++i) {
        const double alpha = u(rng);
        const Roots r = characteristic_roots(alpha);
        EXPECT_NEAR(std::abs(r.plus * r.minus - 1.0), 0.0, 1e-12) << alpha;
        EXPECT_NEAR(std::abs(r.plus + r.minus - alpha), 0.0, 1e-12 * std::max(1.0, std::abs(alpha)));
        // Both are roots of the characteristic polynomial.
        for (const Complex b : {r.plus, r.minus}) {
            EXPECT_LE(std::abs(b * b - alpha * b + 1.0), 1e-10 * std::max(1.0, alpha * alpha));
        }
    }
}

TEST(Roots, ReferenceCases) {
    const Roots seven = characteristic_roots(7.0);
    const double big = 3.5 + std::sqrt(12.25 - 1.0);
    EXPECT_NEAR(seven.plus.real(), big, 1e-12);
    EXPECT_NEAR(seven.minus.real(), 1.0 / big, 1e-12);
    EXPECT_NEAR(std::log(big), 1.9248473, 1e-6);

    const Roots two = characteristic_roots(2.0);
    EXPECT_NEAR(std::abs(two.plus - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(two.minus - 1.0), 0.0, 1e-12);

    const Roots inside = characteristic_roots(-1.75);
    EXPECT_NEAR(std::abs(inside.plus), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(inside.minus), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(inside.plus - std::conj(inside.minus)), 0.0, 1e-12);
}

TEST(CriticalGammas, ClosedForm) {
    const CriticalGammas c = critical_gammas(1.0, 0.5);
    EXPECT_DOUBLE_EQ(c.alpha_plus_two, 1.5);
    EXPECT_DOUBLE_EQ(c.alpha_minus_two, 0.5);
    // Im omega = 0 at these gamma gives alpha = +2 and -2.
    auto alpha = [](double g) { return compute_alpha({-g, g}, 1.0, 0.5).alpha; };
    EXPECT_NEAR(alpha(c.alpha_plus_two), 2.0, 1e-12);
    EXPECT_NEAR(alpha(c.alpha_minus_two), -2.0, 1e-12);
}

TEST(FitLine, ExactAndDegenerate) {
    const std::vector<double> x{0, 1, 2, 3};
    const std::vector<double> y{1, 3, 5, 7};
    const LinearFit f = fit_line(x, y);
    EXPECT_NEAR(f.slope, 2.0, 1e-14);
    EXPECT_NEAR(f.intercept, 1.0, 1e-14);
    EXPECT_NEAR(f.r_squared, 1.0, 1e-14);
    const std::vector<double> flat{2, 2, 2, 2};
    EXPECT_DOUBLE_EQ(fit_line(x, flat).r_squared, 1.0);
    EXPECT_THROW((void)fit_line(flat, y), FitError);
    EXPECT_THROW((void)fit_line(std::vector<double>{1.0}, std::vector<double>{1.0}), FitError);
}

TEST(FitTail, SyntheticProfiles) {
    CVector lin(10);
    for (int n = 0; n < 10; ++n) lin(n) = Complex(0.0, 1.0) * (5.0 - 0.4 * n);
    const TailFit single = fit_tail(lin, {2, 10}, TailModel::Linear, false);
    ASSERT_EQ(single.series.size(), 1u);
    EXPECT_NEAR(single.series[0].slope, -0.4, 1e-12);
    EXPECT_EQ(single.series[0].n, 8u);

    CVector expo(12);
    for (int n = 0; n < 12; ++n) expo(n) = std::pow(n % 2 ? 0.5 : 0.25, n / 2) * (n % 2 ? 3.0 : 1.0);
    const TailFit per = fit_tail(expo, {0, 12}, TailModel::Exponential, true);
    ASSERT_EQ(per.series.size(), 2u);
    EXPECT_NEAR(per.series[0].slope, std::log(0.25), 1e-12);
    EXPECT_NEAR(per.series[1].slope, std::log(0.5), 1e-12);

    expo(4) = 0.0;
    EXPECT_THROW((void)fit_tail(expo, {0, 12}, TailModel::Exponential, true), DomainError);
    EXPECT_THROW((void)fit_tail(lin, {0, 4}, TailModel::Linear, true), FitError);
    EXPECT_THROW((void)fit_tail(lin, {0, 11}, TailModel::Linear, false), DomainError);
}

TEST(Recurrence, ExactEigenvectorsSatisfyIt) {
    for (const double gamma : {0.5, 1.0, 2.0, 3.0}) {
        const test::Solved s = solve(test::reference_chain(gamma));
        for (const ZeroMode& zm : find_zero_modes(s.modes, 0.0, 1e-8, s.geometry)) {
            const RecurrenceCheck rc = verify_recurrence(zm.wavefunction, s.geometry.sites, zm.alpha);
            EXPECT_LE(rc.max_residual, 1e-9) << "gamma " << gamma;
            EXPECT_EQ(rc.checked, s.geometry.sites.size() - 4);
            const RecurrenceCheck one = verify_one_step(s.h, zm.wavefunction, zm.omega, s.geometry.sites);
            EXPECT_LE(one.max_residual, 1e-9);
        }
    }
}

TEST(Recurrence, RandomVectorFailsAndShortRangeThrows) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> n;
    CVector v(19);
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(n(rng), n(rng));
    EXPECT_GT(verify_recurrence(v, {9, 19}, 2.0).max_residual, 0.1);
    EXPECT_THROW((void)verify_recurrence(v, {9, 13}, 2.0), DomainError);
}

TEST(Stagger, ZeroModeAndControls) {
    const test::Solved s = solve(test::reference_chain(2.0));
    const ZeroMode zm = test::baseline(s);
    const StaggerReport ok = check_stagger_phase(zm.wavefunction, s.spec.partition());
    EXPECT_TRUE(ok.staggered);
    EXPECT_TRUE(ok.in_phase_per_sublattice);
    EXPECT_LE(ok.max_violation, 1e-8);

    // A mode off the zero-mode axis is not staggered.
    std::size_t other = 0;
    for (std::size_t mu = 0; mu < s.modes.size(); ++mu) {
        if (std::abs(s.modes.eigenvalue(mu).real()) > 0.5) other = mu;
    }
    EXPECT_FALSE(check_stagger_phase(s.modes.right_vector(other), s.spec.partition()).staggered);

    CVector two(2);
    two << Complex(0, 1.0), Complex(2.0, 0);  // global phase removed first
    EXPECT_TRUE(check_stagger_phase(two, std::nullopt).staggered);
    CVector sign(4);
    sign << 1.0, Complex(0, 1.0), -1.0, Complex(0, 1.0);
    const StaggerReport flip = check_stagger_phase(sign, std::nullopt);
    EXPECT_TRUE(flip.staggered);
    EXPECT_FALSE(flip.in_phase_per_sublattice);
}

TEST(Classify, ReferenceRegimes) {
    auto regime = [](double gamma, double t_prime = 0.2) {
        const test::Solved s = solve(test::reference_chain(gamma, t_prime));
        return classify_regime(test::baseline(s), s.geometry);
    };
    EXPECT_EQ(regime(0.5).regime, Regime::Extended);
    EXPECT_EQ(regime(2.0).regime, Regime::LinearlyLocalized);
    const RegimeReport expo = regime(3.0);
    EXPECT_EQ(expo.regime, Regime::ExponentiallyLocalized);
    ASSERT_TRUE(expo.decay_rate.has_value());
    EXPECT_NEAR(*expo.decay_rate, std::log(std::abs(expo.roots.plus)), 1e-12);
    ASSERT_TRUE(expo.measured_decay.has_value());
    for (const double d : *expo.measured_decay) {
        EXPECT_NEAR(std::abs(d), *expo.decay_rate, 0.01 * *expo.decay_rate);
    }
    EXPECT_EQ(regime(0.0).regime, Regime::ConstantDelocalized);
    EXPECT_NE(regime(2.0, 0.6).regime, Regime::LinearlyLocalized);
    EXPECT_EQ(to_string(Regime::ZigzagLinear), "ZigzagLinear");
}

TEST(Classify, ZigzagOnAlphaPlusTwoWithoutTwoTKappa) {
    const test::Solved s = solve(test::reference_chain(2.036, 0.6));
    bool found = false;
    for (const ZeroMode& zm : find_zero_modes(s.modes, 0.0, 1e-8, s.geometry)) {
        if (std::abs(zm.omega.imag() - 0.3823) < 2e-3) {
            found = true;
            EXPECT_EQ(classify_regime(zm, s.geometry).regime, Regime::ZigzagLinear);
        }
    }
    EXPECT_TRUE(found);
}

TEST(LinearProfile, AmplitudeRelationOfOneStepForm) {
    // Stagger plus the one-step form give |Psi_n| + |Psi_{n-2}| = |kappa| |Psi_{n-1}|.
    const test::Solved s = solve(test::reference_chain(2.0));
    const ZeroMode zm = test::baseline(s);
    const CVector& v = zm.wavefunction;
    const double scale = v.cwiseAbs().maxCoeff();
    for (std::size_t n = s.geometry.sites.begin + 2; n < s.geometry.sites.end; ++n) {
        const bool centre_gain = s.spec.sites()[n - 1].onsite_imag > 0.0;
        const double kappa = std::abs(centre_gain ? zm.kappa_a : zm.kappa_b);
        const auto i = static_cast<Eigen::Index>(n);
        EXPECT_NEAR(std::abs(v(i)) + std::abs(v(i - 2)), kappa * std::abs(v(i - 1)), 1e-8 * scale);
    }
}

TEST(ConstantControl, HermitianTailIsConstantOnOneSublattice) {
    const test::Solved s = solve(test::reference_chain(0.0));
    const ZeroMode zm = test::baseline(s);
    const CVector& v = zm.wavefunction;
    const double scale = v.cwiseAbs().maxCoeff();
    double lo = 1e300;
    double hi = 0.0;
    double other = 0.0;
    for (std::size_t n = s.geometry.sites.begin; n < s.geometry.sites.end; ++n) {
        const double a = std::abs(v(static_cast<Eigen::Index>(n)));
        if (n % 2 == 0) {
            lo = std::min(lo, a);
            hi = std::max(hi, a);
        } else {
            other = std::max(other, a);
        }
    }
    EXPECT_GT(lo, 1e-3 * scale);
    EXPECT_LE(hi - lo, 1e-8 * scale);
    EXPECT_LE(other, 1e-8 * scale);
}

TEST(TwoRoot, AmplitudesWithinBounds) {
    const test::Solved s = solve(test::reference_chain(0.5));
    const ZeroMode zm = test::baseline(s);
    ASSERT_LT(std::abs(zm.alpha), 2.0);
    for (const std::size_t start : {s.geometry.sites.begin, s.geometry.sites.begin + 1}) {
        const TwoRootFit f = fit_two_root_expansion(zm.wavefunction, start, s.geometry.sites, zm.alpha);
        EXPECT_LE(f.residual, 1e-9);
        const double scale = zm.wavefunction.cwiseAbs().maxCoeff();
        for (std::size_t n = start; n < s.geometry.sites.end; n += 2) {
            const double a = std::abs(zm.wavefunction(static_cast<Eigen::Index>(n)));
            EXPECT_GE(a, f.lower - 1e-9 * scale);
            EXPECT_LE(a, f.upper + 1e-9 * scale);
        }
    }
}

TEST(ClosedForms, PeakAmplitudeAndLengths) {
    EXPECT_NEAR(linear_peak_amplitude(0.2, 1.0, 10), 0.2 / 1.1, 1e-15);
    EXPECT_NEAR(linear_peak_amplitude(0.2, 1.0, 1000000), 0.2, 1e-6);
    EXPECT_DOUBLE_EQ(linear_peak_amplitude(0.0, 1.0, 10), 0.0);
    EXPECT_THROW((void)linear_peak_amplitude(0.2, 1.0, 0), DomainError);
    EXPECT_THROW((void)linear_peak_amplitude(0.2, 0.0, 10), DomainError);

    EXPECT_DOUBLE_EQ(hermitian_alpha(0.0, 2.0, 1.0), -2.0);
    EXPECT_DOUBLE_EQ(hermitian_alpha(0.0, -2.0, 1.0), 2.0);
    EXPECT_THROW((void)hermitian_alpha(0.0, 2.0, 0.0), DomainError);

    EXPECT_NEAR(ssh_localization_length(1.0, 0.2).xi, 1.0 / std::log(5.0), 1e-14);
    EXPECT_NEAR(ssh_localization_length(std::exp(1.0) * 0.3, 0.3).xi, 1.0, 1e-12);
    EXPECT_TRUE(ssh_localization_length(1.0, 1.0).diverges);
    EXPECT_THROW((void)ssh_localization_length(0.2, 1.0), DomainError);
    EXPECT_THROW((void)ssh_localization_length(1.0, 0.0), DomainError);
}

TEST(ClosedForms, EdgeStateDecayMatchesLocalizationLength) {
    // Oracle: the isolated SSH edge state grows by t_a/t_b per unit cell towards
    // the right edge, where the t_b bond terminates the chain.
    const ModeSet ms = eigendecompose(assemble_hamiltonian(build_ssh_chain(9, 1.0, 0.2)));
    const std::vector<ZeroMode> zms = find_zero_modes(ms, 0.0, 1e-8);
    ASSERT_EQ(zms.size(), 1u);
    const CVector& v = zms[0].wavefunction;
    const double xi = ssh_localization_length(1.0, 0.2, 2.0).xi;
    EXPECT_NEAR(std::abs(v(2) / v(0)), std::exp(2.0 / xi), 1e-9);
}

}  // namespace
}  // namespace nhzm
