// Copyright 2026 The nhzm Authors
// SPDX-License-Identifier: Apache-2.0

#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace nhzm {
namespace {

CMatrix junction(Eigen::Index n, Eigen::Index p) {
    CMatrix hp = CMatrix::Zero(n, n);
    hp(p - 1, p) = hp(p, p - 1) = 1.0;
    return hp;
}

TEST(JunctionSetup, StructureAndBlockwiseModes) {
    const PerturbationSetup s = make_junction_setup(test::reference_chain(2.0));
    EXPECT_TRUE(s.is_junction_only(9));
    EXPECT_FALSE(s.is_junction_only(8));
    EXPECT_DOUBLE_EQ(s.t_prime, 0.2);
    EXPECT_EQ(s.h0(8, 9), Complex(0.0));
    // Each unperturbed mode lives on one block only.
    for (std::size_t mu = 0; mu < s.modes.size(); ++mu) {
        const CVector v = s.modes.right_vector(mu);
        const double sys = v.head(9).norm();
        const double res = v.tail(10).norm();
        EXPECT_LT(std::min(sys, res), 1e-12) << mu;
    }
    const std::size_t z = zero_mode_index(s);
    EXPECT_NEAR(std::abs(s.modes.eigenvalue(z)), 0.0, 1e-10);
    EXPECT_NEAR(s.modes.right_vector(z).tail(10).norm(), 0.0, 1e-12);
}

TEST(FirstOrderEnergy, VanishesForEveryJunctionMode) {
    for (const double gamma : {0.5, 1.0, 2.0, 3.0}) {
        const PerturbationSetup s = make_junction_setup(test::reference_chain(gamma));
        for (std::size_t mu = 0; mu < s.modes.size(); ++mu) {
            EXPECT_LT(std::abs(first_order_energy(s, mu)), 1e-12) << gamma << " " << mu;
        }
    }
}

TEST(FirstOrderEnergy, DiagonalPerturbationNegativeControl) {
    // h0 diagonal: eigenvectors are unit vectors, so the first-order shift is t' H'_jj.
    CMatrix h0 = CMatrix::Zero(3, 3);
    h0.diagonal() << 0.0, 1.0, Complex(2.0, 0.5);
    CMatrix hp = CMatrix::Zero(3, 3);
    hp.diagonal() << 0.7, -0.3, 1.0;
    const PerturbationSetup s = make_perturbation_setup(Hamiltonian(h0), hp, 0.1);
    for (std::size_t mu = 0; mu < 3; ++mu) {
        const Complex w = s.modes.eigenvalue(mu);
        const Eigen::Index j = std::abs(w) < 0.5 ? 0 : (std::abs(w - 1.0) < 0.5 ? 1 : 2);
        EXPECT_NEAR(std::abs(first_order_energy(s, mu) - 0.1 * hp(j, j)), 0.0, 1e-14);
    }
}

TEST(FirstOrderVector, LivesInTheReservoirAndScalesWithTPrime) {
    const PerturbationSetup s = make_junction_setup(test::reference_chain(2.0));
    const std::size_t z = zero_mode_index(s);
    const CVector d = first_order_wavefunction(s, z);
    EXPECT_NEAR(d.head(9).norm(), 0.0, 1e-12);
    EXPECT_GT(d.tail(10).norm(), 0.01);

    const PerturbationSetup half = make_junction_setup(test::reference_chain(2.0, 0.1));
    const CVector dh = first_order_wavefunction(half, zero_mode_index(half));
    // Phases of the unperturbed vectors are arbitrary; compare norms.
    EXPECT_NEAR(dh.norm() / d.norm(), 0.5, 1e-9);

    const PerturbationSetup off = make_junction_setup(test::reference_chain(2.0, 1e-30));
    EXPECT_LT(first_order_wavefunction(off, zero_mode_index(off)).norm(), 1e-25);
}

TEST(FirstOrderVector, DegenerateDenominatorThrows) {
    CMatrix h0 = CMatrix::Identity(2, 2);
    const PerturbationSetup s = make_perturbation_setup(Hamiltonian(h0), junction(2, 1), 0.1, 1);
    EXPECT_THROW((void)first_order_wavefunction(s, 0), DegeneratePerturbation);
}

TEST(FirstOrderVector, DefectiveModeThrows) {
    CMatrix h0 = CMatrix::Zero(3, 3);
    h0(0, 0) = 3.0;
    h0(1, 1) = Complex(0, 1);
    h0(2, 2) = Complex(0, -1);
    h0(1, 2) = h0(2, 1) = 1.0;
    const PerturbationSetup s = make_perturbation_setup(Hamiltonian(h0), junction(3, 1), 0.1, 1);
    std::size_t defective = 0;
    for (std::size_t mu = 0; mu < 3; ++mu) {
        if (s.modes.near_defective(mu)) defective = mu;
    }
    ASSERT_TRUE(s.modes.near_defective(defective));
    EXPECT_THROW((void)first_order_energy(s, defective), DegeneratePerturbation);
    EXPECT_THROW((void)first_order_wavefunction(s, defective), DegeneratePerturbation);
}

double slope_vs_t_prime(double gamma) {
    std::vector<double> x;
    std::vector<double> y;
    for (const double tp : {0.05, 0.1, 0.2}) {
        const PerturbationComparison c = perturbation_vs_exact(test::reference_chain(gamma, tp));
        x.push_back(std::log(tp));
        y.push_back(std::log(c.vector_error));
    }
    return fit_line(x, y).slope;
}

TEST(Comparison, QuadraticConvergence) {
    EXPECT_NEAR(slope_vs_t_prime(2.0), 2.0, 0.2);
    EXPECT_NEAR(slope_vs_t_prime(3.0), 2.0, 0.2);
    // Closer to the extended regime the range is pre-asymptotic but the
    // error still falls at least quadratically.
    EXPECT_GE(slope_vs_t_prime(0.5), 1.8);
}

TEST(Comparison, WeakCouplingAgreesAndStrongDegrades) {
    for (const double gamma : {0.5, 2.0}) {
        const PerturbationComparison c = perturbation_vs_exact(test::reference_chain(gamma));
        EXPECT_LT(c.vector_error, 0.05) << gamma;
        EXPECT_GT(c.overlap, 0.99);
        EXPECT_LT(c.energy_error, 2.0 * 0.2 * 0.2);
        EXPECT_NEAR(std::abs(c.omega_perturbed), 0.0, 1e-12);
    }
    const double weak = perturbation_vs_exact(test::reference_chain(2.0, 0.2)).vector_error;
    const double strong = perturbation_vs_exact(test::reference_chain(2.0, 0.6)).vector_error;
    EXPECT_GT(strong, 5.0 * weak);
    EXPECT_THROW((void)perturbation_vs_exact(test::reference_chain(2.0), std::nullopt, 1.01), MatchingError);
}

TEST(Comparison, ExactVectorIsAnEigenvector) {
    const LatticeSpec spec = test::reference_chain(2.0);
    const PerturbationComparison c = perturbation_vs_exact(spec);
    const Hamiltonian h = assemble_hamiltonian(spec);
    EXPECT_LE((h.matrix() * c.exact - c.omega_exact * c.exact).norm(), 1e-9 * c.exact.norm());
}

}  // namespace
}  // namespace nhzm
