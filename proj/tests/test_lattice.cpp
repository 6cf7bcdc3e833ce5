// Copyright 2026 The nhzm Authors
// SPDX-License-Identifier: Apache-2.0

#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

namespace nhzm {
namespace {

TEST(SshChain, BondsAlternateStartingWithTa) {
    const LatticeSpec s = build_ssh_chain(5, 1.0, 0.2);
    ASSERT_EQ(s.size(), 5u);
    EXPECT_DOUBLE_EQ(s.coupling(0), 1.0);
    EXPECT_DOUBLE_EQ(s.coupling(1), 0.2);
    EXPECT_DOUBLE_EQ(s.coupling(2), 1.0);
    EXPECT_DOUBLE_EQ(s.coupling(3), 0.2);
    EXPECT_DOUBLE_EQ(s.coupling(4), 0.0);
    EXPECT_TRUE(s.is_hermitian());
    EXPECT_EQ(s.sites()[0].sublattice, Sublattice::A);
    EXPECT_EQ(s.sites()[1].sublattice, Sublattice::B);
}

TEST(Reservoir, GainLossAlternates) {
    const LatticeSpec r = build_reservoir(4, 1.0, 1.0, 2.0, 0.0, GainSign::Loss);
    EXPECT_DOUBLE_EQ(r.sites()[0].onsite_imag, -2.0);
    EXPECT_DOUBLE_EQ(r.sites()[1].onsite_imag, 2.0);
    EXPECT_DOUBLE_EQ(r.sites()[3].onsite_imag, 2.0);
    EXPECT_FALSE(r.is_hermitian());
}

TEST(CoupledChain, DefaultGeometry) {
    const LatticeSpec s = test::reference_chain(2.0);
    ASSERT_EQ(s.size(), 19u);
    ASSERT_TRUE(s.partition().has_value());
    EXPECT_EQ(*s.partition(), 9u);
    EXPECT_EQ(s.system_range().end, 9u);
    EXPECT_EQ(s.reservoir_range().begin, 9u);
    EXPECT_EQ(s.reservoir_range().end, 19u);
    EXPECT_DOUBLE_EQ(s.coupling(8), 0.2);
    EXPECT_DOUBLE_EQ(s.coupling(7), 0.2);
    EXPECT_DOUBLE_EQ(s.coupling(6), 1.0);
    EXPECT_DOUBLE_EQ(s.coupling(12), 1.0);
    EXPECT_DOUBLE_EQ(s.sites()[9].onsite_imag, 2.0);
    EXPECT_DOUBLE_EQ(s.sites()[10].onsite_imag, -2.0);
    EXPECT_DOUBLE_EQ(s.sites()[8].onsite_imag, 0.0);
    // Labels keep alternating through the junction.
    EXPECT_NE(s.sites()[8].sublattice, s.sites()[9].sublattice);

    const Hamiltonian h = assemble_hamiltonian(s);
    EXPECT_EQ(h(9, 9), Complex(0.0, 2.0));
    EXPECT_EQ(h(8, 9), Complex(0.2, 0.0));
    EXPECT_EQ(h(9, 8), Complex(0.2, 0.0));
    EXPECT_EQ(h(0, 2), Complex(0.0, 0.0));
}

TEST(CoupledChain, GeometryReadBack) {
    const ReservoirGeometry g = reservoir_geometry(test::reference_chain(1.3));
    EXPECT_EQ(g.sites.begin, 9u);
    EXPECT_EQ(g.sites.end, 19u);
    EXPECT_DOUBLE_EQ(g.gamma, 1.3);
    EXPECT_DOUBLE_EQ(g.t_a, 1.0);
    EXPECT_DOUBLE_EQ(g.t_b, 1.0);
    EXPECT_TRUE(g.first_is_gain);
    EXPECT_THROW((void)reservoir_geometry(build_ssh_chain(4, 1.0, 1.0)), DomainError);
}

TEST(CoupledChain, DetunedReservoir) {
    CoupledChainParams p;
    p.gamma = 0.0;
    p.reservoir_onsite = 2.0;
    const LatticeSpec s = build_coupled_chain(p);
    EXPECT_DOUBLE_EQ(s.sites()[3].onsite_real, 0.0);
    EXPECT_DOUBLE_EQ(s.sites()[12].onsite_real, 2.0);
    EXPECT_FALSE(s.has_uniform_onsite_real());
}

TEST(Couple, RejectsRepeatedLabelAtJunction) {
    const LatticeSpec sys = build_ssh_chain(3, 1.0, 0.2);  // ends on A
    const LatticeSpec res = build_reservoir(4, 1.0, 1.0, 1.0);  // starts on A
    EXPECT_THROW((void)couple(sys, res, 0.2), InvalidSpec);
}

TEST(Validation, RejectsMalformedSpecs) {
    using V = std::vector<Site>;
    using C = std::vector<Coupling>;
    const Site a{0, 0, Sublattice::A};
    const Site b{0, 0, Sublattice::B};
    EXPECT_THROW(LatticeSpec(V{}, C{}), InvalidSpec);
    EXPECT_THROW(LatticeSpec(V{a, b, a}, C{{0, 2, 1.0}}), InvalidSpec);       // not nearest neighbour
    EXPECT_THROW(LatticeSpec(V{a, b}, C{{0, 1, 1.0}, {0, 1, 1.0}}), InvalidSpec);  // duplicate
    EXPECT_THROW(LatticeSpec(V{a, b}, C{{0, 1, 0.0}}), InvalidSpec);          // non-positive
    EXPECT_THROW(LatticeSpec(V{a, b}, C{{0, 1, -1.0}}), InvalidSpec);
    EXPECT_THROW(LatticeSpec(V{a, a}, C{{0, 1, 1.0}}), InvalidSpec);          // labels
    EXPECT_THROW(LatticeSpec(V{a, b}, C{{0, 1, 1.0}}, 0), InvalidSpec);       // partition
    EXPECT_THROW(LatticeSpec(V{a, b}, C{{0, 1, 1.0}}, 2), InvalidSpec);
    const Site nan{std::numeric_limits<double>::quiet_NaN(), 0, Sublattice::A};
    EXPECT_THROW(LatticeSpec(V{nan, b}, C{{0, 1, 1.0}}), InvalidSpec);
    EXPECT_NO_THROW(LatticeSpec(V{a, b}, C{{0, 1, 1.0}}, 1));
}

TEST(Hamiltonian, RejectsBadMatrices) {
    EXPECT_THROW(Hamiltonian(CMatrix::Zero(2, 3)), InvalidSpec);
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 1) = Complex(std::numeric_limits<double>::infinity(), 0.0);
    EXPECT_THROW(Hamiltonian{m}, InvalidSpec);
}

TEST(Hamiltonian, ExtractRejectsNonChainMatrices) {
    CMatrix m = CMatrix::Zero(3, 3);
    m(0, 2) = m(2, 0) = 1.0;
    EXPECT_THROW((void)extract_spec(Hamiltonian(m)), InvalidSpec);
    CMatrix asym = CMatrix::Zero(2, 2);
    asym(0, 1) = 1.0;
    asym(1, 0) = 0.5;
    EXPECT_THROW((void)extract_spec(Hamiltonian(asym)), InvalidSpec);
    CMatrix cplx = CMatrix::Zero(2, 2);
    cplx(0, 1) = cplx(1, 0) = Complex(0.0, 1.0);
    EXPECT_THROW((void)extract_spec(Hamiltonian(cplx)), InvalidSpec);
}

TEST(Hamiltonian, RoundTripOverRandomSpecs) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const LatticeSpec s = test::random_nhph_spec(rng);
        const Hamiltonian h = assemble_hamiltonian(s);
        const LatticeSpec back = extract_spec(h, s.sites()[0].sublattice, s.partition());
        EXPECT_EQ(back, s) << "trial " << trial;
        // Assembled matrices are complex symmetric.
        EXPECT_LT((h.matrix() - h.matrix().transpose()).norm(), 1e-15);
    }
}

TEST(Edits, WithGainLossAndWithoutCoupling) {
    const LatticeSpec s = build_ssh_chain(6, 1.0, 0.5);
    const LatticeSpec g = with_gain_loss(s, {2, 5}, 0.7, GainSign::Loss);
    EXPECT_DOUBLE_EQ(g.sites()[1].onsite_imag, 0.0);
    EXPECT_DOUBLE_EQ(g.sites()[2].onsite_imag, -0.7);
    EXPECT_DOUBLE_EQ(g.sites()[3].onsite_imag, 0.7);
    EXPECT_DOUBLE_EQ(g.sites()[4].onsite_imag, -0.7);
    EXPECT_DOUBLE_EQ(g.sites()[5].onsite_imag, 0.0);

    const LatticeSpec cut = without_coupling(s, 2);
    EXPECT_DOUBLE_EQ(cut.coupling(2), 0.0);
    EXPECT_DOUBLE_EQ(cut.coupling(1), 0.5);
    EXPECT_EQ(cut.couplings().size(), 4u);
}

TEST(CoupledChain, SystemGainLossDefectVariant) {
    CoupledChainParams p;
    p.system_gamma = 2.0;
    const LatticeSpec s = build_coupled_chain(p);
    EXPECT_DOUBLE_EQ(s.sites()[0].onsite_imag, 2.0);
    EXPECT_DOUBLE_EQ(s.sites()[1].onsite_imag, -2.0);
    EXPECT_DOUBLE_EQ(s.sites()[9].onsite_imag, 2.0);
}

}  // namespace
}  // namespace nhzm
