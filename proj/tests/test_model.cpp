#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"

using namespace tavis;

TEST(Sector, DimensionsByExcitation) {
    EXPECT_EQ(build_sector(0).dim(), 1u);
    EXPECT_EQ(build_sector(1).dim(), 3u);
    for (int M = 2; M < 8; ++M) {
        EXPECT_EQ(build_sector(M).dim(), 4u);
        EXPECT_TRUE(build_sector(M).is_full());
    }
    EXPECT_THROW(build_sector(-1), InvalidInput);
}

TEST(Sector, BasisOrderAndExcitation) {
    const auto s = build_sector(3);
    EXPECT_EQ(s.basis[0], (BasisState{Level::excited, Level::excited, 1}));
    EXPECT_EQ(s.basis[1], (BasisState{Level::excited, Level::ground, 2}));
    EXPECT_EQ(s.basis[2], (BasisState{Level::ground, Level::excited, 2}));
    EXPECT_EQ(s.basis[3], (BasisState{Level::ground, Level::ground, 3}));
    for (const auto& b : s.basis) EXPECT_EQ(b.total_excitation(), 3);
    EXPECT_EQ(s.ansatz_index(), 1);
    EXPECT_EQ(s.basis[1].label(), "|e1,g2,2>");

    const auto one = build_sector(1);
    EXPECT_EQ(one.basis[0], (BasisState{Level::excited, Level::ground, 0}));
    EXPECT_FALSE(one.index_of({Level::excited, Level::excited, -1}).has_value());
}

// Equations of motion of the four-amplitude ansatz, written out by hand.
TEST(SectorHamiltonian, MatchesAnsatzEquations) {
    const ModelParams p{1.3, 0.4, 0.7, -2.1, 0.0};
    for (int n = 0; n < 5; ++n) {
        const auto h = sector_hamiltonian(build_sector(n + 2), p);
        const double r1 = std::sqrt(n + 1.0), r2 = std::sqrt(n + 2.0);
        Eigen::Matrix4d want;
        want << (p.delta1 + p.delta2) / 2, p.lambda2 * r1, p.lambda1 * r1, 0,
                p.lambda2 * r1, (p.delta1 - p.delta2) / 2, 0, p.lambda1 * r2,
                p.lambda1 * r1, 0, (p.delta2 - p.delta1) / 2, p.lambda2 * r2,
                0, p.lambda1 * r2, p.lambda2 * r2, -(p.delta1 + p.delta2) / 2;
        EXPECT_LT((h - want).cwiseAbs().maxCoeff(), 1e-15) << "n=" << n;
        EXPECT_EQ(h, h.transpose());
    }
}

TEST(SectorHamiltonian, LowSectors) {
    const ModelParams p{1.0, 0.3, 0.5, 2.0, 0.0};
    const auto h0 = sector_hamiltonian(build_sector(0), p);
    ASSERT_EQ(h0.rows(), 1);
    EXPECT_DOUBLE_EQ(h0(0, 0), -(p.delta1 + p.delta2) / 2);

    const auto h1 = sector_hamiltonian(build_sector(1), p);
    Eigen::Matrix3d want;
    want << (p.delta1 - p.delta2) / 2, 0, p.lambda1,
            0, (p.delta2 - p.delta1) / 2, p.lambda2,
            p.lambda1, p.lambda2, -(p.delta1 + p.delta2) / 2;
    EXPECT_LT((h1 - want).cwiseAbs().maxCoeff(), 1e-15);
}

// Exchanging the atoms permutes the two singly-excited basis states.
TEST(SectorHamiltonian, AtomSwapSymmetry) {
    testing_support::Sampler rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto p = rng.params();
        const ModelParams q{p.lambda2, p.lambda1, p.delta2, p.delta1, p.omega};
        const int M = rng.integer(2, 6);
        Eigen::Matrix4d perm = Eigen::Matrix4d::Zero();
        perm(0, 0) = perm(1, 2) = perm(2, 1) = perm(3, 3) = 1;
        const Eigen::MatrixXd a = sector_hamiltonian(build_sector(M), p);
        const Eigen::MatrixXd b = sector_hamiltonian(build_sector(M), q);
        EXPECT_LT((perm * a * perm - b).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(Params, Validation) {
    EXPECT_NO_THROW((ModelParams{1.0, 0.0, 0.0, 0.0, 0.0}.validate()));
    EXPECT_THROW((ModelParams{0.0, 0.1, 0.0, 0.0, 0.0}.validate()), InvalidInput);
    EXPECT_THROW((ModelParams{1.0, -0.1, 0.0, 0.0, 0.0}.validate()), InvalidInput);
    EXPECT_THROW((ModelParams{1.0, 0.1, NAN, 0.0, 0.0}.validate()), InvalidInput);
    EXPECT_DOUBLE_EQ((ModelParams{1.0, 0.0, 0.5, 0.0, 2.0}.omega1()), 2.5);

    EXPECT_THROW((InitialCondition{0.0, 0.0, 1, 1.5}.validate()), InvalidInput);
    EXPECT_THROW((InitialCondition{4.0, 0.0, 1, 0.5}.validate()), InvalidInput);
    EXPECT_THROW((InitialCondition{1.0, 0.0, -1, 0.5}.validate()), InvalidInput);
}

TEST(Ensemble, ExcitedAtomInFockState) {
    const auto e = prepare_ensemble({std::numbers::pi, 0.0, 1, 0.5});
    ASSERT_EQ(e.branches.size(), 2u);
    EXPECT_EQ(e.branches[0].atom2_initial, Level::excited);
    EXPECT_DOUBLE_EQ(e.branches[0].weight, 0.5);
    // cos(pi/2) is rounding residue and must not open a second sector
    ASSERT_EQ(e.branches[0].sectors.size(), 1u);
    const auto& c = e.branches[0].sectors.at(3);
    EXPECT_DOUBLE_EQ(std::abs(c(0)), 1.0);
    EXPECT_EQ(e.branches[1].sectors.count(2), 1u);
    EXPECT_EQ(e.max_excitation(), 3);
}

TEST(Ensemble, SuperpositionAndPureEnvironment) {
    const double theta = 1.2, phi = 0.4;
    const auto e = prepare_ensemble({theta, phi, 0, 1.0});
    ASSERT_EQ(e.branches.size(), 1u);
    const auto& b = e.branches[0];
    EXPECT_NEAR(branch_norm(b), 1.0, 1e-15);
    // |g1,e2,0> lives in M = 1, |e1,e2,0> in M = 2
    const cplx g = b.sectors.at(1)(1);
    const cplx x = b.sectors.at(2)(0);
    EXPECT_NEAR(g.real(), std::cos(theta / 2), 1e-15);
    EXPECT_NEAR(std::abs(x - std::sin(theta / 2) * std::polar(1.0, phi)), 0.0, 1e-15);
}

TEST(Ensemble, EnergyOfBasisStateIsDiagonal) {
    const ModelParams p{1.0, 0.2, 0.3, 1.1, 0.0};
    const auto e = prepare_ensemble({std::numbers::pi, 0.0, 2, 1.0});
    EXPECT_NEAR(branch_energy(e.branches[0], p), (p.delta1 + p.delta2) / 2, 1e-15);
}
