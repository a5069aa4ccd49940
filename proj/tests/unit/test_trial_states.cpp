#include <gtest/gtest.h>

#include <cmath>

#include "lll/errors.hpp"
#include "lll/spectra.hpp"
#include "lll/trial_states.hpp"

using namespace lll;

TEST(Laughlin, TwoParticles) {
    auto v = laughlin_fock(2);
    auto basis = enumerate_sector(2, 2);
    ASSERT_EQ(v.size(), 2u);
    // z1^2 + z2^2 - 2 z1 z2: |0,2> amplitude sqrt(2) * sqrt(2!) / sqrt(2!), |1,1> amplitude -2 * 1 / sqrt(2).
    const double a = std::sqrt(2.0);
    const double b = -2.0 / std::sqrt(2.0);
    const double norm = std::hypot(a, b);
    EXPECT_NEAR(std::abs(v.coeffs[basis.index_of(Occupation{1, 0, 1})]), std::abs(a) / norm, 1e-14);
    EXPECT_NEAR(std::abs(v.coeffs[basis.index_of(Occupation{0, 2})]), std::abs(b) / norm, 1e-14);
    EXPECT_LT(v.coeffs[0] * v.coeffs[1], 0.0);
}

TEST(Laughlin, ExpansionCoefficients) {
    auto e = laughlin_expansion(3);
    // (z1-z2)^2 (z1-z3)^2 (z2-z3)^2 on m_lambda: m_(4,2,0) coefficient 1, m_(2,2,2) coefficient -6.
    bool saw_top = false, saw_flat = false;
    for (const auto& t : e.terms) {
        if (t.partition == std::vector<int>{4, 2, 0}) saw_top = t.coefficient == 1;
        if (t.partition == std::vector<int>{2, 2, 2}) saw_flat = t.coefficient == -6;
    }
    EXPECT_TRUE(saw_top);
    EXPECT_TRUE(saw_flat);
}

TEST(Laughlin, ZeroInteractionAndMomentum) {
    for (int n = 2; n <= 6; ++n) {
        auto v = laughlin_fock(n);
        EXPECT_EQ(v.tag.angular_momentum, n * (n - 1));
        EXPECT_NEAR(v.norm(), 1.0, 1e-12);
        auto op = assemble_interaction(enumerate_sector(n, n * (n - 1)));
        EXPECT_LE(op.expectation(v), 1e-10) << n;
    }
}

TEST(Laughlin, Limits) {
    EXPECT_THROW(laughlin_fock(9), ResourceError);
    EXPECT_THROW(laughlin_fock(1), InputError);
}

TEST(GiantVortex, ZeroChargeIsLaughlin) {
    auto a = laughlin_fock(4);
    auto b = giant_vortex_fock(4, 0);
    ASSERT_EQ(a.coeffs.size(), b.coeffs.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a.coeffs[i], b.coeffs[i], 1e-15);
}

TEST(GiantVortex, KernelMembership) {
    for (int n = 2; n <= 5; ++n)
        for (int m = 0; m <= 4; ++m) {
            auto v = giant_vortex_fock(n, m);
            const int l = n * (n - 1) + n * m;
            EXPECT_EQ(v.tag.angular_momentum, l);
            auto op = assemble_interaction(enumerate_sector(n, l));
            EXPECT_LE(op.expectation(v), 1e-10);
            auto spec = analyze_interaction_sector(n, l, {}, true);
            EXPECT_LE(correlation_defect(v, spec.kernel), 1e-8) << n << " " << m;
        }
}

TEST(TrialEnergy, NoQuartic) {
    auto r = trial_energy(4, 3, {0.7, 1.0, 0.0});
    EXPECT_EQ(r.L_m, 24);
    EXPECT_NEAR(r.energy, 0.7 * 24, 1e-12);
    EXPECT_EQ(r.interaction_energy, 0.0);
}

TEST(TrialEnergy, MatchesDenseQuadraticForm) {
    for (int n = 2; n <= 4; ++n)
        for (int m = 0; m <= 2; ++m) {
            const HamiltonianParams p{-0.3, 1.0, 0.2};
            auto v = giant_vortex_fock(n, m);
            auto h = assemble_hamiltonian(enumerate_sector(n, v.tag.angular_momentum), p);
            auto r = trial_energy(n, m, p);
            EXPECT_NEAR(r.energy, h.expectation(v), 1e-10);
            EXPECT_GE(r.energy, sector_energy_lower_bound(p, n, r.L_m) - 1e-12);
        }
}

TEST(OptimalM, Branches) {
    EXPECT_EQ(optimal_m(0.1, 0.3, 10), 0);
    EXPECT_EQ(optimal_m(-4.0, 0.01, 50), 150);
    EXPECT_EQ(optimal_m(-2 * 0.05 * 6, 0.05, 6), 0);
    EXPECT_THROW(optimal_m(-1.0, 0.0, 6), InputError);
}

TEST(OptimalM, AgreesWithNumericScan) {
    for (double k : {0.01, 0.05, 0.2})
        for (double omega : {0.5, 0.0, -0.2, -1.0, -3.0}) {
            const int closed = optimal_m(omega, k, 6);
            const int numeric = numeric_optimal_m(omega, k, 6);
            EXPECT_LE(std::abs(closed - numeric), 1) << omega << " " << k;
        }
}

TEST(OptimalM, QuasiHoleMomentum) {
    const int n = 6;
    const double k = 0.01;
    for (double omega : {-3.0, -5.0}) {
        const int m = optimal_m(omega, k, n);
        EXPECT_LE(std::abs(m - numeric_optimal_m(omega, k, n)), 1);
        const double l = n * (n - 1) + n * m;
        EXPECT_LT(std::abs(l - n * std::abs(omega) / (2 * k)), 2.0 * n * n) << omega;
    }
}
