#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "lll/errors.hpp"
#include "lll/operators.hpp"
#include "lll/spectra.hpp"

using namespace lll;

namespace {

constexpr double kPi = std::numbers::pi;

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

// delta_12 phi(z1, z2) = (2 pi)^-1 phi(w, w), w = (z1 + z2)/2. For phi = z1^m3 z2^m4, the
// result is (2 pi)^-1 2^-M sum_a C(M, a) z1^a z2^(M-a); Bargmann <z^a, z^b> = pi a! delta_ab.
// Returns (2 pi <m1 m2|delta|m3 m4>)^2 as an exact ratio evaluated once.
double squared_oracle(int m1, int m2, int m3, int m4) {
    const int total = m3 + m4;
    if (m1 + m2 != total) return 0.0;
    const double amp = binomial(total, m1) * factorial(m1) * factorial(m2);
    return amp * amp / (std::pow(4.0, total) * factorial(m1) * factorial(m2) * factorial(m3) * factorial(m4));
}

// First-quantized <n| sum_{i<j} delta_ij |n'> from all orbital orderings.
double brute_force_element(const Occupation& a, const Occupation& b, int n) {
    auto sequences = [](const Occupation& occ) {
        auto orb = occ.orbitals();
        std::sort(orb.begin(), orb.end());
        std::vector<std::vector<int>> out;
        do out.push_back(orb);
        while (std::next_permutation(orb.begin(), orb.end()));
        return out;
    };
    auto norm = [n](const Occupation& occ) {
        double p = 1.0;
        for (std::size_t l = 0; l < occ.extent(); ++l) p *= factorial(occ[l]);
        return std::sqrt(p / factorial(n));
    };
    double acc = 0.0;
    for (const auto& s : sequences(a))
        for (const auto& t : sequences(b)) {
            if (!std::equal(s.begin() + 2, s.end(), t.begin() + 2)) continue;
            acc += delta_matrix_element(s[0], s[1], t[0], t[1]);
        }
    return binomial(n, 2) * norm(a) * norm(b) * acc;
}

}  // namespace

TEST(Delta, Examples) {
    EXPECT_NEAR(delta_matrix_element(0, 0, 0, 0), 1.0 / (2 * kPi), 1e-15);
    EXPECT_NEAR(delta_matrix_element(1, 0, 1, 0), 1.0 / (4 * kPi), 1e-15);
    EXPECT_NEAR(delta_matrix_element(2, 0, 1, 1), 1.0 / (4 * std::sqrt(2.0) * kPi), 1e-15);
    EXPECT_EQ(delta_matrix_element(1, 0, 0, 0), 0.0);
}

TEST(Delta, MatchesBargmannOracleUpToEight) {
    for (int m1 = 0; m1 <= 8; ++m1)
        for (int m2 = 0; m1 + m2 <= 8; ++m2)
            for (int m3 = 0; m3 <= 8; ++m3)
                for (int m4 = 0; m3 + m4 <= 8; ++m4) {
                    const double v = delta_matrix_element(m1, m2, m3, m4) * 2 * kPi;
                    const double expected = squared_oracle(m1, m2, m3, m4);
                    ASSERT_NEAR(v * v, expected, 1e-13 * std::max(1.0, expected)) << m1 << m2 << m3 << m4;
                    ASSERT_GE(v, 0.0);
                }
}

TEST(Delta, LargeIndicesStayFinite) {
    const double v = delta_matrix_element(150, 50, 100, 100);
    EXPECT_TRUE(std::isfinite(v));
    EXPECT_GT(v, 0.0);
    EXPECT_THROW(delta_matrix_element(-1, 0, 0, -1), InputError);
}

TEST(Interaction, FourParticleCondensate) {
    auto op = assemble_interaction(enumerate_sector(4, 0));
    ASSERT_EQ(op.dim(), 1u);
    EXPECT_NEAR(op.at(0, 0), 3.0 / kPi, 1e-14);
}

TEST(Interaction, CondensateExpectation) {
    for (int n = 2; n <= 7; ++n) {
        auto op = assemble_interaction(enumerate_sector(n, 0));
        EXPECT_NEAR(op.at(0, 0), n * (n - 1) / (4 * kPi), 1e-12);
    }
}

TEST(Interaction, MatchesFirstQuantizedOracle) {
    for (int n = 2; n <= 4; ++n)
        for (int l = 0; l <= 7; ++l) {
            auto basis = enumerate_sector(n, l);
            auto op = assemble_interaction(basis);
            for (std::size_t i = 0; i < basis.size(); ++i)
                for (std::size_t j = 0; j < basis.size(); ++j)
                    ASSERT_NEAR(op.at(i, j), brute_force_element(basis.state_at(i), basis.state_at(j), n), 1e-12)
                        << n << " " << l << " " << i << " " << j;
        }
}

TEST(Interaction, TwoParticleRankOne) {
    for (int l = 0; l <= 10; ++l) {
        auto spec = full_interaction_spectrum(2, l);
        ASSERT_NEAR(spec.back(), 1.0 / (2 * kPi), 1e-12) << l;
        for (std::size_t i = 0; i + 1 < spec.size(); ++i) ASSERT_NEAR(spec[i], 0.0, 1e-12);
    }
}

TEST(Interaction, SymmetricAndPositive) {
    for (int n = 2; n <= 5; ++n)
        for (int l = 0; l <= 14; ++l) {
            auto op = assemble_interaction(enumerate_sector(n, l));
            if (op.dim() > 200) continue;
            for (const auto& t : op.entries()) ASSERT_LE(t.row, t.col);
            const auto dense = op.to_dense();
            for (std::size_t i = 0; i < op.dim(); ++i)
                for (std::size_t j = 0; j < op.dim(); ++j) ASSERT_EQ(dense[i * op.dim() + j], dense[j * op.dim() + i]);
            auto spec = full_interaction_spectrum(n, l);
            ASSERT_GE(spec.front(), -1e-10);
        }
}

TEST(Interaction, LaughlinZeroMode) {
    auto spec = full_interaction_spectrum(3, 6);
    EXPECT_NEAR(spec.front(), 0.0, 1e-12);
}

TEST(Interaction, CsrMatchesDense) {
    auto op = assemble_interaction(enumerate_sector(4, 9));
    std::vector<double> x(op.dim()), y(op.dim());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(1.0 + i);
    op.csr().multiply(x, y);
    const auto dense = op.to_dense();
    for (std::size_t i = 0; i < op.dim(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < op.dim(); ++j) acc += dense[i * op.dim() + j] * x[j];
        EXPECT_NEAR(y[i], acc, 1e-14);
    }
}

TEST(Interaction, ParallelAssemblyIsIdentical) {
    auto basis = enumerate_sector(5, 16);
    AssemblyOptions opts;
    opts.workers = 3;
    EXPECT_EQ(assemble_interaction(basis), assemble_interaction(basis, opts));
}

TEST(Interaction, DimensionLimit) {
    AssemblyOptions opts;
    opts.max_dim = 10;
    EXPECT_THROW(assemble_interaction(enumerate_sector(5, 20), opts), ResourceError);
}

TEST(Hamiltonian, NoInteractionNoQuartic) {
    auto basis = enumerate_sector(3, 5);
    auto h = assemble_hamiltonian(basis, {0.7, 0.0, 0.0});
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) EXPECT_DOUBLE_EQ(h.at(i, j), i == j ? 0.7 * 5 : 0.0);
}

TEST(Hamiltonian, DiagonalArithmetic) {
    auto basis = enumerate_sector(2, 2);
    const HamiltonianParams p{0.3, 0.0, 0.2};
    auto h = assemble_hamiltonian(basis, p);
    const auto pos = basis.index_of(Occupation{1, 0, 1});
    EXPECT_NEAR(h.at(pos, pos), (0.3 + 0.6) * 2 + 0.2 * 4, 1e-15);
}

TEST(Hamiltonian, ShiftOfInteractionSpectrum) {
    auto basis = enumerate_sector(3, 6);
    auto interaction = assemble_interaction(basis);
    auto h = assemble_hamiltonian(basis, {0.4, 2.0, 0.0});
    const auto dense_i = interaction.to_dense();
    const auto dense_h = h.to_dense();
    for (std::size_t i = 0; i < dense_h.size(); ++i) {
        const bool diag = i % (basis.size() + 1) == 0;
        EXPECT_NEAR(dense_h[i], 2.0 * dense_i[i] + (diag ? 0.4 * 6 : 0.0), 1e-14);
    }
}

TEST(Hamiltonian, RejectsInvalidParams) {
    auto basis = enumerate_sector(2, 2);
    EXPECT_THROW(assemble_hamiltonian(basis, {-1.0, 1.0, 0.0}), InputError);
    EXPECT_THROW(assemble_hamiltonian(basis, {1.0, -1.0, 0.0}), InputError);
    EXPECT_NO_THROW(assemble_hamiltonian(basis, {-1.0, 1.0, 0.1}));
}

TEST(Cache, RoundTripIsBitIdentical) {
    const auto dir = std::filesystem::temp_directory_path() / "lllab_cache_test";
    std::filesystem::remove_all(dir);
    auto basis = enumerate_sector(4, 12);
    auto first = cached_interaction(basis, dir);
    ASSERT_TRUE(std::filesystem::exists(dir / "interaction_N4_L12.bin"));
    auto again = cached_interaction(basis, dir);
    EXPECT_EQ(first, again);
    EXPECT_EQ(first, assemble_interaction(basis));

    std::ifstream in(dir / "interaction_N4_L12.bin", std::ios::binary);
    unsigned char magic[4];
    in.read(reinterpret_cast<char*>(magic), 4);
    EXPECT_EQ(std::string(magic, magic + 4), "LLLO");
    const auto expected_size = 4 + 4 + 4 + 4 + 8 + 8 + first.entries().size() * 16;
    EXPECT_EQ(std::filesystem::file_size(dir / "interaction_N4_L12.bin"), expected_size);
    std::filesystem::remove_all(dir);
}
