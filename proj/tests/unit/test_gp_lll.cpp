#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "lll/errors.hpp"
#include "lll/gp_lll.hpp"

using namespace lll;

namespace {

constexpr double kPi = std::numbers::pi;

GPState random_state(int l_max, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    GPState s;
    for (int l = 0; l <= l_max; ++l) s.coeffs.emplace_back(normal(rng), normal(rng));
    s.normalize();
    return s;
}

// Gauss-Laguerre nodes and weights (alpha = 0) from the Jacobi matrix.
std::pair<std::vector<double>, std::vector<double>> gauss_laguerre(int n) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        j(i, i) = 2 * i + 1;
        if (i + 1 < n) j(i, i + 1) = j(i + 1, i) = i + 1;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
    std::vector<double> x(n), w(n);
    for (int i = 0; i < n; ++i) {
        x[i] = es.eigenvalues()[i];
        w[i] = es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
    }
    return {x, w};
}

// int |phi|^4 exp(-2|z|^2) d^2z: t = 2 r^2 turns the radial part into (1/4) int f e^-t dt.
double quadrature_quartic(const GPState& s) {
    auto [x, w] = gauss_laguerre(40);
    const int angles = 8 * (s.l_max() + 1);
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = std::sqrt(x[i] / 2);
        double ring = 0.0;
        for (int a = 0; a < angles; ++a) {
            const Complex z = std::polar(r, 2 * kPi * a / angles);
            Complex phi = 0.0;
            for (int l = 0; l <= s.l_max(); ++l)
                phi += s.coeffs[static_cast<std::size_t>(l)] * std::pow(z, l) / std::sqrt(kPi * std::tgamma(l + 1.0));
            ring += std::norm(phi) * std::norm(phi);
        }
        acc += w[i] * ring * (2 * kPi / angles) / 4;
    }
    return acc;
}

double tf_mass(double lambda, double omega, double coupling) {
    // int (lambda - omega r^2)_+ / (Ng e) 2 pi r dr by Simpson on [0, sqrt(lambda/omega)]
    const double radius = std::sqrt(lambda / omega);
    const int n = 2000;
    const double h = radius / n;
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double r = i * h;
        const double f = std::max(0.0, lambda - omega * r * r) / (coupling * kAbrikosovConstant) * 2 * kPi * r;
        acc += f * (i == 0 || i == n ? 1 : (i % 2 ? 4 : 2));
    }
    return acc * h / 3;
}

}  // namespace

TEST(GPEnergy, PureStates) {
    EXPECT_NEAR(gp_energy(GPState::pure(0, 4), 0.3, 2.0), 2.0 / (4 * kPi), 1e-15);
    EXPECT_NEAR(gp_energy(GPState::pure(1, 4), 0.3, 2.0), 0.3 + 2.0 / (8 * kPi), 1e-15);
    EXPECT_NEAR(quartic_form(GPState::pure(0, 0)), 1 / (2 * kPi), 1e-15);
}

TEST(GPEnergy, RejectsUnnormalized) {
    GPState s = GPState::pure(0, 3);
    s.coeffs[0] = 2.0;
    EXPECT_THROW(gp_energy(s, 1.0, 1.0), InputError);
}

TEST(GPEnergy, QuarticMatchesQuadrature) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto s = random_state(6, seed);
        EXPECT_NEAR(quartic_form(s), quadrature_quartic(s), 1e-8);
        EXPECT_GE(quartic_form(s), 0.0);
    }
}

TEST(GPEnergy, PhaseInvariance) {
    auto s = random_state(8, 3);
    auto t = s;
    for (auto& c : t.coeffs) c *= std::polar(1.0, 0.7);
    EXPECT_NEAR(gp_energy(s, 0.4, 3.0), gp_energy(t, 0.4, 3.0), 1e-15);
}

TEST(GPEnergy, GradientMatchesFiniteDifferences) {
    const double omega = 0.3, coupling = 5.0, h = 1e-6;
    for (std::uint64_t seed = 10; seed < 15; ++seed) {
        auto s = random_state(7, seed);
        auto g = gp_gradient(s, omega, coupling);
        // Unconstrained energy: omega sum l |c|^2 + (Ng/2) Q(c), differentiated off the sphere.
        auto raw = [&](const GPState& x) {
            double kin = 0.0;
            for (int l = 0; l <= x.l_max(); ++l) kin += l * std::norm(x.coeffs[static_cast<std::size_t>(l)]);
            return omega * kin + 0.5 * coupling * quartic_form(x);
        };
        for (int l = 0; l <= s.l_max(); ++l) {
            for (int part = 0; part < 2; ++part) {
                auto plus = s, minus = s;
                const Complex d = part == 0 ? Complex(h, 0) : Complex(0, h);
                plus.coeffs[static_cast<std::size_t>(l)] += d;
                minus.coeffs[static_cast<std::size_t>(l)] -= d;
                const double fd = (raw(plus) - raw(minus)) / (2 * h);
                const double an = part == 0 ? g[static_cast<std::size_t>(l)].real() : g[static_cast<std::size_t>(l)].imag();
                EXPECT_NEAR(an, fd, 1e-6 * std::max(1.0, std::abs(fd)));
            }
        }
    }
}

TEST(Minimize, WeakCouplingCondensate) {
    GPOptions o;
    o.l_max = 8;
    o.restarts = 4;
    auto r = minimize_gp(1.0, 0.1, o);
    EXPECT_TRUE(r.converged);
    EXPECT_GT(std::norm(r.state.coeffs[0]), 0.999);
    // brute force over the l <= 2 subspace on a grid of real amplitudes
    double best = 1e9;
    for (int i = 0; i <= 200; ++i)
        for (int j = 0; j <= 200; ++j) {
            const double a = std::cos(kPi / 2 * i / 200), b = std::sin(kPi / 2 * i / 200);
            GPState s;
            s.coeffs = {a, b * std::cos(kPi / 2 * j / 200), b * std::sin(kPi / 2 * j / 200)};
            best = std::min(best, gp_energy(s, 1.0, 0.1));
        }
    EXPECT_LE(r.energy, best + 1e-12);
    EXPECT_NEAR(r.energy, 0.1 / (4 * kPi), 1e-3);
}

TEST(Minimize, DescentAndNorm) {
    GPOptions o;
    o.l_max = 24;
    o.restarts = 6;
    o.workers = 2;
    auto r = minimize_gp(0.1, 20.0, o);
    EXPECT_NEAR(r.state.norm(), 1.0, 1e-10);
    for (std::size_t i = 1; i < r.best_so_far.size(); ++i) EXPECT_LE(r.best_so_far[i], r.best_so_far[i - 1]);
    EXPECT_EQ(r.best_so_far.size(), 7u);
    o.workers = 1;
    auto again = minimize_gp(0.1, 20.0, o);
    EXPECT_EQ(again.energy, r.energy);
}

TEST(Minimize, ApproachesThomasFermi) {
    GPOptions o;
    o.l_max = 48;
    o.restarts = 8;
    const double omega = 0.02, coupling = 30.0;
    auto r = minimize_gp(omega, coupling, o);
    const double tf = tf_profile_and_energy(omega, coupling).second;
    EXPECT_NEAR(r.energy / tf, 1.0, 0.1);
}

TEST(ThomasFermi, NormalizationRootFind) {
    for (double omega : {0.01, 0.1, 1.0})
        for (double coupling : {1.0, 10.0, 100.0}) {
            auto [p, e] = tf_profile_and_energy(omega, coupling);
            EXPECT_NEAR(tf_mass(p.lambda, omega, coupling), 1.0, 1e-8);
            double lo = 1e-9, hi = 1e3;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                (tf_mass(mid, omega, coupling) < 1.0 ? lo : hi) = mid;
            }
            EXPECT_NEAR(p.lambda, 0.5 * (lo + hi), 1e-8 * p.lambda);
            EXPECT_NEAR(e, 2 * p.lambda / 3 - omega, 1e-15);
        }
    EXPECT_THROW(tf_profile_and_energy(0.0, 1.0), InputError);
}

TEST(Zeros, PureFirstOrbital) {
    auto z = vortex_zeros(GPState::pure(1, 1), 1.0);
    ASSERT_EQ(z.roots.size(), 1u);
    EXPECT_EQ(std::abs(z.roots[0]), 0.0);
    EXPECT_EQ(z.bulk_count, 1u);
}

TEST(Zeros, SmallQuadraticTerm) {
    const double eps = 1e-3;
    GPState s;
    s.coeffs = {1.0, 0.0, eps};
    s.normalize();
    auto z = vortex_zeros(s, 2.0);
    ASSERT_EQ(z.roots.size(), 2u);
    // 1/sqrt(pi) + eps z^2 / sqrt(2 pi) = 0  =>  |z|^2 = sqrt(2) / eps
    for (const auto& r : z.roots) EXPECT_NEAR(std::norm(r), std::sqrt(2.0) / eps, 1e-6 * std::sqrt(2.0) / eps);
    EXPECT_EQ(z.bulk_count, 0u);
}

TEST(Zeros, RootsAreZeros) {
    auto s = random_state(12, 77);
    auto z = vortex_zeros(s);
    ASSERT_EQ(z.roots.size(), 12u);
    for (const auto& root : z.roots) {
        Complex p = 0.0;
        double scale = 0.0;
        for (int l = 0; l <= 12; ++l) {
            const Complex term = s.coeffs[static_cast<std::size_t>(l)] * std::pow(root, l) / std::sqrt(std::tgamma(l + 1.0));
            p += term;
            scale += std::abs(term);
        }
        EXPECT_LT(std::abs(p), 1e-9 * scale);
    }
}

TEST(Zeros, BulkCountGrowsAsOmegaShrinks) {
    GPOptions o;
    o.l_max = 48;
    o.restarts = 8;
    std::vector<std::size_t> counts;
    for (double omega : {0.2, 0.05, 0.02}) {
        const double coupling = 30.0;
        auto r = minimize_gp(omega, coupling, o);
        const double radius = tf_profile_and_energy(omega, coupling).first.radius();
        counts.push_back(vortex_zeros(r.state, radius).bulk_count);
    }
    EXPECT_LE(counts[0], counts[1]);
    EXPECT_LE(counts[1], counts[2]);
    EXPECT_GT(counts[2], counts[0]);
}

TEST(Compare, NoInteraction) {
    auto c = compare_gp_exact(3, 0.5, 0.0);
    EXPECT_NEAR(c.e_gp, 0.0, 1e-12);
    EXPECT_NEAR(c.e_exact, 0.0, 1e-12);
    EXPECT_EQ(c.L_star, 0);
}

TEST(Compare, UpperBound) {
    for (double omega : {0.01, 0.05, 0.2, 1.0}) {
        auto c = compare_gp_exact(4, omega, 1.0);
        EXPECT_GE(c.e_gp, c.e_exact - 1e-8) << omega;
    }
}
