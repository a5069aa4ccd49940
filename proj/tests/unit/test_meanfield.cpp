#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "lll/errors.hpp"
#include "lll/meanfield.hpp"

using namespace lll;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Grid, Integrates) {
    RadialGrid g(3.0, 3001);
    std::vector<double> f(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) f[i] = std::exp(-g.r(i) * g.r(i));
    EXPECT_NEAR(g.integrate(f), kPi * (1 - std::exp(-9.0)), 1e-5);
}

TEST(LogPotential, AngleAverageIdentity) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.1, 3.0);
    for (int t = 0; t < 10; ++t) {
        const double r = u(rng), s = u(rng);
        const int k = 20000;
        double acc = 0.0;
        for (int j = 0; j < k; ++j) acc += std::log(std::abs(r - std::polar(s, 2 * kPi * (j + 0.5) / k)));
        EXPECT_NEAR(acc / k, std::log(std::max(r, s)), 1e-6) << r << " " << s;
    }
}

TEST(LogPotential, UniformDiskClosedForm) {
    // psi(r) for the uniform unit-mass disk of radius R: log R + (r^2 - R^2)/(2 R^2) inside.
    RadialGrid g(2.0, 20001);
    const double radius = 1.5;
    std::vector<double> rho(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) rho[i] = g.r(i) <= radius ? 1 / (kPi * radius * radius) : 0.0;
    const double mass = g.integrate(rho);
    for (auto& v : rho) v /= mass;
    auto psi = log_potential(g, rho);
    for (std::size_t i = 1000; i < g.size(); i += 2500) {
        const double r = g.r(i);
        const double expected = r <= radius ? std::log(radius) + (r * r - radius * radius) / (2 * radius * radius) : std::log(r);
        EXPECT_NEAR(psi[i], expected, 2e-3) << r;
    }
}

TEST(Annulus, Profiles) {
    for (int m : {0, 5, 128}) {
        auto p = annulus_profile(64, m);
        EXPECT_NEAR(p.inner_radius, std::sqrt(m / 64.0), 1e-15);
        EXPECT_NEAR(p.outer_radius, std::sqrt(2 + m / 64.0), 1e-15);
        EXPECT_NEAR(kPi * (p.outer_radius * p.outer_radius - p.inner_radius * p.inner_radius) / (2 * kPi), 1.0, 1e-14);
        auto g = RadialGrid::for_plasma(64, m);
        EXPECT_NEAR(g.integrate(p.rho), 1.0, 1e-12);
        double peak = 0.0;
        for (double v : p.rho) peak = std::max(peak, v);
        EXPECT_NEAR(peak, 1 / (2 * kPi), 0.02 / (2 * kPi));
    }
}

TEST(Thermal, PeakAndNormalization) {
    auto g = RadialGrid::for_plasma(16, 2048);
    auto p = thermal_profile(16, 2048, g);
    EXPECT_NEAR(g.integrate(p.rho), 1.0, 1e-8);
    std::size_t arg = 0;
    for (std::size_t i = 0; i < p.rho.size(); ++i)
        if (p.rho[i] > p.rho[arg]) arg = i;
    EXPECT_NEAR(g.r(arg), std::sqrt(2048 / 16.0), g.spacing());
    EXPECT_THROW(thermal_profile(16, 0, g), InputError);
}

TEST(Thermal, PeakHeightScaling) {
    // For m >> N^2 the peak value behaves like N / sqrt(m) up to a constant.
    const int n = 8;
    std::vector<double> ratio;
    for (int m : {1024, 4096, 16384}) {
        const double centre = std::sqrt(static_cast<double>(m) / n);
        RadialGrid g(centre + 3.0, 60001);
        auto p = thermal_profile(n, m, g);
        double peak = 0.0;
        for (double v : p.rho) peak = std::max(peak, v);
        ratio.push_back(peak * std::sqrt(static_cast<double>(m)) / n);
    }
    EXPECT_NEAR(ratio[1] / ratio[0], 1.0, 0.01);
    EXPECT_NEAR(ratio[2] / ratio[1], 1.0, 0.01);
}

TEST(Minimize, FlatDisk) {
    auto g = RadialGrid::for_plasma(64, 0);
    MeanFieldOptions o;
    o.record_history = true;
    auto r = minimize_mf(64, 0, g, o);
    const auto& p = r.profile;
    EXPECT_NEAR(g.integrate(p.rho), 1.0, 1e-8);
    for (double v : p.rho) EXPECT_GE(v, 0.0);
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g.r(i) < 1.0) EXPECT_NEAR(p.rho[i], 1 / (2 * kPi), 0.02 / (2 * kPi)) << g.r(i);
    // support edge: density at half the plateau value
    std::size_t edge = 0;
    while (p.rho[edge] > 0.5 / (2 * kPi)) ++edge;
    EXPECT_NEAR(g.r(edge), std::sqrt(2.0), 0.1);
    for (std::size_t i = 1; i < r.energy_history.size(); ++i)
        ASSERT_LE(r.energy_history[i], r.energy_history[i - 1] + 1e-12);
    EXPECT_FALSE(r.resolution_warning);
    EXPECT_LE(p.energy.total(), annulus_profile(64, 0, g).energy.total() + 1e-9);
}

TEST(Minimize, BeatsClosedFormProfiles) {
    for (int m : {64, 128}) {
        auto g = RadialGrid::for_plasma(64, m);
        auto r = minimize_mf(64, m, g);
        EXPECT_LE(r.profile.energy.total(), annulus_profile(64, m, g).energy.total() + 1e-9);
        EXPECT_LE(r.profile.energy.total(), thermal_profile(64, m, g).energy.total() + 1e-9);
    }
}

TEST(Minimize, ThermalLimit) {
    // The ring sits outside sqrt(m/N) by O(N / sqrt(m)) ring widths, so the Gaussian law is reached only for m >> N^2.
    auto distance = [](int n, int m) {
        auto g = RadialGrid::for_plasma(n, m);
        return l1_distance(g, minimize_mf(n, m, g).profile.rho, thermal_profile(n, m, g).rho);
    };
    const double far = distance(4, 8192);
    EXPECT_LE(far, 0.05);
    EXPECT_NEAR(distance(4, 2048) / far, 2.0, 0.3);
    EXPECT_GT(distance(16, 2048), 0.2);
}

TEST(Minimize, ReportsNonConvergence) {
    MeanFieldOptions o;
    o.max_iterations = 3;
    EXPECT_THROW(minimize_mf(32, 0, RadialGrid::for_plasma(32, 0), o), ConvergenceError);
}

TEST(Minimize, CoarseGridWarns) {
    RadialGrid coarse(3.0, 20);
    MeanFieldOptions o;
    o.tolerance = 1e-6;
    EXPECT_TRUE(minimize_mf(64, 0, coarse, o).resolution_warning);
}

TEST(Regime, Classification) {
    EXPECT_EQ(classify_regime({1.0, 0.5, 0.001}), ProfileRegime::annulus);
    EXPECT_EQ(classify_regime({1.0, 0.05, 0.5}), ProfileRegime::thermal);
    EXPECT_EQ(classify_regime({1.0, 0.5, 0.5}), ProfileRegime::numeric);
    EXPECT_EQ(to_string(ProfileRegime::thermal), "thermal");
}
