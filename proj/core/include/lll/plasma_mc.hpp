#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace lll {

using Point = std::complex<double>;

/// N charges in scaled coordinates for the plasma of |prod z_j^m prod (z_i - z_j)^2|^2.
struct PlasmaConfig {
    int particles = 0;
    int m = 0;
    std::vector<Point> positions;
};

/// H = sum_j (|z_j|^2 - (2m/N) log|z_j|) - (4/N) sum_{i<j} log|z_i - z_j|.
/// +infinity for coincident points or a point at the origin when m > 0.
double plasma_energy(const PlasmaConfig& config);

/// Energy change when particle `index` moves to `target`; +infinity for forbidden targets.
double plasma_energy_change(const PlasmaConfig& config, std::size_t index, Point target);

/// Metropolis acceptance for an energy change at temperature 1/N: min(1, exp(-N dH)) > u.
bool metropolis_accept(double energy_change, int particles, std::mt19937_64& rng);

struct MetropolisOptions {
    int particles = 64;
    int m = 0;
    std::size_t sweeps = 20000;
    std::size_t burn_in = 2000;
    /// Gaussian proposal width; <= 0 selects 0.6 / sqrt(N).
    double step_scale = 0.0;
    /// Adjust step_scale during burn-in toward target_acceptance.
    bool auto_tune = true;
    double target_acceptance = 0.35;
    /// Keep every stride-th sweep after burn-in.
    std::size_t stride = 1;
    std::uint64_t seed = 1;
    /// Full energy recomputation interval, in sweeps.
    std::size_t recompute_interval = 1000;
};

struct SampleStream {
    int particles = 0;
    int m = 0;
    std::uint64_t seed = 0;
    std::size_t sweeps = 0;
    std::size_t burn_in = 0;
    std::size_t stride = 1;
    double step_scale = 0.0;
    /// Accepted fraction of production moves.
    double acceptance_rate = 0.0;
    /// Largest |incremental - recomputed| energy seen at the periodic checks.
    double max_energy_drift = 0.0;
    std::size_t configurations = 0;
    /// Retained configurations, particles contiguous per configuration.
    std::vector<Point> positions;
};

SampleStream run_metropolis(const MetropolisOptions& options);

/// Independent chains with seeds derived from options.seed and the chain index,
/// run on up to `workers` threads and returned in chain order.
std::vector<SampleStream> run_chains(const MetropolisOptions& options, std::size_t chains, unsigned workers);

/// Concatenates chains (same N and m) into one stream.
SampleStream merge_streams(const std::vector<SampleStream>& chains);

struct RadialBins {
    std::size_t count = 100;
    /// <= 0 selects sqrt(2 + m/N) + 1.
    double r_max = 0.0;
};

/// Histogram estimate of the one-particle density rho(r), normalized so that
/// sum rho_i * pi (r_{i+1}^2 - r_i^2) = 1 - overflow_fraction.
struct RadialDensity {
    std::vector<double> edges;
    std::vector<double> values;
    /// Batch-means standard error per bin.
    std::vector<double> errors;
    double overflow_fraction = 0.0;
    std::size_t samples = 0;

    double center(std::size_t bin) const { return 0.5 * (edges[bin] + edges[bin + 1]); }
    double shell_area(std::size_t bin) const;
    double total_mass() const;
};

inline constexpr std::size_t kDensityBatches = 32;

RadialDensity radial_density(const SampleStream& samples, const RadialBins& bins = {},
                             std::size_t batches = kDensityBatches);

/// All particle radii of a stream, in sample order.
std::vector<double> sample_radii(const SampleStream& samples);

}  // namespace lll
