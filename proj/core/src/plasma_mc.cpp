#include "lll/plasma_mc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lll/errors.hpp"
#include "lll/parallel.hpp"

namespace lll {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// One-body part of H for a single particle.
double one_body(Point z, int m, int particles) {
    const double r2 = std::norm(z);
    if (m > 0) {
        if (r2 == 0.0) return kInf;
        return r2 - (static_cast<double>(m) / particles) * std::log(r2);
    }
    return r2;
}

// sum_{j != skip} log|z - z_j|^2, -inf on coincidence.
double log_distance_sum(const std::vector<Point>& positions, std::size_t skip, Point z) {
    double total = 0.0;
    for (std::size_t j = 0; j < positions.size(); ++j) {
        if (j == skip) continue;
        const double d2 = std::norm(z - positions[j]);
        if (d2 == 0.0) return -kInf;
        total += std::log(d2);
    }
    return total;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace

double plasma_energy(const PlasmaConfig& config) {
    const int n = config.particles;
    if (n < 1 || static_cast<int>(config.positions.size()) != n) throw InputError("plasma_energy: bad configuration");
    double h = 0.0;
    for (const auto& z : config.positions) h += one_body(z, config.m, n);
    double pair = 0.0;
    for (std::size_t i = 0; i < config.positions.size(); ++i) {
        for (std::size_t j = i + 1; j < config.positions.size(); ++j) {
            const double d2 = std::norm(config.positions[i] - config.positions[j]);
            if (d2 == 0.0) return kInf;
            pair += std::log(d2);
        }
    }
    // -(4/N) sum log|z_i - z_j| = -(2/N) sum log|z_i - z_j|^2
    return h - (2.0 / n) * pair;
}

double plasma_energy_change(const PlasmaConfig& config, std::size_t index, Point target) {
    const int n = config.particles;
    const Point current = config.positions[index];
    const double new_one = one_body(target, config.m, n);
    if (new_one == kInf) return kInf;
    const double new_logs = log_distance_sum(config.positions, index, target);
    if (new_logs == -kInf) return kInf;
    const double old_logs = log_distance_sum(config.positions, index, current);
    return (new_one - one_body(current, config.m, n)) - (2.0 / n) * (new_logs - old_logs);
}

bool metropolis_accept(double energy_change, int particles, std::mt19937_64& rng) {
    if (energy_change == kInf) return false;
    const double exponent = -particles * energy_change;
    if (exponent >= 0.0) return true;
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    return uniform(rng) < std::exp(exponent);
}

SampleStream run_metropolis(const MetropolisOptions& options) {
    const int n = options.particles;
    if (n < 1) throw InputError("run_metropolis: N must be >= 1");
    if (options.m < 0) throw InputError("run_metropolis: m must be >= 0");
    if (options.sweeps <= options.burn_in) throw InputError("run_metropolis: sweeps must exceed burn_in");
    if (options.stride == 0) throw InputError("run_metropolis: stride must be >= 1");

    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);

    PlasmaConfig config{n, options.m, {}};
    config.positions.reserve(static_cast<std::size_t>(n));
    // Uniform on the disk of radius sqrt(2 + m/N).
    const double radius = std::sqrt(2.0 + static_cast<double>(options.m) / n);
    for (int i = 0; i < n; ++i) {
        const double r = radius * std::sqrt(uniform(rng));
        const double theta = 2.0 * std::numbers::pi * uniform(rng);
        config.positions.push_back(std::polar(r, theta));
    }

    SampleStream out;
    out.particles = n;
    out.m = options.m;
    out.seed = options.seed;
    out.sweeps = options.sweeps;
    out.burn_in = options.burn_in;
    out.stride = options.stride;

    double step = options.step_scale > 0.0 ? options.step_scale : 0.6 / std::sqrt(static_cast<double>(n));
    double energy = plasma_energy(config);
    std::size_t accepted = 0;
    std::size_t attempted = 0;
    std::size_t window_accepted = 0;
    std::size_t window_attempted = 0;

    const std::size_t kept = (options.sweeps - options.burn_in) / options.stride;
    out.positions.reserve(kept * static_cast<std::size_t>(n));

    for (std::size_t sweep = 0; sweep < options.sweeps; ++sweep) {
        for (int move = 0; move < n; ++move) {
            const auto index = static_cast<std::size_t>(move);
            const Point target = config.positions[index] + Point(step * normal(rng), step * normal(rng));
            const double delta = plasma_energy_change(config, index, target);
            const bool accept = metropolis_accept(delta, n, rng);
            if (accept) {
                config.positions[index] = target;
                energy += delta;
            }
            if (sweep >= options.burn_in) {
                ++attempted;
                accepted += accept;
            } else {
                ++window_attempted;
                window_accepted += accept;
            }
        }
        if (sweep < options.burn_in && options.auto_tune && window_attempted >= 50u * static_cast<std::size_t>(n)) {
            const double rate = static_cast<double>(window_accepted) / static_cast<double>(window_attempted);
            step *= std::exp(rate - options.target_acceptance);
            window_accepted = window_attempted = 0;
        }
        if (options.recompute_interval > 0 && (sweep + 1) % options.recompute_interval == 0) {
            const double fresh = plasma_energy(config);
            out.max_energy_drift = std::max(out.max_energy_drift, std::abs(fresh - energy));
            energy = fresh;
        }
        if (sweep >= options.burn_in && (sweep - options.burn_in) % options.stride == options.stride - 1) {
            out.positions.insert(out.positions.end(), config.positions.begin(), config.positions.end());
            ++out.configurations;
        }
    }
    out.step_scale = step;
    out.acceptance_rate = attempted > 0 ? static_cast<double>(accepted) / static_cast<double>(attempted) : 0.0;
    return out;
}

std::vector<SampleStream> run_chains(const MetropolisOptions& options, std::size_t chains, unsigned workers) {
    std::vector<SampleStream> out(chains);
    parallel_for(chains, workers, [&](std::size_t c) {
        auto chain_options = options;
        chain_options.seed = c == 0 ? options.seed : splitmix64(options.seed ^ (0x632be59bd9b4e019ull * c));
        out[c] = run_metropolis(chain_options);
    });
    return out;
}

SampleStream merge_streams(const std::vector<SampleStream>& chains) {
    if (chains.empty()) throw InputError("merge_streams: no chains");
    SampleStream merged = chains.front();
    double accepted_weight = merged.acceptance_rate * static_cast<double>(merged.configurations);
    for (std::size_t c = 1; c < chains.size(); ++c) {
        const auto& s = chains[c];
        if (s.particles != merged.particles || s.m != merged.m) throw InputError("merge_streams: incompatible chains");
        merged.positions.insert(merged.positions.end(), s.positions.begin(), s.positions.end());
        merged.configurations += s.configurations;
        merged.max_energy_drift = std::max(merged.max_energy_drift, s.max_energy_drift);
        accepted_weight += s.acceptance_rate * static_cast<double>(s.configurations);
    }
    if (merged.configurations > 0) merged.acceptance_rate = accepted_weight / static_cast<double>(merged.configurations);
    return merged;
}

double RadialDensity::shell_area(std::size_t bin) const {
    return std::numbers::pi * (edges[bin + 1] * edges[bin + 1] - edges[bin] * edges[bin]);
}

double RadialDensity::total_mass() const {
    double mass = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) mass += values[i] * shell_area(i);
    return mass;
}

std::vector<double> sample_radii(const SampleStream& samples) {
    std::vector<double> radii;
    radii.reserve(samples.positions.size());
    for (const auto& z : samples.positions) radii.push_back(std::abs(z));
    return radii;
}

RadialDensity radial_density(const SampleStream& samples, const RadialBins& bins, std::size_t batches) {
    if (samples.positions.empty()) throw InputError("radial_density: empty sample stream");
    if (bins.count == 0) throw InputError("radial_density: need at least one bin");
    const double r_max = bins.r_max > 0.0
                             ? bins.r_max
                             : std::sqrt(2.0 + static_cast<double>(samples.m) / std::max(samples.particles, 1)) + 1.0;
    RadialDensity out;
    out.samples = samples.positions.size();
    out.edges.resize(bins.count + 1);
    for (std::size_t i = 0; i <= bins.count; ++i) out.edges[i] = r_max * static_cast<double>(i) / bins.count;

    const std::size_t per_config = std::max(samples.particles, 1);
    const std::size_t configs = samples.positions.size() / per_config;
    batches = std::max<std::size_t>(1, std::min(batches, configs));
    std::vector<std::vector<double>> batch_counts(batches, std::vector<double>(bins.count, 0.0));
    std::vector<double> batch_totals(batches, 0.0);
    std::size_t overflow = 0;
    for (std::size_t s = 0; s < samples.positions.size(); ++s) {
        const std::size_t batch = std::min(batches - 1, (s / per_config) * batches / std::max<std::size_t>(configs, 1));
        batch_totals[batch] += 1.0;
        const double r = std::abs(samples.positions[s]);
        if (r >= r_max) {
            ++overflow;
            continue;
        }
        const auto bin = std::min(bins.count - 1, static_cast<std::size_t>(r / r_max * bins.count));
        batch_counts[batch][bin] += 1.0;
    }
    const double total = static_cast<double>(samples.positions.size());
    out.overflow_fraction = static_cast<double>(overflow) / total;
    out.values.assign(bins.count, 0.0);
    out.errors.assign(bins.count, 0.0);
    for (std::size_t i = 0; i < bins.count; ++i) {
        const double area = out.shell_area(i);
        double count = 0.0;
        for (std::size_t b = 0; b < batches; ++b) count += batch_counts[b][i];
        out.values[i] = count / (total * area);
        if (batches > 1) {
            double var = 0.0;
            for (std::size_t b = 0; b < batches; ++b) {
                const double v = batch_counts[b][i] / (batch_totals[b] * area) - out.values[i];
                var += v * v;
            }
            out.errors[i] = std::sqrt(var / static_cast<double>(batches - 1) / static_cast<double>(batches));
        }
    }
    return out;
}

}  // namespace lll
