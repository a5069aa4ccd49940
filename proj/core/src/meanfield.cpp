#include "lll/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "lll/errors.hpp"

namespace lll {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEnergyNoise = 1e-13;

void check_args(int particles, int m) {
    if (particles < 1) throw InputError("mean field: N must be >= 1");
    if (m < 0) throw InputError("mean field: m must be >= 0");
}

// log sum_i w_i exp(x_i), ignoring -inf entries.
double log_mass(const RadialGrid& grid, const std::vector<double>& log_rho) {
    double top = -kInf;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (grid.weights()[i] > 0.0) top = std::max(top, log_rho[i]);
    if (top == -kInf) throw InputError("mean field: density vanishes on the grid");
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (grid.weights()[i] > 0.0 && log_rho[i] > -kInf) acc += grid.weights()[i] * std::exp(log_rho[i] - top);
    return top + std::log(acc);
}

std::vector<double> exp_all(const std::vector<double>& x) {
    std::vector<double> out(x.size());
    std::transform(x.begin(), x.end(), out.begin(), [](double v) { return std::exp(v); });
    return out;
}

MeanFieldProfile make_profile(int particles, int m, const RadialGrid& grid, std::vector<double> rho) {
    MeanFieldProfile p;
    p.particles = particles;
    p.m = m;
    p.r = grid.radii();
    p.rho = std::move(rho);
    p.energy = mean_field_energy(particles, m, grid, p.rho);
    return p;
}

// -N (W_m - 4 psi), the unnormalized log of the fixed-point density.
std::vector<double> fixed_point_exponent(int particles, int m, const RadialGrid& grid, const std::vector<double>& rho) {
    const auto psi = log_potential(grid, rho);
    std::vector<double> t(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double w = confining_potential(particles, m, grid.r(i));
        t[i] = w == kInf ? -kInf : -particles * (w - 4.0 * psi[i]);
    }
    return t;
}

}  // namespace

RadialGrid::RadialGrid(double r_max, std::size_t points) {
    if (points < 3 || !(r_max > 0.0)) throw InputError("RadialGrid: need r_max > 0 and at least 3 points");
    dr_ = r_max / static_cast<double>(points - 1);
    r_.resize(points);
    w_.resize(points);
    for (std::size_t i = 0; i < points; ++i) {
        r_[i] = dr_ * static_cast<double>(i);
        w_[i] = 2.0 * std::numbers::pi * r_[i] * dr_;
    }
    w_.back() *= 0.5;
}

RadialGrid RadialGrid::for_plasma(int particles, int m) {
    check_args(particles, m);
    const double root_n = std::sqrt(static_cast<double>(particles));
    const double r_max = std::sqrt(2.0 + static_cast<double>(m) / particles) + 5.0 / root_n;
    const double dr = 0.05 / root_n;
    return RadialGrid(r_max, static_cast<std::size_t>(std::ceil(r_max / dr)) + 1);
}

double RadialGrid::integrate(const std::vector<double>& f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < r_.size(); ++i)
        if (w_[i] > 0.0) acc += w_[i] * f[i];
    return acc;
}

std::string to_string(ProfileRegime regime) {
    switch (regime) {
        case ProfileRegime::annulus: return "annulus";
        case ProfileRegime::thermal: return "thermal";
        case ProfileRegime::numeric: return "numeric";
    }
    return "numeric";
}

double confining_potential(int particles, int m, double r) {
    if (m == 0) return r * r;
    if (r == 0.0) return kInf;
    return r * r - 2.0 * static_cast<double>(m) / particles * std::log(r);
}

std::vector<double> log_potential(const RadialGrid& grid, const std::vector<double>& rho) {
    const std::size_t n = grid.size();
    const auto& w = grid.weights();
    // outer[i] = sum_{j > i} w_j rho_j log r_j
    std::vector<double> outer(n, 0.0);
    for (std::size_t i = n - 1; i-- > 0;) {
        const std::size_t j = i + 1;
        outer[i] = outer[j] + (w[j] > 0.0 ? w[j] * rho[j] * std::log(grid.r(j)) : 0.0);
    }
    std::vector<double> psi(n);
    double inner_mass = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        inner_mass += w[i] * rho[i];
        psi[i] = (inner_mass > 0.0 ? inner_mass * std::log(grid.r(i)) : 0.0) + outer[i];
    }
    return psi;
}

MeanFieldEnergy mean_field_energy(int particles, int m, const RadialGrid& grid, const std::vector<double>& rho) {
    check_args(particles, m);
    if (rho.size() != grid.size()) throw InputError("mean_field_energy: density does not match grid");
    const auto psi = log_potential(grid, rho);
    MeanFieldEnergy e;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double w = grid.weights()[i];
        if (w == 0.0 || rho[i] == 0.0) continue;
        e.potential += w * rho[i] * confining_potential(particles, m, grid.r(i));
        e.interaction += -2.0 * w * rho[i] * psi[i];
        e.entropy += w * rho[i] * std::log(rho[i]) / particles;
    }
    return e;
}

ProfileRegime classify_regime(const MeanFieldEnergy& energy) {
    const double scale = std::abs(energy.total());
    if (std::abs(energy.entropy) < 0.01 * scale) return ProfileRegime::annulus;
    if (std::abs(energy.interaction) < 0.1 * scale) return ProfileRegime::thermal;
    return ProfileRegime::numeric;
}

MeanFieldProfile annulus_profile(int particles, int m, const RadialGrid& grid) {
    check_args(particles, m);
    const double inner = std::sqrt(static_cast<double>(m) / particles);
    const double outer = std::sqrt(2.0 + static_cast<double>(m) / particles);
    std::vector<double> rho(grid.size(), 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (grid.r(i) >= inner && grid.r(i) <= outer) rho[i] = 1.0 / (2.0 * std::numbers::pi);
    const double mass = grid.integrate(rho);
    for (auto& v : rho) v /= mass;
    auto p = make_profile(particles, m, grid, std::move(rho));
    p.regime = ProfileRegime::annulus;
    p.inner_radius = inner;
    p.outer_radius = outer;
    return p;
}

MeanFieldProfile annulus_profile(int particles, int m) {
    return annulus_profile(particles, m, RadialGrid::for_plasma(particles, m));
}

MeanFieldProfile thermal_profile(int particles, int m, const RadialGrid& grid) {
    check_args(particles, m);
    if (m < 1) throw InputError("thermal_profile: m must be >= 1");
    std::vector<double> log_rho(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double r = grid.r(i);
        log_rho[i] = r == 0.0 ? -kInf : 2.0 * m * std::log(r) - particles * r * r;
    }
    const double shift = log_mass(grid, log_rho);
    for (auto& v : log_rho) v -= shift;
    auto p = make_profile(particles, m, grid, exp_all(log_rho));
    p.regime = ProfileRegime::thermal;
    p.peak_radius = std::sqrt(static_cast<double>(m) / particles);
    return p;
}

MeanFieldResult minimize_mf(int particles, int m, const RadialGrid& grid, const MeanFieldOptions& options) {
    check_args(particles, m);
    MeanFieldResult result;
    const double root_n = std::sqrt(static_cast<double>(particles));
    result.resolution_warning = grid.spacing() > 0.25 / root_n ||
                                grid.r_max() < std::sqrt(2.0 + static_cast<double>(m) / particles) + 3.0 / root_n;

    // Start one fixed-point step away from the better of the closed-form profiles.
    auto start = annulus_profile(particles, m, grid);
    if (m >= 1) {
        auto thermal = thermal_profile(particles, m, grid);
        if (!(start.energy.total() <= thermal.energy.total())) start = std::move(thermal);
    }
    std::vector<double> log_rho = fixed_point_exponent(particles, m, grid, start.rho);
    {
        const double shift = log_mass(grid, log_rho);
        for (auto& v : log_rho) v -= shift;
    }
    std::vector<double> rho = exp_all(log_rho);
    double energy = mean_field_energy(particles, m, grid, rho).total();
    if (options.record_history) result.energy_history.push_back(energy);

    // Accepts a normalized candidate log-density if it does not raise the energy beyond rounding.
    auto try_step = [&](std::vector<double> trial) {
        const double shift = log_mass(grid, trial);
        for (auto& v : trial) v -= shift;
        auto trial_rho = exp_all(trial);
        const auto parts = mean_field_energy(particles, m, grid, trial_rho);
        const double noise = kEnergyNoise * (std::abs(parts.potential) + std::abs(parts.interaction) + std::abs(parts.entropy));
        if (!(parts.total() <= energy + noise)) return false;
        log_rho = std::move(trial);
        rho = std::move(trial_rho);
        energy = parts.total();
        return true;
    };

    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (log_rho[i] > -kInf) active.push_back(i);
    const auto n_active = static_cast<Eigen::Index>(active.size());
    // kernel[i][j] = log max(r_i, r_j) as used by log_potential
    Eigen::MatrixXd kernel(n_active, n_active);
    for (Eigen::Index a = 0; a < n_active; ++a)
        for (Eigen::Index b = 0; b < n_active; ++b) {
            const double r = std::max(grid.r(active[static_cast<std::size_t>(a)]), grid.r(active[static_cast<std::size_t>(b)]));
            kernel(a, b) = r > 0.0 ? std::log(r) : 0.0;
        }

    double damping = options.damping;
    double residual = kInf;
    double mu = 0.0;
    std::size_t iteration = 0;
    for (; iteration < options.max_iterations; ++iteration) {
        const auto target = fixed_point_exponent(particles, m, grid, rho);
        const double target_mass = log_mass(grid, target);
        mu = -target_mass / particles;
        double peak = 0.0;
        residual = 0.0;
        std::vector<double> next_rho(grid.size(), 0.0);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            next_rho[i] = target[i] == -kInf ? 0.0 : std::exp(target[i] - target_mass);
            residual = std::max(residual, std::abs(next_rho[i] - rho[i]));
            peak = std::max(peak, rho[i]);
        }
        residual /= peak;
        if (residual < options.tolerance) break;

        // Newton step on u - T(u), u = log rho, T the normalized fixed-point map.
        bool moved = false;
        {
            const double scale = 4.0 * particles;
            Eigen::MatrixXd jac(n_active, n_active);
            for (Eigen::Index b = 0; b < n_active; ++b) {
                const auto j = active[static_cast<std::size_t>(b)];
                jac.col(b) = scale * grid.weights()[j] * rho[j] * kernel.col(b);
            }
            Eigen::RowVectorXd p(n_active);
            for (Eigen::Index a = 0; a < n_active; ++a) {
                const auto i = active[static_cast<std::size_t>(a)];
                p(a) = grid.weights()[i] * next_rho[i];
            }
            const Eigen::RowVectorXd mean = p * jac;
            jac.rowwise() -= mean;
            Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n_active, n_active) - jac;
            Eigen::VectorXd rhs(n_active);
            for (Eigen::Index a = 0; a < n_active; ++a) {
                const auto i = active[static_cast<std::size_t>(a)];
                rhs(a) = (target[i] - target_mass) - log_rho[i];
            }
            const Eigen::VectorXd step = system.partialPivLu().solve(rhs);
            if (step.allFinite()) {
                for (double t = 1.0; t > 1e-3 && !moved; t *= 0.5) {
                    auto trial = log_rho;
                    for (Eigen::Index a = 0; a < n_active; ++a) trial[active[static_cast<std::size_t>(a)]] += t * step(a);
                    moved = try_step(std::move(trial));
                }
            }
        }

        // Otherwise a damped fixed-point step, halving the damping until the energy does not increase.
        while (!moved && damping >= 1e-14) {
            std::vector<double> trial(grid.size());
            for (std::size_t i = 0; i < grid.size(); ++i) {
                trial[i] = target[i] == -kInf ? -kInf : (1.0 - damping) * log_rho[i] + damping * (target[i] - target_mass);
            }
            moved = try_step(std::move(trial));
            damping = moved ? std::min(options.damping, damping * 1.25) : 0.5 * damping;
        }
        if (!moved) {
            // No descent direction left at double precision.
            ++iteration;
            break;
        }
        if (options.record_history) result.energy_history.push_back(energy);
    }
    if (residual >= options.tolerance) {
        throw ConvergenceError("mean-field iteration did not converge (N=" + std::to_string(particles) +
                                   ", m=" + std::to_string(m) + ")",
                               residual);
    }
    auto& p = result.profile;
    p = make_profile(particles, m, grid, std::move(rho));
    p.mu = mu;
    p.iterations = iteration;
    p.residual = residual;
    p.regime = classify_regime(p.energy);
    return result;
}

double l1_distance(const RadialGrid& grid, const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != grid.size() || b.size() != grid.size()) throw InputError("l1_distance: size mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) acc += grid.weights()[i] * std::abs(a[i] - b[i]);
    return acc;
}

}  // namespace lll
