#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace lll {

/// Uniform radial grid r_i = i * dr, i = 0..n-1, with trapezoidal plane weights 2 pi r_i dr.
class RadialGrid {
public:
    RadialGrid(double r_max, std::size_t points);

    /// 0 .. sqrt(2 + m/N) + 5/sqrt(N), spacing resolving the 1/sqrt(N) edge layer
    /// and the thermal width 1/(2 sqrt(N)).
    static RadialGrid for_plasma(int particles, int m);

    std::size_t size() const { return r_.size(); }
    double r(std::size_t i) const { return r_[i]; }
    double spacing() const { return dr_; }
    double r_max() const { return r_.back(); }
    const std::vector<double>& radii() const { return r_; }
    const std::vector<double>& weights() const { return w_; }

    /// Trapezoidal integral of f over the plane, f given on the grid.
    double integrate(const std::vector<double>& f) const;

private:
    double dr_;
    std::vector<double> r_;
    std::vector<double> w_;
};

enum class ProfileRegime { annulus, thermal, numeric };

std::string to_string(ProfileRegime regime);

struct MeanFieldEnergy {
    double potential = 0.0;    // int W_m rho
    double interaction = 0.0;  // -2 int int rho log|z - z'| rho
    double entropy = 0.0;      // N^-1 int rho log rho
    double total() const { return potential + interaction + entropy; }
};

struct MeanFieldProfile {
    int particles = 0;
    int m = 0;
    std::vector<double> r;
    std::vector<double> rho;
    double mu = 0.0;
    MeanFieldEnergy energy;
    ProfileRegime regime = ProfileRegime::numeric;
    std::size_t iterations = 0;
    double residual = 0.0;
    /// Annulus radii (annulus profiles) or peak radius (thermal profiles).
    double inner_radius = 0.0;
    double outer_radius = 0.0;
    double peak_radius = 0.0;
};

/// E^MF on the grid for the given density values.
MeanFieldEnergy mean_field_energy(int particles, int m, const RadialGrid& grid, const std::vector<double>& rho);

/// W_m(r) = r^2 - (2m/N) log r.
double confining_potential(int particles, int m, double r);

/// Angle-averaged log potential psi(r) = int log max(r, r') rho(r') d^2 r'.
std::vector<double> log_potential(const RadialGrid& grid, const std::vector<double>& rho);

/// 1/(2 pi) on [sqrt(m/N), sqrt(2 + m/N)], renormalized on the grid.
MeanFieldProfile annulus_profile(int particles, int m, const RadialGrid& grid);
MeanFieldProfile annulus_profile(int particles, int m);

/// Normalized r^{2m} exp(-N r^2), evaluated in log space; peak at sqrt(m/N).
MeanFieldProfile thermal_profile(int particles, int m, const RadialGrid& grid);

struct MeanFieldOptions {
    double tolerance = 1e-9;
    std::size_t max_iterations = 2000;
    /// Damping of the fallback fixed-point update; halved whenever a step would raise the energy.
    double damping = 0.5;
    /// Record the energy at every accepted iteration.
    bool record_history = false;
};

struct MeanFieldResult {
    MeanFieldProfile profile;
    std::vector<double> energy_history;
    bool resolution_warning = false;
};

/// Solves rho ~ exp(-N (W_m - 4 psi_rho - mu)) by energy-monotone Newton steps on the log-density,
/// falling back to damped fixed-point updates.
/// Throws ConvergenceError after max_iterations.
MeanFieldResult minimize_mf(int particles, int m, const RadialGrid& grid, const MeanFieldOptions& options = {});

/// int |a - b| d^2 r on the grid.
double l1_distance(const RadialGrid& grid, const std::vector<double>& a, const std::vector<double>& b);

ProfileRegime classify_regime(const MeanFieldEnergy& energy);

}  // namespace lll
