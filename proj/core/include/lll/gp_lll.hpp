#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "lll/operators.hpp"
#include "lll/spectra.hpp"

namespace lll {

using Complex = std::complex<double>;

/// phi(z) = sum_l c_l z^l / sqrt(pi l!), l = 0..l_max, with sum |c_l|^2 = 1.
struct GPState {
    std::vector<Complex> coeffs;

    int l_max() const { return static_cast<int>(coeffs.size()) - 1; }
    double norm() const;
    void normalize();

    static GPState pure(int l, int l_max);
};

/// int |phi|^4 exp(-2|z|^2) d^2z = sum conj(c1) conj(c2) c3 c4 <m1 m2|delta|m3 m4>.
double quartic_form(const GPState& state);

/// omega <L> + (Ng / 2) Q(c). Throws InputError if the state is not normalized.
double gp_energy(const GPState& state, double omega, double coupling);

/// Gradient with respect to (Re c_l, Im c_l), packed as complex numbers.
std::vector<Complex> gp_gradient(const GPState& state, double omega, double coupling);

struct GPOptions {
    int l_max = 32;
    /// Random complex starts in addition to the pure l = 0 start.
    int restarts = 16;
    /// Stop when the tangential gradient norm falls below this.
    double tolerance = 1e-8;
    int max_iterations = 20000;
    std::uint64_t seed = 7;
    unsigned workers = 1;
    /// Grow l_max (x1.5) while the weight above 0.9 l_max exceeds tail_tolerance.
    bool auto_extend = true;
    double tail_tolerance = 1e-6;
    int l_max_cap = 160;
};

struct GPResult {
    GPState state;
    double energy = 0.0;
    double gradient_norm = 0.0;
    int iterations = 0;
    bool converged = false;
    /// Restart index of the returned state (0 = pure l = 0 start).
    int best_restart = 0;
    /// Best energy after each restart, in restart order.
    std::vector<double> best_so_far;
    int l_max = 0;
    /// TF radius sqrt(lambda / omega) compared with sqrt(l_max).
    bool truncation_warning = false;
};

struct DescentResult {
    GPState state;
    double energy = 0.0;
    double gradient_norm = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Riemannian L-BFGS on the unit sphere with backtracking, from one start.
DescentResult descend_gp(GPState start, double omega, double coupling, const GPOptions& options);

GPResult minimize_gp(double omega, double coupling, const GPOptions& options = {});

inline constexpr double kAbrikosovConstant = 1.16;

struct TFProfile {
    double omega = 0.0;
    double coupling = 0.0;
    double lambda = 0.0;

    double density(double r) const;
    double radius() const;
};

/// lambda = sqrt(2 omega Ng e_Ab / pi); energy of int (omega(|x|^2 - 1)) rho + (Ng e_Ab / 2) rho^2.
std::pair<TFProfile, double> tf_profile_and_energy(double omega, double coupling);

struct VortexZeros {
    std::vector<Complex> roots;
    double bulk_radius = 0.0;
    std::size_t bulk_count = 0;
    bool ill_conditioned = false;
};

/// Roots of sum c_l z^l / sqrt(pi l!) from the companion matrix; roots with |z| < bulk_radius are bulk vortices.
VortexZeros vortex_zeros(const GPState& state, double bulk_radius = 0.0);

struct GPComparison {
    double e_gp = 0.0;
    double e_exact = 0.0;
    int L_star = 0;
    GPResult gp;
};

/// N E_1^GP(omega, N g) against the exact ground state of omega L + g I_N.
GPComparison compare_gp_exact(int particles, double omega, double g, const GPOptions& gp_options = {},
                              const SpectraOptions& spectra_options = {});

}  // namespace lll
