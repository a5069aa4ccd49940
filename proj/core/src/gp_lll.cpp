#include "lll/gp_lll.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

#include "lll/combinatorics.hpp"
#include "lll/errors.hpp"
#include "lll/parallel.hpp"

namespace lll {

namespace {

// w(a, b) = sqrt(M! / (2^M a! b!)), M = a + b, so that Q = (2 pi)^-1 sum_M |sum_{a+b=M} w c_a c_b|^2.
double pair_weight(int a, int b) {
    const int total = a + b;
    return std::exp(0.5 * (log_factorial(static_cast<std::size_t>(total)) - total * std::numbers::ln2 -
                           log_factorial(static_cast<std::size_t>(a)) - log_factorial(static_cast<std::size_t>(b))));
}

class PairWeights {
public:
    explicit PairWeights(int l_max) : n_(static_cast<std::size_t>(l_max) + 1), w_(n_ * n_) {
        for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = 0; b < n_; ++b) w_[a * n_ + b] = pair_weight(static_cast<int>(a), static_cast<int>(b));
    }
    double operator()(std::size_t a, std::size_t b) const { return w_[a * n_ + b]; }

private:
    std::size_t n_;
    std::vector<double> w_;
};

std::vector<Complex> pair_sums(const GPState& s, const PairWeights& w) {
    const std::size_t n = s.coeffs.size();
    std::vector<Complex> sums(n == 0 ? 0 : 2 * n - 1, 0.0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) sums[a + b] += w(a, b) * s.coeffs[a] * s.coeffs[b];
    return sums;
}

double quartic_with(const GPState& s, const PairWeights& w) {
    double q = 0.0;
    for (const auto& v : pair_sums(s, w)) q += std::norm(v);
    return q / (2.0 * std::numbers::pi);
}

double energy_with(const GPState& s, double omega, double coupling, const PairWeights& w) {
    double kinetic = 0.0;
    for (std::size_t l = 0; l < s.coeffs.size(); ++l) kinetic += static_cast<double>(l) * std::norm(s.coeffs[l]);
    return omega * kinetic + 0.5 * coupling * quartic_with(s, w);
}

std::vector<Complex> gradient_with(const GPState& s, double omega, double coupling, const PairWeights& w) {
    const std::size_t n = s.coeffs.size();
    const auto sums = pair_sums(s, w);
    std::vector<Complex> g(n);
    for (std::size_t j = 0; j < n; ++j) {
        Complex quartic = 0.0;
        for (std::size_t b = 0; b < n; ++b) quartic += w(j, b) * sums[j + b] * std::conj(s.coeffs[b]);
        // d/d conj(c_j) of Q is (2 pi)^-1 * 2 * quartic; the real gradient is twice the Wirtinger one.
        g[j] = 2.0 * (omega * static_cast<double>(j) * s.coeffs[j] + 0.5 * coupling * 2.0 * quartic / (2.0 * std::numbers::pi));
    }
    return g;
}

void check_norm(const GPState& s) {
    if (s.coeffs.empty()) throw InputError("GP state has no coefficients");
    if (std::abs(s.norm() - 1.0) > 1e-8) throw InputError("GP state is not normalized (norm " + std::to_string(s.norm()) + ")");
}

// Tangential part of g on the unit sphere at c.
std::vector<Complex> project(const GPState& s, const std::vector<Complex>& g) {
    double radial = 0.0;
    for (std::size_t l = 0; l < g.size(); ++l) radial += std::real(std::conj(s.coeffs[l]) * g[l]);
    std::vector<Complex> t(g.size());
    for (std::size_t l = 0; l < g.size(); ++l) t[l] = g[l] - radial * s.coeffs[l];
    return t;
}

double squared_norm(const std::vector<Complex>& v) {
    double acc = 0.0;
    for (const auto& x : v) acc += std::norm(x);
    return acc;
}

// Real inner product Re <a, b>.
double inner(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double acc = 0.0;
    for (std::size_t l = 0; l < a.size(); ++l) acc += std::real(std::conj(a[l]) * b[l]);
    return acc;
}

void axpy(double a, const std::vector<Complex>& x, std::vector<Complex>& y) {
    for (std::size_t l = 0; l < y.size(); ++l) y[l] += a * x[l];
}

double tf_radius_squared(double omega, double coupling) {
    if (!(omega > 0.0) || !(coupling > 0.0)) return 0.0;
    return std::sqrt(2.0 * coupling * kAbrikosovConstant / (std::numbers::pi * omega));
}

GPState random_start(int l_max, double scale, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    GPState s;
    s.coeffs.resize(static_cast<std::size_t>(l_max) + 1);
    for (int l = 0; l <= l_max; ++l) {
        const double x = l / scale;
        s.coeffs[static_cast<std::size_t>(l)] = Complex(normal(rng), normal(rng)) * std::exp(-0.5 * x * x);
    }
    s.normalize();
    return s;
}

GPState padded(const GPState& s, int l_max) {
    GPState out = s;
    out.coeffs.resize(static_cast<std::size_t>(l_max) + 1, 0.0);
    return out;
}

double tail_weight(const GPState& s) {
    const int l_max = s.l_max();
    double tail = 0.0;
    for (int l = 0; l <= l_max; ++l)
        if (l > 0.9 * l_max) tail += std::norm(s.coeffs[static_cast<std::size_t>(l)]);
    return tail;
}

}  // namespace

double GPState::norm() const {
    double acc = 0.0;
    for (const auto& c : coeffs) acc += std::norm(c);
    return std::sqrt(acc);
}

void GPState::normalize() {
    const double n = norm();
    if (n == 0.0) throw InputError("cannot normalize a zero GP state");
    for (auto& c : coeffs) c /= n;
}

GPState GPState::pure(int l, int l_max) {
    if (l < 0 || l > l_max) throw InputError("GPState::pure: orbital out of range");
    GPState s;
    s.coeffs.assign(static_cast<std::size_t>(l_max) + 1, 0.0);
    s.coeffs[static_cast<std::size_t>(l)] = 1.0;
    return s;
}

double quartic_form(const GPState& state) { return quartic_with(state, PairWeights(state.l_max())); }

double gp_energy(const GPState& state, double omega, double coupling) {
    check_norm(state);
    return energy_with(state, omega, coupling, PairWeights(state.l_max()));
}

std::vector<Complex> gp_gradient(const GPState& state, double omega, double coupling) {
    return gradient_with(state, omega, coupling, PairWeights(state.l_max()));
}

DescentResult descend_gp(GPState start, double omega, double coupling, const GPOptions& options) {
    constexpr std::size_t kMemory = 8;
    start.normalize();
    const PairWeights w(start.l_max());
    DescentResult r;
    r.state = std::move(start);
    r.energy = energy_with(r.state, omega, coupling, w);
    auto grad = project(r.state, gradient_with(r.state, omega, coupling, w));
    const double noise = 1e-14 * std::max(1.0, std::abs(r.energy));
    const double first_step = 1.0 / (std::abs(omega) * r.state.l_max() + coupling + 1e-12);

    // L-BFGS on the unit sphere; curvature pairs are carried over by tangent projection.
    std::vector<std::vector<Complex>> s_hist, y_hist;
    std::vector<double> rho_hist;
    for (r.iterations = 0; r.iterations < options.max_iterations; ++r.iterations) {
        r.gradient_norm = std::sqrt(squared_norm(grad));
        if (r.gradient_norm < options.tolerance) {
            r.converged = true;
            break;
        }
        std::vector<Complex> dir = grad;
        std::vector<double> alpha(s_hist.size());
        for (std::size_t i = s_hist.size(); i-- > 0;) {
            alpha[i] = rho_hist[i] * inner(s_hist[i], dir);
            axpy(-alpha[i], y_hist[i], dir);
        }
        const double gamma =
            s_hist.empty() ? first_step : inner(s_hist.back(), y_hist.back()) / squared_norm(y_hist.back());
        for (auto& d : dir) d *= gamma;
        for (std::size_t i = 0; i < s_hist.size(); ++i) axpy(alpha[i] - rho_hist[i] * inner(y_hist[i], dir), s_hist[i], dir);
        dir = project(r.state, dir);
        double slope = -inner(grad, dir);
        if (!(slope < 0.0)) {
            s_hist.clear(), y_hist.clear(), rho_hist.clear();
            dir = grad;
            for (auto& d : dir) d *= first_step;
            slope = -inner(grad, dir);
        }

        bool moved = false;
        GPState trial;
        double e = 0.0;
        std::vector<Complex> trial_grad;
        for (double t = 1.0; t > 1e-12; t *= 0.5) {
            trial = r.state;
            axpy(-t, dir, trial.coeffs);
            trial.normalize();
            e = energy_with(trial, omega, coupling, w);
            if (e <= r.energy + 1e-4 * t * slope) {
                moved = true;
            } else if (e <= r.energy + noise) {
                // Below energy resolution: accept only if the gradient shrinks.
                trial_grad = project(trial, gradient_with(trial, omega, coupling, w));
                moved = squared_norm(trial_grad) < squared_norm(grad);
                if (!moved) trial_grad.clear();
            }
            if (moved) break;
        }
        if (!moved) {
            if (!s_hist.empty()) {
                s_hist.clear(), y_hist.clear(), rho_hist.clear();
                continue;
            }
            r.converged = r.gradient_norm < std::sqrt(options.tolerance);
            break;
        }
        if (trial_grad.empty()) trial_grad = project(trial, gradient_with(trial, omega, coupling, w));
        std::vector<Complex> s_new(trial.coeffs.size()), y_new(trial.coeffs.size());
        for (std::size_t l = 0; l < s_new.size(); ++l) {
            s_new[l] = trial.coeffs[l] - r.state.coeffs[l];
            y_new[l] = trial_grad[l] - grad[l];
        }
        r.state = std::move(trial);
        r.energy = e;
        grad = std::move(trial_grad);
        s_new = project(r.state, s_new);
        y_new = project(r.state, y_new);
        for (std::size_t i = 0; i < s_hist.size(); ++i) {
            s_hist[i] = project(r.state, s_hist[i]);
            y_hist[i] = project(r.state, y_hist[i]);
        }
        const double sy = inner(s_new, y_new);
        if (sy > 1e-12 * std::sqrt(squared_norm(s_new) * squared_norm(y_new))) {
            s_hist.push_back(std::move(s_new));
            y_hist.push_back(std::move(y_new));
            rho_hist.push_back(1.0 / sy);
            if (s_hist.size() > kMemory) {
                s_hist.erase(s_hist.begin());
                y_hist.erase(y_hist.begin());
                rho_hist.erase(rho_hist.begin());
            }
        }
    }
    return r;
}

GPResult minimize_gp(double omega, double coupling, const GPOptions& options) {
    if (!(coupling >= 0.0)) throw InputError("minimize_gp: coupling must be >= 0");
    if (!(omega >= 0.0)) throw InputError("minimize_gp: omega must be >= 0");
    if (options.l_max < 1) throw InputError("minimize_gp: l_max must be >= 1");
    if (options.restarts < 0) throw InputError("minimize_gp: restarts must be >= 0");

    const double r2 = tf_radius_squared(omega, coupling);
    const double scale = std::clamp(r2 > 0.0 ? r2 : 2.0, 1.0, static_cast<double>(options.l_max));
    const auto starts = static_cast<std::size_t>(options.restarts) + 1;
    std::vector<DescentResult> results(starts);
    parallel_for(starts, options.workers, [&](std::size_t i) {
        GPState start = i == 0 ? GPState::pure(0, options.l_max)
                               : random_start(options.l_max, scale, options.seed + 0x9e3779b97f4a7c15ull * i);
        results[i] = descend_gp(std::move(start), omega, coupling, options);
    });

    GPResult out;
    std::size_t best = 0;
    for (std::size_t i = 0; i < starts; ++i) {
        if (results[i].energy < results[best].energy) best = i;
        out.best_so_far.push_back(results[best].energy);
    }
    DescentResult chosen = results[best];
    int l_max = options.l_max;
    while (options.auto_extend && tail_weight(chosen.state) > options.tail_tolerance && l_max < options.l_max_cap) {
        l_max = std::min(options.l_max_cap, static_cast<int>(std::ceil(1.5 * l_max)));
        chosen = descend_gp(padded(chosen.state, l_max), omega, coupling, options);
    }
    out.state = std::move(chosen.state);
    out.energy = chosen.energy;
    out.gradient_norm = chosen.gradient_norm;
    out.iterations = chosen.iterations;
    out.converged = chosen.converged;
    out.best_restart = static_cast<int>(best);
    out.l_max = l_max;
    out.truncation_warning = r2 > 0.7 * l_max;
    return out;
}

double TFProfile::density(double r) const {
    return std::max(0.0, lambda - omega * r * r) / (coupling * kAbrikosovConstant);
}

double TFProfile::radius() const { return std::sqrt(lambda / omega); }

std::pair<TFProfile, double> tf_profile_and_energy(double omega, double coupling) {
    if (!(omega > 0.0) || !(coupling > 0.0)) throw InputError("tf_profile_and_energy: need omega > 0 and Ng > 0");
    TFProfile p;
    p.omega = omega;
    p.coupling = coupling;
    // int (lambda - omega r^2)_+ 2 pi r dr = pi lambda^2 / (2 omega) = Ng e_Ab
    p.lambda = std::sqrt(2.0 * omega * coupling * kAbrikosovConstant / std::numbers::pi);
    // int omega r^2 rho = pi lambda^3 / (6 A omega) = (Ng e_Ab / 2) int rho^2, A = Ng e_Ab; both equal lambda / 3.
    const double energy = 2.0 * p.lambda / 3.0 - omega;
    return {p, energy};
}

VortexZeros vortex_zeros(const GPState& state, double bulk_radius) {
    VortexZeros out;
    out.bulk_radius = bulk_radius;
    double largest = 0.0;
    for (const auto& c : state.coeffs) largest = std::max(largest, std::abs(c));
    if (largest == 0.0) throw InputError("vortex_zeros: zero state");
    int top = state.l_max();
    while (top > 0 && std::abs(state.coeffs[static_cast<std::size_t>(top)]) < 1e-14 * largest) --top;
    if (top < 1) throw InputError("vortex_zeros: polynomial degree must be >= 1");
    out.ill_conditioned = std::abs(state.coeffs[static_cast<std::size_t>(top)]) < 1e-8 * largest;
    int low = 0;
    while (std::abs(state.coeffs[static_cast<std::size_t>(low)]) < 1e-14 * largest) ++low;
    out.roots.assign(static_cast<std::size_t>(low), Complex(0.0, 0.0));

    // a_l = c_l / sqrt(l!) for l = low..top (pi dropped); z = s w balances |a_low| and |a_top|.
    const int degree = top - low;
    if (degree > 0) {
        auto log_abs = [&](int l) {
            return std::log(std::abs(state.coeffs[static_cast<std::size_t>(l)])) - 0.5 * log_factorial(static_cast<std::size_t>(l));
        };
        const double log_s = (log_abs(low) - log_abs(top)) / degree;
        std::vector<Complex> b(static_cast<std::size_t>(degree) + 1);
        for (int l = low; l <= top; ++l) {
            const double log_scale = -0.5 * log_factorial(static_cast<std::size_t>(l)) + (l - low) * log_s;
            b[static_cast<std::size_t>(l - low)] = state.coeffs[static_cast<std::size_t>(l)] * std::exp(log_scale);
        }
        Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(degree, degree);
        for (int i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
        for (int i = 0; i < degree; ++i) companion(i, degree - 1) = -b[static_cast<std::size_t>(i)] / b.back();
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
        const double s = std::exp(log_s);
        for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
            Complex w = solver.eigenvalues()[i];
            // Newton polish on the scaled polynomial.
            for (int it = 0; it < 3; ++it) {
                Complex p = b.back(), dp = 0.0;
                for (int l = degree - 1; l >= 0; --l) {
                    dp = dp * w + p;
                    p = p * w + b[static_cast<std::size_t>(l)];
                }
                if (std::abs(dp) == 0.0) break;
                w -= p / dp;
            }
            out.roots.push_back(s * w);
        }
    }
    for (const auto& z : out.roots)
        if (std::abs(z) < bulk_radius) ++out.bulk_count;
    return out;
}

GPComparison compare_gp_exact(int particles, double omega, double g, const GPOptions& gp_options,
                              const SpectraOptions& spectra_options) {
    if (particles < 1 || particles > 6) throw InputError("compare_gp_exact: N must be in [1, 6]");
    if (!(omega > 0.0)) throw InputError("compare_gp_exact: omega must be > 0");
    GPComparison out;
    out.gp = minimize_gp(omega, particles * g, gp_options);
    out.e_gp = particles * out.gp.energy;
    const HamiltonianParams params{omega, g, 0.0};
    const auto record = ground_state_scan(particles, params, particles * (particles - 1) + 2, spectra_options);
    out.e_exact = record.energy;
    out.L_star = record.L_star;
    return out;
}

}  // namespace lll
