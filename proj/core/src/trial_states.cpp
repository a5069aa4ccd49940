#include "lll/trial_states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lll/combinatorics.hpp"
#include "lll/errors.hpp"

namespace lll {

namespace {

int permutation_sign(const std::vector<int>& values) {
    int inversions = 0;
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = i + 1; j < values.size(); ++j)
            if (values[i] > values[j]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

// Coefficient of z_1^{lambda_1} ... z_N^{lambda_N} in V(z)^2 with V = det[z_i^{N-j}]:
// sum over splittings lambda_i = a_i + b_i with a, b permutations of {0..N-1} of sgn(a) sgn(b).
class VandermondeSquareCoefficient {
public:
    explicit VandermondeSquareCoefficient(int particles)
        : n_(particles), a_(static_cast<std::size_t>(particles)), b_(static_cast<std::size_t>(particles)) {}

    std::int64_t operator()(const std::vector<int>& exponents) {
        exponents_ = &exponents;
        used_a_.assign(static_cast<std::size_t>(n_), false);
        used_b_.assign(static_cast<std::size_t>(n_), false);
        total_ = 0;
        descend(0);
        return total_;
    }

private:
    void descend(int i) {
        if (i == n_) {
            total_ += permutation_sign(a_) * permutation_sign(b_);
            return;
        }
        const int target = (*exponents_)[static_cast<std::size_t>(i)];
        for (int a = std::max(0, target - (n_ - 1)); a <= std::min(n_ - 1, target); ++a) {
            const int b = target - a;
            if (used_a_[static_cast<std::size_t>(a)] || used_b_[static_cast<std::size_t>(b)]) continue;
            used_a_[static_cast<std::size_t>(a)] = used_b_[static_cast<std::size_t>(b)] = true;
            a_[static_cast<std::size_t>(i)] = a;
            b_[static_cast<std::size_t>(i)] = b;
            descend(i + 1);
            used_a_[static_cast<std::size_t>(a)] = used_b_[static_cast<std::size_t>(b)] = false;
        }
    }

    int n_;
    std::vector<int> a_, b_;
    std::vector<bool> used_a_, used_b_;
    const std::vector<int>* exponents_ = nullptr;
    std::int64_t total_ = 0;
};

void check_particles(int particles, int max_particles) {
    if (particles < 2) throw InputError("Laughlin state requires N >= 2");
    if (particles > max_particles)
        throw ResourceError("Laughlin expansion limited to N <= " + std::to_string(max_particles) + ", got " +
                            std::to_string(particles));
}

}  // namespace

LaughlinExpansion laughlin_expansion(int particles, int max_particles) {
    check_particles(particles, max_particles);
    LaughlinExpansion out;
    out.particles = particles;
    const int L = particles * (particles - 1);
    const SectorBasis basis(particles, L);
    VandermondeSquareCoefficient coefficient(particles);
    for (const auto& occ : basis.states()) {
        auto partition = occ.orbitals();
        if (partition.front() > 2 * (particles - 1)) continue;
        const auto c = coefficient(partition);
        if (c != 0) out.terms.push_back({std::move(partition), c});
    }
    return out;
}

SparseFockState giant_vortex_amplitudes(const LaughlinExpansion& expansion, int m) {
    if (m < 0) throw InputError("vortex charge m must be >= 0");
    const int n = expansion.particles;
    SparseFockState state;
    state.tag = {n, n * (n - 1) + n * m};
    // |n> = m_lambda / ||m_lambda||, ||m_lambda||^2 = N! / prod n_l! * prod pi lambda_i!  (pi^N dropped)
    std::vector<double> log_magnitude;
    std::vector<int> signs;
    for (const auto& term : expansion.terms) {
        std::vector<int> shifted = term.partition;
        for (auto& l : shifted) l += m;
        auto occ = Occupation::from_orbitals(shifted);
        double log_norm = log_factorial(static_cast<std::size_t>(n));
        for (std::size_t l = 0; l < occ.extent(); ++l) log_norm -= log_factorial(occ[l]);
        for (int l : shifted) log_norm += log_factorial(static_cast<std::size_t>(l));
        log_magnitude.push_back(std::log(static_cast<double>(std::llabs(term.coefficient))) + 0.5 * log_norm);
        signs.push_back(term.coefficient > 0 ? 1 : -1);
        state.occupations.push_back(std::move(occ));
    }
    const double top = *std::max_element(log_magnitude.begin(), log_magnitude.end());
    double norm2 = 0.0;
    state.amplitudes.resize(log_magnitude.size());
    for (std::size_t i = 0; i < log_magnitude.size(); ++i) {
        state.amplitudes[i] = signs[i] * std::exp(log_magnitude[i] - top);
        norm2 += state.amplitudes[i] * state.amplitudes[i];
    }
    const double norm = std::sqrt(norm2);
    for (auto& a : state.amplitudes) a /= norm;
    return state;
}

FockVector to_fock_vector(const SparseFockState& state, const SectorBasis& basis) {
    if (!(basis.tag() == state.tag)) throw InputError("to_fock_vector: sector mismatch");
    FockVector v;
    v.tag = state.tag;
    v.coeffs.assign(basis.size(), 0.0);
    for (std::size_t i = 0; i < state.occupations.size(); ++i)
        v.coeffs[basis.index_of(state.occupations[i])] = state.amplitudes[i];
    return v;
}

FockVector laughlin_fock(int particles, int max_particles) { return giant_vortex_fock(particles, 0, max_particles); }

FockVector giant_vortex_fock(int particles, int m, int max_particles) {
    const auto state = giant_vortex_amplitudes(laughlin_expansion(particles, max_particles), m);
    return to_fock_vector(state, SectorBasis(state.tag.particles, state.tag.angular_momentum));
}

TrialEnergyRecord trial_energy(const LaughlinExpansion& expansion, int m, const HamiltonianParams& params) {
    params.validate();
    const auto state = giant_vortex_amplitudes(expansion, m);
    TrialEnergyRecord r;
    r.m = m;
    r.L_m = state.tag.angular_momentum;
    for (std::size_t i = 0; i < state.occupations.size(); ++i)
        r.L2_expect += state.amplitudes[i] * state.amplitudes[i] *
                       static_cast<double>(state.occupations[i].angular_momentum_squared());
    r.energy = (params.omega + 3.0 * params.k) * r.L_m + params.k * r.L2_expect;
    return r;
}

TrialEnergyRecord trial_energy(int particles, int m, const HamiltonianParams& params) {
    return trial_energy(laughlin_expansion(particles), m, params);
}

int optimal_m(double omega, double k, int particles) {
    if (particles < 1) throw InputError("optimal_m: N must be >= 1");
    if (omega < 0.0 && !(k > 0.0)) throw InputError("optimal_m: omega < 0 requires k > 0");
    if (omega >= -2.0 * k * particles) return 0;
    const double continuous = std::abs(omega) / (2.0 * k) - particles;
    return static_cast<int>(std::floor(continuous + 0.5));
}

int numeric_optimal_m(const LaughlinExpansion& expansion, const HamiltonianParams& params, int m_upper) {
    if (m_upper < 0) throw InputError("numeric_optimal_m: m_upper must be >= 0");
    int best_m = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int m = 0; m <= m_upper; ++m) {
        const double e = trial_energy(expansion, m, params).energy;
        if (e < best) {
            best = e;
            best_m = m;
        }
    }
    return best_m;
}

int numeric_optimal_m(double omega, double k, int particles) {
    const HamiltonianParams params{omega, 0.0, k};
    const int guess = optimal_m(omega, k, particles);
    const int upper = 2 * guess + 2 * particles + 4;
    return numeric_optimal_m(laughlin_expansion(particles), params, upper);
}

}  // namespace lll
