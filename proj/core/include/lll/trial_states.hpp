#pragma once

#include <cstdint>
#include <vector>

#include "lll/basis.hpp"
#include "lll/fock_vector.hpp"
#include "lll/operators.hpp"

namespace lll {

inline constexpr int kDefaultLaughlinMaxParticles = 8;

/// Integer coefficients of prod_{i<j} (z_i - z_j)^2 on the monomial symmetric
/// functions m_lambda, lambda a partition of N(N-1) with N parts (zeros included).
struct LaughlinExpansion {
    int particles = 0;
    struct Term {
        std::vector<int> partition;  // non-increasing, length N
        std::int64_t coefficient;
    };
    std::vector<Term> terms;  // lexicographically decreasing partitions, zero coefficients omitted
};

LaughlinExpansion laughlin_expansion(int particles, int max_particles = kDefaultLaughlinMaxParticles);

/// Occupation amplitudes of a trial state without enumerating its sector.
struct SparseFockState {
    SectorTag tag;
    std::vector<Occupation> occupations;
    std::vector<double> amplitudes;  // unit norm
};

/// prod_j z_j^m times the Laughlin factor, normalized, as sparse occupation amplitudes.
SparseFockState giant_vortex_amplitudes(const LaughlinExpansion& expansion, int m);

/// Normalized Fock expansion of the Laughlin state in sector L = N(N-1).
FockVector laughlin_fock(int particles, int max_particles = kDefaultLaughlinMaxParticles);

/// Giant vortex of charge m times Laughlin, in sector N(N-1) + N m.
FockVector giant_vortex_fock(int particles, int m, int max_particles = kDefaultLaughlinMaxParticles);

/// Scatters sparse amplitudes into the full sector basis.
FockVector to_fock_vector(const SparseFockState& state, const SectorBasis& basis);

struct TrialEnergyRecord {
    int m = 0;
    int L_m = 0;
    double energy = 0.0;
    /// <sum_i L_i^2>
    double L2_expect = 0.0;
    /// Always 0: the states lie in Ker I_N.
    double interaction_energy = 0.0;
};

TrialEnergyRecord trial_energy(const LaughlinExpansion& expansion, int m, const HamiltonianParams& params);
TrialEnergyRecord trial_energy(int particles, int m, const HamiltonianParams& params);

/// 0 if omega >= -2kN, else |omega|/(2k) - N rounded half-up.
int optimal_m(double omega, double k, int particles);

/// Minimizes trial_energy over integer m in [0, m_upper]; the reference for optimal_m.
int numeric_optimal_m(const LaughlinExpansion& expansion, const HamiltonianParams& params, int m_upper);
int numeric_optimal_m(double omega, double k, int particles);

}  // namespace lll
