#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <vector>

#include "lll/eigensolver.hpp"
#include "lll/fock_vector.hpp"
#include "lll/operators.hpp"

namespace lll {

struct SpectraOptions {
    EigenOptions eigen;
    AssemblyOptions assembly;
    /// An eigenvalue counts as a zero mode iff lambda < zero_threshold * max(1, ||I_N||).
    double zero_threshold = 1e-9;
    /// Sector-level parallelism.
    unsigned workers = 1;
    /// When set, interaction operators are loaded from / stored to this directory.
    std::optional<std::filesystem::path> cache_dir;
};

/// Interaction spectrum summary for one (N, L) sector.
struct SectorSpectrum {
    SectorTag tag;
    std::size_t dim = 0;
    /// Lowest eigenvalues computed, ascending (at least kernel_dim + 1 unless the sector is all kernel).
    std::vector<double> eigenvalues;
    std::size_t kernel_dim = 0;
    /// Smallest eigenvalue above the zero threshold; NaN if every eigenvalue is a zero mode.
    double gap = 0.0;
    double zero_threshold = 0.0;
    /// Orthonormal kernel basis, filled only on request.
    std::vector<FockVector> kernel;
};

SectorSpectrum analyze_interaction_sector(int particles, int angular_momentum, const SpectraOptions& options = {},
                                          bool want_kernel = false);

/// Same with every eigenvalue of the sector (dense diagonalization).
std::vector<double> full_interaction_spectrum(int particles, int angular_momentum, const SpectraOptions& options = {});

struct YrastPoint {
    int L = 0;
    double I_of_L = 0.0;
    double gap = 0.0;
    std::size_t kernel_dim = 0;
    std::size_t dim = 0;
};

/// One point per L = 0..L_max; sectors are processed in parallel and merged by L.
std::vector<YrastPoint> yrast_curve(int particles, int L_max, const SpectraOptions& options = {});

struct GapScan {
    std::vector<YrastPoint> points;
    /// Delta_N(N(N-1) - N).
    double reference_gap = 0.0;
    double min_gap = 0.0;
    int min_gap_L = 0;
    /// Delta_N(L) >= Delta_N(N(N-1) - N) for every scanned L <= N(N-1).
    bool conjecture_holds = false;
};

/// Relative tolerance used by the gap inequality comparison.
inline constexpr double kGapComparisonTolerance = 1e-9;

GapScan spectral_gap_scan(int particles, int L_max, const SpectraOptions& options = {});

struct SectorEnergy {
    int L = 0;
    double energy = 0.0;
};

struct GroundStateRecord {
    HamiltonianParams params;
    int particles = 0;
    int L_star = 0;
    double energy = 0.0;
    FockVector vector;
    double correlation_defect = 0.0;
    /// N(N-1) / (2 L_star); infinity at L_star = 0.
    double filling_factor = 0.0;
    /// Every sector whose lowest energy ties with the minimum (includes L_star).
    std::vector<int> tied_sectors;
    /// Lowest energy of each scanned sector, ascending L.
    std::vector<SectorEnergy> sector_energies;
};

double filling_factor(int particles, int angular_momentum);

/// (omega + 3k) L + k L^2 / N, a lower bound on the lowest energy in sector L.
double sector_energy_lower_bound(const HamiltonianParams& params, int particles, int angular_momentum);

/// Global minimum of the lowest eigenvalue of the Hamiltonian over sectors L = 0, 1, ...,
/// stopping once the sector lower bound exceeds the best energy for all remaining L.
/// Throws InputError("L_max insufficient ...") when L_max is reached first.
GroundStateRecord ground_state_scan(int particles, const HamiltonianParams& params, int L_max,
                                    const SpectraOptions& options = {});

/// ||v - P_ker v|| for an orthonormal kernel basis in the sector of v.
double correlation_defect(const FockVector& v, const std::vector<FockVector>& kernel_basis);

/// Multiplicity of the eigenvalue 0 of I_N in sector (N, L).
std::size_t kernel_dimension(int particles, int angular_momentum, const SpectraOptions& options = {});

/// Partitions of L - N(N-1) into at most N parts (0 below the Laughlin momentum).
std::size_t expected_kernel_dimension(int particles, int angular_momentum);

}  // namespace lll
