#include "lll/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "lll/combinatorics.hpp"
#include "lll/errors.hpp"
#include "lll/parallel.hpp"

namespace lll {

namespace {

SparseSymmetricOperator interaction_for(const SectorBasis& basis, const SpectraOptions& options) {
    if (options.cache_dir) return cached_interaction(basis, *options.cache_dir, options.assembly);
    return assemble_interaction(basis, options.assembly);
}

constexpr std::size_t kDenseFallbackDim = 4000;

double threshold_for(const SparseSymmetricOperator& op, const SpectraOptions& options) {
    return options.zero_threshold * std::max(1.0, op.norm_bound());
}

// Lowest eigenpairs, enlarging the request until one eigenvalue above the zero threshold is present.
std::vector<EigenPair> pairs_past_kernel(const SparseSymmetricOperator& op, double threshold,
                                         const SpectraOptions& options) {
    const bool dense = options.eigen.method == EigenMethod::dense ||
                       (options.eigen.method == EigenMethod::automatic && op.dim() <= options.eigen.dense_threshold);
    std::size_t count = dense ? op.dim() : std::min<std::size_t>(op.dim(), 4);
    const auto& tag = op.tag();
    // The kernel dimension is known in closed form; ask for one more than that.
    count = std::max(count, std::min(op.dim(), expected_kernel_dimension(tag.particles, tag.angular_momentum) + 1));
    auto eigen = options.eigen;
    // Many wanted pairs on a moderate sector: a dense solve is cheaper than a wide Lanczos block.
    if (eigen.method == EigenMethod::automatic && op.dim() <= kDenseFallbackDim && count > 32) {
        eigen.method = EigenMethod::dense;
        count = op.dim();
    }
    for (;;) {
        auto pairs = lowest_eigenpairs(op, count, eigen);
        if (pairs.back().value >= threshold || count == op.dim()) return pairs;
        count = std::min(op.dim(), 2 * count);
    }
}

}  // namespace

std::size_t expected_kernel_dimension(int particles, int angular_momentum) {
    const int laughlin = particles * (particles - 1);
    if (angular_momentum < laughlin) return 0;
    return count_partitions(angular_momentum - laughlin, particles);
}

SectorSpectrum analyze_interaction_sector(int particles, int angular_momentum, const SpectraOptions& options,
                                          bool want_kernel) {
    const SectorBasis basis(particles, angular_momentum);
    const auto op = interaction_for(basis, options);
    SectorSpectrum out;
    out.tag = basis.tag();
    out.dim = basis.size();
    out.zero_threshold = threshold_for(op, options);
    const auto pairs = pairs_past_kernel(op, out.zero_threshold, options);
    out.gap = std::numeric_limits<double>::quiet_NaN();
    for (const auto& p : pairs) {
        out.eigenvalues.push_back(p.value);
        if (p.value < out.zero_threshold) {
            ++out.kernel_dim;
            if (want_kernel) out.kernel.push_back(p.vector);
        } else if (std::isnan(out.gap)) {
            out.gap = p.value;
        }
    }
    return out;
}

std::vector<double> full_interaction_spectrum(int particles, int angular_momentum, const SpectraOptions& options) {
    const SectorBasis basis(particles, angular_momentum);
    const auto op = interaction_for(basis, options);
    const auto n = static_cast<Eigen::Index>(op.dim());
    const auto dense = op.to_dense();
    const Eigen::MatrixXd a = Eigen::Map<const Eigen::MatrixXd>(dense.data(), n, n);
    const Eigen::VectorXd values = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a, Eigen::EigenvaluesOnly).eigenvalues();
    return {values.data(), values.data() + values.size()};
}

std::vector<YrastPoint> yrast_curve(int particles, int L_max, const SpectraOptions& options) {
    if (L_max < 0) throw InputError("yrast_curve: L_max must be >= 0");
    if (particles < 1) throw InputError("yrast_curve: N must be >= 1");
    std::vector<YrastPoint> points(static_cast<std::size_t>(L_max) + 1);
    parallel_for(points.size(), options.workers, [&](std::size_t i) {
        const auto s = analyze_interaction_sector(particles, static_cast<int>(i), options);
        auto& p = points[i];
        p.L = static_cast<int>(i);
        p.dim = s.dim;
        p.kernel_dim = s.kernel_dim;
        p.I_of_L = s.kernel_dim > 0 ? 0.0 : s.eigenvalues.front();
        p.gap = s.gap;
    });
    return points;
}

GapScan spectral_gap_scan(int particles, int L_max, const SpectraOptions& options) {
    if (particles < 2) throw InputError("spectral_gap_scan: N must be >= 2");
    const int laughlin = particles * (particles - 1);
    const int reference_L = laughlin - particles;
    if (L_max < reference_L) throw InputError("spectral_gap_scan: L_max must reach N(N-1) - N");
    GapScan scan;
    scan.points = yrast_curve(particles, L_max, options);
    scan.reference_gap = scan.points[static_cast<std::size_t>(reference_L)].gap;
    scan.min_gap = std::numeric_limits<double>::infinity();
    scan.conjecture_holds = true;
    for (const auto& p : scan.points) {
        if (p.gap < scan.min_gap) {
            scan.min_gap = p.gap;
            scan.min_gap_L = p.L;
        }
        if (p.L <= laughlin && p.gap < scan.reference_gap * (1.0 - kGapComparisonTolerance)) scan.conjecture_holds = false;
    }
    return scan;
}

double filling_factor(int particles, int angular_momentum) {
    if (angular_momentum == 0) return std::numeric_limits<double>::infinity();
    return static_cast<double>(particles) * (particles - 1) / (2.0 * angular_momentum);
}

double sector_energy_lower_bound(const HamiltonianParams& params, int particles, int angular_momentum) {
    const double L = angular_momentum;
    return (params.omega + 3.0 * params.k) * L + params.k * L * L / particles;
}

namespace {

// True when every sector L' >= next has lower bound above `best`.
bool bound_excludes_rest(const HamiltonianParams& params, int particles, int next, double best, double tie_tolerance) {
    const double slope_next = (params.omega + 3.0 * params.k) + params.k * (2.0 * next + 1.0) / particles;
    // bound(L'+1) - bound(L') >= slope_next for L' >= next (convex quadratic)
    if (slope_next < 0.0) return false;
    return sector_energy_lower_bound(params, particles, next) > best + tie_tolerance;
}

}  // namespace

GroundStateRecord ground_state_scan(int particles, const HamiltonianParams& params, int L_max,
                                    const SpectraOptions& options) {
    params.validate();
    if (particles < 1) throw InputError("ground_state_scan: N must be >= 1");
    if (L_max < 0) throw InputError("ground_state_scan: L_max must be >= 0");
    if (params.omega == 0.0 && params.k == 0.0 && params.g > 0.0)
        throw InputError("ground_state_scan: omega = k = 0 leaves the ground state infinitely degenerate");

    GroundStateRecord record;
    record.params = params;
    record.particles = particles;
    double best = std::numeric_limits<double>::infinity();
    std::vector<FockVector> best_vectors;

    const unsigned batch = std::max(1u, options.workers);
    int next = 0;
    bool complete = false;
    while (!complete) {
        if (next > L_max) break;
        const int last = std::min(L_max, next + static_cast<int>(batch) - 1);
        std::vector<EigenPair> lowest(static_cast<std::size_t>(last - next + 1));
        parallel_for(lowest.size(), options.workers, [&](std::size_t i) {
            const SectorBasis basis(particles, next + static_cast<int>(i));
            const auto interaction = params.g == 0.0 ? SparseSymmetricOperator(basis.size(), basis.tag(), {})
                                                     : interaction_for(basis, options);
            const auto h = assemble_hamiltonian(basis, params, interaction);
            lowest[i] = lowest_eigenpairs(h, 1, options.eigen).front();
        });
        for (std::size_t i = 0; i < lowest.size(); ++i) {
            const int L = next + static_cast<int>(i);
            const double e = lowest[i].value;
            record.sector_energies.push_back({L, e});
            if (e < best) {
                best = e;
                record.L_star = L;
                record.vector = lowest[i].vector;
            }
        }
        next = last + 1;
        const double tie_tolerance = 1e-10 * std::max(1.0, std::abs(best));
        complete = bound_excludes_rest(params, particles, next, best, tie_tolerance);
    }
    if (!complete) {
        throw InputError("L_max insufficient: sector lower bound at L=" + std::to_string(L_max + 1) +
                         " does not exceed the best energy " + std::to_string(best));
    }
    record.energy = best;
    const double tie_tolerance = 1e-10 * std::max(1.0, std::abs(best));
    for (const auto& se : record.sector_energies)
        if (se.energy <= best + tie_tolerance) record.tied_sectors.push_back(se.L);
    record.L_star = record.tied_sectors.front();
    if (record.vector.tag.angular_momentum != record.L_star) {
        const SectorBasis basis(particles, record.L_star);
        const auto h = assemble_hamiltonian(basis, params, interaction_for(basis, options));
        record.vector = lowest_eigenpairs(h, 1, options.eigen).front().vector;
    }
    record.filling_factor = filling_factor(particles, record.L_star);
    const auto sector = analyze_interaction_sector(particles, record.L_star, options, true);
    record.correlation_defect = correlation_defect(record.vector, sector.kernel);
    return record;
}

double correlation_defect(const FockVector& v, const std::vector<FockVector>& kernel_basis) {
    std::vector<double> residual = v.coeffs;
    for (const auto& k : kernel_basis) {
        if (!(k.tag == v.tag) || k.size() != v.size()) throw InputError("correlation_defect: dimension mismatch");
        const double c = dot(k, v);
        for (std::size_t i = 0; i < residual.size(); ++i) residual[i] -= c * k.coeffs[i];
    }
    double acc = 0.0;
    for (double r : residual) acc += r * r;
    return std::min(1.0, std::sqrt(acc));
}

std::size_t kernel_dimension(int particles, int angular_momentum, const SpectraOptions& options) {
    return analyze_interaction_sector(particles, angular_momentum, options).kernel_dim;
}

}  // namespace lll
