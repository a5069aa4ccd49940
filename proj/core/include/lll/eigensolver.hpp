#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lll/fock_vector.hpp"
#include "lll/operators.hpp"

namespace lll {

struct EigenPair {
    double value = 0.0;
    FockVector vector;
};

enum class EigenMethod { automatic, dense, lanczos };

/// Controls for lowest_eigenpairs. Defaults are part of the reproducibility contract.
struct EigenOptions {
    EigenMethod method = EigenMethod::automatic;
    /// automatic switches to block Lanczos above this dimension.
    std::size_t dense_threshold = 500;
    /// Lanczos block size; raised to `count` when smaller.
    std::size_t block_size = 4;
    /// Krylov basis size before a thick restart (clamped to the dimension).
    std::size_t max_basis = 160;
    std::size_t max_restarts = 200;
    /// Target residual ||A v - lambda v|| / ||A||.
    double tolerance = 1e-8;
    std::uint64_t seed = 0x5eed;
};

/// The `count` smallest eigenvalues in ascending order with orthonormal eigenvectors.
/// Throws ConvergenceError when the Lanczos residual target is not met.
std::vector<EigenPair> lowest_eigenpairs(const SparseSymmetricOperator& op, std::size_t count,
                                         const EigenOptions& options = {});

/// ||A v - lambda v|| for one pair.
double eigen_residual(const SparseSymmetricOperator& op, const EigenPair& pair);

}  // namespace lll
