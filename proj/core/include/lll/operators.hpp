#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <vector>

#include "lll/basis.hpp"
#include "lll/fock_vector.hpp"

namespace lll {

/// Parameters of H = (omega + 3k) L + k sum_i L_i^2 + g I_N.
struct HamiltonianParams {
    double omega = 0.0;
    double g = 1.0;
    double k = 0.0;

    /// Throws InputError unless g >= 0, k >= 0 and (omega >= 0 or k > 0).
    void validate() const;
};

struct Triplet {
    std::uint32_t row;
    std::uint32_t col;
    double value;

    friend bool operator==(const Triplet&, const Triplet&) = default;
};

/// Compressed sparse rows holding both triangles.
struct CsrMatrix {
    std::size_t dim = 0;
    std::vector<std::size_t> row_start;
    std::vector<std::uint32_t> cols;
    std::vector<double> values;

    /// y = A x
    void multiply(std::span<const double> x, std::span<double> y) const;
};

/// Real symmetric operator on one sector, upper triangle (row <= col) stored.
class SparseSymmetricOperator {
public:
    SparseSymmetricOperator() = default;
    SparseSymmetricOperator(std::size_t dim, SectorTag tag, std::vector<Triplet> upper);

    std::size_t dim() const { return dim_; }
    SectorTag tag() const { return tag_; }
    const std::vector<Triplet>& entries() const { return entries_; }

    /// Entry (i, j) of the full symmetric matrix.
    double at(std::size_t row, std::size_t col) const;

    /// Dense row-major copy of the full matrix.
    std::vector<double> to_dense() const;

    const CsrMatrix& csr() const;

    /// Max absolute row sum; an upper bound on the spectral norm.
    double norm_bound() const;

    /// <x, A y>
    double quadratic_form(std::span<const double> x, std::span<const double> y) const;
    double expectation(const FockVector& v) const { return quadratic_form(v.coeffs, v.coeffs); }

    friend bool operator==(const SparseSymmetricOperator& a, const SparseSymmetricOperator& b) {
        return a.dim_ == b.dim_ && a.tag_ == b.tag_ && a.entries_ == b.entries_;
    }

private:
    std::size_t dim_ = 0;
    SectorTag tag_;
    std::vector<Triplet> entries_;  // sorted by (row, col), no duplicates
    mutable std::shared_ptr<const CsrMatrix> csr_;
};

/// <m1, m2| delta_12 |m3, m4> between normalized product orbitals:
/// (2 pi)^-1 2^-M M! / sqrt(m1! m2! m3! m4!) when m1 + m2 = m3 + m4 = M, else 0.
double delta_matrix_element(int m1, int m2, int m3, int m4);

struct AssemblyOptions {
    std::size_t max_dim = 200000;
    unsigned workers = 1;
    /// Assembled entries below this magnitude are dropped.
    double drop_tolerance = 1e-14;
};

/// I_N = sum_{i<j} delta_ij on the sector.
SparseSymmetricOperator assemble_interaction(const SectorBasis& basis, const AssemblyOptions& options = {});

/// (omega + 3k) L Id + k diag(sum_l l^2 n_l) + g I_N.
SparseSymmetricOperator assemble_hamiltonian(const SectorBasis& basis, const HamiltonianParams& params,
                                             const AssemblyOptions& options = {});

/// Same, reusing an already assembled interaction.
SparseSymmetricOperator assemble_hamiltonian(const SectorBasis& basis, const HamiltonianParams& params,
                                             const SparseSymmetricOperator& interaction);

/// Diagonal of sum_i L_i^2 in the occupation basis.
std::vector<double> angular_momentum_squared_diagonal(const SectorBasis& basis);

// Binary cache, little-endian:
//   u32 magic "LLLO", u32 version (1), i32 N, i32 L,
//   u64 dim, u64 triplet count, then per triplet: u32 row, u32 col, f64 value.
void write_operator_cache(const std::filesystem::path& path, const SparseSymmetricOperator& op);
SparseSymmetricOperator read_operator_cache(const std::filesystem::path& path);

/// Assembles the interaction of (N, L) or loads it from `cache_dir/interaction_N{N}_L{L}.bin`.
SparseSymmetricOperator cached_interaction(const SectorBasis& basis, const std::filesystem::path& cache_dir,
                                           const AssemblyOptions& options = {});

}  // namespace lll
