#include "lll/operators.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <string>
#include <type_traits>

#include "lll/combinatorics.hpp"
#include "lll/errors.hpp"
#include "lll/parallel.hpp"

namespace lll {

void HamiltonianParams::validate() const {
    if (!(g >= 0.0)) throw InputError("coupling g must be >= 0");
    if (!(k >= 0.0)) throw InputError("quartic strength k must be >= 0");
    if (omega < 0.0 && k <= 0.0) throw InputError("omega < 0 requires k > 0");
    if (!std::isfinite(omega)) throw InputError("omega must be finite");
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    for (std::size_t i = 0; i < dim; ++i) {
        double acc = 0.0;
        for (std::size_t p = row_start[i]; p < row_start[i + 1]; ++p) acc += values[p] * x[cols[p]];
        y[i] = acc;
    }
}

SparseSymmetricOperator::SparseSymmetricOperator(std::size_t dim, SectorTag tag, std::vector<Triplet> upper)
    : dim_(dim), tag_(tag), entries_(std::move(upper)) {
    for (auto& t : entries_) {
        if (t.row > t.col) std::swap(t.row, t.col);
        if (t.col >= dim_) throw InputError("triplet index out of range");
    }
    std::sort(entries_.begin(), entries_.end(),
              [](const Triplet& a, const Triplet& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
    // merge duplicates
    std::size_t out = 0;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (out > 0 && entries_[out - 1].row == entries_[i].row && entries_[out - 1].col == entries_[i].col) {
            entries_[out - 1].value += entries_[i].value;
        } else {
            entries_[out++] = entries_[i];
        }
    }
    entries_.resize(out);
}

double SparseSymmetricOperator::at(std::size_t row, std::size_t col) const {
    if (row > col) std::swap(row, col);
    const auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair{row, col},
                                     [](const Triplet& t, const std::pair<std::size_t, std::size_t>& key) {
                                         return t.row != key.first ? t.row < key.first : t.col < key.second;
                                     });
    if (it != entries_.end() && it->row == row && it->col == col) return it->value;
    return 0.0;
}

std::vector<double> SparseSymmetricOperator::to_dense() const {
    std::vector<double> dense(dim_ * dim_, 0.0);
    for (const auto& t : entries_) {
        dense[t.row * dim_ + t.col] = t.value;
        dense[t.col * dim_ + t.row] = t.value;
    }
    return dense;
}

const CsrMatrix& SparseSymmetricOperator::csr() const {
    if (auto cached = std::atomic_load(&csr_)) return *cached;
    auto m = std::make_shared<CsrMatrix>();
    m->dim = dim_;
    std::vector<std::size_t> counts(dim_, 0);
    for (const auto& t : entries_) {
        ++counts[t.row];
        if (t.row != t.col) ++counts[t.col];
    }
    m->row_start.assign(dim_ + 1, 0);
    for (std::size_t i = 0; i < dim_; ++i) m->row_start[i + 1] = m->row_start[i] + counts[i];
    m->cols.resize(m->row_start[dim_]);
    m->values.resize(m->row_start[dim_]);
    std::vector<std::size_t> fill(m->row_start.begin(), m->row_start.end() - 1);
    for (const auto& t : entries_) {
        m->cols[fill[t.row]] = t.col;
        m->values[fill[t.row]++] = t.value;
        if (t.row != t.col) {
            m->cols[fill[t.col]] = t.row;
            m->values[fill[t.col]++] = t.value;
        }
    }
    std::shared_ptr<const CsrMatrix> published = m;
    std::atomic_store(&csr_, published);
    return *std::atomic_load(&csr_);
}

double SparseSymmetricOperator::norm_bound() const {
    std::vector<double> sums(dim_, 0.0);
    for (const auto& t : entries_) {
        sums[t.row] += std::abs(t.value);
        if (t.row != t.col) sums[t.col] += std::abs(t.value);
    }
    return sums.empty() ? 0.0 : *std::max_element(sums.begin(), sums.end());
}

double SparseSymmetricOperator::quadratic_form(std::span<const double> x, std::span<const double> y) const {
    if (x.size() != dim_ || y.size() != dim_) throw InputError("quadratic_form: dimension mismatch");
    double acc = 0.0;
    for (const auto& t : entries_) {
        acc += t.value * x[t.row] * y[t.col];
        if (t.row != t.col) acc += t.value * x[t.col] * y[t.row];
    }
    return acc;
}

double delta_matrix_element(int m1, int m2, int m3, int m4) {
    if (m1 < 0 || m2 < 0 || m3 < 0 || m4 < 0) throw InputError("orbital indices must be non-negative");
    const int total = m1 + m2;
    if (total != m3 + m4) return 0.0;
    const double log_value = log_factorial(static_cast<std::size_t>(total)) - total * std::numbers::ln2 -
                             0.5 * (log_factorial(static_cast<std::size_t>(m1)) + log_factorial(static_cast<std::size_t>(m2)) +
                                    log_factorial(static_cast<std::size_t>(m3)) + log_factorial(static_cast<std::size_t>(m4)));
    return std::exp(log_value) / (2.0 * std::numbers::pi);
}

namespace {

// Couplings <row| I_N |col> for all rows <= col, accumulated per target row.
void interaction_column(const SectorBasis& basis, std::size_t col, double drop_tolerance, std::vector<Triplet>& out) {
    const auto& ket = basis.state_at(col);
    const auto extent = static_cast<int>(basis.angular_momentum()) + 1;
    std::vector<Occupation::value_type> counts(static_cast<std::size_t>(extent), 0);
    for (std::size_t l = 0; l < ket.extent(); ++l) counts[l] = ket[l];

    std::vector<int> occupied;
    for (int l = 0; l < extent; ++l)
        if (counts[static_cast<std::size_t>(l)] > 0) occupied.push_back(l);

    std::map<std::size_t, double> row_values;
    for (std::size_t a = 0; a < occupied.size(); ++a) {
        for (std::size_t b = a; b < occupied.size(); ++b) {
            const int m3 = occupied[a];
            const int m4 = occupied[b];
            auto& n3 = counts[static_cast<std::size_t>(m3)];
            auto& n4 = counts[static_cast<std::size_t>(m4)];
            double annihilate;
            if (m3 == m4) {
                if (n3 < 2) continue;
                annihilate = std::sqrt(static_cast<double>(n3) * (n3 - 1));
            } else {
                annihilate = std::sqrt(static_cast<double>(n3) * n4);
            }
            --n3;
            --n4;
            const int total = m3 + m4;
            for (int m1 = 0; 2 * m1 <= total; ++m1) {
                const int m2 = total - m1;
                auto& n1 = counts[static_cast<std::size_t>(m1)];
                auto& n2 = counts[static_cast<std::size_t>(m2)];
                double create;
                if (m1 == m2) {
                    create = std::sqrt((n1 + 1.0) * (n1 + 2.0));
                } else {
                    create = std::sqrt((n1 + 1.0) * (n2 + 1.0));
                }
                ++n1;
                ++n2;
                const std::size_t row = basis.find(Occupation(counts));
                --n1;
                --n2;
                if (row > col) continue;
                // 1/2 sum over ordered pairs; unordered distinct pairs appear twice on each side.
                const double multiplicity = (m1 == m2 ? 1.0 : 2.0) * (m3 == m4 ? 1.0 : 2.0);
                row_values[row] += 0.5 * multiplicity * delta_matrix_element(m1, m2, m3, m4) * annihilate * create;
            }
            ++n3;
            ++n4;
        }
    }
    for (const auto& [row, value] : row_values) {
        if (std::abs(value) >= drop_tolerance)
            out.push_back({static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(col), value});
    }
}

void check_dim(const SectorBasis& basis, const AssemblyOptions& options) {
    if (basis.size() > options.max_dim) {
        throw ResourceError("sector (N=" + std::to_string(basis.particles()) + ", L=" +
                            std::to_string(basis.angular_momentum()) + ") has dimension " +
                            std::to_string(basis.size()) + " > max_dim " + std::to_string(options.max_dim));
    }
}

}  // namespace

SparseSymmetricOperator assemble_interaction(const SectorBasis& basis, const AssemblyOptions& options) {
    check_dim(basis, options);
    std::vector<std::vector<Triplet>> columns(basis.size());
    parallel_for(basis.size(), options.workers,
                 [&](std::size_t col) { interaction_column(basis, col, options.drop_tolerance, columns[col]); });
    std::vector<Triplet> all;
    for (auto& c : columns) all.insert(all.end(), c.begin(), c.end());
    return SparseSymmetricOperator(basis.size(), basis.tag(), std::move(all));
}

std::vector<double> angular_momentum_squared_diagonal(const SectorBasis& basis) {
    std::vector<double> diag(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        diag[i] = static_cast<double>(basis.state_at(i).angular_momentum_squared());
    return diag;
}

SparseSymmetricOperator assemble_hamiltonian(const SectorBasis& basis, const HamiltonianParams& params,
                                             const SparseSymmetricOperator& interaction) {
    params.validate();
    if (interaction.dim() != basis.size() || !(interaction.tag() == basis.tag()))
        throw InputError("interaction operator does not belong to this sector");
    const double shift = (params.omega + 3.0 * params.k) * basis.angular_momentum();
    const auto l2 = angular_momentum_squared_diagonal(basis);
    std::vector<Triplet> entries;
    entries.reserve(interaction.entries().size() + basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        entries.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i), shift + params.k * l2[i]});
    if (params.g != 0.0) {
        for (const auto& t : interaction.entries()) entries.push_back({t.row, t.col, params.g * t.value});
    }
    return SparseSymmetricOperator(basis.size(), basis.tag(), std::move(entries));
}

SparseSymmetricOperator assemble_hamiltonian(const SectorBasis& basis, const HamiltonianParams& params,
                                             const AssemblyOptions& options) {
    params.validate();
    check_dim(basis, options);
    if (params.g == 0.0) return assemble_hamiltonian(basis, params, SparseSymmetricOperator(basis.size(), basis.tag(), {}));
    return assemble_hamiltonian(basis, params, assemble_interaction(basis, options));
}

namespace {

constexpr std::uint32_t kCacheMagic = 0x4F4C4C4Cu;  // "LLLO" little-endian
constexpr std::uint32_t kCacheVersion = 1;

template <class T>
void put(std::ostream& os, T value) {
    static_assert(std::is_trivially_copyable_v<T>);
    if constexpr (std::endian::native == std::endian::big) {
        auto bytes = std::bit_cast<std::array<char, sizeof(T)>>(value);
        std::reverse(bytes.begin(), bytes.end());
        os.write(bytes.data(), sizeof(T));
    } else {
        os.write(reinterpret_cast<const char*>(&value), sizeof(T));
    }
}

template <class T>
T get(std::istream& is) {
    std::array<char, sizeof(T)> bytes{};
    if (!is.read(bytes.data(), sizeof(T))) throw InputError("operator cache truncated");
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
    return std::bit_cast<T>(bytes);
}

}  // namespace

void write_operator_cache(const std::filesystem::path& path, const SparseSymmetricOperator& op) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw InputError("cannot open cache file for writing: " + path.string());
    put<std::uint32_t>(os, kCacheMagic);
    put<std::uint32_t>(os, kCacheVersion);
    put<std::int32_t>(os, op.tag().particles);
    put<std::int32_t>(os, op.tag().angular_momentum);
    put<std::uint64_t>(os, op.dim());
    put<std::uint64_t>(os, op.entries().size());
    for (const auto& t : op.entries()) {
        put<std::uint32_t>(os, t.row);
        put<std::uint32_t>(os, t.col);
        put<double>(os, t.value);
    }
    if (!os) throw InputError("failed writing cache file: " + path.string());
}

SparseSymmetricOperator read_operator_cache(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw InputError("cannot open cache file: " + path.string());
    if (get<std::uint32_t>(is) != kCacheMagic) throw InputError("not an operator cache file: " + path.string());
    if (get<std::uint32_t>(is) != kCacheVersion) throw InputError("unsupported operator cache version");
    SectorTag tag;
    tag.particles = get<std::int32_t>(is);
    tag.angular_momentum = get<std::int32_t>(is);
    const auto dim = get<std::uint64_t>(is);
    const auto count = get<std::uint64_t>(is);
    std::vector<Triplet> entries;
    entries.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        Triplet t{};
        t.row = get<std::uint32_t>(is);
        t.col = get<std::uint32_t>(is);
        t.value = get<double>(is);
        entries.push_back(t);
    }
    return SparseSymmetricOperator(dim, tag, std::move(entries));
}

SparseSymmetricOperator cached_interaction(const SectorBasis& basis, const std::filesystem::path& cache_dir,
                                           const AssemblyOptions& options) {
    const auto file = cache_dir / ("interaction_N" + std::to_string(basis.particles()) + "_L" +
                                   std::to_string(basis.angular_momentum()) + ".bin");
    if (std::filesystem::exists(file)) {
        auto op = read_operator_cache(file);
        if (op.tag() == basis.tag() && op.dim() == basis.size()) return op;
    }
    auto op = assemble_interaction(basis, options);
    std::filesystem::create_directories(cache_dir);
    write_operator_cache(file, op);
    return op;
}

}  // namespace lll
