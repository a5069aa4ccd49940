#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <unordered_map>
#include <vector>

namespace lll {

/// Bosonic occupation numbers n[l] of the LLL orbitals z^l / sqrt(pi l!).
class Occupation {
public:
    using value_type = std::uint16_t;

    Occupation() = default;
    explicit Occupation(std::vector<value_type> counts) : counts_(std::move(counts)) { trim(); }
    Occupation(std::initializer_list<value_type> counts) : counts_(counts) { trim(); }

    /// Builds the occupation of a partition (parts = orbital indices of the particles).
    static Occupation from_orbitals(std::span<const int> orbitals);

    /// n[l]; zero beyond the highest occupied orbital.
    value_type operator[](std::size_t orbital) const {
        return orbital < counts_.size() ? counts_[orbital] : value_type{0};
    }

    /// One past the highest occupied orbital.
    std::size_t extent() const { return counts_.size(); }

    int particle_count() const;
    int angular_momentum() const;
    /// sum_l l^2 n[l], the single-particle L^2 summed over particles.
    long long angular_momentum_squared() const;

    /// Orbital indices of all particles in non-increasing order.
    std::vector<int> orbitals() const;

    const std::vector<value_type>& counts() const { return counts_; }

    friend bool operator==(const Occupation&, const Occupation&) = default;

private:
    void trim() {
        while (!counts_.empty() && counts_.back() == 0) counts_.pop_back();
    }

    std::vector<value_type> counts_;
};

struct OccupationHash {
    std::size_t operator()(const Occupation& occ) const noexcept;
};

struct SectorTag {
    int particles = 0;
    int angular_momentum = 0;

    friend bool operator==(const SectorTag&, const SectorTag&) = default;
};

/// All occupations with sum n = N and sum l n = L, in lexicographically
/// decreasing order of the corresponding partitions of L.
class SectorBasis {
public:
    SectorBasis(int particles, int angular_momentum);

    int particles() const { return tag_.particles; }
    int angular_momentum() const { return tag_.angular_momentum; }
    SectorTag tag() const { return tag_; }

    std::size_t size() const { return states_.size(); }
    const Occupation& state_at(std::size_t position) const { return states_.at(position); }
    const std::vector<Occupation>& states() const { return states_; }

    /// Position of `occ`; throws InputError if it does not belong to this sector.
    std::size_t index_of(const Occupation& occ) const;
    /// Position of `occ` or size() when absent. No sector check.
    std::size_t find(const Occupation& occ) const;

private:
    SectorTag tag_;
    std::vector<Occupation> states_;
    std::unordered_map<Occupation, std::size_t, OccupationHash> index_;
};

SectorBasis enumerate_sector(int particles, int angular_momentum);

/// Partition count of L into at most N parts; equals enumerate_sector(N, L).size().
std::size_t sector_dimension(int particles, int angular_momentum);

inline std::size_t index_of(const SectorBasis& basis, const Occupation& occ) { return basis.index_of(occ); }

}  // namespace lll
