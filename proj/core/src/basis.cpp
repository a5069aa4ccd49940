#include "lll/basis.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <string>

#include "lll/combinatorics.hpp"
#include "lll/errors.hpp"

namespace lll {

namespace {

void check_sector_args(int particles, int angular_momentum) {
    if (particles < 1) throw InputError("sector requires N >= 1, got " + std::to_string(particles));
    if (angular_momentum < 0) throw InputError("sector requires L >= 0, got " + std::to_string(angular_momentum));
    if (particles > std::numeric_limits<Occupation::value_type>::max())
        throw InputError("particle count exceeds occupation storage");
}

// Visits partitions of `remaining` into at most `slots` parts, each <= `max_part`,
// in lexicographically decreasing order.
void visit_partitions(int remaining, int max_part, int slots, std::vector<int>& parts,
                      const std::function<void(const std::vector<int>&)>& visit) {
    if (remaining == 0) {
        visit(parts);
        return;
    }
    if (slots == 0) return;
    // Need remaining <= slots * part, i.e. part >= ceil(remaining / slots).
    const int lowest = (remaining + slots - 1) / slots;
    for (int part = std::min(max_part, remaining); part >= lowest; --part) {
        parts.push_back(part);
        visit_partitions(remaining - part, part, slots - 1, parts, visit);
        parts.pop_back();
    }
}

}  // namespace

Occupation Occupation::from_orbitals(std::span<const int> orbitals) {
    std::vector<value_type> counts;
    for (int l : orbitals) {
        if (l < 0) throw InputError("negative orbital index");
        if (static_cast<std::size_t>(l) >= counts.size()) counts.resize(static_cast<std::size_t>(l) + 1, 0);
        ++counts[static_cast<std::size_t>(l)];
    }
    return Occupation(std::move(counts));
}

int Occupation::particle_count() const {
    int total = 0;
    for (auto n : counts_) total += n;
    return total;
}

int Occupation::angular_momentum() const {
    int total = 0;
    for (std::size_t l = 0; l < counts_.size(); ++l) total += static_cast<int>(l) * counts_[l];
    return total;
}

long long Occupation::angular_momentum_squared() const {
    long long total = 0;
    for (std::size_t l = 0; l < counts_.size(); ++l) {
        const auto ll = static_cast<long long>(l);
        total += ll * ll * counts_[l];
    }
    return total;
}

std::vector<int> Occupation::orbitals() const {
    std::vector<int> out;
    for (std::size_t l = counts_.size(); l-- > 0;) out.insert(out.end(), counts_[l], static_cast<int>(l));
    return out;
}

std::size_t OccupationHash::operator()(const Occupation& occ) const noexcept {
    // FNV-1a over the counts.
    std::size_t h = 1469598103934665603ull;
    for (auto n : occ.counts()) {
        h ^= n;
        h *= 1099511628211ull;
    }
    return h;
}

SectorBasis::SectorBasis(int particles, int angular_momentum) : tag_{particles, angular_momentum} {
    check_sector_args(particles, angular_momentum);
    states_.reserve(sector_dimension(particles, angular_momentum));
    std::vector<int> parts;
    parts.reserve(static_cast<std::size_t>(particles));
    visit_partitions(angular_momentum, angular_momentum, particles, parts, [&](const std::vector<int>& p) {
        std::vector<Occupation::value_type> counts(static_cast<std::size_t>(angular_momentum) + 1, 0);
        counts[0] = static_cast<Occupation::value_type>(particles - static_cast<int>(p.size()));
        for (int l : p) ++counts[static_cast<std::size_t>(l)];
        states_.emplace_back(std::move(counts));
    });
    index_.reserve(states_.size());
    for (std::size_t i = 0; i < states_.size(); ++i) index_.emplace(states_[i], i);
}

std::size_t SectorBasis::find(const Occupation& occ) const {
    const auto it = index_.find(occ);
    return it == index_.end() ? states_.size() : it->second;
}

std::size_t SectorBasis::index_of(const Occupation& occ) const {
    if (occ.particle_count() != tag_.particles || occ.angular_momentum() != tag_.angular_momentum) {
        throw InputError("occupation not in sector (N=" + std::to_string(tag_.particles) +
                         ", L=" + std::to_string(tag_.angular_momentum) + ")");
    }
    const auto pos = find(occ);
    if (pos == states_.size()) throw InputError("occupation not in sector");
    return pos;
}

SectorBasis enumerate_sector(int particles, int angular_momentum) { return SectorBasis(particles, angular_momentum); }

std::size_t sector_dimension(int particles, int angular_momentum) {
    check_sector_args(particles, angular_momentum);
    return count_partitions(angular_momentum, particles);
}

}  // namespace lll
