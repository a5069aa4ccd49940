#include "lll/combinatorics.hpp"

#include <array>
#include <cmath>

#include "lll/errors.hpp"

namespace lll {

namespace {

constexpr std::size_t kTableSize = 2048;

const std::array<double, kTableSize>& log_factorial_table() {
    static const auto table = [] {
        std::array<double, kTableSize> t{};
        for (std::size_t n = 0; n < kTableSize; ++n) t[n] = std::lgamma(static_cast<double>(n) + 1.0);
        return t;
    }();
    return table;
}

}  // namespace

double log_factorial(std::size_t n) {
    if (n < kTableSize) return log_factorial_table()[n];
    return std::lgamma(static_cast<double>(n) + 1.0);
}

std::size_t count_partitions(int total, int max_parts) {
    if (total < 0 || max_parts < 0) throw InputError("count_partitions: negative argument");
    if (total == 0) return 1;
    if (max_parts == 0) return 0;
    // Partitions into at most k parts are conjugate to partitions with parts <= k.
    std::vector<std::size_t> ways(static_cast<std::size_t>(total) + 1, 0);
    ways[0] = 1;
    for (int part = 1; part <= max_parts; ++part) {
        for (int n = part; n <= total; ++n) ways[n] += ways[n - part];
    }
    return ways[static_cast<std::size_t>(total)];
}

}  // namespace lll
