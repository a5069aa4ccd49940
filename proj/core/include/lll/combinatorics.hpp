#pragma once

#include <cstddef>
#include <vector>

namespace lll {

/// log(n!), tabulated for small n.
double log_factorial(std::size_t n);

/// Number of partitions of `total` into at most `max_parts` parts.
/// Dynamic programming, no enumeration.
std::size_t count_partitions(int total, int max_parts);

}  // namespace lll
