#pragma once

#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "lll/basis.hpp"
#include "lll/errors.hpp"

namespace lll {

/// Real amplitudes over the occupation basis of one (N, L) sector.
struct FockVector {
    SectorTag tag;
    std::vector<double> coeffs;

    std::size_t size() const { return coeffs.size(); }

    double norm() const { return std::sqrt(std::inner_product(coeffs.begin(), coeffs.end(), coeffs.begin(), 0.0)); }

    void normalize() {
        const double n = norm();
        if (n == 0.0) throw InputError("cannot normalize a zero vector");
        for (auto& c : coeffs) c /= n;
    }
};

inline double dot(const FockVector& a, const FockVector& b) {
    if (!(a.tag == b.tag) || a.size() != b.size()) throw InputError("dot: vectors live in different sectors");
    return std::inner_product(a.coeffs.begin(), a.coeffs.end(), b.coeffs.begin(), 0.0);
}

}  // namespace lll
