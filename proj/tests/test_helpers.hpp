#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "uur/common.hpp"
#include "uur/rng.hpp"

namespace uur::test {

/// Independent majorization oracle: sorts both vectors and compares prefix
/// sums directly. Deliberately separate from the library implementation.
inline bool brute_majorized_by(std::vector<double> x, std::vector<double> y, double slack = 1e-9) {
    const std::size_t n = std::max(x.size(), y.size());
    x.resize(n, 0.0);
    y.resize(n, 0.0);
    std::sort(x.rbegin(), x.rend());
    std::sort(y.rbegin(), y.rend());
    double cx = 0.0, cy = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        cx += x[k];
        cy += y[k];
        if (cx > cy + slack) return false;
    }
    return true;
}

inline std::vector<double> to_std(const RVector& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

/// Uniform simplex sample via normalized exponentials.
inline RVector random_simplex(int dim, Rng& rng) {
    RVector v(dim);
    double sum = 0.0;
    for (int i = 0; i < dim; ++i) {
        v(i) = -std::log(1.0 - rng.uniform());
        sum += v(i);
    }
    return v / sum;
}

}  // namespace uur::test
