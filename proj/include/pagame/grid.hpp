#pragma once

#include <cstddef>
#include <vector>

namespace pagame {

/// k-th of `points` uniformly spaced abscissae over [lo, hi]; the last one is hi exactly.
inline double grid_point(double lo, double hi, std::size_t k, std::size_t points) {
    if (k + 1 >= points) return hi;
    return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1);
}

inline std::vector<double> uniform_grid(double lo, double hi, std::size_t points) {
    std::vector<double> g(points);
    for (std::size_t k = 0; k < points; ++k) g[k] = grid_point(lo, hi, k, points);
    return g;
}

}  // namespace pagame
