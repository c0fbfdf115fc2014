#pragma once

#include <stdexcept>

namespace ltpc {

/// Uniform grid of n_points samples over one period; t_k = k*step, the
/// endpoint t = period_T is identified with t = 0.
struct TimeGrid {
    double period_T = 0.0;
    int n_points = 0;

    TimeGrid() = default;
    TimeGrid(double period, int n) : period_T(period), n_points(n) {
        if (!(period > 0.0))
            throw std::invalid_argument("TimeGrid: period must be positive");
        if (n < 2)
            throw std::invalid_argument("TimeGrid: need at least 2 points");
    }

    double step() const { return period_T / n_points; }
    double point(int k) const { return k * step(); }
};

} // namespace ltpc
