#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pid/matrix.hpp"

namespace pid {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    std::vector<double> x;
    double objective = 0.0;
    /// Phase-one optimum: sum of artificial variables, > 0 when infeasible.
    double infeasibility = 0.0;
};

struct LpOptions {
    double pivot_tolerance = 1e-11;
    /// Phase-one objective above this (scaled by max(1, max|b|)) means infeasible.
    double feasibility_tolerance = 1e-8;
    std::size_t max_pivots = 200000;
};

/// min c.x subject to A x = b, x >= 0. Dense two-phase tableau simplex with
/// Bland's rule, so it cannot cycle. Redundant equality rows are dropped
/// after phase one. SolverError if the pivot limit is hit.
LpResult solve_lp(const Matrix& a, std::span<const double> b, std::span<const double> c,
                  LpOptions options = {});

}  // namespace pid
