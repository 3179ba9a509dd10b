#include "pid/linprog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pid/error.hpp"

namespace pid {

namespace {

// Tableau rows 0..m-1 are constraints, row m is the objective (reduced costs,
// with minus the objective value in the last column).
class Tableau {
public:
    Tableau(std::size_t m, std::size_t n) : m_(m), n_(n), t_(m + 1, n + 1), basis_(m) {}

    double& at(std::size_t r, std::size_t c) { return t_(r, c); }
    double at(std::size_t r, std::size_t c) const { return t_(r, c); }
    double& rhs(std::size_t r) { return t_(r, n_); }
    std::size_t rows() const { return m_; }
    std::size_t cols() const { return n_; }
    std::vector<std::size_t>& basis() { return basis_; }

    void pivot(std::size_t row, std::size_t col) {
        const double inv = 1.0 / t_(row, col);
        for (std::size_t c = 0; c <= n_; ++c) t_(row, c) *= inv;
        t_(row, col) = 1.0;
        for (std::size_t r = 0; r <= m_; ++r) {
            if (r == row) continue;
            const double f = t_(r, col);
            if (f == 0.0) continue;
            for (std::size_t c = 0; c <= n_; ++c) t_(r, c) -= f * t_(row, c);
            t_(r, col) = 0.0;
        }
        basis_[row] = col;
    }

    void drop_row(std::size_t row) {
        Matrix next(m_, n_ + 1);
        std::size_t k = 0;
        for (std::size_t r = 0; r <= m_; ++r) {
            if (r == row) continue;
            for (std::size_t c = 0; c <= n_; ++c) next(k, c) = t_(r, c);
            ++k;
        }
        t_ = std::move(next);
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(row));
        --m_;
    }

    // Runs the simplex on columns [0, allowed); returns false if unbounded.
    bool optimize(std::size_t allowed, const LpOptions& options, std::size_t& pivots) {
        for (;;) {
            std::size_t enter = allowed;
            for (std::size_t c = 0; c < allowed; ++c) {
                if (t_(m_, c) < -options.pivot_tolerance) {
                    enter = c;
                    break;
                }
            }
            if (enter == allowed) return true;

            std::size_t leave = m_;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < m_; ++r) {
                const double a = t_(r, enter);
                if (a <= options.pivot_tolerance) continue;
                const double ratio = t_(r, n_) / a;
                if (ratio < best - 1e-15 ||
                    (std::abs(ratio - best) <= 1e-15 && basis_[r] < basis_[leave])) {
                    best = ratio;
                    leave = r;
                }
            }
            if (leave == m_) return false;
            if (++pivots > options.max_pivots)
                throw SolverError("simplex: pivot limit of " + std::to_string(options.max_pivots) +
                                  " reached");
            pivot(leave, enter);
        }
    }

private:
    std::size_t m_;
    std::size_t n_;
    Matrix t_;
    std::vector<std::size_t> basis_;
};

}  // namespace

LpResult solve_lp(const Matrix& a, std::span<const double> b, std::span<const double> c,
                  LpOptions options) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    if (b.size() != m || c.size() != n) throw ArgumentError("solve_lp: dimension mismatch");

    // Columns: n structural variables, then m artificials.
    Tableau tab(m, n + m);
    double scale = 1.0;
    for (std::size_t r = 0; r < m; ++r) {
        const double sign = b[r] < 0.0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n; ++j) tab.at(r, j) = sign * a(r, j);
        tab.at(r, n + r) = 1.0;
        tab.rhs(r) = sign * b[r];
        scale = std::max(scale, std::abs(b[r]));
        tab.basis()[r] = n + r;
    }
    // Phase one objective: sum of artificials, expressed in non-basic terms.
    for (std::size_t j = 0; j <= n + m; ++j) {
        if (j >= n && j < n + m) continue;
        double s = 0.0;
        for (std::size_t r = 0; r < m; ++r) s += tab.at(r, j);
        tab.at(m, j) = -s;
    }

    std::size_t pivots = 0;
    tab.optimize(n + m, options, pivots);

    LpResult result;
    result.infeasibility = -tab.at(tab.rows(), n + m);
    if (result.infeasibility > options.feasibility_tolerance * scale) {
        result.status = LpStatus::infeasible;
        return result;
    }

    // Drive remaining artificials out of the basis; rows where that is
    // impossible are linear combinations of the others.
    for (std::size_t r = 0; r < tab.rows();) {
        if (tab.basis()[r] < n) {
            ++r;
            continue;
        }
        std::size_t col = n;
        double biggest = options.pivot_tolerance * 1e3;
        for (std::size_t j = 0; j < n; ++j) {
            if (std::abs(tab.at(r, j)) > biggest) {
                biggest = std::abs(tab.at(r, j));
                col = j;
            }
        }
        if (col < n) {
            tab.pivot(r, col);
            ++r;
        } else {
            tab.drop_row(r);
        }
    }

    // Phase two objective row.
    const std::size_t rows = tab.rows();
    for (std::size_t j = 0; j <= n + m; ++j) tab.at(rows, j) = j < n ? c[j] : 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
        const double cb = c[tab.basis()[r]];
        if (cb == 0.0) continue;
        for (std::size_t j = 0; j <= n + m; ++j) tab.at(rows, j) -= cb * tab.at(r, j);
    }

    if (!tab.optimize(n, options, pivots)) {
        result.status = LpStatus::unbounded;
        return result;
    }

    result.status = LpStatus::optimal;
    result.x.assign(n, 0.0);
    for (std::size_t r = 0; r < rows; ++r) result.x[tab.basis()[r]] = std::max(0.0, tab.rhs(r));
    result.objective = 0.0;
    for (std::size_t j = 0; j < n; ++j) result.objective += c[j] * result.x[j];
    return result;
}

}  // namespace pid
