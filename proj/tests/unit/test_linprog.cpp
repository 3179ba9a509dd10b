#include <doctest.h>

#include <random>

#include "pid/axioms.hpp"
#include "pid/linprog.hpp"

using namespace pid;
using doctest::Approx;

TEST_SUITE("linprog") {

TEST_CASE("small optimum") {
    // min -x1 - 2 x2  s.t. x1 + x2 + s1 = 4, x1 + 3 x2 + s2 = 6
    const Matrix a{{1, 1, 1, 0}, {1, 3, 0, 1}};
    const std::vector<double> b{4, 6};
    const std::vector<double> c{-1, -2, 0, 0};
    const auto r = solve_lp(a, b, c);
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.objective == Approx(-5.0));
    CHECK(r.x[0] == Approx(3.0));
    CHECK(r.x[1] == Approx(1.0));
}

TEST_CASE("infeasible and unbounded") {
    const Matrix a{{1, 1}};
    CHECK(solve_lp(a, std::vector<double>{-1}, std::vector<double>{0, 0}).status ==
          LpStatus::infeasible);
    const Matrix u{{1, -1}};
    CHECK(solve_lp(u, std::vector<double>{1}, std::vector<double>{-1, 0}).status ==
          LpStatus::unbounded);
}

TEST_CASE("redundant and degenerate rows") {
    // the same constraint three times, once scaled, plus a zero row
    const Matrix a{{1, 1, 1}, {2, 2, 2}, {1, 1, 1}, {0, 0, 0}};
    const std::vector<double> b{1, 2, 1, 0};
    const auto r = solve_lp(a, b, std::vector<double>{3, 1, 2});
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.objective == Approx(1.0));
    CHECK(r.x[1] == Approx(1.0));
}

TEST_CASE("random transportation problems match a brute-force vertex search") {
    // 2x3 transportation polytopes: the optimum is at one of the vertices,
    // which are enumerated by fixing the basis of the flow tree.
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 200; ++trial) {
        const double s0 = 0.1 + unit_uniform(gen);
        const double s1 = 0.1 + unit_uniform(gen);
        double d0 = unit_uniform(gen), d1 = unit_uniform(gen), d2 = unit_uniform(gen);
        const double scale = (s0 + s1) / (d0 + d1 + d2);
        d0 *= scale, d1 *= scale, d2 *= scale;
        std::vector<double> cost(6);
        for (auto& v : cost) v = unit_uniform(gen) * 2 - 1;
        Matrix a(5, 6);
        for (int j = 0; j < 3; ++j) a(0, j) = 1, a(1, 3 + j) = 1;
        for (int j = 0; j < 3; ++j) a(2 + j, j) = 1, a(2 + j, 3 + j) = 1;
        const std::vector<double> b{s0, s1, d0, d1, d2};
        const auto r = solve_lp(a, b, cost);
        REQUIRE(r.status == LpStatus::optimal);
        // Flows x_0j determine x_1j = d_j - x_0j; grid search the 2-D slice
        // x_00 + x_01 + x_02 = s0 at vertices: each x_0j in {0, d_j} or the
        // one free coordinate fixed by the supply.
        double best = 1e300;
        const double d[3] = {d0, d1, d2};
        for (int free = 0; free < 3; ++free) {
            for (int mask = 0; mask < 4; ++mask) {
                double x0[3];
                double used = 0.0;
                int bit = 0;
                for (int j = 0; j < 3; ++j) {
                    if (j == free) continue;
                    x0[j] = (mask >> bit++ & 1) ? d[j] : 0.0;
                    used += x0[j];
                }
                x0[free] = s0 - used;
                if (x0[free] < -1e-12 || x0[free] > d[free] + 1e-12) continue;
                double v = 0.0;
                for (int j = 0; j < 3; ++j) v += cost[j] * x0[j] + cost[3 + j] * (d[j] - x0[j]);
                best = std::min(best, v);
            }
        }
        CHECK(r.objective == Approx(best).epsilon(1e-9));
        for (std::size_t i = 0; i < 5; ++i) {
            double lhs = 0.0;
            for (std::size_t j = 0; j < 6; ++j) lhs += a(i, j) * r.x[j];
            CHECK(lhs == Approx(b[i]).epsilon(1e-9));
        }
        for (double v : r.x) CHECK(v >= -1e-12);
    }
}

}
