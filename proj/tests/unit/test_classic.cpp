#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "pid/axioms.hpp"
#include "pid/ci_union.hpp"
#include "pid/classic.hpp"
#include "pid/error.hpp"

using namespace pid;
using doctest::Approx;
using testing::corpus;
using testing::idx;

TEST_SUITE("classic") {

TEST_CASE("whole minus sum") {
    CHECK(wms_synergy(canonical("AND"), VariableSet{0}) == Approx(0.1887).epsilon(5e-4));
    CHECK(wms_synergy(canonical("ANDDUPLICATE"), VariableSet{0}) == Approx(-0.1226).epsilon(5e-4));
    CHECK(wms_synergy(canonical("XOR"), VariableSet{0}) == Approx(1.0));
    std::mt19937_64 gen(2);
    for (int trial = 0; trial < 40; ++trial) {
        const auto d = random_distribution(gen, 3, 3);
        const auto tab = oracle::from(d);
        const double expected = oracle::mi(tab, {1, 2, 3}, {0}) - oracle::mi(tab, {1}, {0}) -
                                oracle::mi(tab, {2}, {0}) - oracle::mi(tab, {3}, {0});
        CHECK(wms_synergy(d, VariableSet{0}) == Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("specific information examples") {
    const auto x = canonical("XOR");
    CHECK(specific_information(x, VariableSet{0}, Source{1}, {0}) == Approx(0.0));
    CHECK(specific_information(x, VariableSet{0}, Source{1}, {1}) == Approx(0.0));
    const auto e = canonical("T_EQ_Y1");
    CHECK(specific_information(e, VariableSet{0}, Source{1}, {0}) == Approx(1.0));
    const auto a = canonical("AND");
    CHECK(specific_information(a, VariableSet{0}, Source{1}, {1}) == Approx(1.0));
    const JointDistribution z({{"T", {"0", "1"}}, {"Y", {"0"}}}, {{{0, 0}, 1.0}, {{1, 0}, 0.0}});
    CHECK_THROWS_AS(specific_information(z, VariableSet{0}, Source{1}, {1}), ArgumentError);
}

TEST_CASE("specific information and I_min against brute force") {
    std::mt19937_64 gen(31);
    for (int trial = 0; trial < 40; ++trial) {
        const auto d = random_distribution(gen, 2, 3);
        const auto tab = oracle::from(d);
        const VariableSet t{0};
        const SourceCollection coll{Source{1}, Source{2}, Source{1, 2}};
        const auto table = specific_information_table(d, t, coll);
        for (std::size_t s = 0; s < table.states.size(); ++s) {
            const oracle::Key state(table.states[s].begin(), table.states[s].end());
            for (std::size_t i = 0; i < coll.size(); ++i)
                CHECK(table.values[s][i] ==
                      Approx(oracle::specific(tab, {0}, idx(coll[i].members()), state)).epsilon(1e-10));
        }
        CHECK(imin_redundancy(d, t, SourceCollection{Source{1}, Source{2}}) ==
              Approx(oracle::imin(tab, {0}, {{1}, {2}})).epsilon(1e-10));
        CHECK(imin_redundancy(d, t, SourceCollection{Source{1, 2}}) ==
              Approx(oracle::mi(tab, {1, 2}, {0})).epsilon(1e-10));
    }
}

TEST_CASE("I_min examples") {
    auto a = corpus("AND");
    CHECK(imin_redundancy(a.dist, a.t, a.coll) == Approx(0.3113).epsilon(5e-4));
    auto x = corpus("XOR");
    CHECK(imin_redundancy(x.dist, x.t, x.coll) == Approx(0.0));
}

TEST_CASE("Williams-Beer decomposition examples") {
    const auto x = wb_pid(canonical("XOR"), VariableSet{0});
    CHECK(x.at("{12}") == Approx(1.0));
    CHECK(x.at("S_WB") == Approx(1.0));
    const auto c = wb_pid(canonical("COPY"), VariableSet{0});
    CHECK(c.at("{12}") == Approx(1.0));
    CHECK(c.at("{1}{2}") == Approx(1.0));
    CHECK(wb_pid(canonical("RDNUNQXOR"), VariableSet{0}).at("S_WB") == Approx(2.0));
    CHECK_THROWS_AS(wb_pid(canonical("ADAPTED_REDUCED_OR", 0.5), VariableSet{0, 1, 2}),
                    ArgumentError);
}

TEST_CASE("trivariate synergy counts atoms outside every single source") {
    CHECK(wb_pid(canonical("XORDUPLICATE"), VariableSet{0}).at("S_WB") == Approx(1.0));
    CHECK(wb_pid(canonical("ANDDUPLICATE"), VariableSet{0}).at("S_WB") == Approx(0.5));
    CHECK(wb_pid(canonical("XORLOSES"), VariableSet{0}).at("S_WB") == Approx(0.0));
    CHECK(wb_pid(canonical("XORMULTICOAL"), VariableSet{0}).at("S_WB") == Approx(1.0));
}

TEST_CASE("Williams-Beer atoms invert the cumulative redundancies") {
    std::mt19937_64 gen(12);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + trial % 2;
        const auto d = random_distribution(gen, n, 3);
        const VariableSet t{0};
        const RedundancyLattice lat(n);
        const auto cumulative = wb_redundancies(d, t, lat);
        const auto res = wb_pid(d, t);
        double total = 0.0;
        for (std::size_t i = 0; i < lat.size(); ++i) {
            double s = 0.0;
            for (auto j : lat.down_set(i)) s += res.at(lat.label(j));
            CHECK(s == Approx(cumulative[i]).epsilon(1e-9));
            total += res.at(lat.label(i));
        }
        const double i_all = mutual_information(d, d.complement(t), t);
        CHECK(total == Approx(i_all).epsilon(1e-6));
        // cumulative value at a node is I_min over the node's sources (brute force)
        const auto tab = oracle::from(d);
        for (std::size_t i = 0; i < lat.size(); ++i) {
            std::vector<oracle::Idx> sources;
            for (auto mask : lat.node(i).antichain) {
                oracle::Idx s;
                for (std::size_t v = 0; v < n; ++v)
                    if (mask >> v & 1u) s.push_back(v + 1);
                sources.push_back(s);
            }
            CHECK(cumulative[i] == Approx(oracle::imin(tab, {0}, sources)).epsilon(1e-9));
        }
    }
}

TEST_CASE("correlational importance") {
    CHECK(delta_i_synergy(canonical("AND"), VariableSet{0}) == Approx(0.104).epsilon(5e-4));
    CHECK(delta_i_synergy(canonical("XOR"), VariableSet{0}) == Approx(1.0));
    CHECK(delta_i_synergy(canonical("ANDDUPLICATE"), VariableSet{0}) ==
          Approx(0.038).epsilon(5e-4));
    std::mt19937_64 gen(44);
    int evaluated = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto d = random_distribution(gen, 2, 3);
        const double v = delta_i_synergy(d, VariableSet{0});
        ++evaluated;
        CHECK(v >= 0.0);
        CHECK(v == Approx(oracle::delta_i(oracle::from(d), {0}, {1, 2})).epsilon(1e-9));
    }
    CHECK(evaluated == 100);
}

TEST_CASE("maximum entropy fitting") {
    const auto a = canonical("AND");
    const std::vector<VariableSet> ci{VariableSet{0, 1}, VariableSet{0, 2}};
    const auto r = maxent_ipf(a, ci);
    const auto q = build_q(a, VariableSet{0}, CiPartition{{VariableSet{1}, VariableSet{2}}, {0, 1}});
    for (const auto& row : q.rows()) CHECK(r.probability(row.outcome) == Approx(row.probability.value).epsilon(1e-7));

    const std::vector<VariableSet> full{a.all()};
    const auto same = maxent_ipf(a, full);
    for (const auto& row : a.rows()) CHECK(same.probability(row.outcome) == Approx(row.probability.value).epsilon(1e-9));

    const std::vector<VariableSet> pairs{VariableSet{0, 1}, VariableSet{0, 2}, VariableSet{1, 2}};
    const auto rr = maxent_ipf(a, pairs);
    CHECK(mutual_information(rr, VariableSet{1, 2}, VariableSet{0}) <=
          mutual_information(a, VariableSet{1, 2}, VariableSet{0}) + 1e-7);

    CHECK_THROWS_AS(maxent_ipf(a, std::vector<VariableSet>{VariableSet{0, 1}}), ArgumentError);
    CHECK_THROWS_AS(maxent_ipf(a, std::vector<VariableSet>{}), ArgumentError);
}

TEST_CASE("fitted marginals match and perturbations lose entropy") {
    std::mt19937_64 gen(77);
    for (int trial = 0; trial < 20; ++trial) {
        const auto d = random_distribution(gen, 2, 3);
        const std::vector<VariableSet> pairs{VariableSet{0, 1}, VariableSet{0, 2}, VariableSet{1, 2}};
        const auto r = maxent_ipf(d, pairs);
        for (const auto& m : pairs) {
            const auto want = oracle::marg(oracle::from(d), idx(m));
            const auto got = oracle::marg(oracle::from(r), idx(m));
            for (const auto& [k, p] : want) {
                auto it = got.find(k);
                CHECK(std::abs((it == got.end() ? 0.0 : it->second) - p) < 1e-8);
            }
        }
        // Moves along a 2x2x2 "checkerboard" keep every pairwise marginal.
        std::vector<std::size_t> radix;
        for (const auto& v : r.variables()) radix.push_back(v.alphabet.size());
        auto prob = [&](const Outcome& o) { return r.probability(o); };
        const double h0 = entropy(r, r.all());
        for (int k = 0; k < 100; ++k) {
            Outcome lo(3), hi(3);
            for (std::size_t i = 0; i < 3; ++i) {
                const auto x = uniform_index(gen, radix[i]);
                auto y = uniform_index(gen, radix[i] - 1);
                if (y >= x) ++y;
                lo[i] = static_cast<std::uint32_t>(x);
                hi[i] = static_cast<std::uint32_t>(y);
            }
            std::vector<std::pair<Outcome, int>> corners;
            for (int mask = 0; mask < 8; ++mask) {
                Outcome o(3);
                int parity = 0;
                for (std::size_t i = 0; i < 3; ++i) {
                    const bool up = mask >> i & 1;
                    o[i] = up ? hi[i] : lo[i];
                    parity += up;
                }
                corners.emplace_back(o, parity % 2 == 0 ? 1 : -1);
            }
            double room = 1.0;
            for (const auto& [o, s] : corners)
                if (s < 0) room = std::min(room, prob(o));
            if (!(room > 1e-6)) continue;
            const double eps = 0.5 * room * unit_uniform(gen);
            double h = 0.0;
            std::map<Outcome, double> moved;
            for (const auto& row : r.rows()) moved[row.outcome] = row.probability.value;
            for (const auto& [o, s] : corners) moved[o] += s * eps;
            for (const auto& [o, p] : moved)
                if (p > 0) h -= p * std::log2(p);
            CHECK(h <= h0 + 1e-9);
        }
    }
}

TEST_CASE("dependency synergy") {
    CHECK(dep_synergy(canonical("XOR"), VariableSet{0}).at("S") == Approx(1.0));
    const auto a = dep_synergy(canonical("AND"), VariableSet{0});
    CHECK(a.at("S") == Approx(0.2704).epsilon(5e-4));
    CHECK(a.at("S") == Approx(ci_synergy(canonical("AND"), VariableSet{0},
                                          SourceCollection{Source{1}, Source{2}}))
                           .epsilon(1e-3));
    CHECK(a.at("I_r") <= 0.811278 + 1e-6);
    CHECK_THROWS_AS(dep_synergy(canonical("XORLOSES"), VariableSet{0}), ArgumentError);
}

TEST_CASE("bookkeeping from a redundancy value") {
    const auto tc = iep_bivariate_from_redundancy(canonical("TWEAKED_COPY"), VariableSet{0}, 0.0);
    CHECK(tc.at("U1") == Approx(0.918).epsilon(1e-3));
    CHECK(tc.at("U2") == Approx(0.918).epsilon(1e-3));
    CHECK(tc.at("S") == Approx(-0.251).epsilon(1e-3));
    const auto e = iep_bivariate_from_redundancy(canonical("T_EQ_Y1"), VariableSet{0}, 0.0);
    CHECK(e.at("U1") == Approx(1.0));
    CHECK(e.at("U2") == Approx(0.0));
    CHECK(e.at("S") == Approx(0.0));
    const auto b = iep_bivariate_from_redundancy(canonical("BOOM"), VariableSet{0}, 0.322);
    CHECK(b.at("U1") == Approx(0.345).epsilon(2e-3));
    CHECK(b.at("S") == Approx(0.114).epsilon(2e-3));
    const double total = mutual_information(canonical("BOOM"), VariableSet{1, 2}, VariableSet{0});
    CHECK(b.sum({"R", "U1", "U2", "S"}) == Approx(total).epsilon(1e-12));
}

}
