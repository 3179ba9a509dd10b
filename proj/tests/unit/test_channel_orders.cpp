#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "pid/axioms.hpp"
#include "pid/channel_orders.hpp"
#include "pid/error.hpp"

using namespace pid;
using doctest::Approx;
using testing::corpus;

namespace {

Matrix random_stochastic(std::mt19937_64& gen, std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        double s = 0.0;
        for (std::size_t c = 0; c < cols; ++c) {
            // sparse rows make the order questions non-trivial
            m(r, c) = unit_uniform(gen) < 0.3 ? 0.0 : unit_uniform(gen);
            s += m(r, c);
        }
        if (s == 0.0) m(r, uniform_index(gen, cols)) = s = 1.0;
        for (std::size_t c = 0; c < cols; ++c) m(r, c) /= s;
    }
    return m;
}

std::vector<double> random_marginal(std::mt19937_64& gen, std::size_t n) {
    std::vector<double> p(n);
    double s = 0.0;
    for (auto& v : p) s += v = 0.1 + unit_uniform(gen);
    for (auto& v : p) v /= s;
    return p;
}

// Joint p(t, y1, y2) = p(t) K(t, y1) M(y1, y2): Y2 is a garbling of Y1.
JointDistribution markov_chain(const std::vector<double>& pt, const Matrix& k, const Matrix& m) {
    auto names = [](const char* n, std::size_t size) {
        Variable v{n, {}};
        for (std::size_t i = 0; i < size; ++i) v.alphabet.push_back(std::to_string(i));
        return v;
    };
    std::vector<JointDistribution::Row> rows;
    for (std::size_t t = 0; t < pt.size(); ++t)
        for (std::size_t a = 0; a < k.cols(); ++a)
            for (std::size_t b = 0; b < m.cols(); ++b) {
                const double p = pt[t] * k(t, a) * m(a, b);
                if (p > 0)
                    rows.push_back({{static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(a),
                                     static_cast<std::uint32_t>(b)},
                                    p});
            }
    double s = 0.0;
    for (const auto& r : rows) s += r.probability.value;
    for (auto& r : rows) r.probability = Probability(r.probability.value / s);
    return JointDistribution({names("T", pt.size()), names("Y1", k.cols()), names("Y2", m.cols())},
                             std::move(rows));
}

}  // namespace

TEST_SUITE("channel_orders") {

TEST_CASE("degradation examples") {
    const auto e = canonical("T_EQ_Y1");
    const auto t = e.select({"T"});
    const Channel k1 = channel_from(e, t, e.select({"Y1"}));
    const Channel k2 = channel_from(e, t, e.select({"Y2"}));
    CHECK(degradation_leq(k2, k1).first);
    CHECK_FALSE(degradation_leq(k1, k2).first);

    const auto c = canonical("COPY");
    const Channel c1 = channel_from(c, c.select({"T"}), c.select({"Y1"}));
    const Channel c2 = channel_from(c, c.select({"T"}), c.select({"Y2"}));
    CHECK_FALSE(degradation_leq(c1, c2).first);
    CHECK_FALSE(degradation_leq(c2, c1).first);

    const auto [same, w] = degradation_leq(c1, c1);
    CHECK(same);
    REQUIRE(w);
    CHECK(w->residual < 1e-9);
    CHECK(w->m_matrix.is_row_stochastic(1e-9));

    const auto b = canonical("BOOM");
    const auto bt = b.select({"T"});
    Channel kq = channel_from(b, bt, b.select({"Y1"}));
    kq.matrix = Matrix{{0, 1, 0}, {0, 0.75, 0.25}, {1.0 / 3, 1.0 / 3, 1.0 / 3}};
    CHECK(degradation_leq(kq, channel_from(b, bt, b.select({"Y1"}))).first);
    CHECK(degradation_leq(kq, channel_from(b, bt, b.select({"Y2"}))).first);
}

TEST_CASE("degradation rejects mismatched inputs") {
    const Channel a = make_channel({0.5, 0.5}, Matrix{{1, 0}, {0, 1}});
    const Channel b = make_channel({0.25, 0.75}, Matrix{{1, 0}, {0, 1}});
    const Channel c = make_channel({1.0 / 3, 1.0 / 3, 1.0 / 3}, Matrix{{1, 0}, {0, 1}, {1, 0}});
    CHECK_THROWS_AS(degradation_leq(a, b), ArgumentError);
    CHECK_THROWS_AS(degradation_leq(a, c), ArgumentError);
}

TEST_CASE("degradation is reflexive, transitive and loses information") {
    std::mt19937_64 gen(101);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + uniform_index(gen, 3);
        const auto pt = random_marginal(gen, n);
        const Channel k1 = make_channel(pt, random_stochastic(gen, n, 2 + uniform_index(gen, 3)));
        const Channel k2 = make_channel(pt, k1.matrix * random_stochastic(gen, k1.num_outputs(), 3));
        const Channel k3 = make_channel(pt, k2.matrix * random_stochastic(gen, 3, 2));
        CHECK(degradation_leq(k1, k1).first);
        const auto [ok21, w21] = degradation_leq(k2, k1);
        const auto [ok32, w32] = degradation_leq(k3, k2);
        REQUIRE(ok21);
        REQUIRE(ok32);
        const auto [ok31, w31] = degradation_leq(k3, k1);
        CHECK(ok31);
        // composing the two witnesses gives a witness for the outer pair
        const Matrix composed = w21->m_matrix * w32->m_matrix;
        CHECK(max_abs_diff(k1.matrix * composed, k3.matrix) < 1e-7);
        CHECK(channel_mutual_information(pt, k2.matrix) <=
              channel_mutual_information(pt, k1.matrix) + 1e-12);
        CHECK(channel_mutual_information(pt, k3.matrix) <=
              channel_mutual_information(pt, k2.matrix) + 1e-12);

        // Any other pair the LP accepts must also obey data processing.
        const Channel other = make_channel(pt, random_stochastic(gen, n, 2));
        if (degradation_leq(other, k1).first)
            CHECK(channel_mutual_information(pt, other.matrix) <=
                  channel_mutual_information(pt, k1.matrix) + 1e-9);
    }
}

TEST_CASE("degradation redundancy examples") {
    auto e = corpus("T_EQ_Y1");
    CHECK(degradation_redundancy(e.dist, e.t, e.coll).value == Approx(0.0).epsilon(1e-6));
    auto a = corpus("AND");
    CHECK(degradation_redundancy(a.dist, a.t, a.coll).value == Approx(0.3113).epsilon(2e-3));
    auto b = corpus("BOOM");
    const auto rep = degradation_redundancy(b.dist, b.t, b.coll);
    CHECK(rep.value == Approx(0.322).epsilon(2e-2));
    REQUIRE(rep.channel);
    REQUIRE(rep.garblings.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        const Channel ki = channel_from(b.dist, b.t, b.coll[i].members());
        CHECK(max_abs_diff(ki.matrix * rep.garblings[i], *rep.channel) < 1e-7);
        CHECK(rep.garblings[i].is_row_stochastic(1e-7));
    }
    CHECK(rep.certificate == Approx(rep.bound - rep.value));

    const auto m = canonical("TARGET_MONO_AND");
    const SourceCollection coll{Source{m.index_of("Y1")}, Source{m.index_of("Y2")}};
    CHECK(degradation_redundancy(m, m.select({"T", "Z"}), coll).value ==
          Approx(0.0).epsilon(1e-6));
}

TEST_CASE("degradation redundancy is reproducible for a seed") {
    auto b = corpus("BOOM");
    DegradationOptions o;
    o.seed = 7;
    const double v1 = degradation_redundancy(b.dist, b.t, b.coll, o).value;
    const double v2 = degradation_redundancy(b.dist, b.t, b.coll, o).value;
    CHECK(v1 == v2);
}

TEST_CASE("degradation redundancy stays below every source") {
    std::mt19937_64 gen(55);
    for (int trial = 0; trial < 25; ++trial) {
        const auto d = random_distribution(gen, 2 + trial % 2, 3);
        const VariableSet t{0};
        const auto coll = SourceCollection::singletons(d.complement(t));
        DegradationOptions o;
        o.random_restarts = 8;
        const auto rep = degradation_redundancy(d, t, coll, o);
        double lowest = 1e300;
        for (const auto& s : coll) lowest = std::min(lowest, mutual_information(d, s.members(), t));
        CHECK(rep.value <= lowest + 1e-7);
        CHECK(rep.value >= -1e-12);
        CHECK(rep.bound == Approx(lowest));
    }
}

TEST_CASE("ordered channels give the weaker source as redundancy") {
    std::mt19937_64 gen(66);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 2 + uniform_index(gen, 2);
        const auto pt = random_marginal(gen, n);
        const Matrix k = random_stochastic(gen, n, 2 + uniform_index(gen, 2));
        const Matrix m = random_stochastic(gen, k.cols(), 2 + uniform_index(gen, 2));
        const auto d = markov_chain(pt, k, m);
        const VariableSet t{0};
        const auto coll = SourceCollection::singletons(d.complement(t));
        const double i2 = mutual_information(d, VariableSet{2}, t);
        CHECK(degradation_redundancy(d, t, coll).value == Approx(i2).epsilon(2e-3));
    }
}

TEST_CASE("union information by convex minimization") {
    auto x = corpus("XOR");
    CHECK(vk_union_information(x.dist, x.t, x.coll).value == Approx(0.0).epsilon(1e-6));
    auto a = corpus("AND");
    const auto rep = vk_union_information(a.dist, a.t, a.coll);
    CHECK(rep.value == Approx(0.311278).epsilon(1e-5));
    CHECK(rep.converged);
    CHECK(rep.certificate < 1e-6);
    REQUIRE(rep.distribution);
    auto c = corpus("COPY");
    CHECK(vk_union_information(c.dist, c.t, c.coll).value == Approx(2.0).epsilon(1e-6));
    const SourceCollection one{Source{1}};
    CHECK(vk_union_information(a.dist, a.t, one).value ==
          Approx(mutual_information(a.dist, VariableSet{1}, a.t)).epsilon(1e-9));
}

TEST_CASE("optimizing distribution keeps every source channel") {
    auto b = corpus("BOOM");
    const auto rep = vk_union_information(b.dist, b.t, b.coll);
    REQUIRE(rep.distribution);
    const auto& p = *rep.distribution;
    for (std::size_t i = 0; i < 2; ++i) {
        const std::string name = i == 0 ? "Y1" : "Y2";
        const auto want = oracle::marg(oracle::from(b.dist), {0, b.dist.index_of(name)});
        const auto got = oracle::marg(oracle::from(p), {p.index_of("T"), p.index_of(name)});
        for (const auto& [k, v] : want) {
            auto it = got.find(k);
            CHECK(std::abs((it == got.end() ? 0.0 : it->second) - v) < 1e-8);
        }
    }
    CHECK(mutual_information(p, p.select({"Y1", "Y2"}), p.select({"T"})) ==
          Approx(rep.value).epsilon(1e-9));
}

TEST_CASE("union information lies between its bounds") {
    std::mt19937_64 gen(88);
    for (int trial = 0; trial < 30; ++trial) {
        const auto d = random_distribution(gen, 2 + trial % 2, 3);
        const VariableSet t{0};
        const auto coll = SourceCollection::singletons(d.complement(t));
        const auto rep = vk_union_information(d, t, coll);
        double best_single = 0.0;
        for (const auto& s : coll)
            best_single = std::max(best_single, mutual_information(d, s.members(), t));
        CHECK(rep.value <= mutual_information(d, coll.variables(), t) + 1e-7);
        CHECK(rep.value >= best_single - 1e-7);
        CHECK(rep.converged);
    }
}

TEST_CASE("synergy from the union and from the redundancy") {
    auto r = corpus("RDNUNQXOR");
    CHECK(s_d(r.dist, r.t, r.coll) == Approx(1.0).epsilon(1e-6));
    auto m = corpus("XORMULTICOAL");
    CHECK(s_d(m.dist, m.t, m.coll) == Approx(1.0).epsilon(1e-6));
    auto a = corpus("AND");
    CHECK(s_d(a.dist, a.t, a.coll) == Approx(0.5).epsilon(1e-5));
    CHECK(s_d_via_redundancy(a.dist, a.t) == Approx(0.5).epsilon(2e-3));
    auto x = corpus("XOR");
    CHECK(s_d_via_redundancy(x.dist, x.t) == Approx(1.0).epsilon(1e-6));
    CHECK_THROWS_AS(s_d_via_redundancy(m.dist, m.t), ArgumentError);
}

}
