#pragma once

// Brute-force reference implementations used only by the tests. Everything
// here works on a plain list of (outcome, probability) pairs and is written
// straight from the textbook formulas, without touching library code paths.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "pid/distribution.hpp"

namespace oracle {

using Key = std::vector<int>;
using Table = std::vector<std::pair<Key, double>>;
using Idx = std::vector<std::size_t>;

inline Table from(const pid::JointDistribution& d) {
    Table t;
    for (const auto& row : d.rows()) {
        Key k(row.outcome.begin(), row.outcome.end());
        t.emplace_back(std::move(k), row.probability.value);
    }
    return t;
}

inline Key pick(const Key& k, const Idx& idx) {
    Key out;
    for (auto i : idx) out.push_back(k[i]);
    return out;
}

inline Idx join(Idx a, const Idx& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

inline std::map<Key, double> marg(const Table& t, const Idx& idx) {
    std::map<Key, double> m;
    for (const auto& [k, p] : t) m[pick(k, idx)] += p;
    return m;
}

inline double H(const Table& t, const Idx& idx) {
    if (idx.empty()) return 0.0;
    double h = 0.0;
    for (const auto& [k, p] : marg(t, idx))
        if (p > 0) h -= p * std::log2(p);
    return h;
}

// I(a;b) = sum p(a,b) log p(a,b) / (p(a) p(b)), computed directly rather than
// through entropies.
inline double mi(const Table& t, const Idx& a, const Idx& b) {
    auto pa = marg(t, a);
    auto pb = marg(t, b);
    std::map<std::pair<Key, Key>, double> pab;
    for (const auto& [k, p] : t) pab[{pick(k, a), pick(k, b)}] += p;
    double s = 0.0;
    for (const auto& [ab, p] : pab)
        if (p > 0) s += p * std::log2(p / (pa[ab.first] * pb[ab.second]));
    return s;
}

inline double cmi(const Table& t, const Idx& a, const Idx& b, const Idx& c) {
    if (c.empty()) return mi(t, a, b);
    // sum p(a,b,c) log p(a,b,c) p(c) / (p(a,c) p(b,c)), keyed tuple-wise
    std::map<std::tuple<Key, Key, Key>, double> pabc;
    std::map<std::pair<Key, Key>, double> pac, pbc;
    std::map<Key, double> pc;
    for (const auto& [k, p] : t) {
        const Key ka = pick(k, a), kb = pick(k, b), kc = pick(k, c);
        pabc[{ka, kb, kc}] += p;
        pac[{ka, kc}] += p;
        pbc[{kb, kc}] += p;
        pc[kc] += p;
    }
    double s = 0.0;
    for (const auto& [key, p] : pabc) {
        if (p <= 0) continue;
        const auto& [ka, kb, kc] = key;
        s += p * std::log2(p * pc[kc] / (pac[{ka, kc}] * pbc[{kb, kc}]));
    }
    return s;
}

// q(t, y) = p(t) prod_block p(y_block | t) over the full product of the
// observed symbols of each variable. Keys are (t..., y...) with t first.
inline Table q_product(const Table& t, const Idx& target, const std::vector<Idx>& blocks) {
    auto pt = marg(t, target);
    std::vector<std::map<std::pair<Key, Key>, double>> cond(blocks.size());
    std::vector<std::set<Key>> symbols(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        for (const auto& [k, p] : t) {
            cond[b][{pick(k, target), pick(k, blocks[b])}] += p;
            if (p > 0) symbols[b].insert(pick(k, blocks[b]));
        }
    }
    Table out;
    for (const auto& [tv, ptv] : pt) {
        if (ptv <= 0) continue;
        std::function<void(std::size_t, Key, double)> rec = [&](std::size_t b, Key key, double v) {
            if (b == blocks.size()) {
                if (v > 0) out.emplace_back(key, v);
                return;
            }
            for (const auto& s : symbols[b]) {
                auto it = cond[b].find({tv, s});
                const double c = it == cond[b].end() ? 0.0 : it->second / ptv;
                Key next = key;
                next.insert(next.end(), s.begin(), s.end());
                rec(b + 1, next, v * c);
            }
        };
        rec(0, tv, ptv);
    }
    return out;
}

// I(T; Y) of a table whose keys start with `nt` target components.
inline double mi_split(const Table& t, std::size_t nt) {
    if (t.empty()) return 0.0;
    Idx a, b;
    for (std::size_t i = 0; i < t.front().first.size(); ++i) (i < nt ? a : b).push_back(i);
    return mi(t, a, b);
}

inline double specific(const Table& t, const Idx& target, const Idx& source, const Key& state) {
    auto pt = marg(t, target);
    auto pa = marg(t, source);
    std::map<Key, double> joint;  // p(state, a)
    for (const auto& [k, p] : t)
        if (pick(k, target) == state) joint[pick(k, source)] += p;
    double s = 0.0;
    for (const auto& [a, p] : joint) {
        if (p <= 0) continue;
        const double p_a_given_t = p / pt[state];
        const double p_t_given_a = p / pa[a];
        s += p_a_given_t * (std::log2(p_t_given_a) - std::log2(pt[state]));
    }
    return s;
}

inline double imin(const Table& t, const Idx& target, const std::vector<Idx>& sources) {
    double s = 0.0;
    for (const auto& [state, p] : marg(t, target)) {
        if (p <= 0) continue;
        double m = std::numeric_limits<double>::infinity();
        for (const auto& src : sources) m = std::min(m, specific(t, target, src, state));
        s += p * m;
    }
    return s;
}

// Correlational importance from its definition.
inline double delta_i(const Table& t, const Idx& target, const Idx& ys) {
    auto pt = marg(t, target);
    auto py = marg(t, ys);
    std::vector<std::map<std::pair<Key, int>, double>> pyt(ys.size());
    for (const auto& [k, p] : t)
        for (std::size_t i = 0; i < ys.size(); ++i) pyt[i][{pick(k, target), k[ys[i]]}] += p;
    auto ind = [&](const Key& tv, const Key& y) {
        double v = pt[tv];
        for (std::size_t i = 0; i < ys.size(); ++i) v *= pyt[i][{tv, y[i]}] / pt[tv];
        return v;
    };
    std::map<std::pair<Key, Key>, double> pty;
    for (const auto& [k, p] : t) pty[{pick(k, target), pick(k, ys)}] += p;
    double s = 0.0;
    for (const auto& [ty, p] : pty) {
        if (p <= 0) continue;
        double den = 0.0;
        for (const auto& [tv, ptv] : pt) den += ind(tv, ty.second);
        s += p * std::log2((p / py[ty.second]) / (ind(ty.first, ty.second) / den));
    }
    return s;
}

// All set partitions of {0..n-1}, as vectors of blocks.
inline std::vector<std::vector<Idx>> set_partitions(std::size_t n) {
    std::vector<std::vector<Idx>> out;
    std::vector<Idx> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == n) {
            out.push_back(cur);
            return;
        }
        for (std::size_t b = 0; b < cur.size(); ++b) {
            cur[b].push_back(i);
            rec(i + 1);
            cur[b].pop_back();
        }
        cur.push_back({i});
        rec(i + 1);
        cur.pop_back();
    };
    rec(0);
    return out;
}

// Antichains of non-empty subsets of {0..n-1} (bitmasks), by brute force
// over every family of subsets.
inline std::vector<std::vector<unsigned>> antichains(unsigned n) {
    const unsigned subsets = (1u << n) - 1;  // non-empty subsets 1..2^n-1
    std::vector<std::vector<unsigned>> out;
    for (unsigned fam = 1; fam < (1u << subsets); ++fam) {
        std::vector<unsigned> sets;
        for (unsigned s = 0; s < subsets; ++s)
            if (fam >> s & 1u) sets.push_back(s + 1);
        bool ok = true;
        for (auto a : sets)
            for (auto b : sets)
                if (a != b && (a & b) == a) ok = false;
        if (ok) out.push_back(sets);
    }
    return out;
}

}  // namespace oracle
