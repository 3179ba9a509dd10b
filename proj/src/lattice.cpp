#include "pid/lattice.hpp"

#include <algorithm>

#include "pid/error.hpp"

namespace pid {

namespace {

bool is_subset(std::uint32_t a, std::uint32_t b) { return (a & b) == a; }

bool precedes(const LatticeNode& alpha, const LatticeNode& beta) {
    return std::all_of(beta.antichain.begin(), beta.antichain.end(), [&](std::uint32_t b) {
        return std::any_of(alpha.antichain.begin(), alpha.antichain.end(),
                           [&](std::uint32_t a) { return is_subset(a, b); });
    });
}

}  // namespace

RedundancyLattice::RedundancyLattice(std::size_t n) : n_(n) {
    if (n < 2) throw ArgumentError("redundancy lattice needs at least two sources");
    if (n > 3) throw UnsupportedError("redundancy lattice is only supported for n <= 3");

    const std::uint32_t num_sets = (1u << n) - 1;  // non-empty subsets, masks 1..num_sets
    for (std::uint64_t family = 1; family < (std::uint64_t{1} << num_sets); ++family) {
        LatticeNode node;
        for (std::uint32_t k = 0; k < num_sets; ++k)
            if (family & (std::uint64_t{1} << k)) node.antichain.push_back(k + 1);
        bool antichain = true;
        for (auto a : node.antichain)
            for (auto b : node.antichain)
                if (a != b && is_subset(a, b)) antichain = false;
        if (antichain) nodes_.push_back(std::move(node));
    }

    // Linear extension: sort by down-set size, ties by label for determinism.
    const std::size_t m = nodes_.size();
    std::vector<std::size_t> below(m, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (precedes(nodes_[j], nodes_[i])) ++below[i];
    std::vector<std::size_t> perm(m);
    for (std::size_t i = 0; i < m; ++i) perm[i] = i;
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        return below[a] < below[b];
    });
    std::vector<LatticeNode> sorted;
    for (auto i : perm) sorted.push_back(nodes_[i]);
    nodes_ = std::move(sorted);

    order_.assign(m * m, false);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) order_[i * m + j] = precedes(nodes_[i], nodes_[j]);

    covers_.assign(m, {});
    for (std::size_t b = 0; b < m; ++b) {
        for (std::size_t a = 0; a < m; ++a) {
            if (a == b || !leq(a, b)) continue;
            bool direct = true;
            for (std::size_t c = 0; c < m && direct; ++c)
                if (c != a && c != b && leq(a, c) && leq(c, b)) direct = false;
            if (direct) covers_[b].push_back(a);
        }
    }
}

std::vector<std::size_t> RedundancyLattice::down_set(std::size_t i) const {
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < nodes_.size(); ++a)
        if (leq(a, i)) out.push_back(a);
    return out;
}

std::size_t RedundancyLattice::find(std::vector<std::uint32_t> antichain) const {
    std::sort(antichain.begin(), antichain.end());
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (nodes_[i].antichain == antichain) return i;
    throw ArgumentError("antichain is not a node of the lattice");
}

std::string RedundancyLattice::label(std::size_t i) const {
    std::string s;
    for (auto mask : nodes_.at(i).antichain) {
        s += "{";
        for (std::size_t k = 0; k < n_; ++k)
            if (mask & (1u << k)) s += std::to_string(k + 1);
        s += "}";
    }
    return s;
}

std::vector<double> RedundancyLattice::mobius_inversion(std::span<const double> cumulative) const {
    if (cumulative.size() != nodes_.size())
        throw ArgumentError("mobius_inversion: one value per lattice node required");
    std::vector<double> atoms(nodes_.size(), 0.0);
    for (std::size_t b = 0; b < nodes_.size(); ++b) {
        double sum = 0.0;
        for (std::size_t a = 0; a < b; ++a)
            if (leq(a, b)) sum += atoms[a];
        atoms[b] = cumulative[b] - sum;
    }
    return atoms;
}

}  // namespace pid
