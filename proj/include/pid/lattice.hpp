#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pid {

/// Antichain of non-empty subsets of {0..n-1}; each subset is a bitmask.
struct LatticeNode {
    std::vector<std::uint32_t> antichain;

    friend bool operator==(const LatticeNode&, const LatticeNode&) = default;
};

/// Williams-Beer redundancy lattice over n <= 3 sources:
/// alpha <= beta iff every set of beta contains some set of alpha.
/// Nodes are stored in a linear extension of the order (bottom first).
class RedundancyLattice {
public:
    /// ArgumentError for n < 2, UnsupportedError for n > 3.
    explicit RedundancyLattice(std::size_t n);

    std::size_t num_sources() const noexcept { return n_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    const LatticeNode& node(std::size_t i) const { return nodes_.at(i); }
    const std::vector<LatticeNode>& nodes() const noexcept { return nodes_; }

    bool leq(std::size_t a, std::size_t b) const { return order_[a * nodes_.size() + b]; }
    std::size_t top() const noexcept { return nodes_.size() - 1; }
    std::size_t bottom() const noexcept { return 0; }

    /// Nodes strictly below `i` with nothing in between.
    const std::vector<std::size_t>& covered_by(std::size_t i) const { return covers_.at(i); }
    /// All nodes <= i, including i.
    std::vector<std::size_t> down_set(std::size_t i) const;

    /// Index of the node equal to `antichain` (order of sets irrelevant).
    std::size_t find(std::vector<std::uint32_t> antichain) const;

    /// "{12}{3}" with 1-based source numbers.
    std::string label(std::size_t i) const;

    /// Partial-information atoms from cumulative values:
    /// atom(b) = value(b) - sum of atoms strictly below b.
    std::vector<double> mobius_inversion(std::span<const double> cumulative) const;

private:
    std::size_t n_;
    std::vector<LatticeNode> nodes_;
    std::vector<bool> order_;
    std::vector<std::vector<std::size_t>> covers_;
};

}  // namespace pid
