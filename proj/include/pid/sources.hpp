#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pid/distribution.hpp"

namespace pid {

/// A non-empty group of source variables treated as one unit.
class Source {
public:
    /// ArgumentError if `members` is empty.
    explicit Source(VariableSet members);
    Source(std::initializer_list<std::size_t> members) : Source(VariableSet(members)) {}

    const VariableSet& members() const noexcept { return members_; }

    friend auto operator<=>(const Source&, const Source&) = default;
    friend bool operator==(const Source&, const Source&) = default;

private:
    VariableSet members_;
};

/// Ordered, non-empty list of sources.
class SourceCollection {
public:
    /// ArgumentError if `sources` is empty.
    explicit SourceCollection(std::vector<Source> sources);
    SourceCollection(std::initializer_list<Source> sources)
        : SourceCollection(std::vector<Source>(sources)) {}

    const std::vector<Source>& sources() const noexcept { return sources_; }
    std::size_t size() const noexcept { return sources_.size(); }
    const Source& operator[](std::size_t i) const { return sources_[i]; }
    auto begin() const noexcept { return sources_.begin(); }
    auto end() const noexcept { return sources_.end(); }

    /// Union of all members.
    VariableSet variables() const;

    /// Copy with `extra` appended.
    SourceCollection with(const Source& extra) const;

    /// One singleton source per member of `vars`, in index order.
    static SourceCollection singletons(const VariableSet& vars);

    friend bool operator==(const SourceCollection&, const SourceCollection&) = default;

private:
    std::vector<Source> sources_;
};

/// Set partition of a collection's variables whose blocks each fit inside
/// some source. `witness[k]` is the first source containing `blocks[k]`.
struct CiPartition {
    std::vector<VariableSet> blocks;
    std::vector<std::size_t> witness;

    friend bool operator==(const CiPartition&, const CiPartition&) = default;
};

/// Threshold under which H(a | b) counts as zero.
inline constexpr double kDeterminismTolerance = 1e-9;

/// True iff H(a | given) <= 1e-9. `a` and `given` must be disjoint.
bool is_deterministic(const JointDistribution& dist, const VariableSet& a,
                      const VariableSet& given);

/// Drops sources contained in another source, then sources that are a
/// function of a single other retained source (scanning from the last
/// listed source towards the first). Idempotent; keeps at least one source.
SourceCollection normalize_sources(const JointDistribution& dist, const VariableSet& target,
                                   const SourceCollection& coll);

/// Every partition of the collection's variables whose blocks are each a
/// subset of some source, in restricted-growth-string order.
std::vector<CiPartition> enumerate_ci_partitions(const SourceCollection& coll);

/// Parses "Y1,Y2;Y3" into {{Y1,Y2},{Y3}} using variable names of `dist`.
/// Throws ParseError on malformed text, ArgumentError on unknown names.
SourceCollection parse_sources(const JointDistribution& dist, std::string_view text);

/// Inverse of parse_sources.
std::string format_sources(const JointDistribution& dist, const SourceCollection& coll);

/// "Y1Y2|Y3" style rendering of a partition.
std::string format_partition(const JointDistribution& dist, const CiPartition& partition);

}  // namespace pid
