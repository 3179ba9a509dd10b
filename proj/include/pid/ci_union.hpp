#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pid/distribution.hpp"
#include "pid/sources.hpp"

namespace pid {

/// Labelled atom / measure values in bits, kept in insertion order.
class PidResult {
public:
    /// ArgumentError on a repeated label or a non-finite value.
    void set(std::string label, double value);

    double at(std::string_view label) const;
    bool contains(std::string_view label) const;
    std::size_t size() const noexcept { return entries_.size(); }
    const std::vector<std::pair<std::string, double>>& entries() const noexcept { return entries_; }

    /// Sum of all entries whose label is in `labels`.
    double sum(std::initializer_list<std::string_view> labels) const;

private:
    std::vector<std::pair<std::string, double>> entries_;
};

/// q(t, a) = p(t) * prod over blocks of p(a_block | t), over the variables
/// target ∪ (union of blocks), ordered by their index in `dist`.
JointDistribution build_q(const JointDistribution& dist, const VariableSet& target,
                          const CiPartition& partition);

struct CiUnionOptions {
    /// Apply normalize_sources first. Turning this off reproduces the
    /// behaviour the normalization rule exists to prevent.
    bool normalize = true;
};

/// Every intermediate of the union-information computation.
struct CiUnionReport {
    double value = 0.0;       ///< min(i_p, best_q)
    double i_p = 0.0;         ///< I_p(A;T)
    double best_q = 0.0;      ///< max over the Q-set of I_q(A;T)
    std::size_t best_partition = 0;
    SourceCollection sources; ///< the collection actually used
    std::vector<CiPartition> partitions;
    std::vector<double> q_values;
};

CiUnionReport ci_union_report(const JointDistribution& dist, const VariableSet& target,
                              const SourceCollection& coll, CiUnionOptions options = {});

/// Union information from conditional-independence constructions:
/// min{ I_p(A;T), max_{q in Q} I_q(A;T) }, A the union of the sources.
double ci_union_information(const JointDistribution& dist, const VariableSet& target,
                            const SourceCollection& coll, CiUnionOptions options = {});

/// I(Y;T) - union information, Y = every non-target variable of `dist`.
double ci_synergy(const JointDistribution& dist, const VariableSet& target,
                  const SourceCollection& coll, CiUnionOptions options = {});

/// Bivariate atoms R, U1, U2, S (plus I_cup, I_total) from the union measure.
/// ArgumentError unless `dist` has exactly two non-target variables.
PidResult ci_bivariate_decomposition(const JointDistribution& dist, const VariableSet& target);

}  // namespace pid
