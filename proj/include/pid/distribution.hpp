#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pid/matrix.hpp"

namespace pid {

/// Tolerance used for normalization and non-negativity checks.
inline constexpr double kStructuralTolerance = 1e-9;

/// Sorted set of variable positions within a JointDistribution.
class VariableSet {
public:
    VariableSet() = default;
    VariableSet(std::initializer_list<std::size_t> indices);
    /// Sorts the indices; duplicates raise ArgumentError.
    explicit VariableSet(std::vector<std::size_t> indices);

    /// {0, 1, ..., n-1}
    static VariableSet first(std::size_t n);

    const std::vector<std::size_t>& indices() const noexcept { return indices_; }
    std::size_t size() const noexcept { return indices_.size(); }
    bool empty() const noexcept { return indices_.empty(); }
    auto begin() const noexcept { return indices_.begin(); }
    auto end() const noexcept { return indices_.end(); }
    std::size_t operator[](std::size_t i) const { return indices_[i]; }

    bool contains(std::size_t index) const;
    bool is_subset_of(const VariableSet& other) const;
    bool is_disjoint_from(const VariableSet& other) const;

    /// Position of `index` inside this set; ArgumentError if absent.
    std::size_t position_of(std::size_t index) const;

    friend VariableSet operator|(const VariableSet& a, const VariableSet& b);
    friend VariableSet operator&(const VariableSet& a, const VariableSet& b);
    friend VariableSet operator-(const VariableSet& a, const VariableSet& b);
    friend auto operator<=>(const VariableSet&, const VariableSet&) = default;
    friend bool operator==(const VariableSet&, const VariableSet&) = default;

private:
    std::vector<std::size_t> indices_;
};

/// Re-expresses `s` (indices into some parent) as positions within `kept`,
/// which must contain every member of `s`.
VariableSet reindex(const VariableSet& kept, const VariableSet& s);

struct Variable {
    std::string name;
    std::vector<std::string> alphabet;
};

/// One symbol index per variable.
using Outcome = std::vector<std::uint32_t>;

/// A probability carried as a double, plus the literal it was written as
/// ("1/6", "0.419") when it came from text or an exact builder.
struct Probability {
    double value = 0.0;
    std::string exact;

    Probability() = default;
    Probability(double v) : value(v) {}  // NOLINT(google-explicit-constructor)

    /// Accepts decimals and "a/b" fractions. Throws ParseError.
    static Probability parse(std::string_view text);
    static Probability fraction(std::int64_t num, std::int64_t den);

    /// The exact literal if present, else the shortest round-trip decimal.
    std::string to_string() const;
};

/// Finite joint pmf over named variables. Immutable after construction.
class JointDistribution {
public:
    struct Row {
        Outcome outcome;
        Probability probability;
    };

    /// Validates: arity, symbol range, no duplicates, p >= 0, sum 1 within 1e-9.
    /// Rows are stored sorted by outcome. Zero-probability rows are kept.
    JointDistribution(std::vector<Variable> variables, std::vector<Row> rows);

    /// Builds each alphabet from the symbols that occur, integers first in
    /// numeric order, then other symbols in string order.
    static JointDistribution from_table(
        std::vector<std::string> names,
        const std::vector<std::pair<std::vector<std::string>, Probability>>& rows);

    std::size_t num_variables() const noexcept { return variables_.size(); }
    const std::vector<Variable>& variables() const noexcept { return variables_; }
    const Variable& variable(std::size_t i) const { return variables_.at(i); }
    const std::vector<Row>& rows() const noexcept { return rows_; }

    /// ArgumentError for unknown names.
    std::size_t index_of(std::string_view name) const;
    VariableSet select(std::span<const std::string> names) const;
    VariableSet select(std::initializer_list<std::string_view> names) const;
    VariableSet all() const { return VariableSet::first(variables_.size()); }
    VariableSet complement(const VariableSet& vars) const;

    /// Probability of a full outcome; 0 when absent.
    double probability(const Outcome& outcome) const;

    /// ArgumentError unless every index is in range.
    void check(const VariableSet& vars) const;

    /// Human-readable symbols of `outcome` projected on `vars`, e.g. "(0,1)".
    std::string describe(const VariableSet& vars, const Outcome& projected) const;

private:
    std::vector<Variable> variables_;
    std::vector<Row> rows_;
};

/// Positive-probability cells of the marginal on `vars`, sorted by outcome.
using MarginalTable = std::vector<std::pair<Outcome, double>>;
MarginalTable marginal_table(const JointDistribution& dist, const VariableSet& vars);

/// Entropy in bits of the marginal on `vars` (non-empty).
double entropy(const JointDistribution& dist, const VariableSet& vars);

/// H(a | given); `given` may be empty.
double conditional_entropy(const JointDistribution& dist, const VariableSet& a,
                           const VariableSet& given);

/// I(a; b) in bits; a and b disjoint and non-empty.
double mutual_information(const JointDistribution& dist, const VariableSet& a,
                          const VariableSet& b);

/// I(a; b | c) in bits; pairwise disjoint, c may be empty.
double conditional_mutual_information(const JointDistribution& dist, const VariableSet& a,
                                      const VariableSet& b, const VariableSet& c);

/// Distribution over `vars` only (ordered by index). A cell fed by a single
/// row keeps that row's exact literal.
JointDistribution marginalize(const JointDistribution& dist, const VariableSet& vars);

/// Kullback-Leibler divergence in bits. DomainError if q_i = 0 < p_i.
double kl_divergence(std::span<const double> p, std::span<const double> q);

/// Clamps values in [-1e-9, 0) to 0; ConsistencyError below that.
double clamp_nonnegative(double value, std::string_view what);

/// Row-stochastic p(output | input) with the input marginal.
struct Channel {
    std::vector<Outcome> input_states;
    std::vector<double> input_marginal;
    std::vector<Outcome> output_alphabet;
    Matrix matrix;

    /// ArgumentError unless rows and marginal are valid.
    void validate() const;
    std::size_t num_inputs() const noexcept { return input_states.size(); }
    std::size_t num_outputs() const noexcept { return output_alphabet.size(); }
};

/// Channel from `target` to `source`. Target states with p(t) = 0 are
/// dropped; outputs are the source tuples with positive probability.
Channel channel_from(const JointDistribution& dist, const VariableSet& target,
                     const VariableSet& source);

/// Channel built directly from a matrix and an input marginal; inputs and
/// outputs are labelled 0..n-1.
Channel make_channel(std::vector<double> input_marginal, Matrix matrix);

/// I(input; output) for the joint p(t) K[t][y].
double channel_mutual_information(std::span<const double> input_marginal, const Matrix& k);

}  // namespace pid
