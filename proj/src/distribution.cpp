#include "pid/distribution.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "pid/error.hpp"

namespace pid {

namespace {

// Integers compare numerically and sort before other symbols, which compare
// as strings.
bool symbol_less(const std::string& a, const std::string& b) {
    auto as_int = [](const std::string& s, long long& v) {
        if (s.empty()) return false;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        return ec == std::errc() && ptr == s.data() + s.size();
    };
    long long x = 0;
    long long y = 0;
    const bool ia = as_int(a, x);
    const bool ib = as_int(b, y);
    if (ia && ib) return x < y || (x == y && a < b);
    if (ia != ib) return ia;
    return a < b;
}

Outcome project(const Outcome& full, const VariableSet& vars) {
    Outcome out;
    out.reserve(vars.size());
    for (std::size_t i : vars) out.push_back(full[i]);
    return out;
}

double entropy_of(const MarginalTable& table) {
    double h = 0.0;
    for (const auto& [outcome, p] : table) h -= p * std::log2(p);
    return h;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_number(std::string_view s, std::string_view whole) {
    double v = 0.0;
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    if (begin != end && *begin == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end || begin == end)
        throw ParseError("malformed probability '" + std::string(whole) + "'");
    return v;
}

}  // namespace

// ---------------------------------------------------------------- VariableSet

VariableSet::VariableSet(std::initializer_list<std::size_t> indices)
    : VariableSet(std::vector<std::size_t>(indices)) {}

VariableSet::VariableSet(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
    std::sort(indices_.begin(), indices_.end());
    if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end())
        throw ArgumentError("variable set contains a repeated index");
}

VariableSet VariableSet::first(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), std::size_t{0});
    return VariableSet(std::move(v));
}

bool VariableSet::contains(std::size_t index) const {
    return std::binary_search(indices_.begin(), indices_.end(), index);
}

bool VariableSet::is_subset_of(const VariableSet& other) const {
    return std::includes(other.indices_.begin(), other.indices_.end(), indices_.begin(),
                         indices_.end());
}

bool VariableSet::is_disjoint_from(const VariableSet& other) const {
    return (*this & other).empty();
}

std::size_t VariableSet::position_of(std::size_t index) const {
    auto it = std::lower_bound(indices_.begin(), indices_.end(), index);
    if (it == indices_.end() || *it != index)
        throw ArgumentError("index " + std::to_string(index) + " not in variable set");
    return static_cast<std::size_t>(it - indices_.begin());
}

VariableSet operator|(const VariableSet& a, const VariableSet& b) {
    std::vector<std::size_t> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return VariableSet(std::move(out));
}

VariableSet operator&(const VariableSet& a, const VariableSet& b) {
    std::vector<std::size_t> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return VariableSet(std::move(out));
}

VariableSet operator-(const VariableSet& a, const VariableSet& b) {
    std::vector<std::size_t> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return VariableSet(std::move(out));
}

VariableSet reindex(const VariableSet& kept, const VariableSet& s) {
    std::vector<std::size_t> out;
    out.reserve(s.size());
    for (std::size_t i : s) out.push_back(kept.position_of(i));
    return VariableSet(std::move(out));
}

// ---------------------------------------------------------------- Probability

Probability Probability::parse(std::string_view text) {
    const std::string_view t = trim(text);
    if (t.empty()) throw ParseError("empty probability");
    Probability p;
    const auto slash = t.find('/');
    if (slash == std::string_view::npos) {
        p.value = parse_number(t, t);
    } else {
        const double num = parse_number(trim(t.substr(0, slash)), t);
        const double den = parse_number(trim(t.substr(slash + 1)), t);
        if (den == 0.0) throw ParseError("zero denominator in '" + std::string(t) + "'");
        p.value = num / den;
    }
    if (!std::isfinite(p.value)) throw ParseError("non-finite probability '" + std::string(t) + "'");
    p.exact = std::string(t);
    return p;
}

Probability Probability::fraction(std::int64_t num, std::int64_t den) {
    if (den <= 0) throw ArgumentError("fraction denominator must be positive");
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    Probability p(static_cast<double>(num) / static_cast<double>(den));
    p.exact = den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    return p;
}

std::string Probability::to_string() const {
    if (!exact.empty()) return exact;
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, ptr);
}

// ----------------------------------------------------------- JointDistribution

JointDistribution::JointDistribution(std::vector<Variable> variables, std::vector<Row> rows)
    : variables_(std::move(variables)), rows_(std::move(rows)) {
    if (variables_.empty()) throw ArgumentError("distribution needs at least one variable");
    std::set<std::string> names;
    for (const auto& v : variables_) {
        if (v.name.empty()) throw ArgumentError("variable names must be non-empty");
        if (!names.insert(v.name).second)
            throw ArgumentError("duplicate variable name '" + v.name + "'");
        if (v.alphabet.empty()) throw ArgumentError("variable '" + v.name + "' has empty alphabet");
    }
    double total = 0.0;
    for (const auto& row : rows_) {
        if (row.outcome.size() != variables_.size())
            throw ArgumentError("outcome arity does not match the number of variables");
        for (std::size_t i = 0; i < row.outcome.size(); ++i)
            if (row.outcome[i] >= variables_[i].alphabet.size())
                throw ArgumentError("symbol index out of range for variable '" +
                                    variables_[i].name + "'");
        const double p = row.probability.value;
        if (!std::isfinite(p) || p < 0.0) throw ArgumentError("probabilities must be finite and >= 0");
        total += p;
    }
    if (std::abs(total - 1.0) > kStructuralTolerance)
        throw ArgumentError("probabilities sum to " + std::to_string(total) + ", expected 1");
    std::sort(rows_.begin(), rows_.end(),
              [](const Row& a, const Row& b) { return a.outcome < b.outcome; });
    for (std::size_t i = 1; i < rows_.size(); ++i)
        if (rows_[i].outcome == rows_[i - 1].outcome) throw ArgumentError("duplicate outcome");
}

JointDistribution JointDistribution::from_table(
    std::vector<std::string> names,
    const std::vector<std::pair<std::vector<std::string>, Probability>>& rows) {
    std::vector<Variable> vars;
    vars.reserve(names.size());
    for (auto& n : names) vars.push_back({std::move(n), {}});
    for (const auto& [symbols, p] : rows) {
        if (symbols.size() != vars.size())
            throw ArgumentError("row arity does not match the number of variables");
        for (std::size_t i = 0; i < symbols.size(); ++i) vars[i].alphabet.push_back(symbols[i]);
    }
    for (auto& v : vars) {
        std::sort(v.alphabet.begin(), v.alphabet.end(), symbol_less);
        v.alphabet.erase(std::unique(v.alphabet.begin(), v.alphabet.end()), v.alphabet.end());
    }
    std::vector<Row> out;
    out.reserve(rows.size());
    for (const auto& [symbols, p] : rows) {
        Outcome o(symbols.size());
        for (std::size_t i = 0; i < symbols.size(); ++i) {
            const auto& alpha = vars[i].alphabet;
            o[i] = static_cast<std::uint32_t>(
                std::lower_bound(alpha.begin(), alpha.end(), symbols[i], symbol_less) -
                alpha.begin());
        }
        out.push_back({std::move(o), p});
    }
    return JointDistribution(std::move(vars), std::move(out));
}

std::size_t JointDistribution::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < variables_.size(); ++i)
        if (variables_[i].name == name) return i;
    throw ArgumentError("unknown variable '" + std::string(name) + "'");
}

VariableSet JointDistribution::select(std::span<const std::string> names) const {
    std::vector<std::size_t> idx;
    for (const auto& n : names) idx.push_back(index_of(n));
    return VariableSet(std::move(idx));
}

VariableSet JointDistribution::select(std::initializer_list<std::string_view> names) const {
    std::vector<std::size_t> idx;
    for (auto n : names) idx.push_back(index_of(n));
    return VariableSet(std::move(idx));
}

VariableSet JointDistribution::complement(const VariableSet& vars) const {
    check(vars);
    return all() - vars;
}

double JointDistribution::probability(const Outcome& outcome) const {
    auto it = std::lower_bound(rows_.begin(), rows_.end(), outcome,
                               [](const Row& r, const Outcome& o) { return r.outcome < o; });
    return (it != rows_.end() && it->outcome == outcome) ? it->probability.value : 0.0;
}

void JointDistribution::check(const VariableSet& vars) const {
    if (!vars.empty() && vars.indices().back() >= variables_.size())
        throw ArgumentError("variable index " + std::to_string(vars.indices().back()) +
                            " out of range");
}

std::string JointDistribution::describe(const VariableSet& vars, const Outcome& projected) const {
    std::string s;
    for (std::size_t k = 0; k < vars.size(); ++k) {
        if (k) s += ",";
        s += variables_[vars[k]].alphabet[projected[k]];
    }
    return vars.size() == 1 ? s : "(" + s + ")";
}

// ------------------------------------------------------------ Shannon quantities

MarginalTable marginal_table(const JointDistribution& dist, const VariableSet& vars) {
    dist.check(vars);
    std::map<Outcome, double> acc;
    for (const auto& row : dist.rows()) {
        if (row.probability.value <= 0.0) continue;
        acc[project(row.outcome, vars)] += row.probability.value;
    }
    return MarginalTable(acc.begin(), acc.end());
}

double clamp_nonnegative(double value, std::string_view what) {
    if (value >= 0.0) return value;
    if (value >= -kStructuralTolerance) return 0.0;
    throw ConsistencyError(std::string(what) + " is negative (" + std::to_string(value) + ")");
}

double entropy(const JointDistribution& dist, const VariableSet& vars) {
    if (vars.empty()) throw ArgumentError("entropy of an empty variable set");
    return clamp_nonnegative(entropy_of(marginal_table(dist, vars)), "entropy");
}

double conditional_entropy(const JointDistribution& dist, const VariableSet& a,
                           const VariableSet& given) {
    if (a.empty()) throw ArgumentError("conditional entropy of an empty variable set");
    if (!a.is_disjoint_from(given)) throw ArgumentError("conditional entropy: sets overlap");
    if (given.empty()) return entropy(dist, a);
    return clamp_nonnegative(entropy(dist, a | given) - entropy(dist, given),
                             "conditional entropy");
}

double mutual_information(const JointDistribution& dist, const VariableSet& a,
                          const VariableSet& b) {
    if (a.empty() || b.empty()) throw ArgumentError("mutual information needs non-empty sets");
    if (!a.is_disjoint_from(b)) throw ArgumentError("mutual information: sets overlap");
    return clamp_nonnegative(entropy(dist, a) + entropy(dist, b) - entropy(dist, a | b),
                             "mutual information");
}

double conditional_mutual_information(const JointDistribution& dist, const VariableSet& a,
                                      const VariableSet& b, const VariableSet& c) {
    if (c.empty()) return mutual_information(dist, a, b);
    if (a.empty() || b.empty())
        throw ArgumentError("conditional mutual information needs non-empty sets");
    if (!a.is_disjoint_from(b) || !a.is_disjoint_from(c) || !b.is_disjoint_from(c))
        throw ArgumentError("conditional mutual information: sets overlap");
    const double v = entropy(dist, a | c) + entropy(dist, b | c) - entropy(dist, a | b | c) -
                     entropy(dist, c);
    return clamp_nonnegative(v, "conditional mutual information");
}

JointDistribution marginalize(const JointDistribution& dist, const VariableSet& vars) {
    if (vars.empty()) throw ArgumentError("cannot marginalize onto an empty set");
    dist.check(vars);
    struct Cell {
        double p = 0.0;
        std::size_t contributors = 0;
        const Probability* only = nullptr;
    };
    std::map<Outcome, Cell> acc;
    for (const auto& row : dist.rows()) {
        Cell& c = acc[project(row.outcome, vars)];
        c.p += row.probability.value;
        c.only = &row.probability;
        ++c.contributors;
    }
    std::vector<Variable> kept;
    for (std::size_t i : vars) kept.push_back(dist.variable(i));
    std::vector<JointDistribution::Row> rows;
    rows.reserve(acc.size());
    for (auto& [outcome, cell] : acc) {
        Probability p = cell.contributors == 1 ? *cell.only : Probability(cell.p);
        rows.push_back({outcome, std::move(p)});
    }
    return JointDistribution(std::move(kept), std::move(rows));
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw ArgumentError("kl_divergence: length mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0.0) continue;
        if (q[i] <= 0.0)
            throw DomainError("kl_divergence: q[" + std::to_string(i) + "] = 0 while p > 0");
        d += p[i] * std::log2(p[i] / q[i]);
    }
    return clamp_nonnegative(d, "KL divergence");
}

// -------------------------------------------------------------------- Channels

void Channel::validate() const {
    if (input_states.size() != matrix.rows() || input_marginal.size() != matrix.rows())
        throw ArgumentError("channel: input size mismatch");
    if (output_alphabet.size() != matrix.cols()) throw ArgumentError("channel: output size mismatch");
    if (!matrix.is_row_stochastic(kStructuralTolerance))
        throw ArgumentError("channel matrix is not row-stochastic");
    double total = 0.0;
    for (double p : input_marginal) {
        if (!(p > 0.0)) throw ArgumentError("channel input marginal must be strictly positive");
        total += p;
    }
    if (std::abs(total - 1.0) > kStructuralTolerance)
        throw ArgumentError("channel input marginal does not sum to 1");
}

Channel channel_from(const JointDistribution& dist, const VariableSet& target,
                     const VariableSet& source) {
    if (target.empty() || source.empty()) throw ArgumentError("channel_from: empty variable set");
    if (!target.is_disjoint_from(source)) throw ArgumentError("channel_from: sets overlap");
    dist.check(target | source);
    std::map<Outcome, double> pt;
    std::map<Outcome, double> py;
    std::map<std::pair<Outcome, Outcome>, double> pty;
    for (const auto& row : dist.rows()) {
        const double p = row.probability.value;
        if (p <= 0.0) continue;
        Outcome t = project(row.outcome, target);
        Outcome y = project(row.outcome, source);
        pt[t] += p;
        py[y] += p;
        pty[{std::move(t), std::move(y)}] += p;
    }
    Channel ch;
    double total = 0.0;
    for (const auto& [t, p] : pt) {
        ch.input_states.push_back(t);
        ch.input_marginal.push_back(p);
        total += p;
    }
    for (double& p : ch.input_marginal) p /= total;
    for (const auto& [y, p] : py) ch.output_alphabet.push_back(y);
    ch.matrix = Matrix(ch.input_states.size(), ch.output_alphabet.size());
    for (const auto& [key, p] : pty) {
        const auto r = static_cast<std::size_t>(
            std::lower_bound(ch.input_states.begin(), ch.input_states.end(), key.first) -
            ch.input_states.begin());
        const auto c = static_cast<std::size_t>(
            std::lower_bound(ch.output_alphabet.begin(), ch.output_alphabet.end(), key.second) -
            ch.output_alphabet.begin());
        ch.matrix(r, c) = p / pt[key.first];
    }
    return ch;
}

Channel make_channel(std::vector<double> input_marginal, Matrix matrix) {
    Channel ch;
    for (std::uint32_t i = 0; i < matrix.rows(); ++i) ch.input_states.push_back({i});
    for (std::uint32_t j = 0; j < matrix.cols(); ++j) ch.output_alphabet.push_back({j});
    ch.input_marginal = std::move(input_marginal);
    ch.matrix = std::move(matrix);
    ch.validate();
    return ch;
}

double channel_mutual_information(std::span<const double> input_marginal, const Matrix& k) {
    if (input_marginal.size() != k.rows()) throw ArgumentError("channel MI: size mismatch");
    std::vector<double> out(k.cols(), 0.0);
    for (std::size_t t = 0; t < k.rows(); ++t)
        for (std::size_t y = 0; y < k.cols(); ++y) out[y] += input_marginal[t] * k(t, y);
    double mi = 0.0;
    for (std::size_t t = 0; t < k.rows(); ++t) {
        for (std::size_t y = 0; y < k.cols(); ++y) {
            const double joint = input_marginal[t] * k(t, y);
            if (joint <= 0.0) continue;
            mi += joint * std::log2(k(t, y) / out[y]);
        }
    }
    return clamp_nonnegative(mi, "channel mutual information");
}

}  // namespace pid
