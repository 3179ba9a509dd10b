#include "pid/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "pid/ci_union.hpp"
#include "pid/error.hpp"

namespace pid {

double unit_uniform(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

std::size_t uniform_index(std::mt19937_64& gen, std::size_t n) {
    if (n == 0) throw ArgumentError("uniform_index: empty range");
    return static_cast<std::size_t>(gen() % n);
}

JointDistribution random_distribution(std::mt19937_64& gen, std::size_t num_sources,
                                      std::size_t max_alphabet) {
    if (num_sources == 0) throw ArgumentError("random_distribution: needs a source variable");
    if (max_alphabet < 2) throw ArgumentError("random_distribution: alphabets need 2 symbols");
    std::vector<Variable> vars;
    std::vector<std::size_t> radix;
    for (std::size_t i = 0; i <= num_sources; ++i) {
        const std::size_t k = 2 + uniform_index(gen, max_alphabet - 1);
        Variable v{i == 0 ? "T" : "Y" + std::to_string(i), {}};
        for (std::size_t s = 0; s < k; ++s) v.alphabet.push_back(std::to_string(s));
        vars.push_back(std::move(v));
        radix.push_back(k);
    }
    std::size_t cells = 1;
    for (auto k : radix) cells *= k;

    std::vector<double> w(cells, 0.0);
    double total = 0.0;
    for (double& x : w) {
        const double keep = unit_uniform(gen);
        const double mass = unit_uniform(gen);
        if (keep >= 1.0 / 3.0) x = mass;
        total += x;
    }
    if (!(total > 0.0)) {
        w[uniform_index(gen, cells)] = 1.0;
        total = 1.0;
    }

    std::vector<JointDistribution::Row> rows;
    for (std::size_t cell = 0; cell < cells; ++cell) {
        if (w[cell] <= 0.0) continue;
        Outcome o(radix.size());
        std::size_t rest = cell;
        for (std::size_t i = radix.size(); i-- > 0;) {
            o[i] = static_cast<std::uint32_t>(rest % radix[i]);
            rest /= radix[i];
        }
        rows.push_back({std::move(o), Probability(w[cell] / total)});
    }
    return JointDistribution(std::move(vars), std::move(rows));
}

SourceCollection random_collection(std::mt19937_64& gen, const VariableSet& vars,
                                   std::size_t max_sources) {
    if (vars.empty() || max_sources == 0) throw ArgumentError("random_collection: nothing to draw");
    const std::size_t count = 1 + uniform_index(gen, max_sources);
    std::vector<Source> sources;
    const std::size_t full = (std::size_t{1} << vars.size()) - 1;
    for (std::size_t s = 0; s < count; ++s) {
        const std::size_t mask = 1 + uniform_index(gen, full);
        std::vector<std::size_t> members;
        for (std::size_t k = 0; k < vars.size(); ++k)
            if (mask & (std::size_t{1} << k)) members.push_back(vars[k]);
        sources.emplace_back(VariableSet(std::move(members)));
    }
    return SourceCollection(std::move(sources));
}

JointDistribution with_copy(const JointDistribution& dist, std::size_t original,
                            const std::string& name) {
    dist.check(VariableSet{original});
    std::vector<Variable> vars = dist.variables();
    vars.push_back({name, dist.variable(original).alphabet});
    std::vector<JointDistribution::Row> rows = dist.rows();
    for (auto& row : rows) row.outcome.push_back(row.outcome[original]);
    return JointDistribution(std::move(vars), std::move(rows));
}

namespace {

class Suite {
public:
    explicit Suite(double tolerance) : tol_(tolerance) {}

    // Records `excess`, the amount by which a check is violated (<= 0 is fine).
    void check(const std::string& name, double excess) {
        auto it = index_.find(name);
        if (it == index_.end()) {
            it = index_.emplace(name, tallies_.size()).first;
            tallies_.push_back({name, 0, 0, 0.0});
        }
        auto& t = tallies_[it->second];
        ++t.checked;
        if (excess > tol_) {
            ++t.violations;
            t.worst = std::max(t.worst, excess);
        }
    }
    void equal(const std::string& name, double a, double b) { check(name, std::abs(a - b)); }
    void leq(const std::string& name, double a, double b) { check(name, a - b); }

    std::vector<PropertyTally> release() { return std::move(tallies_); }

private:
    double tol_;
    std::map<std::string, std::size_t> index_;
    std::vector<PropertyTally> tallies_;
};

SourceCollection shuffled(std::mt19937_64& gen, const SourceCollection& coll) {
    std::vector<Source> s = coll.sources();
    for (std::size_t i = s.size(); i > 1; --i) std::swap(s[i - 1], s[uniform_index(gen, i)]);
    return SourceCollection(std::move(s));
}

VariableSet random_subset(std::mt19937_64& gen, const VariableSet& vars) {
    const std::size_t mask = 1 + uniform_index(gen, (std::size_t{1} << vars.size()) - 1);
    std::vector<std::size_t> members;
    for (std::size_t k = 0; k < vars.size(); ++k)
        if (mask & (std::size_t{1} << k)) members.push_back(vars[k]);
    return VariableSet(std::move(members));
}

}  // namespace

std::vector<PropertyTally> run_axiom_suite(std::size_t trials, std::uint64_t seed,
                                           double tolerance) {
    std::mt19937_64 gen(seed);
    Suite suite(tolerance);
    const VariableSet t{0};
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const std::size_t n = 2 + uniform_index(gen, 2);
        const JointDistribution dist = random_distribution(gen, n, 3);
        const VariableSet y = dist.complement(t);
        const double whole = mutual_information(dist, y, t);
        const SourceCollection coll = random_collection(gen, y, 3);
        const double u = ci_union_information(dist, t, coll);
        const double s = ci_synergy(dist, t, coll);

        suite.equal("symmetry", u, ci_union_information(dist, t, shuffled(gen, coll)));

        const Source single(random_subset(gen, y));
        suite.equal("self-redundancy", ci_union_information(dist, t, SourceCollection{single}),
                    mutual_information(dist, single.members(), t));

        const Source extra(random_subset(gen, y));
        const double u_more = ci_union_information(dist, t, coll.with(extra));
        suite.leq("monotonicity", u, u_more);

        const Source& host = coll[uniform_index(gen, coll.size())];
        const Source inside(random_subset(gen, host.members()));
        suite.equal("equality for monotonicity", u,
                    ci_union_information(dist, t, coll.with(inside)));

        suite.leq("global positivity", 0.0, u);

        const VariableSet y1{y[0]};
        const VariableSet y2{y[1]};
        const double u12 = ci_union_information(dist, t, SourceCollection{Source(y1), Source(y2)});
        suite.leq("weak local positivity",
                  std::max(mutual_information(dist, y1, t), mutual_information(dist, y2, t)), u12);
        suite.leq("weak local positivity", u12, mutual_information(dist, y1 | y2, t));

        const JointDistribution with_target = with_copy(dist, 0, "Tcopy");
        suite.equal("strong identity",
                    ci_union_information(with_target, t,
                                         SourceCollection{Source{with_target.num_variables() - 1}}),
                    entropy(dist, t));

        const std::size_t dup_of = y[uniform_index(gen, y.size())];
        const JointDistribution dup = with_copy(dist, dup_of, "Ydup");
        suite.equal("duplicate predictor invariance",
                    ci_synergy(dist, t, SourceCollection::singletons(y)),
                    ci_synergy(dup, t, SourceCollection::singletons(dup.complement(t))));

        suite.leq("adding a predictor cannot increase synergy",
                  ci_synergy(dist, t, coll.with(extra)), s);

        suite.leq("synergy non-negativity", 0.0, s);
        suite.leq("synergy upper bound", s, whole);
        suite.equal("weak symmetry of synergy", s, ci_synergy(dist, t, shuffled(gen, coll)));

        // S(Y -> Y_i): the target becomes a copy of Y_i, the only source is Y.
        const std::size_t yi = y[uniform_index(gen, y.size())];
        const JointDistribution copied = with_copy(dist, yi, "Ytarget");
        const JointDistribution no_t = marginalize(copied, copied.complement(t));
        const VariableSet copy_target{no_t.num_variables() - 1};
        suite.check("zero synergy in a single variable",
                    std::abs(ci_synergy(no_t, copy_target,
                                        SourceCollection{Source(no_t.complement(copy_target))})));

        // Y1 and Y2 conditionally independent given T gives zero synergy.
        const JointDistribution pair = marginalize(dist, t | y1 | y2);
        const JointDistribution q = build_q(pair, VariableSet{0}, CiPartition{{{1}, {2}}, {0, 1}});
        suite.check("conditional independence gives zero synergy",
                    std::abs(ci_synergy(q, VariableSet{0}, SourceCollection{Source{1}, Source{2}})));
    }
    return suite.release();
}

}  // namespace pid
