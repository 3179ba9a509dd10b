#include "pid/ci_union.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "pid/error.hpp"

namespace pid {

void PidResult::set(std::string label, double value) {
    if (!std::isfinite(value)) throw ArgumentError("PID entry '" + label + "' is not finite");
    if (contains(label)) throw ArgumentError("duplicate PID entry '" + label + "'");
    entries_.emplace_back(std::move(label), value);
}

double PidResult::at(std::string_view label) const {
    for (const auto& [k, v] : entries_)
        if (k == label) return v;
    throw ArgumentError("no PID entry '" + std::string(label) + "'");
}

bool PidResult::contains(std::string_view label) const {
    return std::any_of(entries_.begin(), entries_.end(),
                       [&](const auto& e) { return e.first == label; });
}

double PidResult::sum(std::initializer_list<std::string_view> labels) const {
    double s = 0.0;
    for (auto l : labels) s += at(l);
    return s;
}

JointDistribution build_q(const JointDistribution& dist, const VariableSet& target,
                          const CiPartition& partition) {
    if (target.empty()) throw ArgumentError("build_q: empty target");
    VariableSet union_of_blocks;
    for (const auto& b : partition.blocks) {
        if (!b.is_disjoint_from(union_of_blocks))
            throw ArgumentError("build_q: partition blocks overlap");
        union_of_blocks = union_of_blocks | b;
    }
    if (!union_of_blocks.is_disjoint_from(target))
        throw ArgumentError("build_q: partition overlaps the target");
    const VariableSet kept = target | union_of_blocks;
    dist.check(kept);

    // p(t) and p(block value, t) in one pass over the support.
    std::map<Outcome, double> pt;
    std::vector<std::map<Outcome, std::map<Outcome, double>>> joint(partition.blocks.size());
    for (const auto& row : dist.rows()) {
        const double p = row.probability.value;
        if (p <= 0.0) continue;
        Outcome t;
        for (std::size_t i : target) t.push_back(row.outcome[i]);
        pt[t] += p;
        for (std::size_t b = 0; b < partition.blocks.size(); ++b) {
            Outcome v;
            for (std::size_t i : partition.blocks[b]) v.push_back(row.outcome[i]);
            joint[b][t][v] += p;
        }
    }

    const VariableSet target_pos = reindex(kept, target);
    std::vector<VariableSet> block_pos;
    for (const auto& b : partition.blocks) block_pos.push_back(reindex(kept, b));

    std::vector<JointDistribution::Row> rows;
    for (const auto& [t, ptv] : pt) {
        Outcome cell(kept.size(), 0);
        for (std::size_t k = 0; k < target_pos.size(); ++k) cell[target_pos[k]] = t[k];
        // Depth-first product over the blocks' conditional tables.
        auto expand = [&](auto&& self, std::size_t b, double prob) -> void {
            if (b == partition.blocks.size()) {
                rows.push_back({cell, Probability(prob)});
                return;
            }
            for (const auto& [v, pbv] : joint[b].at(t)) {
                for (std::size_t k = 0; k < v.size(); ++k) cell[block_pos[b][k]] = v[k];
                self(self, b + 1, prob * (pbv / ptv));
            }
        };
        expand(expand, 0, ptv);
    }
    std::vector<Variable> vars;
    for (std::size_t i : kept) vars.push_back(dist.variable(i));
    return JointDistribution(std::move(vars), std::move(rows));
}

CiUnionReport ci_union_report(const JointDistribution& dist, const VariableSet& target,
                              const SourceCollection& coll, CiUnionOptions options) {
    if (target.empty()) throw ArgumentError("union information needs a target");
    dist.check(target);
    for (const auto& s : coll) {
        dist.check(s.members());
        if (!s.members().is_disjoint_from(target))
            throw ArgumentError("a source may not contain target variables");
    }
    SourceCollection used = options.normalize ? normalize_sources(dist, target, coll) : coll;
    const VariableSet a = used.variables();
    const double i_p = mutual_information(dist, a, target);

    auto partitions = enumerate_ci_partitions(used);
    std::vector<double> q_values;
    double best = -1.0;
    std::size_t best_index = 0;
    for (std::size_t k = 0; k < partitions.size(); ++k) {
        const JointDistribution q = build_q(dist, target, partitions[k]);
        const VariableSet kept = target | a;
        const double iq = mutual_information(q, reindex(kept, a), reindex(kept, target));
        q_values.push_back(iq);
        if (iq > best) {
            best = iq;
            best_index = k;
        }
    }
    return CiUnionReport{std::min(i_p, best), i_p,          best, best_index, std::move(used),
                         std::move(partitions), std::move(q_values)};
}

double ci_union_information(const JointDistribution& dist, const VariableSet& target,
                            const SourceCollection& coll, CiUnionOptions options) {
    return ci_union_report(dist, target, coll, options).value;
}

double ci_synergy(const JointDistribution& dist, const VariableSet& target,
                  const SourceCollection& coll, CiUnionOptions options) {
    const double whole = mutual_information(dist, dist.complement(target), target);
    return clamp_nonnegative(whole - ci_union_information(dist, target, coll, options),
                             "CI synergy");
}

PidResult ci_bivariate_decomposition(const JointDistribution& dist, const VariableSet& target) {
    const VariableSet y = dist.complement(target);
    if (y.size() != 2)
        throw ArgumentError("bivariate decomposition needs exactly two source variables");
    const VariableSet y1{y[0]};
    const VariableSet y2{y[1]};
    const double i_cup = ci_union_information(dist, target, SourceCollection{Source(y1), Source(y2)});
    const double i1 = mutual_information(dist, y1, target);
    const double i2 = mutual_information(dist, y2, target);
    const double total = mutual_information(dist, y, target);

    PidResult out;
    const double u1 = i_cup - i2;
    out.set("R", i1 - u1);
    out.set("U1", u1);
    out.set("U2", i_cup - i1);
    out.set("S", total - i_cup);
    out.set("I_cup", i_cup);
    out.set("I_total", total);
    return out;
}

}  // namespace pid
