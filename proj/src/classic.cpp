#include "pid/classic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "pid/error.hpp"
#include "pid/linprog.hpp"

namespace pid {

namespace {

Outcome project(const Outcome& full, const VariableSet& vars) {
    Outcome out;
    out.reserve(vars.size());
    for (std::size_t i : vars) out.push_back(full[i]);
    return out;
}

VariableSet source_variables(const JointDistribution& dist, const VariableSet& target,
                             std::size_t min_count, const char* what) {
    if (target.empty()) throw ArgumentError(std::string(what) + ": empty target");
    const VariableSet y = dist.complement(target);
    if (y.size() < min_count)
        throw ArgumentError(std::string(what) + ": needs at least " + std::to_string(min_count) +
                            " source variables");
    return y;
}

struct SourceTables {
    std::map<Outcome, double> pt;
    std::map<Outcome, double> pa;
    std::map<std::pair<Outcome, Outcome>, double> pta;
};

SourceTables tabulate(const JointDistribution& dist, const VariableSet& target,
                      const VariableSet& source) {
    SourceTables tab;
    for (const auto& row : dist.rows()) {
        const double p = row.probability.value;
        if (p <= 0.0) continue;
        Outcome t = project(row.outcome, target);
        Outcome a = project(row.outcome, source);
        tab.pt[t] += p;
        tab.pa[a] += p;
        tab.pta[{std::move(t), std::move(a)}] += p;
    }
    return tab;
}

double specific_from(const SourceTables& tab, const Outcome& state) {
    auto it = tab.pt.find(state);
    if (it == tab.pt.end()) throw ArgumentError("specific information at a zero-probability target state");
    const double p_t = it->second;
    double s = 0.0;
    for (auto j = tab.pta.lower_bound({state, Outcome{}}); j != tab.pta.end() && j->first.first == state;
         ++j) {
        const double joint = j->second;
        const double p_a = tab.pa.at(j->first.second);
        // p(a|t) * log[p(t|a) / p(t)]
        s += (joint / p_t) * (std::log2(joint / p_a) - std::log2(p_t));
    }
    return s;
}

}  // namespace

double wms_synergy(const JointDistribution& dist, const VariableSet& target) {
    const VariableSet y = source_variables(dist, target, 2, "wms_synergy");
    double s = mutual_information(dist, y, target);
    for (std::size_t i : y) s -= mutual_information(dist, VariableSet{i}, target);
    return s;
}

double specific_information(const JointDistribution& dist, const VariableSet& target,
                            const Source& source, const Outcome& state) {
    if (!source.members().is_disjoint_from(target))
        throw ArgumentError("specific information: source overlaps target");
    dist.check(target | source.members());
    if (state.size() != target.size()) throw ArgumentError("target state has the wrong arity");
    return specific_from(tabulate(dist, target, source.members()), state);
}

SpecificInfoTable specific_information_table(const JointDistribution& dist,
                                             const VariableSet& target,
                                             const SourceCollection& coll) {
    SpecificInfoTable table;
    for (const auto& [t, p] : marginal_table(dist, target)) {
        table.states.push_back(t);
        table.state_probability.push_back(p);
    }
    table.values.assign(table.states.size(), std::vector<double>(coll.size(), 0.0));
    for (std::size_t i = 0; i < coll.size(); ++i) {
        if (!coll[i].members().is_disjoint_from(target))
            throw ArgumentError("specific information: source overlaps target");
        dist.check(coll[i].members());
        const SourceTables tab = tabulate(dist, target, coll[i].members());
        for (std::size_t s = 0; s < table.states.size(); ++s)
            table.values[s][i] = specific_from(tab, table.states[s]);
    }
    return table;
}

double imin_redundancy(const JointDistribution& dist, const VariableSet& target,
                       const SourceCollection& coll) {
    const SpecificInfoTable table = specific_information_table(dist, target, coll);
    double r = 0.0;
    for (std::size_t s = 0; s < table.states.size(); ++s)
        r += table.state_probability[s] *
             *std::min_element(table.values[s].begin(), table.values[s].end());
    return clamp_nonnegative(r, "I_min redundancy");
}

std::vector<double> wb_redundancies(const JointDistribution& dist, const VariableSet& target,
                                    const RedundancyLattice& lattice) {
    const VariableSet y = dist.complement(target);
    if (y.size() != lattice.num_sources())
        throw ArgumentError("lattice size does not match the number of source variables");

    // Specific information for every non-empty subset of the source variables.
    const std::uint32_t num_sets = (1u << y.size()) - 1;
    std::vector<Source> subsets;
    for (std::uint32_t mask = 1; mask <= num_sets; ++mask) {
        std::vector<std::size_t> members;
        for (std::size_t k = 0; k < y.size(); ++k)
            if (mask & (1u << k)) members.push_back(y[k]);
        subsets.emplace_back(VariableSet(std::move(members)));
    }
    const SpecificInfoTable table =
        specific_information_table(dist, target, SourceCollection(subsets));

    std::vector<double> values;
    for (const auto& node : lattice.nodes()) {
        double r = 0.0;
        for (std::size_t s = 0; s < table.states.size(); ++s) {
            double lo = std::numeric_limits<double>::infinity();
            for (auto mask : node.antichain) lo = std::min(lo, table.values[s][mask - 1]);
            r += table.state_probability[s] * lo;
        }
        values.push_back(r);
    }
    return values;
}

PidResult wb_pid(const JointDistribution& dist, const VariableSet& target) {
    const VariableSet y = source_variables(dist, target, 2, "wb_pid");
    if (y.size() > 3) throw UnsupportedError("wb_pid supports at most three source variables");
    const RedundancyLattice lattice(y.size());
    const auto cumulative = wb_redundancies(dist, target, lattice);
    const auto atoms = lattice.mobius_inversion(cumulative);
    PidResult out;
    for (std::size_t i = 0; i < lattice.size(); ++i) out.set(lattice.label(i), atoms[i]);
    // Synergy is what the single sources leave out: every atom that does not
    // sit below some {Y_i}. For two sources that is just the top atom.
    double union_info = 0.0;
    for (std::size_t node = 0; node < lattice.size(); ++node) {
        bool below_single = false;
        for (std::size_t i = 0; i < y.size() && !below_single; ++i) {
            const auto single = lattice.find({std::uint32_t{1} << i});
            below_single = lattice.leq(node, single);
        }
        if (below_single) union_info += atoms[node];
    }
    out.set("S_WB", mutual_information(dist, y, target) - union_info);
    out.set("I_total", mutual_information(dist, y, target));
    return out;
}

double delta_i_synergy(const JointDistribution& dist, const VariableSet& target) {
    const VariableSet y = source_variables(dist, target, 2, "delta_i_synergy");

    std::map<Outcome, double> pt;
    std::map<Outcome, double> py;
    std::vector<std::map<std::pair<Outcome, std::uint32_t>, double>> pty_i(y.size());
    std::map<std::pair<Outcome, Outcome>, double> pty;
    for (const auto& row : dist.rows()) {
        const double p = row.probability.value;
        if (p <= 0.0) continue;
        Outcome t = project(row.outcome, target);
        Outcome yy = project(row.outcome, y);
        pt[t] += p;
        py[yy] += p;
        for (std::size_t k = 0; k < y.size(); ++k) pty_i[k][{t, yy[k]}] += p;
        pty[{std::move(t), std::move(yy)}] += p;
    }

    // p(t) * prod_i p(y_i | t)
    auto independent = [&](const Outcome& t, const Outcome& yy) {
        const double ptv = pt.at(t);
        double v = ptv;
        for (std::size_t k = 0; k < y.size(); ++k) {
            auto it = pty_i[k].find({t, yy[k]});
            v *= (it == pty_i[k].end() ? 0.0 : it->second) / ptv;
        }
        return v;
    };

    std::map<Outcome, double> denominators;
    for (const auto& [yy, p] : py) {
        double d = 0.0;
        for (const auto& [t, ptv] : pt) d += independent(t, yy);
        if (!(d > 0.0))
            throw DomainError("delta_i_synergy: independent decoder undefined at y = " +
                              dist.describe(y, yy));
        denominators[yy] = d;
    }

    double total = 0.0;
    for (const auto& [key, joint] : pty) {
        const auto& [t, yy] = key;
        const double p_cond = joint / py.at(yy);
        const double p_ind = independent(t, yy) / denominators.at(yy);
        if (!(p_ind > 0.0))
            throw DomainError("delta_i_synergy: independent decoder assigns zero to an observed outcome");
        total += joint * std::log2(p_cond / p_ind);
    }
    return clamp_nonnegative(total, "delta I");
}

JointDistribution maxent_ipf(const JointDistribution& dist, std::span<const VariableSet> preserved,
                             IpfOptions options) {
    if (preserved.empty()) throw ArgumentError("maxent_ipf: no marginals to preserve");
    VariableSet covered;
    for (const auto& m : preserved) {
        if (m.empty()) throw ArgumentError("maxent_ipf: empty marginal");
        dist.check(m);
        covered = covered | m;
    }
    if (covered != dist.all()) throw ArgumentError("maxent_ipf: marginals must cover every variable");

    const std::size_t n = dist.num_variables();
    std::vector<std::size_t> radix(n);
    std::size_t cells = 1;
    for (std::size_t i = 0; i < n; ++i) {
        radix[i] = dist.variable(i).alphabet.size();
        if (cells > (std::size_t{1} << 24) / radix[i])
            throw UnsupportedError("maxent_ipf: product alphabet too large");
        cells *= radix[i];
    }

    auto decode = [&](std::size_t cell) {
        Outcome o(n);
        for (std::size_t i = n; i-- > 0;) {
            o[i] = static_cast<std::uint32_t>(cell % radix[i]);
            cell /= radix[i];
        }
        return o;
    };

    // For each constraint: the marginal cell of every product cell, and the target values.
    struct Constraint {
        std::vector<std::size_t> cell_of;
        std::vector<double> target;
    };
    std::vector<Constraint> constraints;
    for (const auto& m : preserved) {
        Constraint c;
        std::size_t size = 1;
        for (std::size_t i : m) size *= radix[i];
        c.target.assign(size, 0.0);
        auto index_of = [&](const Outcome& o) {
            std::size_t idx = 0;
            for (std::size_t i : m) idx = idx * radix[i] + o[i];
            return idx;
        };
        for (const auto& row : dist.rows()) c.target[index_of(row.outcome)] += row.probability.value;
        c.cell_of.resize(cells);
        for (std::size_t cell = 0; cell < cells; ++cell) c.cell_of[cell] = index_of(decode(cell));
        constraints.push_back(std::move(c));
    }

    // Cells that no distribution with these marginals can make positive are
    // zero in the limit anyway, but IPF only approaches such a boundary at a
    // sublinear rate. Removing them up front gives the same fixed point.
    std::vector<char> support(cells, 1);
    for (std::size_t cell = 0; cell < cells; ++cell)
        for (const auto& c : constraints)
            if (!(c.target[c.cell_of[cell]] > 0.0)) support[cell] = 0;
    std::vector<std::size_t> candidates;
    for (std::size_t cell = 0; cell < cells; ++cell)
        if (support[cell]) candidates.push_back(cell);
    if (candidates.size() <= options.support_lp_limit) {
        std::vector<std::pair<std::size_t, std::size_t>> row_keys;  // (constraint, marginal cell)
        for (std::size_t k = 0; k < constraints.size(); ++k)
            for (std::size_t g = 0; g < constraints[k].target.size(); ++g)
                if (constraints[k].target[g] > 0.0) row_keys.emplace_back(k, g);
        Matrix a(row_keys.size(), candidates.size());
        std::vector<double> b(row_keys.size());
        for (std::size_t r = 0; r < row_keys.size(); ++r) {
            const auto& [k, g] = row_keys[r];
            b[r] = constraints[k].target[g];
            for (std::size_t j = 0; j < candidates.size(); ++j)
                if (constraints[k].cell_of[candidates[j]] == g) a(r, j) = 1.0;
        }
        std::vector<char> positive(candidates.size(), 0);
        for (;;) {
            std::vector<double> cost(candidates.size(), 0.0);
            bool open = false;
            for (std::size_t j = 0; j < candidates.size(); ++j)
                if (!positive[j]) cost[j] = -1.0, open = true;
            if (!open) break;
            const LpResult lp = solve_lp(a, b, cost);
            if (lp.status != LpStatus::optimal)
                throw SolverError("maxent_ipf: support LP failed");
            bool progress = false;
            for (std::size_t j = 0; j < candidates.size(); ++j)
                if (!positive[j] && lp.x[j] > 1e-12) positive[j] = 1, progress = true;
            if (!progress) break;
        }
        for (std::size_t j = 0; j < candidates.size(); ++j)
            if (!positive[j]) support[candidates[j]] = 0;
    }

    std::vector<double> x(cells, 0.0);
    for (std::size_t cell = 0; cell < cells; ++cell)
        if (support[cell]) x[cell] = 1.0;
    std::vector<double> current;
    auto marginal_of = [&](const Constraint& c) {
        current.assign(c.target.size(), 0.0);
        for (std::size_t cell = 0; cell < cells; ++cell) current[c.cell_of[cell]] += x[cell];
    };

    double residual = std::numeric_limits<double>::infinity();
    for (std::size_t sweep = 0; sweep < options.max_sweeps; ++sweep) {
        for (const auto& c : constraints) {
            marginal_of(c);
            for (std::size_t cell = 0; cell < cells; ++cell) {
                const double cur = current[c.cell_of[cell]];
                x[cell] = cur > 0.0 ? x[cell] * (c.target[c.cell_of[cell]] / cur) : 0.0;
            }
        }
        residual = 0.0;
        for (const auto& c : constraints) {
            marginal_of(c);
            for (std::size_t k = 0; k < current.size(); ++k)
                residual = std::max(residual, std::abs(current[k] - c.target[k]));
        }
        if (residual < options.tolerance) break;
    }
    if (!(residual < options.tolerance))
        throw SolverError("maxent_ipf: iteration limit reached, residual " + std::to_string(residual));

    double total = 0.0;
    for (double v : x) total += v;
    std::vector<JointDistribution::Row> rows;
    for (std::size_t cell = 0; cell < cells; ++cell)
        if (x[cell] > 0.0) rows.push_back({decode(cell), Probability(x[cell] / total)});
    return JointDistribution(dist.variables(), std::move(rows));
}

PidResult dep_synergy(const JointDistribution& dist, const VariableSet& target) {
    const VariableSet y = source_variables(dist, target, 2, "dep_synergy");
    if (y.size() != 2) throw ArgumentError("dep_synergy is defined for exactly two source variables");
    const VariableSet y1{y[0]};
    const VariableSet y2{y[1]};

    // The (Y1,T),(Y2,T) maximum-entropy solution has the closed form p(t)p(y1|t)p(y2|t).
    const JointDistribution q_small =
        build_q(dist, target, CiPartition{{y1, y2}, {0, 1}});
    const VariableSet kept = target | y;
    const VariableSet qt = reindex(kept, target);
    const VariableSet qy = reindex(kept, y);
    const VariableSet qy1 = reindex(kept, y1);
    const VariableSet qy2 = reindex(kept, y2);

    const std::vector<VariableSet> preserved{qy1 | qt, qy2 | qt, qy};
    const JointDistribution r = maxent_ipf(marginalize(dist, kept), preserved);

    const double whole = mutual_information(dist, y, target);
    const double i_q = mutual_information(q_small, qy, qt);
    const double i_r = mutual_information(r, qy, qt);

    PidResult out;
    out.set("S", whole - std::min(i_q, i_r));
    out.set("U1", std::min(conditional_mutual_information(q_small, qy1, qt, qy2),
                           conditional_mutual_information(r, qy1, qt, qy2)));
    out.set("U2", std::min(conditional_mutual_information(q_small, qy2, qt, qy1),
                           conditional_mutual_information(r, qy2, qt, qy1)));
    out.set("I_q", i_q);
    out.set("I_r", i_r);
    return out;
}

PidResult iep_bivariate_from_redundancy(const JointDistribution& dist, const VariableSet& target,
                                        double redundancy) {
    const VariableSet y = source_variables(dist, target, 2, "iep_bivariate_from_redundancy");
    if (y.size() != 2) throw ArgumentError("IEP bookkeeping is bivariate");
    const double i1 = mutual_information(dist, VariableSet{y[0]}, target);
    const double i2 = mutual_information(dist, VariableSet{y[1]}, target);
    const double total = mutual_information(dist, y, target);
    const double u1 = i1 - redundancy;
    const double u2 = i2 - redundancy;
    PidResult out;
    out.set("R", redundancy);
    out.set("U1", u1);
    out.set("U2", u2);
    out.set("S", total - redundancy - u1 - u2);
    return out;
}

}  // namespace pid
