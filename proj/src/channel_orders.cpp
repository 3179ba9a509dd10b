#include "pid/channel_orders.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <string>

#include "pid/error.hpp"
#include "pid/linprog.hpp"

namespace pid {

namespace {

void require_compatible(const Channel& a, const Channel& b) {
    if (a.num_inputs() != b.num_inputs() || a.input_states != b.input_states)
        throw ArgumentError("channels have different input states");
    for (std::size_t t = 0; t < a.num_inputs(); ++t)
        if (std::abs(a.input_marginal[t] - b.input_marginal[t]) > 1e-9)
            throw ArgumentError("channels have different input marginals");
}

// Uniform double in [-1, 1) from the top 53 bits, identical on every platform.
double symmetric_unit(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
}

Outcome project(const Outcome& full, const VariableSet& vars) {
    Outcome out;
    out.reserve(vars.size());
    for (std::size_t i : vars) out.push_back(full[i]);
    return out;
}

// The polytope of garblings (M_1..M_m) with K^(1) M_1 = ... = K^(m) M_m.
class GarblingPolytope {
public:
    GarblingPolytope(std::vector<Channel> channels, std::size_t outputs)
        : channels_(std::move(channels)), q_(outputs) {
        std::size_t offset = 0;
        for (const auto& ch : channels_) {
            offsets_.push_back(offset);
            offset += ch.num_outputs() * q_;
        }
        num_vars_ = offset;
        const std::size_t n = channels_.front().num_inputs();

        std::size_t rows = 0;
        for (const auto& ch : channels_) rows += ch.num_outputs();
        rows += (channels_.size() - 1) * n * q_;
        a_ = Matrix(rows, num_vars_);
        b_.assign(rows, 0.0);

        std::size_t r = 0;
        for (std::size_t i = 0; i < channels_.size(); ++i) {
            for (std::size_t k = 0; k < channels_[i].num_outputs(); ++k, ++r) {
                for (std::size_t c = 0; c < q_; ++c) a_(r, var(i, k, c)) = 1.0;
                b_[r] = 1.0;
            }
        }
        const Matrix& k1 = channels_.front().matrix;
        for (std::size_t i = 1; i < channels_.size(); ++i) {
            const Matrix& ki = channels_[i].matrix;
            for (std::size_t t = 0; t < n; ++t) {
                for (std::size_t c = 0; c < q_; ++c, ++r) {
                    for (std::size_t k = 0; k < k1.cols(); ++k) a_(r, var(0, k, c)) += k1(t, k);
                    for (std::size_t k = 0; k < ki.cols(); ++k) a_(r, var(i, k, c)) -= ki(t, k);
                }
            }
        }
    }

    std::size_t num_vars() const { return num_vars_; }
    std::size_t outputs() const { return q_; }
    const std::vector<Channel>& channels() const { return channels_; }

    std::size_t var(std::size_t source, std::size_t k, std::size_t c) const {
        return offsets_[source] + k * q_ + c;
    }

    std::vector<double> vertex(std::span<const double> cost) const {
        const LpResult lp = solve_lp(a_, b_, cost);
        if (lp.status != LpStatus::optimal)
            throw SolverError("degradation polytope LP failed (infeasibility " +
                              std::to_string(lp.infeasibility) + ")");
        return lp.x;
    }

    std::vector<double> uniform() const { return std::vector<double>(num_vars_, 1.0 / q_); }

    Matrix garbling(std::span<const double> x, std::size_t source) const {
        Matrix m(channels_[source].num_outputs(), q_);
        for (std::size_t k = 0; k < m.rows(); ++k)
            for (std::size_t c = 0; c < q_; ++c) m(k, c) = x[var(source, k, c)];
        return m;
    }

    Matrix channel_q(std::span<const double> x) const {
        return channels_.front().matrix * garbling(x, 0);
    }

private:
    std::vector<Channel> channels_;
    std::size_t q_;
    std::vector<std::size_t> offsets_;
    std::size_t num_vars_ = 0;
    Matrix a_;
    std::vector<double> b_;
};

struct AscentResult {
    std::vector<double> x;
    double value = 0.0;
    std::size_t steps = 0;
    bool stationary = false;
};

AscentResult conditional_gradient_ascent(const GarblingPolytope& poly,
                                         std::span<const double> pt, std::vector<double> x,
                                         std::size_t max_steps) {
    const Matrix& k1 = poly.channels().front().matrix;
    const std::size_t n = pt.size();
    const std::size_t q = poly.outputs();

    auto value_of = [&](std::span<const double> point) {
        return channel_mutual_information(pt, poly.channel_q(point));
    };

    AscentResult res{std::move(x), 0.0, 0, false};
    res.value = value_of(res.x);
    std::vector<double> cost(poly.num_vars(), 0.0);
    while (res.steps < max_steps) {
        // Gradient of I(Q;T) with respect to K^Q, pulled back to M_1.
        const Matrix kq = poly.channel_q(res.x);
        std::vector<double> pq(q, 0.0);
        for (std::size_t t = 0; t < n; ++t)
            for (std::size_t c = 0; c < q; ++c) pq[c] += pt[t] * kq(t, c);
        Matrix grad(n, q);
        for (std::size_t t = 0; t < n; ++t) {
            for (std::size_t c = 0; c < q; ++c) {
                if (pq[c] <= 0.0) continue;
                grad(t, c) = pt[t] * std::log2(std::max(kq(t, c), 1e-12) / pq[c]);
            }
        }
        std::fill(cost.begin(), cost.end(), 0.0);
        for (std::size_t k = 0; k < k1.cols(); ++k)
            for (std::size_t c = 0; c < q; ++c) {
                double g = 0.0;
                for (std::size_t t = 0; t < n; ++t) g += k1(t, k) * grad(t, c);
                cost[poly.var(0, k, c)] = -g;
            }

        // A convex objective attains its maximum over a segment at an
        // endpoint, so the line search reduces to comparing the two ends.
        std::vector<double> v = poly.vertex(cost);
        const double fv = value_of(v);
        ++res.steps;
        if (!(fv > res.value + 1e-12)) {
            res.stationary = true;
            break;
        }
        res.x = std::move(v);
        res.value = fv;
    }
    return res;
}

}  // namespace

std::pair<bool, std::optional<DegradationWitness>> degradation_leq(const Channel& k,
                                                                   const Channel& k_prime) {
    k.validate();
    k_prime.validate();
    require_compatible(k, k_prime);
    const std::size_t n = k.num_inputs();
    const std::size_t a = k.num_outputs();
    const std::size_t b = k_prime.num_outputs();

    Matrix lhs(n * a + b, b * a);
    std::vector<double> rhs(n * a + b, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
        for (std::size_t j = 0; j < a; ++j) {
            for (std::size_t kk = 0; kk < b; ++kk) lhs(t * a + j, kk * a + j) = k_prime.matrix(t, kk);
            rhs[t * a + j] = k.matrix(t, j);
        }
    }
    for (std::size_t kk = 0; kk < b; ++kk) {
        for (std::size_t j = 0; j < a; ++j) lhs(n * a + kk, kk * a + j) = 1.0;
        rhs[n * a + kk] = 1.0;
    }
    const std::vector<double> zero(b * a, 0.0);
    LpOptions options;
    options.feasibility_tolerance = kDegradationTolerance;
    const LpResult lp = solve_lp(lhs, rhs, zero, options);
    if (lp.status != LpStatus::optimal) return {false, std::nullopt};

    DegradationWitness w{Matrix(b, a), 0.0};
    for (std::size_t kk = 0; kk < b; ++kk)
        for (std::size_t j = 0; j < a; ++j) w.m_matrix(kk, j) = lp.x[kk * a + j];
    w.residual = max_abs_diff(k.matrix, k_prime.matrix * w.m_matrix);
    return {true, std::move(w)};
}

OptimizationReport degradation_redundancy(const JointDistribution& dist,
                                          const VariableSet& target,
                                          const SourceCollection& coll,
                                          DegradationOptions options) {
    if (target.empty()) throw ArgumentError("degradation_redundancy: empty target");
    std::vector<Channel> channels;
    double min_mi = std::numeric_limits<double>::infinity();
    std::size_t max_outputs = 0;
    for (const auto& s : coll) {
        channels.push_back(channel_from(dist, target, s.members()));
        min_mi = std::min(min_mi, mutual_information(dist, s.members(), target));
        max_outputs = std::max(max_outputs, channels.back().num_outputs());
    }
    const std::vector<double> pt = channels.front().input_marginal;
    const std::size_t outputs = std::max(pt.size(), max_outputs);
    const GarblingPolytope poly(std::move(channels), outputs);

    std::mt19937_64 gen(options.seed);
    OptimizationReport report;
    report.bound = min_mi;
    report.converged = true;
    double best = -1.0;
    std::vector<double> best_x;

    // A source channel that is a garbling of every other one is itself a
    // feasible K^Q; random vertices tend to miss it when the sources are nested.
    std::vector<std::vector<double>> seeded;
    const auto& chans = poly.channels();
    for (std::size_t i = 0; i < chans.size(); ++i) {
        if (chans[i].num_outputs() > outputs) continue;
        std::vector<double> x(poly.num_vars(), 0.0);
        bool ok = true;
        for (std::size_t j = 0; j < chans.size() && ok; ++j) {
            if (j == i) {
                for (std::size_t k = 0; k < chans[i].num_outputs(); ++k) x[poly.var(i, k, k)] = 1.0;
                continue;
            }
            auto [leq, witness] = degradation_leq(chans[i], chans[j]);
            ok = leq && witness;
            if (!ok) break;
            for (std::size_t k = 0; k < chans[j].num_outputs(); ++k)
                for (std::size_t c = 0; c < chans[i].num_outputs(); ++c)
                    x[poly.var(j, k, c)] = std::max(0.0, witness->m_matrix(k, c));
        }
        if (ok) seeded.push_back(std::move(x));
    }

    std::vector<double> cost(poly.num_vars());
    const std::size_t total_starts = seeded.size() + options.random_restarts + 1;
    for (std::size_t run_index = 0; run_index < total_starts; ++run_index) {
        std::vector<double> x0;
        const std::size_t start = run_index < seeded.size() ? 0 : run_index - seeded.size() + 1;
        if (run_index < seeded.size()) {
            x0 = std::move(seeded[run_index]);
        } else if (start == 0) {
            x0 = poly.uniform();
        } else {
            for (double& c : cost) c = symmetric_unit(gen);
            x0 = poly.vertex(cost);
        }
        AscentResult run = conditional_gradient_ascent(poly, pt, std::move(x0), options.max_steps);
        report.iterations += run.steps;
        report.converged = report.converged && run.stationary;
        if (run.value > best) {
            best = run.value;
            best_x = std::move(run.x);
        }
    }
    report.restarts_used = total_starts;
    report.value = best;
    report.channel = poly.channel_q(best_x);
    for (std::size_t i = 0; i < poly.channels().size(); ++i)
        report.garblings.push_back(poly.garbling(best_x, i));
    report.certificate = min_mi - best;
    return report;
}

OptimizationReport vk_union_information(const JointDistribution& dist, const VariableSet& target,
                                        const SourceCollection& coll, VkOptions options) {
    if (target.empty()) throw ArgumentError("vk_union_information: empty target");
    for (const auto& s : coll)
        if (!s.members().is_disjoint_from(target))
            throw ArgumentError("a source may not contain target variables");
    const SourceCollection used = normalize_sources(dist, target, coll);
    const VariableSet a_vars = used.variables();
    std::vector<VariableSet> source_pos;  // positions inside a_vars
    for (const auto& s : used) source_pos.push_back(reindex(a_vars, s.members()));

    // p(t), p(a), and p(a_i | t) for every source.
    std::map<Outcome, double> pt;
    std::map<Outcome, double> pa;
    std::map<Outcome, std::vector<std::map<Outcome, double>>> pai_t;
    std::map<Outcome, std::vector<std::map<std::uint32_t, double>>> pv_t;
    for (const auto& row : dist.rows()) {
        const double p = row.probability.value;
        if (p <= 0.0) continue;
        const Outcome t = project(row.outcome, target);
        const Outcome a = project(row.outcome, a_vars);
        pt[t] += p;
        pa[a] += p;
        auto& per_source = pai_t[t];
        per_source.resize(used.size());
        for (std::size_t i = 0; i < used.size(); ++i) per_source[i][project(a, source_pos[i])] += p;
        auto& per_var = pv_t[t];
        per_var.resize(a_vars.size());
        for (std::size_t v = 0; v < a_vars.size(); ++v) per_var[v][a[v]] += p;
    }

    // Per target state: candidate cells (every source marginal positive) and
    // the grouping of cells for each source constraint.
    struct Block {
        double p = 0.0;
        std::vector<std::size_t> cells;  // global cell ids
        std::vector<std::vector<std::size_t>> group_of;  // [source][local cell]
        std::vector<std::vector<double>> targets;        // [source][group]
    };
    std::map<Outcome, std::size_t> cell_ids;
    std::vector<Outcome> cell_outcomes;
    std::vector<Block> blocks;
    std::vector<Outcome> states;
    for (const auto& [t, ptv] : pt) {
        Block blk;
        blk.p = ptv;
        const auto& per_var = pv_t.at(t);
        const auto& per_source = pai_t.at(t);
        std::vector<std::vector<std::uint32_t>> values(a_vars.size());
        for (std::size_t v = 0; v < a_vars.size(); ++v)
            for (const auto& [sym, p] : per_var[v]) values[v].push_back(sym);

        std::vector<std::map<Outcome, std::size_t>> group_index(used.size());
        blk.group_of.resize(used.size());
        blk.targets.resize(used.size());
        Outcome cell(a_vars.size());
        auto expand = [&](auto&& self, std::size_t v) -> void {
            if (v == a_vars.size()) {
                std::vector<std::size_t> groups(used.size());
                for (std::size_t i = 0; i < used.size(); ++i) {
                    const Outcome key = project(cell, source_pos[i]);
                    auto it = per_source[i].find(key);
                    if (it == per_source[i].end()) return;
                    auto [g, inserted] = group_index[i].try_emplace(key, blk.targets[i].size());
                    if (inserted) blk.targets[i].push_back(it->second / ptv);
                    groups[i] = g->second;
                }
                auto [id, inserted] = cell_ids.try_emplace(cell, cell_outcomes.size());
                if (inserted) cell_outcomes.push_back(cell);
                blk.cells.push_back(id->second);
                for (std::size_t i = 0; i < used.size(); ++i) blk.group_of[i].push_back(groups[i]);
                return;
            }
            for (auto sym : values[v]) {
                cell[v] = sym;
                self(self, v + 1);
            }
        };
        expand(expand, 0);
        states.push_back(t);
        blocks.push_back(std::move(blk));
    }
    const std::size_t num_cells = cell_outcomes.size();

    // Strictly positive start: blend of p(a), the conditionally independent
    // product over single variables, and uniform.
    std::vector<double> r(num_cells, 1.0 / static_cast<double>(num_cells));
    {
        std::vector<double> ci(num_cells, 0.0);
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            const auto& per_var = pv_t.at(states[b]);
            for (std::size_t id : blocks[b].cells) {
                double prod = blocks[b].p;
                for (std::size_t v = 0; v < a_vars.size(); ++v)
                    prod *= per_var[v].at(cell_outcomes[id][v]) / blocks[b].p;
                ci[id] += prod;
            }
        }
        for (std::size_t id = 0; id < num_cells; ++id) {
            auto it = pa.find(cell_outcomes[id]);
            const double p_a = it == pa.end() ? 0.0 : it->second;
            r[id] = (r[id] + ci[id] + p_a) / 3.0;
        }
    }

    std::vector<std::vector<double>> x(blocks.size());
    // x_t = r * prod_i factor_i(group): the I-projection of r lies in this
    // family, so the factors carry over between outer iterations.
    std::vector<std::vector<std::vector<double>>> factors(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (const auto& tg : blocks[b].targets) factors[b].emplace_back(tg.size(), 1.0);
    std::vector<double> sums;
    auto project_block = [&](std::size_t b) {
        const Block& blk = blocks[b];
        auto& xb = x[b];
        auto& fb = factors[b];
        xb.resize(blk.cells.size());
        auto rebuild = [&] {
            for (std::size_t c = 0; c < xb.size(); ++c) {
                double v = r[blk.cells[c]];
                for (std::size_t i = 0; i < fb.size(); ++i) v *= fb[i][blk.group_of[i][c]];
                xb[c] = v;
            }
        };
        rebuild();
        double residual = std::numeric_limits<double>::infinity();
        for (std::size_t sweep = 0; sweep < 100000 && residual > 1e-13; ++sweep) {
            for (std::size_t i = 0; i < blk.targets.size(); ++i) {
                sums.assign(blk.targets[i].size(), 0.0);
                for (std::size_t c = 0; c < xb.size(); ++c) sums[blk.group_of[i][c]] += xb[c];
                for (std::size_t g = 0; g < sums.size(); ++g) fb[i][g] *= blk.targets[i][g] / sums[g];
                for (std::size_t c = 0; c < xb.size(); ++c)
                    xb[c] *= blk.targets[i][blk.group_of[i][c]] / sums[blk.group_of[i][c]];
            }
            residual = 0.0;
            for (std::size_t i = 0; i < blk.targets.size(); ++i) {
                sums.assign(blk.targets[i].size(), 0.0);
                for (std::size_t c = 0; c < xb.size(); ++c) sums[blk.group_of[i][c]] += xb[c];
                for (std::size_t g = 0; g < sums.size(); ++g)
                    residual = std::max(residual, std::abs(sums[g] - blk.targets[i][g]));
            }
        }
        if (residual > 1e-9)
            throw SolverError("vk_union_information: projection did not converge (residual " +
                              std::to_string(residual) + ")");
    };

    std::vector<double> mix(num_cells);
    auto objective = [&]() {
        std::fill(mix.begin(), mix.end(), 0.0);
        for (std::size_t b = 0; b < blocks.size(); ++b)
            for (std::size_t c = 0; c < x[b].size(); ++c)
                mix[blocks[b].cells[c]] += blocks[b].p * x[b][c];
        double f = 0.0;
        for (std::size_t b = 0; b < blocks.size(); ++b)
            for (std::size_t c = 0; c < x[b].size(); ++c)
                if (x[b][c] > 0.0)
                    f += blocks[b].p * x[b][c] * std::log2(x[b][c] / mix[blocks[b].cells[c]]);
        return f;
    };

    // Frank-Wolfe gap: sum over blocks of g.(x - v*), v* minimizing g over the block.
    auto duality_gap = [&]() {
        double gap = 0.0;
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            const Block& blk = blocks[b];
            const std::size_t nc = blk.cells.size();
            std::vector<double> g(nc);
            double gx = 0.0;
            for (std::size_t c = 0; c < nc; ++c) {
                g[c] = blk.p * std::log2(std::max(x[b][c], 1e-300) / mix[blk.cells[c]]);
                gx += g[c] * x[b][c];
            }
            std::size_t rows = 0;
            for (const auto& tg : blk.targets) rows += tg.size();
            Matrix lhs(rows, nc);
            std::vector<double> rhs(rows);
            std::size_t offset = 0;
            for (std::size_t i = 0; i < blk.targets.size(); ++i) {
                for (std::size_t c = 0; c < nc; ++c) lhs(offset + blk.group_of[i][c], c) = 1.0;
                for (std::size_t k = 0; k < blk.targets[i].size(); ++k)
                    rhs[offset + k] = blk.targets[i][k];
                offset += blk.targets[i].size();
            }
            const LpResult lp = solve_lp(lhs, rhs, g);
            if (lp.status != LpStatus::optimal)
                throw SolverError("vk_union_information: gap LP failed");
            gap += gx - lp.objective;
        }
        return std::max(gap, 0.0);
    };

    OptimizationReport report;
    report.restarts_used = 1;
    double previous = std::numeric_limits<double>::infinity();
    double value = 0.0;
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t iter = 1; iter <= options.max_iterations; ++iter) {
        for (std::size_t b = 0; b < blocks.size(); ++b) project_block(b);
        value = objective();
        report.iterations = iter;
        const bool stalled = std::abs(previous - value) <= 1e-15 * std::max(1.0, value);
        if (iter % options.gap_interval == 0 || stalled || iter == options.max_iterations) {
            gap = duality_gap();
            if (gap < options.gap_tolerance || stalled) break;
        }
        previous = value;
        r = mix;
    }

    report.value = value;
    report.certificate = gap;
    report.converged = gap < 1e-6;
    report.bound = 0.0;
    for (const auto& s : used)
        report.bound = std::max(report.bound, mutual_information(dist, s.members(), target));

    const VariableSet kept = target | a_vars;
    const VariableSet t_pos = reindex(kept, target);
    const VariableSet a_pos = reindex(kept, a_vars);
    std::vector<JointDistribution::Row> rows;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        for (std::size_t c = 0; c < x[b].size(); ++c) {
            if (!(x[b][c] > 0.0)) continue;
            Outcome o(kept.size());
            for (std::size_t k = 0; k < t_pos.size(); ++k) o[t_pos[k]] = states[b][k];
            const Outcome& cell = cell_outcomes[blocks[b].cells[c]];
            for (std::size_t k = 0; k < a_pos.size(); ++k) o[a_pos[k]] = cell[k];
            rows.push_back({std::move(o), Probability(blocks[b].p * x[b][c])});
        }
    }
    std::vector<Variable> vars;
    for (std::size_t i : kept) vars.push_back(dist.variable(i));
    report.distribution.emplace(std::move(vars), std::move(rows));
    return report;
}

double s_d(const JointDistribution& dist, const VariableSet& target, const SourceCollection& coll,
           VkOptions options) {
    const double whole = mutual_information(dist, dist.complement(target), target);
    return clamp_nonnegative(whole - vk_union_information(dist, target, coll, options).value,
                             "S^d");
}

double s_d_via_redundancy(const JointDistribution& dist, const VariableSet& target,
                          DegradationOptions options) {
    const VariableSet y = dist.complement(target);
    if (y.size() != 2) throw ArgumentError("the redundancy route is bivariate");
    const VariableSet y1{y[0]};
    const VariableSet y2{y[1]};
    const double cap =
        degradation_redundancy(dist, target, SourceCollection{Source(y1), Source(y2)}, options)
            .value;
    return mutual_information(dist, y, target) - mutual_information(dist, y1, target) -
           mutual_information(dist, y2, target) + cap;
}

}  // namespace pid
