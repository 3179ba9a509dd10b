#include "pid/reproduce.hpp"

#include <cmath>
#include <functional>
#include <optional>

#include "pid/channel_orders.hpp"
#include "pid/ci_union.hpp"
#include "pid/classic.hpp"
#include "pid/corpus.hpp"
#include "pid/error.hpp"
#include "pid/measures.hpp"

namespace pid {

namespace {

constexpr double kClosedForm = 5e-3;
constexpr double kOptimizer = 2e-2;

class Recorder {
public:
    void value(std::string row, std::string column, double expected, double tolerance,
               const std::function<double()>& compute) {
        ReproductionCell cell{std::move(row), std::move(column), 0.0, expected, tolerance,
                              CellStatus::fail, ""};
        try {
            cell.computed = compute();
            if (std::isnan(expected)) {
                cell.status = CellStatus::skipped;
                cell.note = "no printed value";
            } else {
                cell.status = std::abs(cell.computed - expected) <= tolerance ? CellStatus::pass
                                                                              : CellStatus::fail;
            }
        } catch (const Error& e) {
            cell.computed = std::nan("");
            cell.note = e.what();
        }
        cells_.push_back(std::move(cell));
    }

    // A yes/no claim, reported as 1 (holds) or 0 against an expected 1.
    void claim(std::string row, std::string column, const std::function<bool()>& holds) {
        value(std::move(row), std::move(column), 1.0, 0.0, [&] { return holds() ? 1.0 : 0.0; });
    }

    void skip(std::string row, std::string column, std::string reason) {
        cells_.push_back({std::move(row), std::move(column), std::nan(""), std::nan(""), 0.0,
                          CellStatus::skipped, std::move(reason)});
    }

    std::vector<ReproductionCell> release() { return std::move(cells_); }

private:
    std::vector<ReproductionCell> cells_;
};

SourceCollection singleton_sources(const JointDistribution& dist, const VariableSet& target) {
    return SourceCollection::singletons(dist.complement(target));
}

std::vector<ReproductionCell> results_table() {
    struct Row {
        const char* name;
        double wb, wms, delta_i, d, ci;
        bool sd_finished;
    };
    static const Row rows[] = {
        {"XOR", 1, 1, 1, 1, 1, true},
        {"AND", 0.5, 0.189, 0.104, 0.5, 0.270, true},
        {"COPY", 1, 0, 0, 0, 0, true},
        {"RDNXOR", 1, 0, 1, 1, 1, true},
        {"RDNUNQXOR", 2, 0, 1, 1, 1, false},
        {"XORDUPLICATE", 1, 1, 1, 1, 1, true},
        {"ANDDUPLICATE", 0.5, -0.123, 0.038, 0.5, 0.270, true},
        {"XORLOSES", 0, 0, 0, 0, 0, true},
        {"XORMULTICOAL", 1, 1, 1, 1, 1, false},
    };
    Recorder rec;
    for (const auto& r : rows) {
        const JointDistribution dist = canonical(r.name);
        const VariableSet t = dist.select({"T"});
        const SourceCollection coll = singleton_sources(dist, t);
        auto measure = [&](const char* m) { return [&, m] { return evaluate_measure(m, dist, t, coll); }; };
        rec.value(r.name, "S_WB", r.wb, kClosedForm, measure("s_wb"));
        rec.value(r.name, "S_WMS", r.wms, kClosedForm, measure("s_wms"));
        rec.value(r.name, "S_dI", r.delta_i, kClosedForm, measure("s_delta_i"));
        rec.value(r.name, "S_d", r.d, kOptimizer, measure("s_d"));
        rec.skip(r.name, "S_SD", "synergistic disclosure is not implemented");
        rec.value(r.name, "S_CI", r.ci, kClosedForm, measure("s_ci"));
    }
    return rec.release();
}

std::vector<ReproductionCell> sec2_cases() {
    Recorder rec;
    auto iep_cells = [&](const char* name, double r, double u1, double u2, double s,
                         double tolerance) {
        const JointDistribution dist = canonical(name);
        const VariableSet t = dist.select({"T"});
        std::optional<PidResult> atoms;
        std::string failure;
        try {
            const double cap = degradation_redundancy(dist, t, singleton_sources(dist, t)).value;
            atoms = iep_bivariate_from_redundancy(dist, t, cap);
        } catch (const Error& e) {
            failure = e.what();
        }
        auto atom = [&](const char* label) {
            return [&, label] {
                if (!atoms) throw SolverError(failure);
                return atoms->at(label);
            };
        };
        rec.value(name, "R", r, tolerance, atom("R"));
        rec.value(name, "U1", u1, tolerance, atom("U1"));
        rec.value(name, "U2", u2, tolerance, atom("U2"));
        rec.value(name, "S", s, tolerance, atom("S"));
    };
    iep_cells("T_EQ_Y1", 0, 1, 0, 0, 1e-6);
    iep_cells("COPY", 0, 1, 1, 0, 1e-6);
    iep_cells("BOOM", 0.322, 0.345, 0.345, 0.114, kOptimizer);
    iep_cells("TWEAKED_COPY", 0, 0.918, 0.918, -0.251, 1e-2);

    // The channel K^Q printed for BOOM.
    const JointDistribution boom = canonical("BOOM");
    const VariableSet t = boom.select({"T"});
    const Channel k1 = channel_from(boom, t, boom.select({"Y1"}));
    const Channel k2 = channel_from(boom, t, boom.select({"Y2"}));
    Channel kq = k1;
    kq.matrix = Matrix{{0, 1, 0}, {0, 0.75, 0.25}, {1.0 / 3, 1.0 / 3, 1.0 / 3}};
    rec.claim("BOOM", "printed K^Q below K1", [&] { return degradation_leq(kq, k1).first; });
    rec.claim("BOOM", "printed K^Q below K2", [&] { return degradation_leq(kq, k2).first; });
    rec.value("BOOM", "I(Q;T) of printed K^Q", 0.322, 1e-3,
              [&] { return channel_mutual_information(kq.input_marginal, kq.matrix); });
    return rec.release();
}

std::vector<ReproductionCell> counterexamples() {
    Recorder rec;
    {
        const JointDistribution d = canonical("TARGET_MONO_CI");
        const SourceCollection coll = SourceCollection::singletons(d.select({"Y1", "Y2"}));
        const double to_t = ci_union_information(d, d.select({"T"}), coll);
        const double to_tz = ci_union_information(d, d.select({"T", "Z"}), coll);
        rec.value("TARGET_MONO_CI", "I_cup_CI(->T)", 0.91, kClosedForm, [&] { return to_t; });
        rec.value("TARGET_MONO_CI", "I_cup_CI(->(T,Z))", 0.90, kClosedForm, [&] { return to_tz; });
        rec.claim("TARGET_MONO_CI", "target monotonicity fails", [&] { return to_t > to_tz; });
    }
    {
        const JointDistribution d = canonical("TARGET_MONO_AND");
        const SourceCollection coll = SourceCollection::singletons(d.select({"Y1", "Y2"}));
        rec.value("TARGET_MONO_AND", "I_cap_d(->T)", 0.311, kOptimizer,
                  [&] { return degradation_redundancy(d, d.select({"T"}), coll).value; });
        rec.value("TARGET_MONO_AND", "I_cap_d(->(T,Z))", 0.0, kOptimizer,
                  [&] { return degradation_redundancy(d, d.select({"T", "Z"}), coll).value; });
    }
    {
        const JointDistribution d = canonical("COPY_XOR_TARGETS");
        for (const char* target : {"T1", "T2"}) {
            const JointDistribution m = marginalize(d, d.select({target, "Y1", "Y2"}));
            const VariableSet t = m.select({target});
            rec.value("COPY_XOR_TARGETS", std::string("S_CI(->") + target + ")",
                      target == std::string("T1") ? 0.0 : 1.0, 1e-6,
                      [&] { return ci_synergy(m, t, singleton_sources(m, t)); });
        }
    }
    auto convexity = [&](const char* family, const char* column, const char* measure,
                         double at0, double at25, double at50, double average, double tolerance) {
        auto eval = [&](double r) {
            const JointDistribution d = canonical(family, r);
            const VariableSet t = d.select({"T"});
            return evaluate_measure(measure, d, t, singleton_sources(d, t));
        };
        double v0 = 0.0;
        double v25 = 0.0;
        double v50 = 0.0;
        rec.value(family, std::string(column) + "(0)", at0, tolerance, [&] { return v0 = eval(0.0); });
        rec.value(family, std::string(column) + "(0.25)", at25, tolerance,
                  [&] { return v25 = eval(0.25); });
        rec.value(family, std::string(column) + "(0.5)", at50, tolerance,
                  [&] { return v50 = eval(0.5); });
        rec.value(family, std::string("0.5*") + column + "(0)+0.5*" + column + "(0.5)", average,
                  tolerance, [&] { return 0.5 * v0 + 0.5 * v50; });
        rec.claim(family, "convexity fails", [&] { return v25 > 0.5 * v0 + 0.5 * v50; });
    };
    convexity("ADAPTED_XOR", "S_CI", "s_ci", 0.270, 0.552, 0.610, 0.440, kClosedForm);
    convexity("ADAPTED_XOR_V2", "S_d", "s_d", std::nan(""), 0.338, std::nan(""), 0.3095,
              kOptimizer);
    return rec.release();
}

}  // namespace

const std::vector<std::string>& reproduction_tables() {
    static const std::vector<std::string> names{"results-table", "sec2-cases", "counterexamples"};
    return names;
}

std::vector<ReproductionCell> reproduce(std::string_view which) {
    if (which == "results-table") return results_table();
    if (which == "sec2-cases") return sec2_cases();
    if (which == "counterexamples") return counterexamples();
    throw ArgumentError("unknown table '" + std::string(which) + "'");
}

std::string_view to_string(CellStatus status) {
    switch (status) {
        case CellStatus::pass: return "PASS";
        case CellStatus::fail: return "FAIL";
        case CellStatus::skipped: return "SKIPPED";
    }
    return "?";
}

}  // namespace pid
