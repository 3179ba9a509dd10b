#include "pid/app.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "pid/axioms.hpp"
#include "pid/corpus.hpp"
#include "pid/error.hpp"
#include "pid/measures.hpp"
#include "pid/reproduce.hpp"

namespace pid {

namespace {

constexpr std::string_view kCorpusPrefix = "corpus:";

struct RunConfig {
    std::string dist;
    std::optional<double> r;
    std::string target;
    std::string sources;
    std::vector<std::string> measures;
    std::string family;
    std::vector<double> grid;
    std::string out_path;
    std::string table;
    std::uint64_t seed = 0;
    std::size_t trials = 200;
};

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    // "-0.000000" reads badly and is not a different value.
    if (std::string_view(buf) == "-0.000000") return "0.000000";
    return buf;
}

std::string shortest(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const auto pos = text.find(sep, start);
        std::string part(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
        const auto b = part.find_first_not_of(" \t");
        const auto e = part.find_last_not_of(" \t");
        parts.push_back(b == std::string::npos ? "" : part.substr(b, e - b + 1));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

struct Loaded {
    JointDistribution dist;
    std::string default_target;
};

Loaded load(const std::string& where, std::optional<double> r) {
    if (where.starts_with(kCorpusPrefix)) {
        const std::string name = where.substr(kCorpusPrefix.size());
        return {canonical(name, r), corpus_entry(name).target};
    }
    if (r) throw ArgumentError("--r only applies to corpus distributions");
    return {load_distribution(where), "T"};
}

VariableSet parse_target(const JointDistribution& dist, const std::string& text) {
    std::vector<std::string> names = split(text, ',');
    for (const auto& n : names)
        if (n.empty()) throw ArgumentError("empty name in --target '" + text + "'");
    return dist.select(names);
}

SourceCollection parse_collection(const JointDistribution& dist, const VariableSet& target,
                                  const std::string& text) {
    if (text.empty()) return SourceCollection::singletons(dist.complement(target));
    return parse_sources(dist, text);
}

void validate_measures(const std::vector<std::string>& names) {
    if (names.empty()) throw ArgumentError("at least one --measure is required");
    for (const auto& m : names) {
        if (!is_measure(m)) {
            std::string known;
            for (const auto& k : measure_names()) known += (known.empty() ? "" : ", ") + k;
            throw ArgumentError("unknown measure '" + m + "' (known: " + known + ")");
        }
    }
}

int cmd_measure(const RunConfig& cfg, std::ostream& out) {
    validate_measures(cfg.measures);
    const Loaded loaded = load(cfg.dist, cfg.r);
    const VariableSet target =
        parse_target(loaded.dist, cfg.target.empty() ? loaded.default_target : cfg.target);
    const SourceCollection coll = parse_collection(loaded.dist, target, cfg.sources);
    std::ostringstream buf;
    for (const auto& m : cfg.measures)
        buf << m << '\t' << fixed6(evaluate_measure(m, loaded.dist, target, coll, cfg.seed)) << '\n';
    out << buf.str();
    return kExitOk;
}

int cmd_reproduce(const RunConfig& cfg, std::ostream& out) {
    const auto cells = reproduce(cfg.table);
    std::size_t failed = 0;
    out << "row\tcolumn\tcomputed\treference\ttolerance\tstatus\tnote\n";
    for (const auto& c : cells) {
        if (c.status == CellStatus::fail) ++failed;
        out << c.row << '\t' << c.column << '\t'
            << (std::isnan(c.computed) ? "-" : fixed6(c.computed)) << '\t'
            << (std::isnan(c.expected) ? "-" : shortest(c.expected)) << '\t'
            << shortest(c.tolerance) << '\t' << to_string(c.status) << '\t' << c.note << '\n';
    }
    out << "# " << cells.size() << " cells, " << failed << " failed\n";
    return failed == 0 ? kExitOk : kExitCheckFailed;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
    static const std::vector<std::string> families{"ADAPTED_XOR", "ADAPTED_XOR_V2",
                                                   "ADAPTED_REDUCED_OR"};
    if (std::find(families.begin(), families.end(), cfg.family) == families.end())
        throw ArgumentError("sweep family must be ADAPTED_XOR, ADAPTED_XOR_V2 or ADAPTED_REDUCED_OR");
    validate_measures(cfg.measures);
    if (cfg.grid.empty()) throw ArgumentError("--r needs at least one grid point");
    for (double r : cfg.grid)
        if (!(r >= 0.0 && r <= 1.0)) throw ArgumentError("grid point " + shortest(r) + " is outside [0, 1]");

    std::ostringstream csv;
    csv << 'r';
    for (const auto& m : cfg.measures) csv << ',' << m;
    csv << '\n';
    for (double r : cfg.grid) {
        const JointDistribution dist = canonical(cfg.family, r);
        const VariableSet target = parse_target(dist, cfg.target.empty() ? "T" : cfg.target);
        const SourceCollection coll = parse_collection(dist, target, cfg.sources);
        csv << shortest(r);
        for (const auto& m : cfg.measures)
            csv << ',' << fixed6(evaluate_measure(m, dist, target, coll, cfg.seed));
        csv << '\n';
    }
    if (cfg.out_path.empty()) {
        out << csv.str();
    } else {
        std::ofstream file(cfg.out_path, std::ios::binary);
        if (!file) throw ArgumentError("cannot write '" + cfg.out_path + "'");
        file << csv.str();
        if (!file) throw Error("failed writing '" + cfg.out_path + "'");
    }
    return kExitOk;
}

int cmd_axioms(const RunConfig& cfg, std::ostream& out) {
    if (cfg.trials < 1) throw ArgumentError("--trials must be at least 1");
    const auto tallies = run_axiom_suite(cfg.trials, cfg.seed);
    std::size_t violations = 0;
    out << "property\tchecked\tviolations\tworst\tstatus\n";
    for (const auto& t : tallies) {
        violations += t.violations;
        char worst[32];
        std::snprintf(worst, sizeof(worst), "%.3e", t.worst);
        out << t.name << '\t' << t.checked << '\t' << t.violations << '\t' << worst << '\t'
            << (t.violations == 0 ? "PASS" : "FAIL") << '\n';
    }
    out << "# trials " << cfg.trials << ", seed " << cfg.seed << ", "
        << (violations == 0 ? "all properties PASS" : "violations found") << '\n';
    return violations == 0 ? kExitOk : kExitCheckFailed;
}

int cmd_list(std::ostream& out) {
    for (const auto& e : corpus_entries())
        out << "corpus:" << e.name << (e.parametric ? "\t(r)" : "\t") << "\ttarget " << e.target
            << '\t' << e.description << '\n';
    for (const auto& m : measure_names()) out << "measure\t" << m << '\n';
    return kExitOk;
}

int cmd_show(const RunConfig& cfg, std::ostream& out) {
    out << format_distribution(load(cfg.dist, cfg.r).dist);
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Partial information decomposition measures on discrete distributions", "pid"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_dist = [&](CLI::App* sub) {
        sub->add_option("--dist", cfg.dist, "corpus:NAME or a distribution file")->required();
        sub->add_option("--r", cfg.r, "parameter of a parametric corpus entry");
    };
    auto add_problem = [&](CLI::App* sub) {
        sub->add_option("--target", cfg.target, "comma-separated target variables");
        sub->add_option("--sources", cfg.sources,
                        "sources such as \"Y1,Y2;Y3\" (default: one per non-target variable)");
        sub->add_option("--measure", cfg.measures, "measure name; repeat or comma-separate")
            ->required()
            ->delimiter(',');
        sub->add_option("--seed", cfg.seed, "seed for randomized optimizers");
    };

    CLI::App* measure = app.add_subcommand("measure", "evaluate measures on one distribution");
    add_dist(measure);
    add_problem(measure);

    CLI::App* repro = app.add_subcommand("reproduce", "recompute a published table");
    repro->add_option("table", cfg.table, "results-table, sec2-cases or counterexamples")
        ->required()
        ->check(CLI::IsMember(reproduction_tables()));

    CLI::App* sweep = app.add_subcommand("sweep", "evaluate measures over a parameter grid");
    sweep->add_option("--family", cfg.family, "ADAPTED_XOR, ADAPTED_XOR_V2 or ADAPTED_REDUCED_OR")
        ->required();
    sweep->add_option("--r", cfg.grid, "grid points, comma-separated")->required()->delimiter(',');
    sweep->add_option("--out", cfg.out_path, "CSV output file (default: standard output)");
    add_problem(sweep);

    CLI::App* axioms = app.add_subcommand("axioms", "randomized axiom and property checks");
    axioms->add_option("--trials", cfg.trials, "number of random distributions");
    axioms->add_option("--seed", cfg.seed, "random seed");

    CLI::App* list = app.add_subcommand("list", "list corpus distributions and measures");
    CLI::App* show = app.add_subcommand("show", "print a distribution in file format");
    add_dist(show);

    std::vector<const char*> argv{"pid"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitArgument;
    }

    try {
        if (*measure) return cmd_measure(cfg, out);
        if (*repro) return cmd_reproduce(cfg, out);
        if (*sweep) return cmd_sweep(cfg, out);
        if (*axioms) return cmd_axioms(cfg, out);
        if (*list) return cmd_list(out);
        if (*show) return cmd_show(cfg, out);
    } catch (const SolverError& e) {
        err << "solver error: " << e.what() << '\n';
        return kExitSolver;
    } catch (const ConsistencyError& e) {
        err << "numerical error: " << e.what() << '\n';
        return kExitSolver;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitArgument;
    }
    return kExitArgument;
}

}  // namespace pid
