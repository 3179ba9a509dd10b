#include "pid/corpus.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>

#include "pid/error.hpp"

namespace pid {

namespace {

using Table = std::vector<std::pair<std::vector<std::string>, Probability>>;

Probability frac(std::int64_t num, std::int64_t den) { return Probability::fraction(num, den); }

// (a + b r) / den, exact when r is a fraction with a small denominator.
Probability affine(double r, std::int64_t a, std::int64_t b, std::int64_t den) {
    for (std::int64_t v = 1; v <= 10000; ++v) {
        const double u = std::round(r * static_cast<double>(v));
        if (std::abs(u - r * static_cast<double>(v)) < 1e-12 * static_cast<double>(v))
            return frac(a * v + b * static_cast<std::int64_t>(u), den * v);
    }
    return Probability((static_cast<double>(a) + static_cast<double>(b) * r) /
                       static_cast<double>(den));
}

Table equiprobable(const std::vector<std::vector<std::string>>& rows) {
    Table t;
    for (const auto& r : rows) t.push_back({r, frac(1, static_cast<std::int64_t>(rows.size()))});
    return t;
}

Table with_duplicate(Table t) {
    for (auto& [symbols, p] : t) symbols.push_back(symbols[2]);
    return t;
}

Table xor_rows() {
    return equiprobable({{"0", "0", "0"}, {"1", "0", "1"}, {"1", "1", "0"}, {"0", "1", "1"}});
}

Table and_rows() {
    return equiprobable({{"0", "0", "0"}, {"0", "0", "1"}, {"0", "1", "0"}, {"1", "1", "1"}});
}

Table rdnunqxor_rows() {
    // Four XOR blocks: block (i, j) uses Y1 in {2i, 2i+1} and Y2 in {2j, 2j+1};
    // one table half has Y1, Y2 < 4 and the other the same shifted by 4.
    std::vector<std::vector<std::string>> rows;
    for (int half = 0; half < 2; ++half) {
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                const int block = 2 * i + j;
                for (int a = 0; a < 2; ++a) {
                    for (int b = 0; b < 2; ++b) {
                        const int t = 8 * half + 2 * block + (a ^ b);
                        rows.push_back({std::to_string(t), std::to_string(4 * half + 2 * i + a),
                                        std::to_string(4 * half + 2 * j + b)});
                    }
                }
            }
        }
    }
    return equiprobable(rows);
}

const std::vector<std::string> kTYY{"T", "Y1", "Y2"};
const std::vector<std::string> kTYYY{"T", "Y1", "Y2", "Y3"};

}  // namespace

const std::vector<CorpusEntry>& corpus_entries() {
    static const std::vector<CorpusEntry> entries{
        {"XOR", false, "T", "T = Y1 xor Y2, inputs uniform"},
        {"AND", false, "T", "T = Y1 and Y2, inputs uniform"},
        {"COPY", false, "T", "T = (Y1, Y2), independent uniform bits"},
        {"T_EQ_Y1", false, "T", "T = Y1, Y2 independent noise"},
        {"TWEAKED_COPY", false, "T", "COPY with the (1,1) input removed"},
        {"BOOM", false, "T", "six equiprobable states, nontrivial common garbling"},
        {"ADAPTED_REDUCED_OR", true, "T", "reduced OR, T = 1 mass split r : 1-r between equal and unequal inputs"},
        {"TARGET_MONO_AND", false, "T", "adding Z to the target lowers I_cap_d"},
        {"TARGET_MONO_CI", false, "T", "adding Z to the target lowers I_cup_CI"},
        {"COPY_XOR_TARGETS", false, "T1", "T1 = COPY, T2 = XOR"},
        {"ADAPTED_XOR", true, "T", "XOR, but input (0,0) gives T = 0 only with probability r"},
        {"ADAPTED_XOR_V2", true, "T", "as ADAPTED_XOR with input (0,0) down-weighted to 1/10"},
        {"RDNXOR", false, "T", "redundant bit plus XOR"},
        {"RDNUNQXOR", false, "T", "redundant, unique and XOR bits"},
        {"XORDUPLICATE", false, "T", "XOR with Y3 = Y2"},
        {"ANDDUPLICATE", false, "T", "AND with Y3 = Y2"},
        {"XORLOSES", false, "T", "XOR whose synergy is lost to Y3"},
        {"XORMULTICOAL", false, "T", "XOR reachable from several coalitions"},
    };
    return entries;
}

const CorpusEntry& corpus_entry(std::string_view name) {
    for (const auto& e : corpus_entries())
        if (e.name == name) return e;
    throw ArgumentError("unknown corpus distribution '" + std::string(name) + "'");
}

JointDistribution canonical(std::string_view name, std::optional<double> r) {
    const CorpusEntry& entry = corpus_entry(name);
    if (entry.parametric && !r)
        throw ArgumentError(entry.name + " needs the parameter r");
    if (!entry.parametric && r)
        throw ArgumentError(entry.name + " takes no parameter");
    if (r && !(*r >= 0.0 && *r <= 1.0))
        throw ArgumentError("parameter r must lie in [0, 1]");

    if (name == "XOR") return JointDistribution::from_table(kTYY, xor_rows());
    if (name == "AND") return JointDistribution::from_table(kTYY, and_rows());
    if (name == "COPY")
        return JointDistribution::from_table(
            kTYY, equiprobable({{"(0,0)", "0", "0"},
                                {"(0,1)", "0", "1"},
                                {"(1,0)", "1", "0"},
                                {"(1,1)", "1", "1"}}));
    if (name == "T_EQ_Y1")
        return JointDistribution::from_table(
            kTYY, equiprobable({{"0", "0", "0"}, {"0", "0", "1"}, {"1", "1", "0"}, {"1", "1", "1"}}));
    if (name == "TWEAKED_COPY")
        return JointDistribution::from_table(
            kTYY, equiprobable({{"(0,0)", "0", "0"}, {"(0,1)", "0", "1"}, {"(1,0)", "1", "0"}}));
    if (name == "BOOM")
        return JointDistribution::from_table(kTYY, equiprobable({{"0", "0", "2"},
                                                                 {"1", "0", "0"},
                                                                 {"1", "1", "2"},
                                                                 {"2", "0", "0"},
                                                                 {"2", "2", "0"},
                                                                 {"2", "2", "1"}}));
    if (name == "ADAPTED_REDUCED_OR")
        return JointDistribution::from_table(kTYY, {{{"0", "0", "0"}, frac(1, 2)},
                                                    {{"1", "0", "0"}, affine(*r, 0, 1, 4)},
                                                    {{"1", "1", "0"}, affine(*r, 1, -1, 4)},
                                                    {{"1", "0", "1"}, affine(*r, 1, -1, 4)},
                                                    {{"1", "1", "1"}, affine(*r, 0, 1, 4)}});
    if (name == "TARGET_MONO_AND")
        return JointDistribution::from_table({"T", "Z", "Y1", "Y2"},
                                             equiprobable({{"0", "(0,0)", "0", "0"},
                                                           {"0", "(0,1)", "0", "1"},
                                                           {"0", "(1,0)", "1", "0"},
                                                           {"1", "(1,1)", "1", "1"}}));
    if (name == "TARGET_MONO_CI")
        return JointDistribution::from_table({"T", "Z", "Y1", "Y2"},
                                             {{{"0", "0", "1", "0"}, Probability::parse("0.419")},
                                              {{"1", "1", "2", "1"}, Probability::parse("0.203")},
                                              {{"2", "1", "3", "0"}, Probability::parse("0.007")},
                                              {{"0", "0", "3", "1"}, Probability::parse("0.346")},
                                              {{"2", "2", "4", "4"}, Probability::parse("0.025")}});
    if (name == "COPY_XOR_TARGETS")
        return JointDistribution::from_table({"T2", "T1", "Y1", "Y2"},
                                             equiprobable({{"0", "0", "0", "0"},
                                                           {"1", "1", "0", "1"},
                                                           {"1", "2", "1", "0"},
                                                           {"0", "3", "1", "1"}}));
    if (name == "ADAPTED_XOR")
        return JointDistribution::from_table(kTYY, {{{"0", "0", "0"}, affine(*r, 0, 1, 4)},
                                                    {{"1", "0", "0"}, affine(*r, 1, -1, 4)},
                                                    {{"1", "1", "0"}, frac(1, 4)},
                                                    {{"1", "0", "1"}, frac(1, 4)},
                                                    {{"0", "1", "1"}, frac(1, 4)}});
    if (name == "ADAPTED_XOR_V2")
        return JointDistribution::from_table(kTYY, {{{"0", "0", "0"}, affine(*r, 0, 1, 10)},
                                                    {{"1", "0", "0"}, affine(*r, 1, -1, 10)},
                                                    {{"1", "1", "0"}, frac(4, 10)},
                                                    {{"1", "0", "1"}, frac(4, 10)},
                                                    {{"0", "1", "1"}, frac(1, 10)}});
    if (name == "RDNXOR")
        return JointDistribution::from_table(kTYY, equiprobable({{"0", "0", "0"},
                                                                 {"1", "0", "1"},
                                                                 {"1", "1", "0"},
                                                                 {"0", "1", "1"},
                                                                 {"2", "2", "2"},
                                                                 {"3", "2", "3"},
                                                                 {"3", "3", "2"},
                                                                 {"2", "3", "3"}}));
    if (name == "RDNUNQXOR") return JointDistribution::from_table(kTYY, rdnunqxor_rows());
    if (name == "XORDUPLICATE") return JointDistribution::from_table(kTYYY, with_duplicate(xor_rows()));
    if (name == "ANDDUPLICATE") return JointDistribution::from_table(kTYYY, with_duplicate(and_rows()));
    if (name == "XORLOSES")
        return JointDistribution::from_table(kTYYY, equiprobable({{"0", "0", "0", "0"},
                                                                  {"1", "0", "1", "1"},
                                                                  {"1", "1", "0", "1"},
                                                                  {"0", "1", "1", "0"}}));
    if (name == "XORMULTICOAL")
        return JointDistribution::from_table(kTYYY, equiprobable({{"0", "0", "0", "0"},
                                                                  {"0", "1", "1", "1"},
                                                                  {"0", "2", "2", "2"},
                                                                  {"0", "3", "3", "3"},
                                                                  {"1", "2", "1", "0"},
                                                                  {"1", "3", "0", "1"},
                                                                  {"1", "0", "3", "2"},
                                                                  {"1", "1", "2", "3"}}));
    throw ArgumentError("unknown corpus distribution '" + std::string(name) + "'");
}

JointDistribution parse_distribution(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    std::size_t header_line = 0;
    std::vector<std::string> names;
    Table rows;
    std::vector<std::size_t> row_lines;
    std::set<std::vector<std::string>> seen;
    double total = 0.0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        std::vector<std::string> cols;
        for (std::string f; fields >> f;) cols.push_back(f);

        if (names.empty()) {
            if (cols.size() < 2 || cols.back() != "p")
                throw ParseError("header must list the variable names followed by 'p'", line_no);
            cols.pop_back();
            std::set<std::string> unique(cols.begin(), cols.end());
            if (unique.size() != cols.size()) throw ParseError("duplicate variable name", line_no);
            names = std::move(cols);
            header_line = line_no;
            continue;
        }
        if (cols.size() != names.size() + 1)
            throw ParseError("expected " + std::to_string(names.size() + 1) + " columns, found " +
                                 std::to_string(cols.size()),
                             line_no);
        Probability p;
        try {
            p = Probability::parse(cols.back());
        } catch (const ParseError& e) {
            throw ParseError(e.what(), line_no);
        }
        if (p.value < 0.0) throw ParseError("negative probability " + cols.back(), line_no);
        cols.pop_back();
        if (!seen.insert(cols).second) throw ParseError("duplicate outcome", line_no);
        total += p.value;
        rows.push_back({std::move(cols), std::move(p)});
        row_lines.push_back(line_no);
    }
    if (names.empty()) throw ParseError("missing header line", 0);
    if (rows.empty()) throw ParseError("no outcome rows", header_line);
    if (std::abs(total - 1.0) > kStructuralTolerance) {
        std::ostringstream msg;
        msg.precision(12);
        msg << "probabilities sum to " << total << ", not 1";
        throw ParseError(msg.str(), row_lines.back());
    }
    try {
        return JointDistribution::from_table(std::move(names), rows);
    } catch (const ArgumentError& e) {
        throw ParseError(e.what(), header_line);
    }
}

std::string format_distribution(const JointDistribution& dist) {
    std::string out;
    for (const auto& v : dist.variables()) out += v.name + " ";
    out += "p\n";
    for (const auto& row : dist.rows()) {
        for (std::size_t i = 0; i < row.outcome.size(); ++i)
            out += dist.variable(i).alphabet[row.outcome[i]] + " ";
        out += row.probability.to_string() + "\n";
    }
    return out;
}

JointDistribution load_distribution(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_distribution(buf.str());
}

void save_distribution(const JointDistribution& dist, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << format_distribution(dist);
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace pid
