#include "pid/sources.hpp"

#include <algorithm>
#include <functional>

#include "pid/error.hpp"

namespace pid {

Source::Source(VariableSet members) : members_(std::move(members)) {
    if (members_.empty()) throw ArgumentError("a source must contain at least one variable");
}

SourceCollection::SourceCollection(std::vector<Source> sources) : sources_(std::move(sources)) {
    if (sources_.empty()) throw ArgumentError("a source collection must be non-empty");
}

VariableSet SourceCollection::variables() const {
    VariableSet all;
    for (const auto& s : sources_) all = all | s.members();
    return all;
}

SourceCollection SourceCollection::with(const Source& extra) const {
    auto copy = sources_;
    copy.push_back(extra);
    return SourceCollection(std::move(copy));
}

SourceCollection SourceCollection::singletons(const VariableSet& vars) {
    std::vector<Source> out;
    for (std::size_t i : vars) out.emplace_back(VariableSet{i});
    return SourceCollection(std::move(out));
}

bool is_deterministic(const JointDistribution& dist, const VariableSet& a,
                      const VariableSet& given) {
    return conditional_entropy(dist, a, given) <= kDeterminismTolerance;
}

namespace {

// H(a | b) where a and b may share variables.
bool determined_by(const JointDistribution& dist, const VariableSet& a, const VariableSet& b) {
    const VariableSet rest = a - b;
    if (rest.empty()) return true;
    return is_deterministic(dist, rest, b);
}

}  // namespace

SourceCollection normalize_sources(const JointDistribution& dist, const VariableSet& target,
                                   const SourceCollection& coll) {
    for (const auto& s : coll) {
        dist.check(s.members());
        if (!s.members().is_disjoint_from(target))
            throw ArgumentError("a source may not contain target variables");
    }
    const auto& in = coll.sources();

    // Subset removal; of two identical sources the earlier one stays.
    std::vector<Source> kept;
    for (std::size_t j = 0; j < in.size(); ++j) {
        bool redundant = false;
        for (std::size_t i = 0; i < in.size() && !redundant; ++i) {
            if (i == j || !in[j].members().is_subset_of(in[i].members())) continue;
            redundant = in[j] != in[i] || i < j;
        }
        if (!redundant) kept.push_back(in[j]);
    }

    // Single-source determinism, last listed first.
    for (std::size_t j = kept.size(); j-- > 0;) {
        if (kept.size() == 1) break;
        for (std::size_t i = 0; i < kept.size(); ++i) {
            if (i == j) continue;
            if (determined_by(dist, kept[j].members(), kept[i].members())) {
                kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(j));
                break;
            }
        }
    }
    return SourceCollection(std::move(kept));
}

std::vector<CiPartition> enumerate_ci_partitions(const SourceCollection& coll) {
    const VariableSet universe = coll.variables();
    const std::size_t n = universe.size();
    std::vector<CiPartition> out;
    std::vector<std::size_t> label(n, 0);

    auto emit = [&](std::size_t blocks) {
        std::vector<std::vector<std::size_t>> members(blocks);
        for (std::size_t k = 0; k < n; ++k) members[label[k]].push_back(universe[k]);
        CiPartition part;
        for (auto& m : members) {
            VariableSet block(std::move(m));
            auto it = std::find_if(coll.begin(), coll.end(), [&](const Source& s) {
                return block.is_subset_of(s.members());
            });
            if (it == coll.end()) return;
            part.witness.push_back(static_cast<std::size_t>(it - coll.begin()));
            part.blocks.push_back(std::move(block));
        }
        out.push_back(std::move(part));
    };

    // Restricted growth strings: label[0] = 0, label[k] <= 1 + max(label[0..k-1]).
    std::function<void(std::size_t, std::size_t)> recurse = [&](std::size_t k, std::size_t used) {
        if (k == n) {
            emit(used);
            return;
        }
        for (std::size_t b = 0; b <= used; ++b) {
            label[k] = b;
            recurse(k + 1, std::max(used, b + 1));
        }
    };
    if (n > 0) {
        label[0] = 0;
        recurse(1, 1);
    }
    return out;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

}  // namespace

SourceCollection parse_sources(const JointDistribution& dist, std::string_view text) {
    std::vector<Source> sources;
    for (auto part : split(text, ';')) {
        part = trim(part);
        if (part.empty()) throw ParseError("empty source in '" + std::string(text) + "'");
        std::vector<std::size_t> idx;
        for (auto name : split(part, ',')) {
            name = trim(name);
            if (name.empty()) throw ParseError("empty variable name in '" + std::string(text) + "'");
            idx.push_back(dist.index_of(name));
        }
        sources.emplace_back(VariableSet(std::move(idx)));
    }
    return SourceCollection(std::move(sources));
}

std::string format_sources(const JointDistribution& dist, const SourceCollection& coll) {
    std::string s;
    for (std::size_t i = 0; i < coll.size(); ++i) {
        if (i) s += ";";
        bool first = true;
        for (std::size_t v : coll[i].members()) {
            if (!first) s += ",";
            s += dist.variable(v).name;
            first = false;
        }
    }
    return s;
}

std::string format_partition(const JointDistribution& dist, const CiPartition& partition) {
    std::string s;
    for (std::size_t b = 0; b < partition.blocks.size(); ++b) {
        if (b) s += "|";
        for (std::size_t v : partition.blocks[b]) s += dist.variable(v).name;
    }
    return s;
}

}  // namespace pid
