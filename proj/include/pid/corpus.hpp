#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pid/distribution.hpp"

namespace pid {

struct CorpusEntry {
    std::string name;
    bool parametric = false;  ///< takes r in [0, 1]
    std::string target;       ///< default target variable
    std::string description;
};

/// Every named distribution, in a fixed order.
const std::vector<CorpusEntry>& corpus_entries();

/// ArgumentError for unknown names.
const CorpusEntry& corpus_entry(std::string_view name);

/// Builds a named distribution with exact fractions where possible. `r` is
/// required for parametric entries and rejected otherwise; it must lie in
/// [0, 1]. Rational r (denominator up to 10^4) keeps the table exact.
JointDistribution canonical(std::string_view name, std::optional<double> r = std::nullopt);

/// Text format: a header of variable names ending in the column "p", then
/// one whitespace-separated row per outcome. Probabilities are decimals or
/// a/b fractions; lines starting with '#' are comments.
JointDistribution parse_distribution(std::string_view text);
std::string format_distribution(const JointDistribution& dist);

/// ParseError (with line number) on malformed content; Error if the file
/// cannot be opened or written.
JointDistribution load_distribution(const std::filesystem::path& path);
void save_distribution(const JointDistribution& dist, const std::filesystem::path& path);

}  // namespace pid
