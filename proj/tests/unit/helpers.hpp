#pragma once

#include <random>
#include <string>
#include <vector>

#include "oracle/oracle.hpp"
#include "pid/corpus.hpp"
#include "pid/distribution.hpp"
#include "pid/sources.hpp"

namespace testing {

inline oracle::Idx idx(const pid::VariableSet& s) { return {s.begin(), s.end()}; }

// Target T plus singleton sources for every other variable.
struct Problem {
    pid::JointDistribution dist;
    pid::VariableSet t;
    pid::SourceCollection coll;
};

inline Problem problem(pid::JointDistribution d, const std::string& target = "T") {
    const pid::VariableSet t = d.select({target});
    pid::SourceCollection coll = pid::SourceCollection::singletons(d.complement(t));
    return {std::move(d), t, std::move(coll)};
}

inline Problem corpus(const std::string& name) { return problem(pid::canonical(name)); }

}  // namespace testing
