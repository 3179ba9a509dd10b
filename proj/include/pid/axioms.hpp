#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pid/distribution.hpp"
#include "pid/sources.hpp"

namespace pid {

/// Portable draws from a 64-bit Mersenne twister (the standard
/// distributions are implementation-defined, these are not).
double unit_uniform(std::mt19937_64& gen);
std::size_t uniform_index(std::mt19937_64& gen, std::size_t n);

/// Random pmf over T, Y1..Yn with alphabet sizes drawn from [2, max_alphabet].
/// About a third of the cells are zero so deterministic relations show up.
JointDistribution random_distribution(std::mt19937_64& gen, std::size_t num_sources,
                                      std::size_t max_alphabet);

/// Random non-empty collection of non-empty sources over `vars`.
SourceCollection random_collection(std::mt19937_64& gen, const VariableSet& vars,
                                   std::size_t max_sources);

/// `dist` with an extra variable appended that copies `original`.
JointDistribution with_copy(const JointDistribution& dist, std::size_t original,
                            const std::string& name);

struct PropertyTally {
    std::string name;
    std::size_t checked = 0;
    std::size_t violations = 0;
    double worst = 0.0;  ///< largest violation seen
};

/// Randomized checks of the union-information axioms and their
/// consequences on `trials` random distributions (2 or 3 sources,
/// alphabets up to 3). Deterministic for a given seed.
std::vector<PropertyTally> run_axiom_suite(std::size_t trials, std::uint64_t seed,
                                           double tolerance = 1e-7);

}  // namespace pid
