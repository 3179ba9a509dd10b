#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pid/distribution.hpp"
#include "pid/matrix.hpp"
#include "pid/sources.hpp"

namespace pid {

/// Garbling M with K = K' M, and the max-abs reconstruction error.
struct DegradationWitness {
    Matrix m_matrix;
    double residual = 0.0;
};

/// Infeasibility tolerance for degradation checks.
inline constexpr double kDegradationTolerance = 1e-8;

/// Decides k ⪯_d k_prime, i.e. whether k = k_prime * M for some row-stochastic
/// M. ArgumentError if the channels do not share input states and marginal.
std::pair<bool, std::optional<DegradationWitness>> degradation_leq(const Channel& k,
                                                                   const Channel& k_prime);

struct OptimizationReport {
    double value = 0.0;
    /// degradation_redundancy: the channel K^Q and garblings M_i with K^Q = K^(i) M_i.
    std::optional<Matrix> channel;
    std::vector<Matrix> garblings;
    /// vk_union_information: the optimizing joint p*(t, a) over target ∪ A.
    std::optional<JointDistribution> distribution;
    std::size_t restarts_used = 0;
    std::size_t iterations = 0;
    /// degradation_redundancy: min_i I(A_i;T) - value (distance to the trivial
    /// upper bound). vk_union_information: Frank-Wolfe duality gap, an upper
    /// bound on value - optimum.
    double certificate = 0.0;
    /// Constraint-implied bound: min_i I(A_i;T) (redundancy, from above) or
    /// max_i I(A_i;T) (union, from below).
    double bound = 0.0;
    bool converged = false;
};

struct DegradationOptions {
    std::uint64_t seed = 0;
    std::size_t random_restarts = 64;
    std::size_t max_steps = 1000;
};

/// I_cap^d: max I(Q;T) over channels K^Q that are garblings of every K^(i).
/// Multi-start conditional-gradient ascent over the vertices of the
/// feasible polytope; the value is a lower bound on the supremum.
OptimizationReport degradation_redundancy(const JointDistribution& dist,
                                          const VariableSet& target,
                                          const SourceCollection& coll,
                                          DegradationOptions options = {});

struct VkOptions {
    /// Stop once the duality gap falls below this.
    double gap_tolerance = 1e-9;
    std::size_t max_iterations = 200000;
    /// How often (in outer iterations) the duality gap is evaluated.
    std::size_t gap_interval = 25;
};

/// min I_{p*}(A;T) over p*(a|t) whose source marginals p*(a_i|t) equal
/// p(a_i|t). The collection is normalized first. Alternating minimization
/// between the per-target conditionals and their mixture.
OptimizationReport vk_union_information(const JointDistribution& dist, const VariableSet& target,
                                        const SourceCollection& coll, VkOptions options = {});

/// I(Y;T) - vk_union_information, Y every non-target variable.
double s_d(const JointDistribution& dist, const VariableSet& target, const SourceCollection& coll,
           VkOptions options = {});

/// Bivariate synergy from the redundancy route: I(Y;T) - I(Y1;T) - I(Y2;T)
/// + I_cap^d. Agrees with s_d when the decomposition is consistent.
double s_d_via_redundancy(const JointDistribution& dist, const VariableSet& target,
                          DegradationOptions options = {});

}  // namespace pid
