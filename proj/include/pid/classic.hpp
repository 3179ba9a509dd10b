#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pid/ci_union.hpp"
#include "pid/distribution.hpp"
#include "pid/lattice.hpp"
#include "pid/sources.hpp"

namespace pid {

/// Whole-minus-sum: I(Y;T) - sum_i I(Y_i;T) over the non-target variables.
/// May be negative.
double wms_synergy(const JointDistribution& dist, const VariableSet& target);

/// I(T = t; A) = sum_a p(a|t) [log p(t|a) - log p(t)]. `state` is an outcome
/// of the target variables. ArgumentError when p(t) = 0.
double specific_information(const JointDistribution& dist, const VariableSet& target,
                            const Source& source, const Outcome& state);

/// Specific information of every source at every target state with p(t) > 0.
struct SpecificInfoTable {
    std::vector<Outcome> states;
    std::vector<double> state_probability;
    std::vector<std::vector<double>> values;  ///< values[state][source]
};

SpecificInfoTable specific_information_table(const JointDistribution& dist,
                                             const VariableSet& target,
                                             const SourceCollection& coll);

/// Williams-Beer I_min: sum_t p(t) min_i I(T = t; A_i).
double imin_redundancy(const JointDistribution& dist, const VariableSet& target,
                       const SourceCollection& coll);

/// Williams-Beer decomposition by Möbius inversion of I_min over the
/// redundancy lattice of the 2 or 3 non-target variables. Entries are the
/// atoms keyed by lattice label ("{1}{2}", "{12}", ...) followed by
/// "S_WB" (I_total minus every atom below a single source; the top atom
/// when there are two) and "I_total".
PidResult wb_pid(const JointDistribution& dist, const VariableSet& target);

/// Cumulative I_min at every node of `lattice` (same order as its nodes).
std::vector<double> wb_redundancies(const JointDistribution& dist, const VariableSet& target,
                                    const RedundancyLattice& lattice);

/// Correlational importance: expected log-ratio between p(t|y) and the
/// conditionally independent decoder p_ind(t|y) ∝ p(t) prod_i p(y_i|t).
double delta_i_synergy(const JointDistribution& dist, const VariableSet& target);

struct IpfOptions {
    double tolerance = 1e-10;      ///< max absolute marginal violation
    std::size_t max_sweeps = 10000;
    std::size_t support_lp_limit = 4096;  ///< skip the support reduction above this many cells
};

/// Maximum-entropy distribution (over the full product alphabet) matching
/// each listed marginal of `dist`, by iterative proportional fitting from
/// the uniform distribution. SolverError with the residual if it does not
/// converge; ArgumentError if the marginals do not cover every variable.
JointDistribution maxent_ipf(const JointDistribution& dist,
                             std::span<const VariableSet> preserved, IpfOptions options = {});

/// Bivariate dependency-constraint synergy I(Y;T) - min{I_q(Y;T), I_r(Y;T)},
/// q preserving (Y1,T),(Y2,T) and r additionally (Y1,Y2). Entries: "S",
/// "U1", "U2", "I_q", "I_r".
PidResult dep_synergy(const JointDistribution& dist, const VariableSet& target);

/// Bivariate bookkeeping from a redundancy value: U_i = I(Y_i;T) - R and S
/// the remainder. Negative atoms are reported as they are.
PidResult iep_bivariate_from_redundancy(const JointDistribution& dist, const VariableSet& target,
                                        double redundancy);

}  // namespace pid
