#pragma once

#include <span>
#include <stdexcept>

#include "qsat/rebit.hpp"
#include "qsat/sat.hpp"

namespace qsat {

/// The product state that passes every clause check of a satisfied
/// instance with certainty: qubit i is Y(L_i * theta)|+> with L_i = -1
/// when x_i is TRUE in the assignment and +1 when FALSE.
struct TargetSpec {
  Assignment assignment;
  double theta = 0.0;  // radians, in [0, pi/2]

  TargetSpec(Assignment a, double theta);
};

/// Per-qubit amplitudes of the target spec: with phi = (2*theta + pi)/4,
/// TRUE  -> cos(phi)|0> + sin(phi)|1>
/// FALSE -> sin(phi)|0> + cos(phi)|1>
/// Returns {amp_of_0, amp_of_1} for the given truth value.
std::pair<double, double> target_qubit_amps(bool truth_value, double theta);

/// Materializes the full 2^n product state.
RebitState target_state(const TargetSpec& spec);

/// <spec|state>, computed in one pass over the amplitudes without building
/// the target state.
double overlap(const RebitState& state, const TargetSpec& spec);

/// Squared overlap with a single solution's target state.
double fidelity_usa(const RebitState& state, const TargetSpec& spec);

class IllConditionedError : public std::runtime_error {
 public:
  IllConditionedError(const std::string& what, double condition)
      : std::runtime_error(what), condition(condition) {}
  double condition;
};

/// Squared norm of the projection of `state` onto the subspace spanned by
/// the (non-orthogonal) target states of the given solutions, via the Gram
/// matrix m_ij = (cos theta)^HammingDistance(sol_i, sol_j) and
/// v' M^-1 v. Throws IllConditionedError when the Gram matrix is
/// numerically singular (theta near 0 or near-identical solutions).
double fidelity_subspace(const RebitState& state, std::span<const Assignment> solutions,
                         double theta, double condition_limit = 1e12);

}  // namespace qsat
