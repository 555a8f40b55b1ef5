#pragma once

#include "qsat/rebit.hpp"
#include "qsat/sat.hpp"

namespace qsat {

/// Below this pass probability a projection is treated as annihilating the
/// state: the check reports certain failure instead of renormalizing.
inline constexpr double kPassFloor = 1e-300;

enum class CheckOutcome { Pass, Fail };

/// One clause-check measurement, conditioned on the Pass outcome.
///
/// The check projects out the component in which every clause qubit sits in
/// its rotated fail state (the pattern that a Y(s_i * theta) rotation maps
/// to |---...>). Simulated in a rotated frame: per literal apply
/// Y(s_i*theta - pi/2), which sends the fail state to |0>; zero all
/// amplitudes whose clause-qubit bits are all 0; renormalize; undo with
/// Y(pi/2 - s_i*theta). Returns the pass probability (the squared norm
/// removed).
///
/// With noise, the two theta-dependent physical rotations per qubit are
/// perturbed independently; the pi/2 frame change is a simulator artifact
/// and stays exact.
///
/// theta == 0 is a degenerate check: exact no-op, returns 1.
/// If p_pass falls below kPassFloor the state is flagged aborted and left
/// unnormalized; the raw p_pass is returned.
double clause_check_pass(RebitState& state, const Clause& clause, double theta,
                         RotationNoise* noise = nullptr);

/// Samples the ancilla outcome: Pass with probability p_pass (state updated
/// as in clause_check_pass), otherwise Fail (state flagged aborted; the
/// post-failure collapsed state is not computed).
CheckOutcome clause_check_sample(RebitState& state, const Clause& clause, double theta,
                                 RotationNoise* noise, Rng& rng);

}  // namespace qsat
