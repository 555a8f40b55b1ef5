#pragma once

#include <optional>

#include "qsat/inference.hpp"
#include "qsat/trajectory.hpp"

namespace qsat {

struct SolveResult {
  /// Satisfying assignment; empty when the caps ran out first.
  std::optional<Assignment> assignment;
  std::uint64_t tries = 0;           // trajectories attempted, including aborts
  std::uint64_t successful_runs = 0; // trajectories that passed every check
  std::uint64_t total_checks = 0;    // clause checks across all tries
  std::vector<std::uint64_t> abort_indices;  // 1-based failing check per aborted try
  double wall_seconds = 0.0;
  /// Per-qubit measurement tallies (sculpting; also returned on failure so
  /// the caller can inspect the statistics).
  std::optional<MeasurementTally> tally;

  bool solved() const { return assignment.has_value(); }
};

/// Repeats sampled trajectories of a pi/2-terminal schedule until one
/// succeeds, measures the register, and verifies the assignment; retries
/// after aborts and after measurements that fail verification.
SolveResult solve_adiabatic(const SatInstance& instance, const Schedule& schedule,
                            RotationNoise* noise, Rng& rng, std::uint64_t try_cap);

/// Sculpting: repeatedly prepares an approximate constant-theta target
/// (n_full passed checks per run), measures it, and feeds the per-qubit
/// tallies to majority-vote inference. Stops when an inferred assignment
/// satisfies the instance or after r_max successful runs. Inference runs on
/// odd tallies only (majority votes cannot tie).
SolveResult solve_sculpt(const SatInstance& instance, double theta0, std::uint64_t n_full,
                         std::uint64_t r_max, RotationNoise* noise, Rng& rng);

/// Sculpt once, then ramp: stepped schedule holding theta0 for c_hold
/// cycles and ramping linearly to pi/2 over c_ramp cycles, measured once at
/// the end of the first successful run.
SolveResult solve_hybrid(const SatInstance& instance, double theta0, std::uint64_t c_hold,
                         std::uint64_t c_ramp, RotationNoise* noise, Rng& rng,
                         std::uint64_t try_cap);

}  // namespace qsat
