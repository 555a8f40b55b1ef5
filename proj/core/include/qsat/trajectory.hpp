#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qsat/clause_check.hpp"
#include "qsat/schedule.hpp"
#include "qsat/sat.hpp"

namespace qsat {

struct CheckRecord {
  std::uint64_t check_index;  // 1-based position in the trajectory
  std::uint64_t cycle;        // 1-based cycle
  std::uint32_t clause_id;    // index into the instance's clause list
  double theta;
  double p_pass;
  double cum_success;  // product of p_pass up to and including this check
  double fidelity;     // NaN unless fidelity recording was requested
};

/// Per-check record of a trajectory conditioned on every check passing.
class TrajectoryLedger {
 public:
  std::vector<CheckRecord> records;
  /// Set when a projection annihilated the state; the ledger stops at the
  /// annihilating check and p_success() is 0.
  bool truncated = false;

  // run metadata, carried so that cost accounting is self-contained
  std::uint32_t instance_n = 0;
  Schedule::Kind schedule_kind = Schedule::Kind::Constant;
  double constant_theta = 0.0;  // Constant schedules only

  /// Probability that a sampled run passes every recorded check.
  double p_success() const {
    if (truncated) return 0.0;
    return records.empty() ? 1.0 : records.back().cum_success;
  }

  /// Probability that a sampled run aborts exactly at 1-based check i.
  double p_fail_at(std::uint64_t i) const;

  /// Expected checks consumed by a failing run, times expected failures:
  /// F = sum_i i * p_fail(i).
  double expected_failed_checks() const;
};

struct CostSummary {
  std::uint64_t n_checks_success = 0;  // checks in one successful run
  double p_success = 0.0;
  double f_failed_checks = 0.0;  // F
  double expected_tries = 0.0;   // 1 / p_success
  double c_total = 0.0;          // n_checks_success + F / p_success
  /// The constant-theta closed form n_full + F * (sec^2 theta/2)^n, reported
  /// alongside the exact accounting for comparison.
  std::optional<double> c_total_constant_approx;
};

struct TrajectoryOptions {
  bool record_fidelity = false;
  /// Known solutions; required when record_fidelity is set. One solution
  /// uses the single-target fidelity, several use the subspace fidelity.
  std::span<const Assignment> solutions = {};
  RotationNoise* noise = nullptr;
};

/// Walks the schedule from |++...+>, one full pass of clause checks per
/// cycle in the instance's fixed order, always taking the Pass branch, and
/// records every pass probability. Fidelity (when recorded) is measured
/// against the target of the current cycle's theta.
TrajectoryLedger run_trajectory_deterministic(const SatInstance& instance,
                                              const Schedule& schedule,
                                              const TrajectoryOptions& options = {});

/// Exact expected total clause checks to first success, from the ledger's
/// exact p_success. Throws std::domain_error when p_success is 0 and
/// std::invalid_argument on a truncated ledger.
CostSummary expected_cost(const TrajectoryLedger& ledger);

struct SampledTrajectory {
  bool success = false;
  std::uint64_t abort_index = 0;      // 1-based failing check when !success
  std::uint64_t checks_performed = 0; // includes the failing check
  std::optional<RebitState> state;    // final register on success
};

/// Same walk with each check sampled; aborts on the first failed check.
SampledTrajectory run_trajectory_sampled(const SatInstance& instance, const Schedule& schedule,
                                         RotationNoise* noise, Rng& rng);

struct HiFidResult {
  bool reached = false;
  std::uint64_t checks = 0;      // first check count at which fidelity >= threshold
  double final_fidelity = 0.0;   // fidelity when the walk stopped
};

/// Number of passed checks of a constant-theta conditioned trajectory until
/// the register fidelity against the theta target reaches `threshold`.
/// reached=false reports divergence at the check cap.
HiFidResult n_hifid(const SatInstance& instance, double theta,
                    std::span<const Assignment> solutions, double threshold = 0.999,
                    std::uint64_t check_cap = 100000, RotationNoise* noise = nullptr);

/// Default N_full choice for sculpting at (n, theta): the `quantile` point
/// of the hi-fidelity check-count distribution over a pilot batch of fresh
/// unique-solution instances, so the chosen budget covers the bulk of the
/// distribution.
std::uint64_t estimate_n_full(std::uint32_t n, double theta, std::uint64_t seed,
                              std::uint32_t pilot_instances = 20, double quantile = 0.999,
                              std::uint64_t check_cap = 100000);

}  // namespace qsat
