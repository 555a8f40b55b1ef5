#include "qsat/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qsat/target.hpp"

namespace qsat {

double TrajectoryLedger::p_fail_at(std::uint64_t i) const {
  if (i < 1 || i > records.size()) throw std::out_of_range("p_fail_at: check index out of range");
  const double before = i == 1 ? 1.0 : records[i - 2].cum_success;
  return before * (1.0 - records[i - 1].p_pass);
}

double TrajectoryLedger::expected_failed_checks() const {
  double f = 0.0;
  double before = 1.0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    f += static_cast<double>(i + 1) * before * (1.0 - records[i].p_pass);
    before = records[i].cum_success;
  }
  return f;
}

namespace {

double ledger_fidelity(const RebitState& state, std::span<const Assignment> solutions,
                       double theta) {
  if (solutions.size() == 1) return fidelity_usa(state, TargetSpec(solutions[0], theta));
  return fidelity_subspace(state, solutions, theta);
}

}  // namespace

TrajectoryLedger run_trajectory_deterministic(const SatInstance& instance,
                                              const Schedule& schedule,
                                              const TrajectoryOptions& options) {
  if (options.record_fidelity && options.solutions.empty()) {
    throw std::invalid_argument(
        "run_trajectory_deterministic: fidelity recording needs known solutions");
  }
  const std::uint64_t cpc = instance.num_clauses();
  const std::uint64_t total = schedule.total_checks(cpc);

  TrajectoryLedger ledger;
  ledger.records.reserve(total);
  ledger.instance_n = instance.num_vars();
  ledger.schedule_kind = schedule.kind();
  if (schedule.kind() == Schedule::Kind::Constant) ledger.constant_theta = schedule.theta0();

  RebitState state = init_plus(instance.num_vars());
  double cum = 1.0;
  std::uint64_t check_index = 0;
  for (std::uint64_t cycle = 1; check_index < total; ++cycle) {
    const double theta = schedule.theta_at(cycle);
    for (std::uint32_t clause_id = 0; clause_id < cpc && check_index < total; ++clause_id) {
      ++check_index;
      const double p = clause_check_pass(state, instance.clause(clause_id), theta, options.noise);
      if (state.aborted()) {
        ledger.records.push_back({check_index, cycle, clause_id, theta, p, 0.0,
                                  std::numeric_limits<double>::quiet_NaN()});
        ledger.truncated = true;
        return ledger;
      }
      cum *= p;
      double fid = std::numeric_limits<double>::quiet_NaN();
      if (options.record_fidelity) fid = ledger_fidelity(state, options.solutions, theta);
      ledger.records.push_back({check_index, cycle, clause_id, theta, p, cum, fid});
    }
  }
  return ledger;
}

CostSummary expected_cost(const TrajectoryLedger& ledger) {
  if (ledger.truncated) {
    throw std::invalid_argument("expected_cost: ledger was truncated by a certain failure");
  }
  const double p = ledger.p_success();
  if (p <= 0.0) throw std::domain_error("expected_cost: p_success is zero");

  CostSummary cost;
  cost.n_checks_success = ledger.records.size();
  cost.p_success = p;
  cost.f_failed_checks = ledger.expected_failed_checks();
  cost.expected_tries = 1.0 / p;
  cost.c_total = static_cast<double>(cost.n_checks_success) + cost.f_failed_checks / p;
  if (ledger.schedule_kind == Schedule::Kind::Constant) {
    const double sec = 1.0 / std::cos(ledger.constant_theta / 2);
    cost.c_total_constant_approx =
        static_cast<double>(cost.n_checks_success) +
        cost.f_failed_checks * std::pow(sec * sec, ledger.instance_n);
  }
  return cost;
}

SampledTrajectory run_trajectory_sampled(const SatInstance& instance, const Schedule& schedule,
                                         RotationNoise* noise, Rng& rng) {
  const std::uint64_t cpc = instance.num_clauses();
  const std::uint64_t total = schedule.total_checks(cpc);

  SampledTrajectory result;
  RebitState state = init_plus(instance.num_vars());
  std::uint64_t check_index = 0;
  for (std::uint64_t cycle = 1; check_index < total; ++cycle) {
    const double theta = schedule.theta_at(cycle);
    for (std::uint32_t clause_id = 0; clause_id < cpc && check_index < total; ++clause_id) {
      ++check_index;
      if (clause_check_sample(state, instance.clause(clause_id), theta, noise, rng) ==
          CheckOutcome::Fail) {
        result.success = false;
        result.abort_index = check_index;
        result.checks_performed = check_index;
        return result;
      }
    }
  }
  result.success = true;
  result.checks_performed = total;
  result.state = std::move(state);
  return result;
}

HiFidResult n_hifid(const SatInstance& instance, double theta,
                    std::span<const Assignment> solutions, double threshold,
                    std::uint64_t check_cap, RotationNoise* noise) {
  if (solutions.empty()) throw std::invalid_argument("n_hifid: needs known solutions");
  if (theta <= 0.0) throw std::invalid_argument("n_hifid: theta must be in (0, pi/2]");

  RebitState state = init_plus(instance.num_vars());
  HiFidResult result;
  result.final_fidelity = ledger_fidelity(state, solutions, theta);
  if (result.final_fidelity >= threshold) {
    result.reached = true;
    result.checks = 0;
    return result;
  }
  std::uint64_t checks = 0;
  while (checks < check_cap) {
    for (std::uint32_t clause_id = 0; clause_id < instance.num_clauses(); ++clause_id) {
      ++checks;
      clause_check_pass(state, instance.clause(clause_id), theta, noise);
      if (state.aborted()) {
        result.reached = false;
        result.checks = checks;
        result.final_fidelity = 0.0;
        return result;
      }
      result.final_fidelity = ledger_fidelity(state, solutions, theta);
      if (result.final_fidelity >= threshold) {
        result.reached = true;
        result.checks = checks;
        return result;
      }
      if (checks >= check_cap) break;
    }
  }
  result.reached = false;
  result.checks = checks;
  return result;
}

std::uint64_t estimate_n_full(std::uint32_t n, double theta, std::uint64_t seed,
                              std::uint32_t pilot_instances, double quantile,
                              std::uint64_t check_cap) {
  if (pilot_instances == 0) throw std::invalid_argument("estimate_n_full: empty pilot batch");
  std::vector<std::uint64_t> counts;
  counts.reserve(pilot_instances);
  for (std::uint32_t i = 0; i < pilot_instances; ++i) {
    SatInstance pilot = generate_instance(n, derive_seed(seed, i), {.target_solutions = 1});
    SolutionCount sc = count_solutions(pilot, 1);
    HiFidResult hf = n_hifid(pilot, theta, sc.solutions, 0.999, check_cap);
    counts.push_back(hf.reached ? hf.checks : check_cap);
  }
  std::sort(counts.begin(), counts.end());
  const double pos = quantile * static_cast<double>(counts.size() - 1);
  const std::size_t idx = std::min(counts.size() - 1, static_cast<std::size_t>(std::ceil(pos)));
  return counts[idx];
}

}  // namespace qsat
