#include "qsat/solver.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

namespace qsat {

namespace {

class WallClock {
 public:
  WallClock() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

SolveResult solve_adiabatic(const SatInstance& instance, const Schedule& schedule,
                            RotationNoise* noise, Rng& rng, std::uint64_t try_cap) {
  if (std::abs(schedule.terminal_theta() - std::numbers::pi / 2) > 1e-12) {
    throw std::invalid_argument("solve_adiabatic: schedule must end at theta = pi/2");
  }
  WallClock clock;
  SolveResult result;
  while (result.tries < try_cap) {
    ++result.tries;
    SampledTrajectory traj = run_trajectory_sampled(instance, schedule, noise, rng);
    result.total_checks += traj.checks_performed;
    if (!traj.success) {
      result.abort_indices.push_back(traj.abort_index);
      continue;
    }
    ++result.successful_runs;
    Assignment a = traj.state->measure_all(rng);
    if (evaluate(instance, a)) {
      result.assignment = a;
      break;
    }
    // wrong measurement (noise or several near-solutions): restart
  }
  result.wall_seconds = clock.seconds();
  return result;
}

SolveResult solve_sculpt(const SatInstance& instance, double theta0, std::uint64_t n_full,
                         std::uint64_t r_max, RotationNoise* noise, Rng& rng) {
  if (!(theta0 > 0.0) || theta0 > std::numbers::pi / 2 + 1e-12) {
    throw std::invalid_argument("solve_sculpt: theta0 must be in (0, pi/2]");
  }
  const Schedule schedule = Schedule::constant(theta0, n_full);
  WallClock clock;
  SolveResult result;
  result.tally.emplace(instance.num_vars());
  while (result.successful_runs < r_max) {
    ++result.tries;
    SampledTrajectory traj = run_trajectory_sampled(instance, schedule, noise, rng);
    result.total_checks += traj.checks_performed;
    if (!traj.success) {
      result.abort_indices.push_back(traj.abort_index);
      continue;
    }
    ++result.successful_runs;
    result.tally->add(traj.state->measure_all(rng));
    if (result.tally->runs % 2 == 1) {
      const Assignment proposal = infer_assignment(*result.tally, theta0).assignment;
      if (evaluate(instance, proposal)) {
        result.assignment = proposal;
        break;
      }
    }
  }
  result.wall_seconds = clock.seconds();
  return result;
}

SolveResult solve_hybrid(const SatInstance& instance, double theta0, std::uint64_t c_hold,
                         std::uint64_t c_ramp, RotationNoise* noise, Rng& rng,
                         std::uint64_t try_cap) {
  return solve_adiabatic(instance, Schedule::stepped(theta0, c_hold, c_ramp), noise, rng, try_cap);
}

}  // namespace qsat
