#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qsat {

/// Rule mapping cycle index -> theta. A cycle is one full pass of clause
/// checks in the instance's fixed order.
///
/// Constant holds theta0 and is sized in successful checks (n_full), so a
/// sculpting run may finish mid-cycle. The ramped kinds are sized in whole
/// cycles and end exactly at pi/2 on their last cycle.
class Schedule {
 public:
  enum class Kind { Constant, Linear, Sqrt, Stepped };

  static Schedule constant(double theta0, std::uint64_t n_full);
  static Schedule linear(std::uint64_t c_tot);
  static Schedule sqrt_ramp(std::uint64_t c_tot);
  static Schedule stepped(double theta0, std::uint64_t c_hold, std::uint64_t c_ramp);

  Kind kind() const { return kind_; }

  /// theta for 1-based cycle c. Constant schedules accept any c >= 1;
  /// ramped kinds require c <= num_cycles().
  double theta_at(std::uint64_t cycle) const;

  /// Total successful checks in one complete run.
  std::uint64_t total_checks(std::uint64_t checks_per_cycle) const;

  /// Cycles in one complete run (for Constant: ceil(n_full / cpc)).
  std::uint64_t num_cycles(std::uint64_t checks_per_cycle) const;

  /// theta of the final check.
  double terminal_theta() const;

  std::uint64_t n_full() const;          // Constant only
  double theta0() const { return theta0_; }
  std::uint64_t c_tot() const { return c_tot_; }
  std::uint64_t c_hold() const { return c_hold_; }
  std::uint64_t c_ramp() const { return c_ramp_; }

  std::string describe() const;

 private:
  Schedule() = default;
  Kind kind_ = Kind::Constant;
  double theta0_ = 0.0;
  std::uint64_t n_full_ = 0;
  std::uint64_t c_tot_ = 0;
  std::uint64_t c_hold_ = 0;
  std::uint64_t c_ramp_ = 0;
};

}  // namespace qsat
