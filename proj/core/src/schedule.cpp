#include "qsat/schedule.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qsat {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2;
}

Schedule Schedule::constant(double theta0, std::uint64_t n_full) {
  if (theta0 < 0.0 || theta0 > kHalfPi + 1e-12) {
    throw std::invalid_argument("Schedule: theta0 must be in [0, pi/2]");
  }
  if (n_full == 0) throw std::invalid_argument("Schedule: n_full must be positive");
  Schedule s;
  s.kind_ = Kind::Constant;
  s.theta0_ = theta0;
  s.n_full_ = n_full;
  return s;
}

Schedule Schedule::linear(std::uint64_t c_tot) {
  if (c_tot == 0) throw std::invalid_argument("Schedule: c_tot must be positive");
  Schedule s;
  s.kind_ = Kind::Linear;
  s.c_tot_ = c_tot;
  return s;
}

Schedule Schedule::sqrt_ramp(std::uint64_t c_tot) {
  if (c_tot == 0) throw std::invalid_argument("Schedule: c_tot must be positive");
  Schedule s;
  s.kind_ = Kind::Sqrt;
  s.c_tot_ = c_tot;
  return s;
}

Schedule Schedule::stepped(double theta0, std::uint64_t c_hold, std::uint64_t c_ramp) {
  if (theta0 <= 0.0 || theta0 > kHalfPi + 1e-12) {
    throw std::invalid_argument("Schedule: stepped theta0 must be in (0, pi/2]");
  }
  if (c_hold == 0 || c_ramp == 0) {
    throw std::invalid_argument("Schedule: stepped needs c_hold and c_ramp >= 1");
  }
  Schedule s;
  s.kind_ = Kind::Stepped;
  s.theta0_ = theta0;
  s.c_hold_ = c_hold;
  s.c_ramp_ = c_ramp;
  return s;
}

double Schedule::theta_at(std::uint64_t cycle) const {
  if (cycle < 1) throw std::out_of_range("Schedule: cycles are 1-based");
  switch (kind_) {
    case Kind::Constant:
      return theta0_;
    case Kind::Linear:
      if (cycle > c_tot_) throw std::out_of_range("Schedule: cycle past end of linear ramp");
      return kHalfPi * static_cast<double>(cycle) / static_cast<double>(c_tot_);
    case Kind::Sqrt:
      if (cycle > c_tot_) throw std::out_of_range("Schedule: cycle past end of sqrt ramp");
      return kHalfPi * std::sqrt(static_cast<double>(cycle) / static_cast<double>(c_tot_));
    case Kind::Stepped:
      if (cycle > c_hold_ + c_ramp_)
        throw std::out_of_range("Schedule: cycle past end of stepped ramp");
      if (cycle <= c_hold_) return theta0_;
      return theta0_ +
             (kHalfPi - theta0_) * static_cast<double>(cycle - c_hold_) /
                 static_cast<double>(c_ramp_);
  }
  return theta0_;
}

std::uint64_t Schedule::num_cycles(std::uint64_t checks_per_cycle) const {
  if (checks_per_cycle == 0) throw std::invalid_argument("Schedule: checks_per_cycle must be > 0");
  switch (kind_) {
    case Kind::Constant:
      return (n_full_ + checks_per_cycle - 1) / checks_per_cycle;
    case Kind::Linear:
    case Kind::Sqrt:
      return c_tot_;
    case Kind::Stepped:
      return c_hold_ + c_ramp_;
  }
  return 0;
}

std::uint64_t Schedule::total_checks(std::uint64_t checks_per_cycle) const {
  if (kind_ == Kind::Constant) return n_full_;
  return num_cycles(checks_per_cycle) * checks_per_cycle;
}

double Schedule::terminal_theta() const {
  return kind_ == Kind::Constant ? theta0_ : kHalfPi;
}

std::uint64_t Schedule::n_full() const {
  if (kind_ != Kind::Constant) {
    throw std::logic_error("Schedule: n_full is defined for constant schedules only");
  }
  return n_full_;
}

std::string Schedule::describe() const {
  std::ostringstream out;
  switch (kind_) {
    case Kind::Constant:
      out << "constant(theta0=" << theta0_ << ",n_full=" << n_full_ << ")";
      break;
    case Kind::Linear:
      out << "linear(c_tot=" << c_tot_ << ")";
      break;
    case Kind::Sqrt:
      out << "sqrt(c_tot=" << c_tot_ << ")";
      break;
    case Kind::Stepped:
      out << "stepped(theta0=" << theta0_ << ",c_hold=" << c_hold_ << ",c_ramp=" << c_ramp_ << ")";
      break;
  }
  return out.str();
}

}  // namespace qsat
