#include "qsat/clause_check.hpp"

#include <cmath>
#include <numbers>

namespace qsat {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

// Y rotation with the output scaled by `scale`; lets the renormalization of
// a projection ride along with the first undo rotation for free.
void apply_y_scaled(RebitState& state, std::uint32_t qubit, double angle, double scale) {
  const double c = scale * std::cos(angle / 2);
  const double s = scale * std::sin(angle / 2);
  const std::uint64_t stride = std::uint64_t{1} << qubit;
  const std::uint64_t dim = state.dim();
  double* amps = state.amps().data();
  for (std::uint64_t base = 0; base < dim; base += 2 * stride) {
    double* a0 = amps + base;
    double* a1 = amps + base + stride;
    for (std::uint64_t low = 0; low < stride; ++low) {
      const double x = a0[low];
      const double y = a1[low];
      a0[low] = c * x + s * y;
      a1[low] = -s * x + c * y;
    }
  }
}

// Same rotation, also returning the post-rotation squared norm. Measuring
// the norm in the same pass keeps renormalization anchored to the actual
// state, so rounding drift cannot compound across thousands of checks.
double apply_y_sum_sq(RebitState& state, std::uint32_t qubit, double angle) {
  const double c = std::cos(angle / 2);
  const double s = std::sin(angle / 2);
  const std::uint64_t stride = std::uint64_t{1} << qubit;
  const std::uint64_t dim = state.dim();
  double* amps = state.amps().data();
  double total = 0.0;
  for (std::uint64_t base = 0; base < dim; base += 2 * stride) {
    double* a0 = amps + base;
    double* a1 = amps + base + stride;
    for (std::uint64_t low = 0; low < stride; ++low) {
      const double x = a0[low];
      const double y = a1[low];
      const double n0 = c * x + s * y;
      const double n1 = -s * x + c * y;
      a0[low] = n0;
      a1[low] = n1;
      total += n0 * n0 + n1 * n1;
    }
  }
  return total;
}

// Squared mass of the amplitudes whose bits inside `mask` are all zero,
// i.e. the rotated fail pattern. Enumerates submasks of the complement.
double fail_mass_of(const RebitState& state, std::uint64_t mask) {
  const std::uint64_t comp = (state.dim() - 1) & ~mask;
  const double* amps = state.amps().data();
  double mass = 0.0;
  std::uint64_t z = 0;
  while (true) {
    mass += amps[z] * amps[z];
    if (z == comp) break;
    z = (z - comp) & comp;  // next index with all mask bits zero
  }
  return mass;
}

void zero_fail_component(RebitState& state, std::uint64_t mask) {
  const std::uint64_t comp = (state.dim() - 1) & ~mask;
  double* amps = state.amps().data();
  std::uint64_t z = 0;
  while (true) {
    amps[z] = 0.0;
    if (z == comp) break;
    z = (z - comp) & comp;
  }
}

struct RotatedFrame {
  std::uint64_t mask = 0;
  double total_mass = 1.0;
};

// Steps into the frame where the fail pattern is all-zero clause bits:
// Y(s_i*theta - pi/2) per literal, with the physical s_i*theta part
// noise-perturbed. Returns the clause bit mask and measured norm^2.
// Distinct-variable mask of the clause, validated before any rotation
// touches the state.
std::uint64_t clause_mask(const RebitState& state, const Clause& clause) {
  std::uint64_t mask = 0;
  for (const Literal& l : clause.literals()) {
    if (l.var >= state.num_qubits()) {
      throw std::invalid_argument("clause check: variable " + std::to_string(l.var) +
                                  " out of range for n=" + std::to_string(state.num_qubits()));
    }
    const std::uint64_t bit = std::uint64_t{1} << l.var;
    if (mask & bit) {
      throw std::invalid_argument("clause check: clause repeats variable " +
                                  std::to_string(l.var));
    }
    mask |= bit;
  }
  return mask;
}

RotatedFrame enter_check_frame(RebitState& state, const Clause& clause, double theta,
                               RotationNoise* noise) {
  RotatedFrame frame;
  frame.mask = clause_mask(state, clause);
  const std::uint32_t k = clause.size();
  for (std::uint32_t i = 0; i < k; ++i) {
    const Literal& l = clause[i];
    const double physical = noise ? noise->perturb(l.sign() * theta) : l.sign() * theta;
    if (i + 1 < k) {
      apply_y_scaled(state, l.var, physical - kHalfPi, 1.0);
    } else {
      frame.total_mass = apply_y_sum_sq(state, l.var, physical - kHalfPi);
    }
  }
  return frame;
}

// Undoes the frame change, folding the renormalization 1/sqrt(pass_mass)
// into the first rotation.
void leave_check_frame(RebitState& state, const Clause& clause, double theta,
                       RotationNoise* noise, double pass_mass) {
  double scale = 1.0 / std::sqrt(pass_mass);
  for (const Literal& l : clause.literals()) {
    const double physical = noise ? noise->perturb(-l.sign() * theta) : -l.sign() * theta;
    apply_y_scaled(state, l.var, physical + kHalfPi, scale);
    scale = 1.0;
  }
}

}  // namespace

double clause_check_pass(RebitState& state, const Clause& clause, double theta,
                         RotationNoise* noise) {
  if (state.aborted()) throw std::logic_error("clause_check_pass: state is aborted");
  if (theta == 0.0) return 1.0;  // degenerate basis: no-op by contract

  const RotatedFrame frame = enter_check_frame(state, clause, theta, noise);
  const double fail_mass = fail_mass_of(state, frame.mask);
  const double pass_mass = frame.total_mass - fail_mass;
  const double p_pass = pass_mass / frame.total_mass;
  if (p_pass < kPassFloor) {
    state.mark_aborted();
    return p_pass;
  }
  zero_fail_component(state, frame.mask);
  leave_check_frame(state, clause, theta, noise, pass_mass);
  return p_pass;
}

CheckOutcome clause_check_sample(RebitState& state, const Clause& clause, double theta,
                                 RotationNoise* noise, Rng& rng) {
  if (state.aborted()) throw std::logic_error("clause_check_sample: state is aborted");
  if (theta == 0.0) return CheckOutcome::Pass;

  const RotatedFrame frame = enter_check_frame(state, clause, theta, noise);
  const double fail_mass = fail_mass_of(state, frame.mask);
  if (rng.uniform() * frame.total_mass < fail_mass) {
    state.mark_aborted();
    return CheckOutcome::Fail;
  }
  const double pass_mass = frame.total_mass - fail_mass;
  if (pass_mass < kPassFloor) {
    state.mark_aborted();
    return CheckOutcome::Fail;
  }
  zero_fail_component(state, frame.mask);
  leave_check_frame(state, clause, theta, noise, pass_mass);
  return CheckOutcome::Pass;
}

}  // namespace qsat
