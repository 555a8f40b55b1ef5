#pragma once

#include <cstdint>

namespace qsat {

/// Cost model for solving a unique-solution instance with Grover search,
/// stopping early at the iteration count that minimizes expected work.
/// Each iterate is charged one check per clause; the diffusion step is not
/// charged.
struct GroverPlan {
  std::uint32_t n = 0;
  std::uint64_t num_clauses = 0;
  std::uint64_t m_opt = 0;              // iterations per run
  double p_success = 0.0;               // success probability at m_opt
  double expected_runs = 0.0;           // 1 / p_success
  double expected_total_checks = 0.0;   // (m_opt / p_success) * num_clauses
};

/// sin^2((2m+1) * arcsin(2^(-n/2))): probability that measuring after m
/// Grover iterates yields the unique marked state among 2^n candidates.
double grover_success_prob(std::uint64_t m, std::uint32_t n);

/// Optimal early-stop plan: m_opt = argmin over m >= 1 of m / p(m), ties
/// toward smaller m. Valid for n <= 60.
GroverPlan grover_expected_total(std::uint32_t n, std::uint64_t num_clauses);

enum class ClassicalModel {
  Brute,       // num_clauses * 2^n
  Paturi,      // num_clauses * K^n with K = 2^(2 ln 2 - 1) ~ 1.307
  GroverBase,  // num_clauses * sqrt(2)^n
};

/// Reference scalings (order-of-magnitude, not exact operation counts) for
/// the expected clause checks of classical and plain-quantum baselines.
double classical_reference(std::uint32_t n, std::uint64_t num_clauses, ClassicalModel model);

}  // namespace qsat
