#include "qsat/grover.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qsat {

double grover_success_prob(std::uint64_t m, std::uint32_t n) {
  const double angle = std::asin(std::pow(2.0, -static_cast<double>(n) / 2.0));
  const double s = std::sin(static_cast<double>(2 * m + 1) * angle);
  return s * s;
}

GroverPlan grover_expected_total(std::uint32_t n, std::uint64_t num_clauses) {
  if (n == 0 || n > 60) {
    throw std::invalid_argument("grover_expected_total: n must be in [1, 60]");
  }
  const double angle = std::asin(std::pow(2.0, -static_cast<double>(n) / 2.0));
  // p(m) peaks at (2m+1) * angle = pi/2; scanning through two peak periods
  // is more than enough to bracket the argmin of m / p(m)
  const std::uint64_t window =
      static_cast<std::uint64_t>(std::ceil(std::numbers::pi / angle)) + 2;

  std::uint64_t m_opt = 1;
  double best = 1.0 / grover_success_prob(1, n);
  for (std::uint64_t m = 2; m <= window; ++m) {
    const double cost = static_cast<double>(m) / grover_success_prob(m, n);
    if (cost < best) {
      best = cost;
      m_opt = m;
    }
  }

  GroverPlan plan;
  plan.n = n;
  plan.num_clauses = num_clauses;
  plan.m_opt = m_opt;
  plan.p_success = grover_success_prob(m_opt, n);
  plan.expected_runs = 1.0 / plan.p_success;
  plan.expected_total_checks = best * static_cast<double>(num_clauses);
  return plan;
}

double classical_reference(std::uint32_t n, std::uint64_t num_clauses, ClassicalModel model) {
  const double nc = static_cast<double>(num_clauses);
  switch (model) {
    case ClassicalModel::Brute:
      return nc * std::pow(2.0, n);
    case ClassicalModel::Paturi:
      return nc * std::pow(std::pow(2.0, 2.0 * std::numbers::ln2 - 1.0), n);
    case ClassicalModel::GroverBase:
      return nc * std::pow(std::numbers::sqrt2, n);
  }
  throw std::invalid_argument("classical_reference: unknown model");
}

}  // namespace qsat
