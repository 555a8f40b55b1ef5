#include "qsat/target.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <vector>

namespace qsat {

TargetSpec::TargetSpec(Assignment a, double theta) : assignment(a), theta(theta) {
  if (theta < 0.0 || theta > std::numbers::pi / 2 + 1e-12) {
    throw std::invalid_argument("TargetSpec: theta must be in [0, pi/2]");
  }
}

std::pair<double, double> target_qubit_amps(bool truth_value, double theta) {
  const double phi = (2.0 * theta + std::numbers::pi) / 4.0;
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  return truth_value ? std::pair{c, s} : std::pair{s, c};
}

namespace {

// Product of per-qubit amplitudes for the index bits in [first, first+count).
std::vector<double> partial_products(const TargetSpec& spec, std::uint32_t first,
                                     std::uint32_t count) {
  std::vector<double> table(std::uint64_t{1} << count);
  for (std::uint64_t z = 0; z < table.size(); ++z) {
    double p = 1.0;
    for (std::uint32_t i = 0; i < count; ++i) {
      auto [amp0, amp1] = target_qubit_amps(spec.assignment.value(first + i), spec.theta);
      p *= ((z >> i) & 1u) ? amp1 : amp0;
    }
    table[z] = p;
  }
  return table;
}

}  // namespace

RebitState target_state(const TargetSpec& spec) {
  const std::uint32_t n = spec.assignment.size();
  RebitState state = init_plus(n);  // placeholder allocation, overwritten below
  const std::uint32_t lo_bits = n / 2;
  const std::vector<double> lo = partial_products(spec, 0, lo_bits);
  const std::vector<double> hi = partial_products(spec, lo_bits, n - lo_bits);
  const std::uint64_t lo_mask = (std::uint64_t{1} << lo_bits) - 1;
  std::span<double> amps = state.amps();
  for (std::uint64_t z = 0; z < amps.size(); ++z) {
    amps[z] = lo[z & lo_mask] * hi[z >> lo_bits];
  }
  return state;
}

double overlap(const RebitState& state, const TargetSpec& spec) {
  const std::uint32_t n = state.num_qubits();
  if (spec.assignment.size() != n) {
    throw std::invalid_argument("overlap: spec has " + std::to_string(spec.assignment.size()) +
                                " qubits, state has " + std::to_string(n));
  }
  // split-table product lookup keeps this a single pass over the state;
  // compensated summation holds the error near one ulp even at 2^26 terms
  const std::uint32_t lo_bits = n / 2;
  const std::vector<double> lo = partial_products(spec, 0, lo_bits);
  const std::vector<double> hi = partial_products(spec, lo_bits, n - lo_bits);
  const std::uint64_t lo_mask = (std::uint64_t{1} << lo_bits) - 1;
  std::span<const double> amps = state.amps();
  double acc = 0.0;
  double comp = 0.0;
  for (std::uint64_t z = 0; z < amps.size(); ++z) {
    const double term = amps[z] * lo[z & lo_mask] * hi[z >> lo_bits] - comp;
    const double next = acc + term;
    comp = (next - acc) - term;
    acc = next;
  }
  return acc;
}

double fidelity_usa(const RebitState& state, const TargetSpec& spec) {
  const double v = overlap(state, spec);
  return v * v;
}

namespace {

// Eigendecomposition of a small symmetric matrix by cyclic Jacobi
// rotations. a is row-major m x m and is destroyed; eigenvalues land on the
// diagonal, accumulated rotations in q.
void jacobi_eigen(std::vector<double>& a, std::vector<double>& q, std::size_t m) {
  q.assign(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) q[i * m + i] = 1.0;
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < m; ++p)
      for (std::size_t r = p + 1; r < m; ++r) off += a[p * m + r] * a[p * m + r];
    if (off < 1e-30) return;
    for (std::size_t p = 0; p < m; ++p) {
      for (std::size_t r = p + 1; r < m; ++r) {
        const double apr = a[p * m + r];
        if (apr == 0.0) continue;
        const double app = a[p * m + p];
        const double arr = a[r * m + r];
        const double tau = (arr - app) / (2.0 * apr);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (std::size_t k = 0; k < m; ++k) {
          const double akp = a[k * m + p];
          const double akr = a[k * m + r];
          a[k * m + p] = c * akp - s * akr;
          a[k * m + r] = s * akp + c * akr;
        }
        for (std::size_t k = 0; k < m; ++k) {
          const double apk = a[p * m + k];
          const double ark = a[r * m + k];
          a[p * m + k] = c * apk - s * ark;
          a[r * m + k] = s * apk + c * ark;
        }
        for (std::size_t k = 0; k < m; ++k) {
          const double qkp = q[k * m + p];
          const double qkr = q[k * m + r];
          q[k * m + p] = c * qkp - s * qkr;
          q[k * m + r] = s * qkp + c * qkr;
        }
      }
    }
  }
}

}  // namespace

double fidelity_subspace(const RebitState& state, std::span<const Assignment> solutions,
                         double theta, double condition_limit) {
  if (solutions.empty()) {
    throw std::invalid_argument("fidelity_subspace: solution list must be nonempty");
  }
  const std::size_t m = solutions.size();
  const std::uint32_t n = state.num_qubits();
  for (std::size_t i = 0; i < m; ++i) {
    if (solutions[i].size() != n)
      throw std::invalid_argument("fidelity_subspace: solution size mismatch");
    for (std::size_t j = i + 1; j < m; ++j) {
      if (solutions[i] == solutions[j])
        throw std::invalid_argument("fidelity_subspace: solutions must be distinct");
    }
  }

  const double ct = std::cos(theta);
  std::vector<double> gram(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const int dist = std::popcount(solutions[i].bits() ^ solutions[j].bits());
      gram[i * m + j] = std::pow(ct, dist);
    }
  }
  std::vector<double> v(m);
  for (std::size_t j = 0; j < m; ++j) {
    v[j] = overlap(state, TargetSpec(solutions[j], theta));
  }

  std::vector<double> q;
  jacobi_eigen(gram, q, m);
  double lambda_max = gram[0];
  double lambda_min = gram[0];
  for (std::size_t i = 1; i < m; ++i) {
    lambda_max = std::max(lambda_max, gram[i * m + i]);
    lambda_min = std::min(lambda_min, gram[i * m + i]);
  }
  if (!(lambda_min > 0.0) || lambda_max / lambda_min > condition_limit) {
    const double cond = lambda_min > 0.0 ? lambda_max / lambda_min
                                         : std::numeric_limits<double>::infinity();
    throw IllConditionedError(
        "fidelity_subspace: Gram matrix is numerically singular (condition estimate " +
            std::to_string(cond) + ")",
        cond);
  }
  // v' M^-1 v via the spectral decomposition
  double fid = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    double proj = 0.0;
    for (std::size_t i = 0; i < m; ++i) proj += q[i * m + k] * v[i];
    fid += proj * proj / gram[k * m + k];
  }
  return fid;
}

}  // namespace qsat
