#include "qsat/inference.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qsat {

void MeasurementTally::add(const Assignment& a) {
  if (a.size() != n) throw std::invalid_argument("MeasurementTally::add: size mismatch");
  ++runs;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (a.value(i)) ++ones[i];
  }
}

namespace {

// log C(R, i) via lgamma; keeps the binomial tail stable for large R
double log_choose(double r, double i) {
  return std::lgamma(r + 1.0) - std::lgamma(i + 1.0) - std::lgamma(r - i + 1.0);
}

// P[X <= k] for X ~ Bin(R, p)
double binomial_cdf(std::uint64_t k, std::uint64_t R, double p) {
  if (p >= 1.0) return k >= R ? 1.0 : 0.0;
  if (p <= 0.0) return 1.0;
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  double sum = 0.0;
  for (std::uint64_t i = 0; i <= k; ++i) {
    const double d = static_cast<double>(i);
    sum += std::exp(log_choose(static_cast<double>(R), d) + d * lp +
                    (static_cast<double>(R) - d) * lq);
  }
  return sum < 1.0 ? sum : 1.0;
}

}  // namespace

double p_wrong_exact(std::uint64_t R, double p) {
  if (R == 0 || R % 2 == 0) {
    throw std::invalid_argument("p_wrong_exact: R must be odd and positive (got " +
                                std::to_string(R) + ")");
  }
  if (!(p > 0.5) || p > 1.0) {
    throw std::invalid_argument("p_wrong_exact: p must be in (1/2, 1]");
  }
  return binomial_cdf((R - 1) / 2, R, p);
}

GaussianTail p_wrong_gaussian(std::uint64_t R, double p) {
  if (R == 0) throw std::invalid_argument("p_wrong_gaussian: R must be positive");
  if (!(p > 0.5) || p > 1.0) {
    throw std::invalid_argument("p_wrong_gaussian: p must be in (1/2, 1]");
  }
  GaussianTail out;
  out.within_validity = static_cast<double>(R) * (1.0 - p) > 5.0;
  if (p == 1.0) {
    out.value = 0.0;
    return out;
  }
  const double g = (p - 0.5) * std::sqrt(static_cast<double>(R)) / std::sqrt(2.0 * p * (1.0 - p));
  out.value = 0.5 * std::erfc(g);
  return out;
}

std::uint64_t required_repetitions(std::uint64_t n, double theta) {
  if (n < 2) throw std::invalid_argument("required_repetitions: n must be >= 2");
  if (theta <= 0.0) throw std::invalid_argument("required_repetitions: theta must be > 0");
  const double p = (1.0 + std::sin(theta)) / 2.0;
  const double goal = 1.0 / static_cast<double>(n);
  for (std::uint64_t r = 1;; r += 2) {
    if (p_wrong_exact(r, p) < goal) return r;
  }
}

InferredAssignment infer_assignment(const MeasurementTally& tally, double theta) {
  if (tally.runs == 0 || tally.runs % 2 == 0) {
    throw std::invalid_argument("infer_assignment: run count must be odd (got " +
                                std::to_string(tally.runs) + ")");
  }
  const double p = (1.0 + std::sin(theta)) / 2.0;
  InferredAssignment out{Assignment(tally.n, 0), std::vector<double>(tally.n, 0.0)};
  for (std::uint32_t i = 0; i < tally.n; ++i) {
    const std::uint64_t k = tally.ones[i];
    const bool bit = 2 * k > tally.runs;
    out.assignment.set(i, bit);
    const std::uint64_t majority = bit ? k : tally.runs - k;
    out.confidence[i] = 1.0 - binomial_cdf(tally.runs - majority, tally.runs, p);
  }
  return out;
}

std::vector<std::uint32_t> detect_ambiguous(const MeasurementTally& tally, double theta,
                                            double z_threshold) {
  if (tally.runs < 3) throw std::invalid_argument("detect_ambiguous: needs at least 3 runs");
  const double p = (1.0 + std::sin(theta)) / 2.0;
  const double expected_bias = std::abs(std::sin(theta)) / 2.0;
  const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(tally.runs));
  std::vector<std::uint32_t> flagged;
  for (std::uint32_t i = 0; i < tally.n; ++i) {
    const double f = static_cast<double>(tally.ones[i]) / static_cast<double>(tally.runs);
    if (std::abs(f - 0.5) < expected_bias - z_threshold * se) flagged.push_back(i);
  }
  return flagged;
}

MeasurementTally read_tally_csv(std::istream& in) {
  std::string line;
  std::vector<std::pair<std::uint32_t, std::pair<std::uint64_t, std::uint64_t>>> rows;
  std::uint32_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#' || line.rfind("qubit_index", 0) == 0) continue;
    std::istringstream ss(line);
    std::uint32_t q;
    std::uint64_t ones, runs;
    char comma1, comma2;
    if (!(ss >> q >> comma1 >> ones >> comma2 >> runs) || comma1 != ',' || comma2 != ',') {
      throw std::runtime_error("tally csv line " + std::to_string(line_no) +
                               ": expected `qubit_index,ones,runs`");
    }
    rows.push_back({q, {ones, runs}});
  }
  if (rows.empty()) throw std::runtime_error("tally csv: no data rows");
  const std::uint64_t runs = rows.front().second.second;
  std::uint32_t n = 0;
  for (const auto& r : rows) n = std::max(n, r.first + 1);
  MeasurementTally tally(n);
  tally.runs = runs;
  for (const auto& r : rows) {
    if (r.second.second != runs) throw std::runtime_error("tally csv: inconsistent run counts");
    if (r.second.first > runs) throw std::runtime_error("tally csv: ones exceeds runs");
    tally.ones[r.first] = r.second.first;
  }
  return tally;
}

void write_tally_csv(std::ostream& out, const MeasurementTally& tally) {
  out << "qubit_index,ones,runs\n";
  for (std::uint32_t i = 0; i < tally.n; ++i) {
    out << i << "," << tally.ones[i] << "," << tally.runs << "\n";
  }
}

}  // namespace qsat
