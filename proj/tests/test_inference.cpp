#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qsat/inference.hpp"
#include "qsat/rng.hpp"

using namespace qsat;

namespace {

// Enumeration oracle: walks all 2^R outcome strings and adds up the exact
// probability of a wrong majority.
double p_wrong_enumerated(std::uint64_t R, double p) {
  double total = 0.0;
  for (std::uint64_t w = 0; w < (std::uint64_t{1} << R); ++w) {
    const int heads = std::popcount(w);
    if (2 * static_cast<std::uint64_t>(heads) < R) {
      total += std::pow(p, heads) * std::pow(1 - p, static_cast<double>(R - heads));
    }
  }
  return total;
}

MeasurementTally sample_tally(std::uint32_t n, const Assignment& solution, double theta,
                              std::uint64_t runs, Rng& rng) {
  // the target is a product state, so each qubit is an independent coin
  // with P(correct value) = (1 + sin theta)/2
  const double p = (1.0 + std::sin(theta)) / 2.0;
  MeasurementTally tally(n);
  for (std::uint64_t r = 0; r < runs; ++r) {
    Assignment a(n, 0);
    for (std::uint32_t q = 0; q < n; ++q) {
      const bool correct = rng.uniform() < p;
      a.set(q, correct == solution.value(q));
    }
    tally.add(a);
  }
  return tally;
}

}  // namespace

TEST_CASE("p_wrong_exact: anchors and the enumeration oracle") {
  CHECK(p_wrong_exact(1, 0.8) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(p_wrong_exact(3, 0.8) == doctest::Approx(0.104).epsilon(1e-12));
  CHECK(p_wrong_exact(3, 0.8) == doctest::Approx(p_wrong_enumerated(3, 0.8)).epsilon(1e-12));
  for (std::uint64_t R : {5u, 9u, 15u}) {
    for (double p : {0.55, 0.7, 0.95}) {
      CHECK(p_wrong_exact(R, p) == doctest::Approx(p_wrong_enumerated(R, p)).epsilon(1e-10));
    }
  }
  CHECK(p_wrong_exact(7, 1.0) == 0.0);
  CHECK(p_wrong_exact(1001, 1.0) == 0.0);
}

TEST_CASE("p_wrong_exact: contract violations") {
  CHECK_THROWS_AS(p_wrong_exact(4, 0.8), std::invalid_argument);  // even splits are excluded
  CHECK_THROWS_AS(p_wrong_exact(0, 0.8), std::invalid_argument);
  CHECK_THROWS_AS(p_wrong_exact(3, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(p_wrong_exact(3, 1.2), std::invalid_argument);
}

TEST_CASE("p_wrong_exact: decreasing in R and in p") {
  double prev = 1.0;
  for (std::uint64_t R = 1; R <= 41; R += 2) {
    const double v = p_wrong_exact(R, 0.7);
    CHECK(v < prev);
    prev = v;
  }
  prev = 1.0;
  for (double p : {0.55, 0.6, 0.7, 0.8, 0.9, 0.99}) {
    const double v = p_wrong_exact(11, p);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("p_wrong_gaussian: matches the exact sum in its validity range") {
  GaussianTail g = p_wrong_gaussian(201, 0.6);
  CHECK(g.within_validity);
  const double exact = p_wrong_exact(201, 0.6);
  CHECK(std::abs(g.value - exact) / exact < 0.10);

  // the difference vanishes as R grows (relative error does not: deep in
  // the tail the two decay rates differ, so only |g - e| -> 0 holds)
  double prev_diff = 1.0;
  for (std::uint64_t R : {201u, 1001u, 4001u}) {
    const double diff = std::abs(p_wrong_gaussian(R, 0.6).value - p_wrong_exact(R, 0.6));
    CHECK(diff < prev_diff);
    prev_diff = diff;
  }
  CHECK(prev_diff < 1e-30);

  CHECK_FALSE(p_wrong_gaussian(5, 0.9).within_validity);  // R(1-p) well below 5
  CHECK(p_wrong_gaussian(11, 1.0).value == 0.0);
}

TEST_CASE("p_wrong_gaussian: G equals sqrt(R/2) tan theta at the theta-implied bias") {
  const double theta = 0.5;
  const std::uint64_t R = 99;
  const double p = (1.0 + std::sin(theta)) / 2.0;
  const double g_expected = std::sqrt(static_cast<double>(R) / 2.0) * std::tan(theta);
  // invert the erfc form to recover G
  const double value = p_wrong_gaussian(R, p).value;
  const double direct = 0.5 * std::erfc(g_expected);
  CHECK(value == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("required_repetitions: orthogonal measurement needs one run") {
  CHECK(required_repetitions(10, std::numbers::pi / 2) == 1);
  CHECK_THROWS_AS(required_repetitions(1, 0.4), std::invalid_argument);
  CHECK_THROWS_AS(required_repetitions(10, 0.0), std::invalid_argument);
}

TEST_CASE("required_repetitions: logarithmic growth in n") {
  std::vector<double> ks, rs;
  for (int k = 3; k <= 10; ++k) {
    ks.push_back(k);
    rs.push_back(static_cast<double>(required_repetitions(std::uint64_t{1} << k, 0.4)));
  }
  // linear fit R ~ a k + b must explain nearly all the variance
  const double n = static_cast<double>(ks.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    sx += ks[i];
    sy += rs[i];
    sxx += ks[i] * ks[i];
    sxy += ks[i] * rs[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double mean = sy / n;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const double fit = slope * ks[i] + intercept;
    ss_res += (rs[i] - fit) * (rs[i] - fit);
    ss_tot += (rs[i] - mean) * (rs[i] - mean);
  }
  CHECK(1.0 - ss_res / ss_tot > 0.98);
  CHECK(slope > 0.0);
}

TEST_CASE("required_repetitions: R scales as cot^2 theta at fixed n") {
  const std::uint64_t n = 1000;
  const double r1 = static_cast<double>(required_repetitions(n, 0.3));
  const double r2 = static_cast<double>(required_repetitions(n, 0.6));
  auto cot2 = [](double t) { return std::pow(std::cos(t) / std::sin(t), 2.0); };
  const double expected = cot2(0.3) / cot2(0.6);
  CHECK(std::abs(r1 / r2 - expected) / expected < 0.15);
}

TEST_CASE("infer_assignment: single-run majority is the measurement itself") {
  MeasurementTally tally(3);
  tally.add(Assignment(3, 0b101));
  InferredAssignment inf = infer_assignment(tally, 0.5);
  CHECK(inf.assignment.bits() == 0b101);
}

TEST_CASE("infer_assignment: all-ones tally has maximal confidence") {
  MeasurementTally tally(4);
  for (int r = 0; r < 9; ++r) tally.add(Assignment(4, 0b1111));
  InferredAssignment inf = infer_assignment(tally, 0.6);
  CHECK(inf.assignment.bits() == 0b1111);
  const double p = (1.0 + std::sin(0.6)) / 2.0;
  for (double c : inf.confidence) {
    CHECK(c == doctest::Approx(1.0 - std::pow(1.0 - p, 9.0)).epsilon(1e-9));
  }
  // a split tally is strictly less confident
  MeasurementTally split(1);
  for (int r = 0; r < 9; ++r) split.add(Assignment(1, r < 5 ? 1 : 0));
  CHECK(infer_assignment(split, 0.6).confidence[0] < inf.confidence[0]);
  // slimmest majority ties out to 1 - p_wrong_exact
  CHECK(infer_assignment(split, 0.6).confidence[0] ==
        doctest::Approx(1.0 - p_wrong_exact(9, p)).epsilon(1e-12));
}

TEST_CASE("infer_assignment: rejects even run counts") {
  MeasurementTally tally(2);
  tally.add(Assignment(2, 1));
  tally.add(Assignment(2, 2));
  CHECK_THROWS_AS(infer_assignment(tally, 0.5), std::invalid_argument);
}

TEST_CASE("infer_assignment: equivariant under qubit permutation") {
  Rng rng(31);
  const std::uint32_t n = 6;
  Assignment sol(n, 0b110010);
  MeasurementTally tally = sample_tally(n, sol, 0.6, 11, rng);
  InferredAssignment base = infer_assignment(tally, 0.6);

  // rotate qubit labels by 2
  MeasurementTally rotated(n);
  rotated.runs = tally.runs;
  for (std::uint32_t q = 0; q < n; ++q) rotated.ones[(q + 2) % n] = tally.ones[q];
  InferredAssignment perm = infer_assignment(rotated, 0.6);
  for (std::uint32_t q = 0; q < n; ++q) {
    CHECK(perm.assignment.value((q + 2) % n) == base.assignment.value(q));
    CHECK(perm.confidence[(q + 2) % n] == doctest::Approx(base.confidence[q]));
  }
}

TEST_CASE("infer_assignment: fully correct with probability above one half") {
  // R large enough that the whole guess is right with probability > 1/2,
  // i.e. (1 - p_wrong)^n > 1/2. (The 1/n rule of thumb in
  // required_repetitions is slightly weaker at this small n.)
  const std::uint32_t n = 12;
  const double theta = 0.5;
  const double p = (1.0 + std::sin(theta)) / 2.0;
  std::uint64_t runs = 1;
  while (std::pow(1.0 - p_wrong_exact(runs, p), static_cast<double>(n)) <= 0.5) runs += 2;

  Rng rng(404);
  Assignment sol(n, 0b101100111010);
  int fully_correct = 0;
  const int trials = 500;
  for (int t = 0; t < trials; ++t) {
    MeasurementTally tally = sample_tally(n, sol, theta, runs, rng);
    if (infer_assignment(tally, theta).assignment == sol) ++fully_correct;
  }
  CHECK(fully_correct > trials / 2);
}

TEST_CASE("detect_ambiguous: USA tallies are clean, even splits are flagged") {
  Rng rng(11);
  const std::uint32_t n = 8;
  Assignment sol(n, 0b10011010);
  const double theta = 0.7;
  MeasurementTally tally = sample_tally(n, sol, theta, 2001, rng);
  CHECK(detect_ambiguous(tally, theta, 3.0).empty());

  // force an exact 50/50 coin on qubit 3
  tally.ones[3] = tally.runs / 2;
  auto flagged = detect_ambiguous(tally, theta, 3.0);
  REQUIRE(flagged.size() == 1);
  CHECK(flagged[0] == 3);
  CHECK_THROWS_AS(detect_ambiguous(MeasurementTally(2), 0.5, 3.0), std::invalid_argument);
}

TEST_CASE("detect_ambiguous: a variable split across two solutions stands out") {
  // two solutions differing in exactly one variable, equal superposition:
  // that qubit measures 50/50 while the others keep the full bias
  Rng rng(5);
  const std::uint32_t n = 8;
  const double theta = 0.7;
  Assignment sol_a(n, 0b10011010);
  Assignment sol_b(n, 0b10011011);  // differs in variable 0
  const double p = (1.0 + std::sin(theta)) / 2.0;
  MeasurementTally tally(n);
  const std::uint64_t runs = 4001;
  for (std::uint64_t r = 0; r < runs; ++r) {
    const Assignment& branch = rng.uniform() < 0.5 ? sol_a : sol_b;
    Assignment a(n, 0);
    for (std::uint32_t q = 0; q < n; ++q) {
      const bool correct = rng.uniform() < p;
      a.set(q, correct == branch.value(q));
    }
    tally.add(a);
  }
  auto flagged = detect_ambiguous(tally, theta, 3.0);
  REQUIRE(flagged.size() == 1);
  CHECK(flagged[0] == 0);
}

TEST_CASE("tally csv: round trip and validation") {
  MeasurementTally tally(3);
  tally.runs = 7;
  tally.ones = {5, 2, 7};
  std::ostringstream out;
  write_tally_csv(out, tally);
  std::istringstream in(out.str());
  MeasurementTally back = read_tally_csv(in);
  CHECK(back.n == 3);
  CHECK(back.runs == 7);
  CHECK(back.ones == tally.ones);

  std::istringstream bad("qubit_index,ones,runs\n0,9,7\n");
  CHECK_THROWS(read_tally_csv(bad));
}
