#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "qsat/sat.hpp"

namespace qsat {

/// Per-qubit counts of outcome 1 over repeated prepare-and-measure rounds.
struct MeasurementTally {
  std::uint32_t n = 0;
  std::uint64_t runs = 0;
  std::vector<std::uint64_t> ones;

  explicit MeasurementTally(std::uint32_t n) : n(n), ones(n, 0) {}
  void add(const Assignment& a);
};

/// Probability that the majority vote over R biased coin throws lands on
/// the wrong side: sum_{i<=(R-1)/2} C(R,i) p^i (1-p)^(R-i).
/// R must be odd and positive, p in (1/2, 1].
double p_wrong_exact(std::uint64_t R, double p);

struct GaussianTail {
  double value = 0.0;
  /// The integral approximation is only trusted when R(1-p) > 5.
  bool within_validity = true;
};

/// Gaussian-tail form (1/2) erfc(G) with G = (p - 1/2) sqrt(R) /
/// sqrt(2 p (1-p)). At the theta-implied bias p = (1+sin theta)/2 this G
/// equals sqrt(R/2) tan(theta).
GaussianTail p_wrong_gaussian(std::uint64_t R, double p);

/// Smallest odd R with p_wrong_exact(R, (1+sin theta)/2) < 1/n, i.e. enough
/// repetitions that the full n-variable majority guess is probably error
/// free.
std::uint64_t required_repetitions(std::uint64_t n, double theta);

struct InferredAssignment {
  Assignment assignment;
  /// Per-qubit probability that a Bin(R, p) majority under the known
  /// theta-implied bias comes out at least as decisive as observed:
  /// 1 - P[X <= R - majority_count]. For the slimmest possible majority
  /// this is 1 - p_wrong_exact(R, p).
  std::vector<double> confidence;
};

/// Majority vote per qubit: bit i = 1 iff ones(i) > R/2. R must be odd.
InferredAssignment infer_assignment(const MeasurementTally& tally, double theta);

/// Qubits whose observed asymmetry |ones/R - 1/2| falls short of the
/// expected bias sin(theta)/2 by more than z_threshold standard errors;
/// candidates for booleans that vary across multiple solutions.
std::vector<std::uint32_t> detect_ambiguous(const MeasurementTally& tally, double theta,
                                            double z_threshold = 3.0);

/// Tally CSV (header `qubit_index,ones,runs`), one row per qubit.
MeasurementTally read_tally_csv(std::istream& in);
void write_tally_csv(std::ostream& out, const MeasurementTally& tally);

}  // namespace qsat
