#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <vector>

#include "qsat/rng.hpp"
#include "qsat/sat.hpp"

namespace qsat {

/// Hard cap on register size: 2^26 doubles is a 512 MiB amplitude array.
inline constexpr std::uint32_t kMaxQubits = 26;

class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Over/under-rotation defect applied to every physical Y rotation.
/// Multiplicative mode scales the angle by (1 + u), additive mode shifts it
/// by u * pi/2, with u uniform in [-cap, cap]. cap = 0 is bit-exactly
/// noiseless (no draws are consumed).
class RotationNoise {
 public:
  enum class Mode { Multiplicative, Additive };

  RotationNoise(double cap, std::uint64_t seed, Mode mode = Mode::Multiplicative);

  double perturb(double angle);
  double cap() const { return cap_; }
  Mode mode() const { return mode_; }

 private:
  double cap_;
  Mode mode_;
  Rng rng_;
};

/// n-qubit register over real amplitudes. Index bit i is the z-basis value
/// of qubit i, so index 0 is |00...0> and the basis state for an assignment
/// is the index equal to its bit mask. Unit norm is maintained by
/// renormalizing after every projection.
///
/// A state is exclusively owned by one trajectory at a time. Copy to fork.
class RebitState {
 public:
  RebitState(std::uint32_t n, std::vector<double> amps);

  std::uint32_t num_qubits() const { return n_; }
  std::uint64_t dim() const { return std::uint64_t{1} << n_; }
  std::span<const double> amps() const { return amps_; }
  std::span<double> amps() { return amps_; }
  double amplitude(std::uint64_t z) const { return amps_[z]; }

  double norm() const;
  void renormalize();

  /// Y(angle) = [[cos a/2, sin a/2], [-sin a/2, cos a/2]] on one qubit.
  /// With noise, the angle is perturbed before application.
  void apply_y(std::uint32_t qubit, double angle, RotationNoise* noise = nullptr);

  /// Set when a sampled check fails or a projection annihilates the state;
  /// the register contents are then meaningless and the run restarts.
  bool aborted() const { return aborted_; }
  void mark_aborted() { aborted_ = true; }

  /// Samples a full z-basis measurement (index z with probability amps^2).
  /// The state is consumed: it is flagged aborted afterwards.
  Assignment measure_all(Rng& rng);

 private:
  std::uint32_t n_;
  std::vector<double> amps_;
  bool aborted_ = false;
};

/// Every qubit in |+>: all 2^n amplitudes equal to 2^(-n/2).
RebitState init_plus(std::uint32_t n);

/// The z-basis state |z>.
RebitState basis_state(std::uint32_t n, std::uint64_t z);

/// Debug-only raw snapshot (header + little-endian doubles). Not a
/// stability-guaranteed format.
struct Snapshot {
  RebitState state;
  double theta;
  std::uint64_t step;
};

void save_snapshot(const RebitState& state, double theta, std::uint64_t step,
                   const std::filesystem::path& path);
Snapshot load_snapshot(const std::filesystem::path& path);

}  // namespace qsat
