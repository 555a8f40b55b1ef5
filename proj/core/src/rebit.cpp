#include "qsat/rebit.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>

namespace qsat {

RotationNoise::RotationNoise(double cap, std::uint64_t seed, Mode mode)
    : cap_(cap), mode_(mode), rng_(seed) {
  if (cap < 0) throw std::invalid_argument("RotationNoise: cap must be >= 0");
}

double RotationNoise::perturb(double angle) {
  if (cap_ == 0.0) return angle;
  const double u = cap_ * rng_.uniform_symmetric();
  return mode_ == Mode::Multiplicative ? angle * (1.0 + u)
                                       : angle + u * std::numbers::pi / 2;
}

RebitState::RebitState(std::uint32_t n, std::vector<double> amps) : n_(n), amps_(std::move(amps)) {
  if (n < 1 || n > kMaxQubits) {
    throw CapacityError("RebitState: n must be in [1, " + std::to_string(kMaxQubits) + "], got " +
                        std::to_string(n));
  }
  if (amps_.size() != dim()) {
    throw std::invalid_argument("RebitState: amplitude array must have 2^n entries");
  }
}

double RebitState::norm() const {
  double s = 0.0;
  for (double a : amps_) s += a * a;
  return std::sqrt(s);
}

void RebitState::renormalize() {
  const double inv = 1.0 / norm();
  for (double& a : amps_) a *= inv;
}

void RebitState::apply_y(std::uint32_t qubit, double angle, RotationNoise* noise) {
  if (qubit >= n_) {
    throw std::invalid_argument("apply_y: qubit " + std::to_string(qubit) + " out of range for n=" +
                                std::to_string(n_));
  }
  if (noise) angle = noise->perturb(angle);
  const double c = std::cos(angle / 2);
  const double s = std::sin(angle / 2);
  const std::uint64_t stride = std::uint64_t{1} << qubit;
  double* amps = amps_.data();
  for (std::uint64_t base = 0; base < dim(); base += 2 * stride) {
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

Assignment RebitState::measure_all(Rng& rng) {
  if (aborted_) throw std::logic_error("measure_all: state was consumed or aborted");
  const double u = rng.uniform();
  double cum = 0.0;
  std::uint64_t z = dim() - 1;  // guards against cum falling short of u by rounding
  for (std::uint64_t i = 0; i < dim(); ++i) {
    cum += amps_[i] * amps_[i];
    if (u < cum) {
      z = i;
      break;
    }
  }
  aborted_ = true;
  return Assignment(n_, z);
}

RebitState init_plus(std::uint32_t n) {
  if (n < 1 || n > kMaxQubits) {
    const double gib = n < 64 ? std::ldexp(8.0, static_cast<int>(n)) / (1024.0 * 1024 * 1024) : 1e30;
    throw CapacityError("init_plus: n=" + std::to_string(n) + " exceeds the cap of " +
                        std::to_string(kMaxQubits) + " qubits (state would need " +
                        std::to_string(gib) + " GiB)");
  }
  const double amp = std::pow(2.0, -static_cast<double>(n) / 2.0);
  return RebitState(n, std::vector<double>(std::uint64_t{1} << n, amp));
}

RebitState basis_state(std::uint32_t n, std::uint64_t z) {
  std::vector<double> amps(std::uint64_t{1} << n, 0.0);
  amps.at(z) = 1.0;
  return RebitState(n, std::move(amps));
}

namespace {
constexpr char kSnapshotMagic[8] = {'R', 'B', 'S', 'N', 'A', 'P', '0', '1'};
}

void save_snapshot(const RebitState& state, double theta, std::uint64_t step,
                   const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_snapshot: cannot open " + path.string());
  out.write(kSnapshotMagic, sizeof(kSnapshotMagic));
  const std::uint64_t n = state.num_qubits();
  out.write(reinterpret_cast<const char*>(&n), sizeof(n));
  out.write(reinterpret_cast<const char*>(&theta), sizeof(theta));
  out.write(reinterpret_cast<const char*>(&step), sizeof(step));
  out.write(reinterpret_cast<const char*>(state.amps().data()),
            static_cast<std::streamsize>(state.dim() * sizeof(double)));
}

Snapshot load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_snapshot: cannot open " + path.string());
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kSnapshotMagic, sizeof(magic)) != 0) {
    throw std::runtime_error("load_snapshot: bad magic in " + path.string());
  }
  std::uint64_t n = 0, step = 0;
  double theta = 0;
  in.read(reinterpret_cast<char*>(&n), sizeof(n));
  in.read(reinterpret_cast<char*>(&theta), sizeof(theta));
  in.read(reinterpret_cast<char*>(&step), sizeof(step));
  if (!in || n < 1 || n > kMaxQubits) throw std::runtime_error("load_snapshot: corrupt header");
  std::vector<double> amps(std::uint64_t{1} << n);
  in.read(reinterpret_cast<char*>(amps.data()),
          static_cast<std::streamsize>(amps.size() * sizeof(double)));
  if (!in) throw std::runtime_error("load_snapshot: truncated amplitude array");
  return Snapshot{RebitState(static_cast<std::uint32_t>(n), std::move(amps)), theta, step};
}

}  // namespace qsat
