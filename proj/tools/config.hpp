#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace qsat::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// INI-style key-value file with [section] headers, `#` or `;` comments.
/// Unknown sections or keys are rejected by the consumers so typos fail
/// loudly with file/line diagnostics.
class ConfigFile {
 public:
  static ConfigFile load(const std::filesystem::path& path);
  static ConfigFile parse(const std::string& text, const std::string& origin);

  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key) const;
  std::string get_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const;

  std::uint64_t get_u64(const std::string& section, const std::string& key,
                        std::uint64_t fallback) const;
  double get_double(const std::string& section, const std::string& key, double fallback) const;
  bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
  std::vector<std::string> get_list(const std::string& section, const std::string& key) const;
  std::vector<double> get_double_list(const std::string& section, const std::string& key) const;
  std::vector<std::uint64_t> get_u64_list(const std::string& section,
                                          const std::string& key) const;

  const std::string& raw_text() const { return raw_; }
  const std::string& origin() const { return origin_; }

  /// (section, key) pairs present in the file; consumers use this to reject
  /// unknown keys.
  std::vector<std::pair<std::string, std::string>> entries() const;

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
  std::map<std::string, std::map<std::string, std::uint32_t>> lines_;
  std::string raw_;
  std::string origin_;
};

/// Resolved sweep experiment: instance grid, strategy grids, noise caps.
struct SweepConfig {
  std::uint64_t version = 1;
  std::uint64_t master_seed = 0;
  std::uint32_t jobs = 1;
  std::filesystem::path out_dir;

  std::vector<std::uint32_t> sizes;          // instance n values
  std::uint32_t count = 1;                   // instances per size
  std::uint64_t instance_seed_base = 0;      // derived from master seed by default
  std::int64_t target_ns = -1;               // -1: accept any solution count
  std::uint32_t exhaustive_limit = 30;

  std::vector<std::string> strategies;       // adiabatic-linear | adiabatic-sqrt | sculpt | hybrid
  std::vector<std::uint64_t> c_tot;          // ramped schedules
  std::vector<double> theta0_frac;           // fraction of pi/2, sculpt + hybrid
  std::uint64_t sculpt_cycles = 0;           // 0: pilot-percentile heuristic
  std::vector<std::uint64_t> c_hold;         // hybrid
  std::vector<std::uint64_t> c_ramp;
  std::vector<double> noise_cap;
  std::string noise_mode = "multiplicative";
  bool record_traces = false;
  double fidelity_threshold = 0.999;

  static SweepConfig parse(const ConfigFile& file);

  /// Canonical `section.key=value` listing embedded in output headers.
  std::vector<std::string> resolved_lines() const;
};

}  // namespace qsat::cli
