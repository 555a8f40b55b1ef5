#pragma once

#include "config.hpp"

namespace qsat::cli {

/// Runs the grid described by the config: every (instance, strategy,
/// parameter, noise cap) combination as one deterministic conditioned
/// trajectory. Emits points.csv (one row per point), traces.csv when
/// requested, and sweep_meta.json, all in deterministic point order.
/// Returns the number of points executed.
std::size_t run_sweep(const SweepConfig& config, const std::string& config_hash,
                      std::uint32_t jobs_override);

}  // namespace qsat::cli
