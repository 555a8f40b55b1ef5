#pragma once

#include <iosfwd>
#include <string>

#include "qsat/sat.hpp"
#include "qsat/solver.hpp"
#include "qsat/trajectory.hpp"

namespace qsat {

/// Provenance stamped into every CSV and JSON output.
struct ReportMeta {
  std::string tool_version;
  std::string config_hash;
  std::uint64_t master_seed = 0;
  std::string instance_hash;
};

/// FNV-1a over bytes; stable content hash for configs and instances.
std::uint64_t fnv1a(std::string_view bytes);
std::string fnv1a_hex(std::string_view bytes);

/// Hash of the instance's DIMACS emit normal form.
std::string instance_hash(const SatInstance& instance);

/// Ledger trace as CSV: meta comment lines, then
/// check_index,cycle,clause_id,theta,p_pass,cum_success,fidelity rows
/// (fidelity column empty when it was not recorded).
void write_ledger_csv(std::ostream& out, const TrajectoryLedger& ledger, const ReportMeta& meta);

/// CostSummary as a JSON object with a meta block.
std::string cost_summary_json(const CostSummary& cost, const ReportMeta& meta);

/// SolveResult as a JSON object with a meta block. Wall time is
/// deliberately not serialized so identical seeds give identical bytes.
std::string solve_result_json(const SolveResult& result, const ReportMeta& meta);

/// GroverPlan and reference scalings as JSON.
std::string grover_plan_json(std::uint32_t n, std::uint64_t num_clauses, const ReportMeta& meta);

}  // namespace qsat
