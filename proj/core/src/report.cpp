#include "qsat/report.hpp"

#include <cmath>
#include <ostream>

#include <nlohmann/json.hpp>

#include "qsat/dimacs.hpp"
#include "qsat/grover.hpp"

namespace qsat {

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fnv1a_hex(std::string_view bytes) {
  static const char* digits = "0123456789abcdef";
  std::uint64_t h = fnv1a(bytes);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

std::string instance_hash(const SatInstance& instance) {
  return fnv1a_hex(emit_dimacs(instance));
}

namespace {

void write_meta_comments(std::ostream& out, const ReportMeta& meta) {
  out << "# tool_version=" << meta.tool_version << "\n";
  out << "# config_hash=" << meta.config_hash << "\n";
  out << "# master_seed=" << meta.master_seed << "\n";
  out << "# instance_hash=" << meta.instance_hash << "\n";
}

nlohmann::json meta_json(const ReportMeta& meta) {
  return {{"tool_version", meta.tool_version},
          {"config_hash", meta.config_hash},
          {"master_seed", meta.master_seed},
          {"instance_hash", meta.instance_hash}};
}

}  // namespace

void write_ledger_csv(std::ostream& out, const TrajectoryLedger& ledger, const ReportMeta& meta) {
  write_meta_comments(out, meta);
  out << "check_index,cycle,clause_id,theta,p_pass,cum_success,fidelity\n";
  char buf[64];
  auto num = [&buf](double v) -> std::string {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
  };
  for (const CheckRecord& r : ledger.records) {
    out << r.check_index << "," << r.cycle << "," << r.clause_id << "," << num(r.theta) << ","
        << num(r.p_pass) << "," << num(r.cum_success) << ",";
    if (!std::isnan(r.fidelity)) out << num(r.fidelity);
    out << "\n";
  }
  if (ledger.truncated) out << "# truncated: projection annihilated the state\n";
}

std::string cost_summary_json(const CostSummary& cost, const ReportMeta& meta) {
  nlohmann::json j{{"meta", meta_json(meta)},
                   {"n_checks_success", cost.n_checks_success},
                   {"p_success", cost.p_success},
                   {"f_failed_checks", cost.f_failed_checks},
                   {"expected_tries", cost.expected_tries},
                   {"c_total", cost.c_total}};
  if (cost.c_total_constant_approx) j["c_total_constant_approx"] = *cost.c_total_constant_approx;
  return j.dump(2);
}

std::string solve_result_json(const SolveResult& result, const ReportMeta& meta) {
  nlohmann::json j{{"meta", meta_json(meta)},
                   {"solved", result.solved()},
                   {"tries", result.tries},
                   {"successful_runs", result.successful_runs},
                   {"total_checks", result.total_checks},
                   {"aborts", result.abort_indices.size()}};
  if (result.assignment) {
    j["assignment"] = result.assignment->to_string();
    j["assignment_bits"] = result.assignment->bits();
  }
  if (result.tally) {
    j["tally"] = {{"runs", result.tally->runs}, {"ones", result.tally->ones}};
  }
  return j.dump(2);
}

std::string grover_plan_json(std::uint32_t n, std::uint64_t num_clauses, const ReportMeta& meta) {
  const GroverPlan plan = grover_expected_total(n, num_clauses);
  nlohmann::json j{
      {"meta", meta_json(meta)},
      {"n", plan.n},
      {"num_clauses", plan.num_clauses},
      {"m_opt", plan.m_opt},
      {"p_success", plan.p_success},
      {"expected_runs", plan.expected_runs},
      {"expected_total_checks", plan.expected_total_checks},
      {"classical_brute", classical_reference(n, num_clauses, ClassicalModel::Brute)},
      {"classical_paturi", classical_reference(n, num_clauses, ClassicalModel::Paturi)},
      {"quantum_grover_base", classical_reference(n, num_clauses, ClassicalModel::GroverBase)}};
  return j.dump(2);
}

}  // namespace qsat
