#include "sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "qsat/dimacs.hpp"
#include "qsat/report.hpp"
#include "qsat/target.hpp"
#include "qsat/trajectory.hpp"
#include "qsat/version.hpp"

namespace qsat::cli {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

struct SweepPoint {
  std::size_t id = 0;
  std::uint32_t n = 0;
  std::uint32_t instance_index = 0;
  std::uint64_t instance_seed = 0;
  std::string strategy;
  double theta0_frac = 0.0;   // sculpt / hybrid
  std::uint64_t c_tot = 0;    // ramped
  std::uint64_t c_hold = 0;   // hybrid
  std::uint64_t c_ramp = 0;
  std::uint64_t n_full = 0;   // sculpt, resolved before running
  double noise_cap = 0.0;
};

struct PointResult {
  bool ok = false;
  std::string error;
  std::string instance_hash;
  CostSummary cost;
  double final_fidelity = std::numeric_limits<double>::quiet_NaN();
  std::int64_t n_hifid_checks = -1;  // -1: not applicable / diverged
  TrajectoryLedger ledger;           // kept only when traces are recorded
  bool has_ledger = false;
};

Schedule schedule_for(const SweepPoint& p) {
  if (p.strategy == "adiabatic-linear") return Schedule::linear(p.c_tot);
  if (p.strategy == "adiabatic-sqrt") return Schedule::sqrt_ramp(p.c_tot);
  if (p.strategy == "sculpt") return Schedule::constant(p.theta0_frac * kHalfPi, p.n_full);
  return Schedule::stepped(p.theta0_frac * kHalfPi, p.c_hold, p.c_ramp);
}

std::string csv_num(double v) {
  if (std::isnan(v)) return "";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::size_t run_sweep(const SweepConfig& cfg, const std::string& config_hash,
                      std::uint32_t jobs_override) {
  // resolve instances first so every point references a frozen instance
  struct InstanceSlot {
    SatInstance instance;
    std::uint64_t seed;
    std::vector<Assignment> solutions;  // empty when unknown
  };
  std::vector<InstanceSlot> instances;
  for (std::uint32_t n : cfg.sizes) {
    for (std::uint32_t i = 0; i < cfg.count; ++i) {
      const std::uint64_t seed = derive_seed(cfg.master_seed, (std::uint64_t{n} << 20) | i);
      GeneratorOptions options;
      options.exhaustive_limit = cfg.exhaustive_limit;
      if (cfg.target_ns >= 0) options.target_solutions = static_cast<std::uint64_t>(cfg.target_ns);
      SatInstance inst = generate_instance(n, seed, options);
      std::vector<Assignment> sols;
      if (n <= cfg.exhaustive_limit) {
        sols = count_solutions(inst, 64, cfg.exhaustive_limit).solutions;
      }
      instances.push_back({std::move(inst), seed, std::move(sols)});
    }
  }

  // pilot-percentile sculpting budgets, one per (n, theta0) pair
  std::map<std::pair<std::uint32_t, double>, std::uint64_t> sculpt_budget;
  const bool wants_sculpt =
      std::find(cfg.strategies.begin(), cfg.strategies.end(), "sculpt") != cfg.strategies.end();
  if (wants_sculpt) {
    for (std::uint32_t n : cfg.sizes) {
      for (double frac : cfg.theta0_frac) {
        std::uint64_t budget;
        if (cfg.sculpt_cycles > 0) {
          budget = cfg.sculpt_cycles * clause_count_for(n);
        } else {
          budget = estimate_n_full(n, frac * kHalfPi, derive_seed(cfg.master_seed, 0xB001), 20);
        }
        sculpt_budget[{n, frac}] = budget;
      }
    }
  }

  std::vector<SweepPoint> points;
  for (std::size_t slot = 0; slot < instances.size(); ++slot) {
    for (const std::string& strategy : cfg.strategies) {
      for (double cap : cfg.noise_cap) {
        auto push = [&](SweepPoint p) {
          p.id = points.size();
          p.n = instances[slot].instance.num_vars();
          p.instance_index = static_cast<std::uint32_t>(slot);
          p.instance_seed = instances[slot].seed;
          p.strategy = strategy;
          p.noise_cap = cap;
          points.push_back(std::move(p));
        };
        if (strategy == "adiabatic-linear" || strategy == "adiabatic-sqrt") {
          for (std::uint64_t ct : cfg.c_tot) {
            SweepPoint p;
            p.c_tot = ct;
            push(p);
          }
        } else if (strategy == "sculpt") {
          for (double frac : cfg.theta0_frac) {
            SweepPoint p;
            p.theta0_frac = frac;
            p.n_full = sculpt_budget.at({instances[slot].instance.num_vars(), frac});
            push(p);
          }
        } else {  // hybrid
          for (double frac : cfg.theta0_frac) {
            for (std::uint64_t hold : cfg.c_hold) {
              for (std::uint64_t ramp : cfg.c_ramp) {
                SweepPoint p;
                p.theta0_frac = frac;
                p.c_hold = hold;
                p.c_ramp = ramp;
                push(p);
              }
            }
          }
        }
      }
    }
  }

  std::vector<PointResult> results(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= points.size()) return;
      const SweepPoint& p = points[i];
      PointResult& r = results[i];
      try {
        const InstanceSlot& slot = instances[p.instance_index];
        r.instance_hash = instance_hash(slot.instance);
        std::optional<RotationNoise> noise;
        if (p.noise_cap > 0.0) {
          noise.emplace(p.noise_cap, derive_seed(cfg.master_seed, 0xA0000000ULL + p.id),
                        cfg.noise_mode == "additive" ? RotationNoise::Mode::Additive
                                                     : RotationNoise::Mode::Multiplicative);
        }
        TrajectoryOptions options;
        options.noise = noise ? &*noise : nullptr;
        options.record_fidelity = !slot.solutions.empty();
        options.solutions = slot.solutions;
        TrajectoryLedger ledger =
            run_trajectory_deterministic(slot.instance, schedule_for(p), options);
        if (!ledger.truncated) r.cost = expected_cost(ledger);
        if (options.record_fidelity && !ledger.records.empty()) {
          r.final_fidelity = ledger.records.back().fidelity;
        }
        if (p.strategy == "sculpt" && options.record_fidelity) {
          // first check at which the trace clears the fidelity threshold
          r.n_hifid_checks = -1;
          for (const CheckRecord& rec : ledger.records) {
            if (rec.fidelity >= cfg.fidelity_threshold) {
              r.n_hifid_checks = static_cast<std::int64_t>(rec.check_index);
              break;
            }
          }
        }
        if (cfg.record_traces) {
          r.ledger = std::move(ledger);
          r.has_ledger = true;
        }
        r.ok = true;
      } catch (const std::exception& e) {
        r.ok = false;
        r.error = e.what();
      }
    }
  };

  const std::uint32_t jobs = std::max(1u, jobs_override ? jobs_override : cfg.jobs);
  std::vector<std::thread> pool;
  for (std::uint32_t t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  std::filesystem::create_directories(cfg.out_dir);
  auto header = [&](std::ofstream& out) {
    out << "# tool_version=" << kVersion << "\n";
    out << "# config_hash=" << config_hash << "\n";
    out << "# master_seed=" << cfg.master_seed << "\n";
    for (const std::string& line : cfg.resolved_lines()) out << "# cfg:" << line << "\n";
  };

  std::ofstream points_csv(cfg.out_dir / "points.csv", std::ios::binary);
  header(points_csv);
  points_csv << "point_id,n,instance_seed,instance_hash,strategy,theta0_frac,c_tot,c_hold,c_ramp,"
                "n_full,noise_cap,n_checks_success,p_success,expected_tries,f_failed_checks,"
                "c_total,c_total_constant_approx,n_hifid,final_fidelity,error\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    const SweepPoint& p = points[i];
    const PointResult& r = results[i];
    points_csv << p.id << "," << p.n << "," << p.instance_seed << "," << r.instance_hash << ","
               << p.strategy << "," << csv_num(p.theta0_frac) << "," << p.c_tot << "," << p.c_hold
               << "," << p.c_ramp << "," << p.n_full << "," << csv_num(p.noise_cap) << ",";
    if (r.ok) {
      points_csv << r.cost.n_checks_success << "," << csv_num(r.cost.p_success) << ","
                 << csv_num(r.cost.expected_tries) << "," << csv_num(r.cost.f_failed_checks) << ","
                 << csv_num(r.cost.c_total) << ","
                 << (r.cost.c_total_constant_approx ? csv_num(*r.cost.c_total_constant_approx)
                                                    : "")
                 << "," << (r.n_hifid_checks >= 0 ? std::to_string(r.n_hifid_checks) : "") << ","
                 << csv_num(r.final_fidelity) << ",";
    } else {
      points_csv << ",,,,,,,," << r.error;
    }
    points_csv << "\n";
  }

  if (cfg.record_traces) {
    std::ofstream traces(cfg.out_dir / "traces.csv", std::ios::binary);
    header(traces);
    traces << "point_id,check_index,cycle,clause_id,theta,p_pass,cum_success,fidelity,"
              "fail_cost_cum\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (!results[i].has_ledger) continue;
      double fail_cost = 0.0;
      double before = 1.0;
      for (const CheckRecord& rec : results[i].ledger.records) {
        fail_cost += static_cast<double>(rec.check_index) * before * (1.0 - rec.p_pass);
        before = rec.cum_success;
        traces << points[i].id << "," << rec.check_index << "," << rec.cycle << ","
               << rec.clause_id << "," << csv_num(rec.theta) << "," << csv_num(rec.p_pass) << ","
               << csv_num(rec.cum_success) << "," << csv_num(rec.fidelity) << ","
               << csv_num(fail_cost) << "\n";
      }
    }
  }

  nlohmann::json meta{{"tool_version", kVersion},
                      {"config_hash", config_hash},
                      {"master_seed", cfg.master_seed},
                      {"points", points.size()},
                      {"config", cfg.resolved_lines()}};
  nlohmann::json insts = nlohmann::json::array();
  for (const InstanceSlot& slot : instances) {
    insts.push_back({{"n", slot.instance.num_vars()},
                     {"seed", slot.seed},
                     {"hash", instance_hash(slot.instance)},
                     {"clauses", slot.instance.num_clauses()},
                     {"solutions", slot.solutions.size()}});
  }
  meta["instances"] = insts;
  std::ofstream meta_out(cfg.out_dir / "sweep_meta.json", std::ios::binary);
  meta_out << meta.dump(2) << "\n";

  return points.size();
}

}  // namespace qsat::cli
