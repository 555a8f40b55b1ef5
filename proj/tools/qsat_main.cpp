#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

#include <CLI11.hpp>

#include "config.hpp"
#include "sweep.hpp"

#include "qsat/dimacs.hpp"
#include "qsat/inference.hpp"
#include "qsat/report.hpp"
#include "qsat/solver.hpp"
#include "qsat/version.hpp"

namespace {

using namespace qsat;

constexpr double kHalfPi = std::numbers::pi / 2;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitUnsolved = 2;

struct GenArgs {
  std::uint32_t n = 12;
  std::uint64_t seed = 1;
  std::int64_t target_ns = -1;
  std::uint32_t count = 1;
  std::string out_dir = ".";
  std::uint32_t exhaustive_limit = kDefaultExhaustiveLimit;
  std::uint64_t max_draws = 1'000'000;
};

int cmd_gen(const GenArgs& args) {
  std::filesystem::create_directories(args.out_dir);
  GeneratorOptions options;
  options.exhaustive_limit = args.exhaustive_limit;
  options.max_instance_draws = args.max_draws;
  if (args.target_ns >= 0) options.target_solutions = static_cast<std::uint64_t>(args.target_ns);
  for (std::uint32_t i = 0; i < args.count; ++i) {
    const std::uint64_t seed = args.seed + i;
    SatInstance inst = generate_instance(args.n, seed, options);
    if (!inst.solution_count() && args.n <= args.exhaustive_limit) {
      inst.cache_solution_count(count_solutions(inst, 0, args.exhaustive_limit).count);
    }
    std::ostringstream name;
    name << "n" << args.n << "_seed" << seed << ".cnf";
    const auto path = std::filesystem::path(args.out_dir) / name.str();
    write_dimacs_file(inst, path);
    std::cout << path.string() << "\n";
  }
  return kExitOk;
}

struct SolveArgs {
  std::string instance_path;
  std::string strategy = "adiabatic-sqrt";
  std::uint64_t seed = 1;
  std::uint64_t c_tot = 50;
  double theta0_frac = 0.5;
  std::uint64_t n_full = 0;  // 0: pilot-percentile heuristic
  std::uint64_t r_max = 1000;
  std::uint64_t c_hold = 25;
  std::uint64_t c_ramp = 25;
  std::uint64_t try_cap = 1000000;
  double noise_cap = 0.0;
  std::string noise_mode = "multiplicative";
  std::uint64_t noise_seed = 0;
  std::string tally_out;
  std::string ledger_out;
};

int cmd_solve(const SolveArgs& args) {
  SatInstance inst = read_dimacs_file(args.instance_path);
  Rng rng(derive_seed(args.seed, 1));
  std::optional<RotationNoise> noise;
  if (args.noise_cap > 0.0) {
    noise.emplace(args.noise_cap, derive_seed(args.noise_seed ? args.noise_seed : args.seed, 2),
                  args.noise_mode == "additive" ? RotationNoise::Mode::Additive
                                                : RotationNoise::Mode::Multiplicative);
  }
  RotationNoise* noise_ptr = noise ? &*noise : nullptr;

  std::uint64_t n_full = args.n_full;
  Schedule schedule = Schedule::linear(1);  // replaced below
  if (args.strategy == "adiabatic-linear") {
    schedule = Schedule::linear(args.c_tot);
  } else if (args.strategy == "adiabatic-sqrt") {
    schedule = Schedule::sqrt_ramp(args.c_tot);
  } else if (args.strategy == "sculpt") {
    if (n_full == 0) {
      n_full = estimate_n_full(inst.num_vars(), args.theta0_frac * kHalfPi,
                               derive_seed(args.seed, 3), 10);
      std::cerr << "sculpt: pilot N_full = " << n_full << "\n";
    }
    schedule = Schedule::constant(args.theta0_frac * kHalfPi, n_full);
  } else if (args.strategy == "hybrid") {
    schedule = Schedule::stepped(args.theta0_frac * kHalfPi, args.c_hold, args.c_ramp);
  } else {
    std::cerr << "unknown strategy '" << args.strategy << "'\n";
    return kExitUsage;
  }

  SolveResult result;
  if (args.strategy == "sculpt") {
    result = solve_sculpt(inst, args.theta0_frac * kHalfPi, n_full, args.r_max, noise_ptr, rng);
  } else {
    result = solve_adiabatic(inst, schedule, noise_ptr, rng, args.try_cap);
  }

  // the resolved run parameters stand in for a config file
  std::ostringstream resolved;
  resolved << "strategy=" << args.strategy << ";schedule=" << schedule.describe()
           << ";seed=" << args.seed << ";noise_cap=" << args.noise_cap
           << ";noise_mode=" << args.noise_mode << ";try_cap=" << args.try_cap
           << ";r_max=" << args.r_max;
  ReportMeta meta{kVersion, fnv1a_hex(resolved.str()), args.seed, instance_hash(inst)};

  if (!args.tally_out.empty() && result.tally) {
    std::ofstream out(args.tally_out, std::ios::binary);
    if (!out) {
      std::cerr << "cannot open " << args.tally_out << " for writing\n";
      return kExitUsage;
    }
    write_tally_csv(out, *result.tally);
  }
  if (!args.ledger_out.empty()) {
    // conditioned expected-cost ledger of the same schedule and noise stream
    TrajectoryOptions options;
    options.noise = noise_ptr;
    TrajectoryLedger ledger = run_trajectory_deterministic(inst, schedule, options);
    std::ofstream out(args.ledger_out, std::ios::binary);
    if (!out) {
      std::cerr << "cannot open " << args.ledger_out << " for writing\n";
      return kExitUsage;
    }
    write_ledger_csv(out, ledger, meta);
  }

  std::cout << solve_result_json(result, meta) << "\n";
  std::cerr << (result.solved() ? "solved" : "unsolved") << " after " << result.tries
            << " tries, " << result.total_checks << " clause checks, " << result.wall_seconds
            << " s\n";
  return result.solved() ? kExitOk : kExitUnsolved;
}

int cmd_grover(std::uint32_t n, std::int64_t clauses) {
  const std::uint64_t nc =
      clauses >= 0 ? static_cast<std::uint64_t>(clauses) : clause_count_for(n);
  ReportMeta meta{kVersion, "-", 0, "-"};
  std::cout << grover_plan_json(n, nc, meta) << "\n";
  return kExitOk;
}

int cmd_infer(const std::string& tally_path, double theta, std::int64_t expect_n,
              double z_threshold) {
  std::ifstream in(tally_path);
  if (!in) {
    std::cerr << "cannot open " << tally_path << "\n";
    return kExitUsage;
  }
  MeasurementTally tally = read_tally_csv(in);
  if (expect_n >= 0 && tally.n != static_cast<std::uint32_t>(expect_n)) {
    std::cerr << "tally has " << tally.n << " qubits, expected " << expect_n << "\n";
    return kExitUsage;
  }
  InferredAssignment inferred = infer_assignment(tally, theta);
  std::vector<std::uint32_t> ambiguous;
  if (tally.runs >= 3) ambiguous = detect_ambiguous(tally, theta, z_threshold);
  std::cout << "{\n  \"assignment\": \"" << inferred.assignment.to_string() << "\",\n";
  std::cout << "  \"assignment_bits\": " << inferred.assignment.bits() << ",\n";
  std::cout << "  \"confidence\": [";
  for (std::uint32_t i = 0; i < tally.n; ++i) {
    std::cout << (i ? "," : "") << inferred.confidence[i];
  }
  std::cout << "],\n  \"ambiguous_qubits\": [";
  for (std::size_t i = 0; i < ambiguous.size(); ++i) {
    std::cout << (i ? "," : "") << ambiguous[i];
  }
  std::cout << "]\n}\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"measurement-driven quantum 3-SAT solver simulator"};
  app.set_version_flag("--version", std::string(qsat::kToolName) + " " + qsat::kVersion);
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "generate random 3-SAT instances (DIMACS)");
  gen_cmd->add_option("--n", gen.n, "variable count")->required();
  gen_cmd->add_option("--seed", gen.seed, "base seed (instance i uses seed+i)");
  gen_cmd->add_option("--target-ns", gen.target_ns, "required exact solution count");
  gen_cmd->add_option("--count", gen.count, "number of instances");
  gen_cmd->add_option("--out", gen.out_dir, "output directory");
  gen_cmd->add_option("--exhaustive-limit", gen.exhaustive_limit,
                      "max n for exhaustive solution counting");
  gen_cmd->add_option("--max-draws", gen.max_draws,
                      "rejection-sampling budget per instance");

  SolveArgs solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "solve a DIMACS instance");
  solve_cmd->add_option("instance", solve.instance_path, "DIMACS CNF file")->required();
  solve_cmd
      ->add_option("--strategy", solve.strategy,
                   "adiabatic-linear | adiabatic-sqrt | sculpt | hybrid")
      ->check(CLI::IsMember({"adiabatic-linear", "adiabatic-sqrt", "sculpt", "hybrid"}));
  solve_cmd->add_option("--seed", solve.seed, "master seed");
  solve_cmd->add_option("--c-tot", solve.c_tot, "ramp length in cycles (adiabatic)");
  solve_cmd->add_option("--theta0-frac", solve.theta0_frac,
                        "theta0 as a fraction of pi/2 (sculpt/hybrid)");
  solve_cmd->add_option("--n-full", solve.n_full,
                        "sculpt: checks per successful run (0 = pilot heuristic)");
  solve_cmd->add_option("--r-max", solve.r_max, "sculpt: cap on successful runs");
  solve_cmd->add_option("--c-hold", solve.c_hold, "hybrid: cycles at theta0");
  solve_cmd->add_option("--c-ramp", solve.c_ramp, "hybrid: cycles ramping to pi/2");
  solve_cmd->add_option("--try-cap", solve.try_cap, "cap on trajectory attempts");
  solve_cmd->add_option("--noise-cap", solve.noise_cap, "rotation noise cap (e.g. 0.02)");
  solve_cmd->add_option("--noise-mode", solve.noise_mode, "multiplicative | additive")
      ->check(CLI::IsMember({"multiplicative", "additive"}));
  solve_cmd->add_option("--noise-seed", solve.noise_seed, "noise stream seed (default: seed)");
  solve_cmd->add_option("--tally-out", solve.tally_out,
                        "write the sculpt measurement tally CSV here");
  solve_cmd->add_option("--ledger-out", solve.ledger_out,
                        "write the conditioned expected-cost ledger CSV here");

  std::string sweep_config_path;
  std::uint32_t sweep_jobs = 0;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep from a config file");
  sweep_cmd->add_option("config", sweep_config_path, "sweep config file")->required();
  sweep_cmd->add_option("--jobs", sweep_jobs, "worker threads (overrides the config)");

  std::uint32_t grover_n = 24;
  std::int64_t grover_clauses = -1;
  CLI::App* grover_cmd =
      app.add_subcommand("grover", "Grover early-stop cost baseline for a USA instance");
  grover_cmd->add_option("--n", grover_n, "variable count")->required();
  grover_cmd->add_option("--clauses", grover_clauses,
                         "clause count (default round(4.267 n))");

  std::string infer_tally_path;
  double infer_theta = 0.0;
  std::int64_t infer_n = -1;
  double infer_z = 3.0;
  CLI::App* infer_cmd =
      app.add_subcommand("infer", "majority-vote inference from a measurement tally CSV");
  infer_cmd->add_option("tally", infer_tally_path, "tally CSV (qubit_index,ones,runs)")
      ->required();
  infer_cmd->add_option("--theta", infer_theta, "theta of the sculpted state (radians)")
      ->required();
  infer_cmd->add_option("--n", infer_n, "expected qubit count (validation)");
  infer_cmd->add_option("--z-threshold", infer_z, "ambiguity flag threshold in standard errors");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen);
    if (solve_cmd->parsed()) return cmd_solve(solve);
    if (sweep_cmd->parsed()) {
      qsat::cli::ConfigFile file = qsat::cli::ConfigFile::load(sweep_config_path);
      qsat::cli::SweepConfig config = qsat::cli::SweepConfig::parse(file);
      const std::string hash = qsat::fnv1a_hex(file.raw_text());
      const std::size_t points = qsat::cli::run_sweep(config, hash, sweep_jobs);
      std::cerr << "sweep: " << points << " points -> " << config.out_dir.string() << "\n";
      return kExitOk;
    }
    if (grover_cmd->parsed()) return cmd_grover(grover_n, grover_clauses);
    if (infer_cmd->parsed()) return cmd_infer(infer_tally_path, infer_theta, infer_n, infer_z);
  } catch (const qsat::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const qsat::DimacsError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
