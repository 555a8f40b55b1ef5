// Acceptance suite: every release criterion as one pass/fail line, with the
// tolerances pinned in code. Exit status 0 only when all criteria hold.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <sys/resource.h>
#include <vector>

#include "qsat/clause_check.hpp"
#include "qsat/grover.hpp"
#include "qsat/inference.hpp"
#include "qsat/sat.hpp"
#include "qsat/schedule.hpp"
#include "qsat/solver.hpp"
#include "qsat/target.hpp"
#include "qsat/trajectory.hpp"

using namespace qsat;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// Regularized upper incomplete gamma Q(a, x), series + continued fraction
// (used for the chi-squared tail probability).
double gamma_q(double a, double x) {
  if (x < 0 || a <= 0) return 1.0;
  if (x == 0) return 1.0;
  if (x < a + 1.0) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * 1e-15) break;
    }
    const double p = sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    return 1.0 - p;
  }
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

struct CorpusInstance {
  SatInstance instance;
  std::vector<Assignment> solutions;
};

std::vector<CorpusInstance> usa_corpus(std::initializer_list<std::uint32_t> sizes,
                                       std::uint32_t per_size, std::uint64_t seed_base) {
  std::vector<CorpusInstance> corpus;
  for (std::uint32_t n : sizes) {
    for (std::uint32_t i = 0; i < per_size; ++i) {
      SatInstance inst =
          generate_instance(n, seed_base + 1000 * n + i, {.target_solutions = 1});
      SolutionCount sc = count_solutions(inst, 1);
      corpus.push_back({std::move(inst), std::move(sc.solutions)});
    }
  }
  return corpus;
}

// ---- criterion 1 -----------------------------------------------------------

Outcome criterion_grover() {
  const auto t0 = std::chrono::steady_clock::now();
  GroverPlan plan = grover_expected_total(24, 102);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  char buf[160];
  std::snprintf(buf, sizeof(buf), "m_opt=%llu total=%.1f runs=%.4f in %.3fs",
                static_cast<unsigned long long>(plan.m_opt), plan.expected_total_checks,
                plan.expected_runs, elapsed);
  const bool pass = plan.m_opt >= 2385 && plan.m_opt <= 2387 &&
                    std::abs(plan.expected_total_checks - 288252.0) / 288252.0 < 0.001 &&
                    std::abs(plan.expected_runs - 1.184) / 1.184 < 0.005 && elapsed < 1.0;
  return {pass, buf};
}

// ---- criterion 2 -----------------------------------------------------------

Outcome criterion_naive_limit() {
  double worst_rel = 0.0;
  double worst_amp = 1.0;
  for (std::uint32_t n : {8u, 10u, 12u}) {
    for (std::uint32_t i = 0; i < 20; ++i) {
      SatInstance inst = generate_instance(n, 2000 + 100 * n + i, {.target_solutions = 1});
      SolutionCount sc = count_solutions(inst, 1);
      RebitState state = init_plus(n);
      double p = 1.0;
      for (const Clause& c : inst.clauses()) p *= clause_check_pass(state, c, kHalfPi);
      const double rel = std::abs(p * std::pow(2.0, static_cast<double>(n)) - 1.0);
      worst_rel = std::max(worst_rel, rel);
      worst_amp = std::min(worst_amp, state.amplitude(sc.solutions[0].bits()));
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf), "60 instances, worst |P*2^n-1|=%.3g, min solution amp=%.12f",
                worst_rel, worst_amp);
  return {worst_rel <= 1e-9 && worst_amp >= 1.0 - 1e-9, buf};
}

// ---- criterion 3 -----------------------------------------------------------

Outcome criterion_target_certificate(const std::vector<CorpusInstance>& corpus) {
  const double thetas[] = {0.3, 0.6, 0.9, kHalfPi};
  double worst_gap = 0.0;  // |p_pass - 1| on the true target
  std::size_t wrong_forms_checked = 0;
  bool wrong_all_fail = true;
  for (const CorpusInstance& ci : corpus) {
    const std::uint32_t n = ci.instance.num_vars();
    for (double theta : thetas) {
      RebitState st = target_state(TargetSpec(ci.solutions[0], theta));
      for (const Clause& c : ci.instance.clauses()) {
        worst_gap = std::max(worst_gap, std::abs(clause_check_pass(st, c, theta) - 1.0));
      }
    }
    if (n <= 8) {
      const std::uint64_t solution = ci.solutions[0].bits();
      for (double theta : {0.6, kHalfPi}) {
        for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
          if (a == solution) continue;
          bool fails_one = false;
          for (const Clause& c : ci.instance.clauses()) {
            RebitState st = target_state(TargetSpec(Assignment(n, a), theta));
            if (clause_check_pass(st, c, theta) < 1.0 - 1e-9) {
              fails_one = true;
              break;
            }
          }
          wrong_all_fail = wrong_all_fail && fails_one;
          ++wrong_forms_checked;
        }
      }
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf), "worst |p-1|=%.3g on targets; %zu wrong forms all fail: %s",
                worst_gap, wrong_forms_checked, wrong_all_fail ? "yes" : "NO");
  return {worst_gap <= 1e-12 && wrong_all_fail && wrong_forms_checked > 0, buf};
}

// ---- criteria 4 and 5 ------------------------------------------------------

struct SculptLedgers {
  Outcome bound;     // criterion 4
  Outcome monotone;  // criterion 5 (including the criterion-3 corpus part)
};

SculptLedgers criteria_bound_and_monotone(const std::vector<CorpusInstance>& corpus3) {
  double worst_margin = 1.0;  // min of p_success - (bound - 1e-9)
  double min_ratio = 1e300, max_ratio = 0.0;
  double worst_monotone = 0.0;  // max per-cycle fidelity drop
  std::size_t ledgers = 0;

  auto scan_monotone = [&](const TrajectoryLedger& ledger, std::uint64_t cpc) {
    double prev = 0.0;
    for (std::size_t i = cpc - 1; i < ledger.records.size(); i += cpc) {
      const double f = ledger.records[i].fidelity;
      worst_monotone = std::max(worst_monotone, prev - f);
      prev = f;
    }
  };

  std::size_t sculpt_ledgers = 0;
  for (std::uint32_t n = 8; n <= 14; ++n) {
    for (std::uint32_t i = 0; i < 2; ++i) {
      SatInstance inst = generate_instance(n, 4000 + 100 * n + i, {.target_solutions = 1});
      SolutionCount sc = count_solutions(inst, 1);
      for (double frac : {0.4, 0.5, 0.6}) {
        const double theta = frac * kHalfPi;
        TrajectoryLedger ledger = run_trajectory_deterministic(
            inst, Schedule::constant(theta, 20 * inst.num_clauses()),
            {.record_fidelity = true, .solutions = sc.solutions});
        const double bound = std::pow(std::cos(theta / 2), 2.0 * n);
        const double p = ledger.p_success();
        worst_margin = std::min(worst_margin, p - (bound - 1e-9));
        min_ratio = std::min(min_ratio, p / bound);
        max_ratio = std::max(max_ratio, p / bound);
        scan_monotone(ledger, inst.num_clauses());
        ++ledgers;
        ++sculpt_ledgers;
      }
    }
  }

  // constant-theta trajectories over the criterion-3 corpus
  for (const CorpusInstance& ci : corpus3) {
    for (double theta : {0.3, 0.6, 0.9}) {
      TrajectoryLedger ledger = run_trajectory_deterministic(
          ci.instance, Schedule::constant(theta, 5 * ci.instance.num_clauses()),
          {.record_fidelity = true, .solutions = ci.solutions});
      scan_monotone(ledger, ci.instance.num_clauses());
      ++ledgers;
    }
  }

  char buf4[160], buf5[160];
  std::snprintf(buf4, sizeof(buf4),
                "%zu sculpt ledgers, min margin=%.3g, P/bound ratio in [%.6f, %.3f]",
                sculpt_ledgers, worst_margin, min_ratio, max_ratio);
  std::snprintf(buf5, sizeof(buf5), "%zu constant-theta ledgers, worst per-cycle drop=%.3g",
                ledgers, worst_monotone);
  return {{worst_margin >= 0.0 && min_ratio >= 1.0 - 1e-9, buf4},
          {worst_monotone <= 1e-10, buf5}};
}

// ---- criterion 6 -----------------------------------------------------------

Outcome criterion_overlap_law() {
  double worst_exact = 0.0;
  double worst_expansion = 0.0;
  Rng rng(60);
  for (std::uint32_t n : {4u, 8u, 12u, 16u}) {
    const double eps = 1e-2;
    for (double theta : {0.3, 0.6, 1.1}) {
      const Assignment a(n, rng.next() & ((std::uint64_t{1} << n) - 1));
      RebitState base = target_state(TargetSpec(a, theta));
      const double got = fidelity_usa(base, TargetSpec(a, theta + eps));
      const double exact = std::pow(std::cos(eps / 2), 2.0 * n);
      worst_exact = std::max(worst_exact, std::abs(got - exact));
      const double firstorder = 1.0 - n / 4.0 * eps * eps;
      worst_expansion =
          std::max(worst_expansion, std::abs(got - firstorder) / (n * n * eps * eps * eps * eps));
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "max |fid - cos^2n(eps/2)|=%.3g; expansion residual/(n^2 eps^4)=%.3f", worst_exact,
                worst_expansion);
  return {worst_exact <= 1e-12 && worst_expansion <= 1.0, buf};
}

// ---- criterion 7 -----------------------------------------------------------

Outcome criterion_subspace_oracle() {
  double worst = 0.0;
  std::size_t done = 0;
  std::uint64_t seed = 7000;
  Rng state_rng(71);
  while (done < 20) {
    const std::uint32_t n = done % 2 ? 10 : 8;
    const std::uint64_t want = 2 + done % 3;  // 2..4 solutions
    std::optional<SatInstance> inst;
    try {
      inst = generate_instance(n, seed++, {.target_solutions = want});
    } catch (const GenerationError&) {
      continue;
    }
    SolutionCount sc = count_solutions(*inst, want);
    const double theta = 0.5 + 0.05 * static_cast<double>(done % 5);

    // one generic random state and one mid-trajectory state
    std::vector<RebitState> states;
    {
      std::vector<double> amps(std::uint64_t{1} << n);
      for (double& x : amps) x = state_rng.uniform_symmetric();
      RebitState st(n, std::move(amps));
      st.renormalize();
      states.push_back(std::move(st));
    }
    {
      RebitState st = init_plus(n);
      for (std::uint32_t c = 0; c < 2 * inst->num_clauses(); ++c) {
        clause_check_pass(st, inst->clause(c % inst->num_clauses()), theta);
      }
      states.push_back(std::move(st));
    }

    for (const RebitState& psi : states) {
      // Gram-Schmidt projector oracle
      std::vector<std::vector<double>> basis;
      for (const Assignment& s : sc.solutions) {
        RebitState t = target_state(TargetSpec(s, theta));
        std::vector<double> v(t.amps().begin(), t.amps().end());
        for (const auto& b : basis) {
          double d = 0.0;
          for (std::size_t z = 0; z < v.size(); ++z) d += b[z] * v[z];
          for (std::size_t z = 0; z < v.size(); ++z) v[z] -= d * b[z];
        }
        double nrm = 0.0;
        for (double x : v) nrm += x * x;
        nrm = std::sqrt(nrm);
        for (double& x : v) x /= nrm;
        basis.push_back(std::move(v));
      }
      double oracle = 0.0;
      for (const auto& b : basis) {
        double d = 0.0;
        for (std::size_t z = 0; z < b.size(); ++z) d += b[z] * psi.amplitude(z);
        oracle += d * d;
      }
      worst = std::max(worst, std::abs(fidelity_subspace(psi, sc.solutions, theta) - oracle));
    }
    ++done;
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "20 instances x 2 states, max |gram - oracle|=%.3g", worst);
  return {worst <= 1e-10, buf};
}

// ---- criterion 8 -----------------------------------------------------------

Outcome criterion_monte_carlo() {
  const auto t0 = std::chrono::steady_clock::now();
  SatInstance inst = generate_instance(10, 8008, {.target_solutions = 1});
  Schedule sched = Schedule::linear(20);
  TrajectoryLedger ledger = run_trajectory_deterministic(inst, sched);
  const double p = ledger.p_success();
  const std::size_t total_checks = ledger.records.size();

  const int trials = 10000;
  Rng rng(88);
  int successes = 0;
  std::vector<int> abort_count(total_checks + 1, 0);
  for (int t = 0; t < trials; ++t) {
    SampledTrajectory traj = run_trajectory_sampled(inst, sched, nullptr, rng);
    if (traj.success) {
      ++successes;
    } else {
      ++abort_count[traj.abort_index];
    }
  }
  const double sigma = std::sqrt(p * (1 - p) * trials);
  const double success_dev = std::abs(successes - p * trials) / sigma;

  // chi-squared over abort-index bins (expected >= 5 per bin), success as
  // the final category
  std::vector<double> expected, observed;
  double exp_acc = 0.0, obs_acc = 0.0;
  for (std::size_t i = 1; i <= total_checks; ++i) {
    exp_acc += trials * ledger.p_fail_at(i);
    obs_acc += abort_count[i];
    if (exp_acc >= 5.0) {
      expected.push_back(exp_acc);
      observed.push_back(obs_acc);
      exp_acc = obs_acc = 0.0;
    }
  }
  if (!expected.empty()) {  // fold the remainder into the last bin
    expected.back() += exp_acc;
    observed.back() += obs_acc;
  }
  expected.push_back(trials * p);
  observed.push_back(successes);
  double chi2 = 0.0;
  for (std::size_t b = 0; b < expected.size(); ++b) {
    const double d = observed[b] - expected[b];
    chi2 += d * d / expected[b];
  }
  const double dof = static_cast<double>(expected.size() - 1);
  const double p_value = gamma_q(dof / 2.0, chi2 / 2.0);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  char buf[160];
  std::snprintf(buf, sizeof(buf), "success dev=%.2f sigma; chi2=%.1f (dof=%.0f) p=%.4f; %.1fs",
                success_dev, chi2, dof, p_value, elapsed);
  return {success_dev <= 3.0 && p_value > 0.01 && elapsed < 120.0, buf};
}

// ---- criterion 9 -----------------------------------------------------------

Outcome criterion_schedule_ordering() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint32_t n = 14;
  const int instances = 20;
  std::vector<double> best_linear, best_sqrt, best_hybrid;
  for (int i = 0; i < instances; ++i) {
    SatInstance inst = generate_instance(n, 9000 + i, {.target_solutions = 1});
    double lin = 1e300, sq = 1e300, hy = 1e300;
    for (std::uint64_t ct : {10u, 15u, 25u, 40u, 60u}) {
      lin = std::min(
          lin, expected_cost(run_trajectory_deterministic(inst, Schedule::linear(ct))).c_total);
      sq = std::min(
          sq, expected_cost(run_trajectory_deterministic(inst, Schedule::sqrt_ramp(ct))).c_total);
    }
    for (double frac : {0.4, 0.5, 0.56, 0.6}) {
      for (std::uint64_t len : {8u, 15u, 25u}) {
        hy = std::min(hy, expected_cost(run_trajectory_deterministic(
                              inst, Schedule::stepped(frac * kHalfPi, len, len)))
                              .c_total);
      }
    }
    best_linear.push_back(lin);
    best_sqrt.push_back(sq);
    best_hybrid.push_back(hy);
  }
  const double med_lin = median(best_linear);
  const double med_sqrt = median(best_sqrt);
  const double med_hy = median(best_hybrid);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  char buf[160];
  std::snprintf(buf, sizeof(buf), "medians: hybrid=%.0f < sqrt=%.0f < linear=%.0f; %.0fs", med_hy,
                med_sqrt, med_lin, elapsed);
  return {med_hy < med_sqrt && med_sqrt < med_lin && elapsed < 1800.0, buf};
}

// ---- criterion 10 ----------------------------------------------------------

Outcome criterion_inference_bounds() {
  const bool exact_ok = std::abs(p_wrong_exact(3, 0.8) - 0.104) <= 1e-12;

  const double g = p_wrong_gaussian(201, 0.6).value;
  const double e = p_wrong_exact(201, 0.6);
  const bool gauss_ok = std::abs(g - e) / e < 0.10;

  // log growth: R(2^k) vs k, linear fit R^2
  std::vector<double> ks, rs;
  for (int k = 3; k <= 14; ++k) {
    ks.push_back(k);
    rs.push_back(static_cast<double>(required_repetitions(std::uint64_t{1} << k, 0.4)));
  }
  const double m = static_cast<double>(ks.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    sx += ks[i];
    sy += rs[i];
    sxx += ks[i] * ks[i];
    sxy += ks[i] * rs[i];
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / m;
  double ss_res = 0, ss_tot = 0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const double fit = slope * ks[i] + intercept;
    ss_res += (rs[i] - fit) * (rs[i] - fit);
    ss_tot += (rs[i] - sy / m) * (rs[i] - sy / m);
  }
  const double r2 = 1.0 - ss_res / ss_tot;

  const double r_ratio = static_cast<double>(required_repetitions(1000, 0.3)) /
                         static_cast<double>(required_repetitions(1000, 0.6));
  auto cot2 = [](double t) { return std::pow(std::cos(t) / std::sin(t), 2.0); };
  const double cot_ratio = cot2(0.3) / cot2(0.6);
  const double cot_err = std::abs(r_ratio - cot_ratio) / cot_ratio;

  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "p_wrong(3,.8)=%.6f; gauss rel=%.3f; logfit R2=%.4f; cot2 rel=%.3f",
                p_wrong_exact(3, 0.8), std::abs(g - e) / e, r2, cot_err);
  return {exact_ok && gauss_ok && r2 > 0.98 && cot_err < 0.15, buf};
}

// ---- criterion 11 ----------------------------------------------------------

Outcome criterion_noise_robustness() {
  const std::uint32_t n = 12;
  const double theta = 0.5 * kHalfPi;
  const int instances = 8;
  const int noise_runs = 4;

  std::vector<double> noiseless;
  std::vector<CorpusInstance> corpus;
  for (int i = 0; i < instances; ++i) {
    SatInstance inst = generate_instance(n, 11000 + i, {.target_solutions = 1});
    SolutionCount sc = count_solutions(inst, 1);
    HiFidResult hf = n_hifid(inst, theta, sc.solutions, 0.999);
    if (!hf.reached) return {false, "noiseless trajectory failed to reach 0.999"};
    noiseless.push_back(static_cast<double>(hf.checks));
    corpus.push_back({std::move(inst), std::move(sc.solutions)});
  }
  const std::uint64_t budget = static_cast<std::uint64_t>(3.0 * median(noiseless));

  int reached = 0, total = 0;
  for (int i = 0; i < instances; ++i) {
    for (int r = 0; r < noise_runs; ++r) {
      RotationNoise noise(0.02, derive_seed(12345, 100 * i + r));
      HiFidResult hf = n_hifid(corpus[i].instance, theta, corpus[i].solutions, 0.9, budget, &noise);
      ++total;
      if (hf.reached && hf.checks <= budget) ++reached;
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%d/%d noisy trajectories reached fid 0.9 within %llu checks",
                reached, total, static_cast<unsigned long long>(budget));
  return {reached * 2 >= total, buf};
}

// ---- criterion 12 ----------------------------------------------------------

Outcome criterion_performance() {
  // a unique-solution instance: an unsatisfiable one would (correctly) be
  // annihilated by the pi/2 cycle at the end of the ramp
  SatInstance inst20 = generate_instance(20, 777, {.target_solutions = 1});
  const auto t0 = std::chrono::steady_clock::now();
  TrajectoryLedger ledger = run_trajectory_deterministic(inst20, Schedule::linear(100));
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool checks_ok = ledger.records.size() == 100ull * 85ull;

  SatInstance inst24 = generate_instance(24, 778);
  TrajectoryLedger cycle24 =
      run_trajectory_deterministic(inst24, Schedule::constant(0.6, inst24.num_clauses()));
  struct rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  const double peak_mb = static_cast<double>(usage.ru_maxrss) / 1024.0;

  char buf[160];
  std::snprintf(buf, sizeof(buf), "n=20 100x85 checks in %.1fs; n=24 cycle ok=%d, peak RSS %.0f MB",
                elapsed, cycle24.records.size() == 102, peak_mb);
  return {checks_ok && elapsed <= 60.0 && cycle24.records.size() == 102 && peak_mb <= 600.0, buf};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* label, const Outcome& o) {
    std::printf("[%s] criterion %2d: %s (%s)\n", o.pass ? "PASS" : "FAIL", id, label,
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  };

  report(1, "Grover early-stop baseline", criterion_grover());
  report(2, "naive-limit exactness", criterion_naive_limit());

  // shared corpus for criteria 3 and 5: 50 USA instances at n <= 12
  std::vector<CorpusInstance> corpus3 = usa_corpus({8, 10, 12}, 17, 3000);
  corpus3.pop_back();  // 17*3 = 51 -> 50
  report(3, "target-state certificate", criterion_target_certificate(corpus3));

  SculptLedgers c45 = criteria_bound_and_monotone(corpus3);
  report(4, "success-probability lower bound", c45.bound);
  report(5, "monotone fidelity per cycle", c45.monotone);

  report(6, "overlap law", criterion_overlap_law());
  report(7, "subspace fidelity oracle", criterion_subspace_oracle());
  report(8, "Monte Carlo consistency", criterion_monte_carlo());
  report(9, "schedule ordering at n=14", criterion_schedule_ordering());
  report(10, "inference bounds", criterion_inference_bounds());
  report(11, "noise robustness", criterion_noise_robustness());
  report(12, "performance envelope", criterion_performance());

  if (failures) {
    std::printf("%d criterion(s) FAILED\n", failures);
    return 1;
  }
  std::printf("all 12 criteria passed\n");
  return 0;
}
