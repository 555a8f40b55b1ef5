#include <benchmark/benchmark.h>

#include <numbers>

#include "qsat/clause_check.hpp"
#include "qsat/sat.hpp"
#include "qsat/schedule.hpp"
#include "qsat/target.hpp"
#include "qsat/trajectory.hpp"

using namespace qsat;

namespace {

void BM_ApplyY(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  RebitState st = init_plus(n);
  std::uint32_t q = 0;
  for (auto _ : state) {
    st.apply_y(q, 0.31);
    q = (q + 1) % n;
    benchmark::DoNotOptimize(st.amps().data());
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(st.dim() * sizeof(double)));
}
BENCHMARK(BM_ApplyY)->Arg(16)->Arg(20)->Arg(24);

void BM_ClauseCheck(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  SatInstance inst = generate_instance(n, 7);
  RebitState st = init_plus(n);
  std::uint32_t i = 0;
  for (auto _ : state) {
    clause_check_pass(st, inst.clause(i), 0.6);
    i = (i + 1) % inst.num_clauses();
    benchmark::DoNotOptimize(st.amps().data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ClauseCheck)->Arg(14)->Arg(16)->Arg(20)->Unit(benchmark::kMicrosecond);

void BM_Overlap(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  RebitState st = init_plus(n);
  TargetSpec spec(Assignment(n, 0x2a5a5a & ((std::uint64_t{1} << n) - 1)), 0.7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(overlap(st, spec));
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(st.dim() * sizeof(double)));
}
BENCHMARK(BM_Overlap)->Arg(16)->Arg(20)->Arg(24);

void BM_TrajectoryCycle(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  SatInstance inst = generate_instance(n, 7);
  for (auto _ : state) {
    TrajectoryLedger ledger = run_trajectory_deterministic(
        inst, Schedule::constant(0.6, inst.num_clauses()));
    benchmark::DoNotOptimize(ledger.p_success());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * inst.num_clauses());
}
BENCHMARK(BM_TrajectoryCycle)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
