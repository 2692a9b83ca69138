#include <benchmark/benchmark.h>

#include <random>

#include "groundhold/engine.hpp"
#include "groundhold/generator.hpp"
#include "groundhold/preprocess.hpp"
#include "groundhold/search.hpp"

using namespace groundhold;

namespace {

const Instance& congested() {
  static const Instance inst = generate(congested_ecac_config(1));
  return inst;
}

const PreprocessedModel& congested_model() {
  static const PreprocessedModel model = preprocess(congested());
  return model;
}

void BM_Generate(benchmark::State& state) {
  GenConfig c = congested_ecac_config(1);
  c.flights_per_day = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(generate(c));
  state.SetItemsProcessed(state.iterations() * c.flight_count());
}
BENCHMARK(BM_Generate)->Arg(10000)->Arg(50000)->Unit(benchmark::kMillisecond);

void BM_Preprocess(benchmark::State& state) {
  const Instance& inst = congested();
  for (auto _ : state) benchmark::DoNotOptimize(preprocess(inst));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(inst.flights().size()));
}
BENCHMARK(BM_Preprocess)->Unit(benchmark::kMillisecond);

void BM_AssignDelta(benchmark::State& state) {
  const PreprocessedModel& m = congested_model();
  ViolationEngine eng(m);
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<VarIndex> pick_v(0, static_cast<VarIndex>(m.num_vars()) - 1);
  std::uniform_int_distribution<Minute> pick_d(0, m.params.max_hold);
  for (auto _ : state) benchmark::DoNotOptimize(eng.assign_delta(pick_v(rng), pick_d(rng)));
}
BENCHMARK(BM_AssignDelta);

void BM_Commit(benchmark::State& state) {
  const PreprocessedModel& m = congested_model();
  ViolationEngine eng(m);
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<VarIndex> pick_v(0, static_cast<VarIndex>(m.num_vars()) - 1);
  std::uniform_int_distribution<Minute> pick_d(0, m.params.max_hold);
  for (auto _ : state) eng.commit(pick_v(rng), pick_d(rng));
  benchmark::DoNotOptimize(eng.total_violations());
}
BENCHMARK(BM_Commit);

// Full solver iterations from the all-zero start, including state switches
// and diversification.
void BM_SolverIterations(benchmark::State& state) {
  const PreprocessedModel& m = congested_model();
  SearchConfig c;
  c.max_iter = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(solve(m, c));
  state.SetItemsProcessed(state.iterations() * c.max_iter);
}
BENCHMARK(BM_SolverIterations)->Arg(1000)->Arg(8000)->Unit(benchmark::kMillisecond);

void BM_MostViolatedStep(benchmark::State& state) {
  const PreprocessedModel& m = congested_model();
  ViolationEngine eng(m);
  Solver solver(eng, {});
  solver.state().state = HeuristicState::MostViolated;
  for (auto _ : state) {
    if (!solver.step()) {
      state.PauseTiming();
      eng.reset(std::vector<Minute>(m.num_vars(), 0));
      std::fill(solver.state().tabu.begin(), solver.state().tabu.end(), 0);
      state.ResumeTiming();
    }
    ++solver.state().it;
  }
}
BENCHMARK(BM_MostViolatedStep);

}  // namespace

BENCHMARK_MAIN();
