#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "groundhold/generator.hpp"
#include "groundhold/oracle.hpp"
#include "groundhold/search.hpp"
#include "scratch.hpp"

using namespace groundhold;

TEST(ExpProbabilities, ReferenceValues) {
  const ExpDistribution dist = exp_probabilities(1.3, 1, 12);
  ASSERT_EQ(dist.weights().size(), 12u);
  // 40-digit reference evaluation of x^y (x-1) / (x^13 - x).
  EXPECT_NEAR(dist.weight(12), 0.24111851545002914, 1e-15);
  EXPECT_NEAR(dist.weight(1), 0.013454070085037887, 1e-15);
  EXPECT_NEAR(std::accumulate(dist.weights().begin(), dist.weights().end(), 0.0), 1.0, 1e-12);
}

TEST(ExpProbabilities, SingleTerm) {
  const ExpDistribution dist = exp_probabilities(1.7, 4, 4);
  ASSERT_EQ(dist.weights().size(), 1u);
  EXPECT_DOUBLE_EQ(dist.weight(4), 1.0);
}

TEST(ExpProbabilities, IncreasingForRatioOnePointFive) {
  const ExpDistribution dist = exp_probabilities(1.5, 1, 12);
  for (int y = 2; y <= 12; ++y) EXPECT_LT(dist.weight(y - 1), dist.weight(y));
  EXPECT_NEAR(std::accumulate(dist.weights().begin(), dist.weights().end(), 0.0), 1.0, 1e-12);
  EXPECT_NEAR(dist.weight(12), 0.33592240373948743, 1e-15);
}

TEST(ExpProbabilities, RejectsBadArguments) {
  EXPECT_THROW(exp_probabilities(1.0, 1, 12), std::invalid_argument);
  EXPECT_THROW(exp_probabilities(0.5, 1, 12), std::invalid_argument);
  EXPECT_THROW(exp_probabilities(1.3, 5, 4), std::invalid_argument);
}

TEST(SearchConfig, Validation) {
  SearchConfig c;
  EXPECT_NO_THROW(c.validate());
  c.max_iter = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.state3_threshold = 400;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.time_limit_seconds = 0.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Step, MostViolatedEscapes) {
  const Instance inst = worked_example(120);
  const PreprocessedModel m = preprocess(inst);
  ViolationEngine eng(m);
  Solver solver(eng, {});
  solver.state().state = HeuristicState::MostViolated;
  const std::int64_t before = eng.total_violations();
  ASSERT_EQ(before, 1);
  EXPECT_TRUE(solver.step());
  EXPECT_LT(eng.total_violations(), before);
  EXPECT_EQ(eng.total_violations(), groundhold::testing::scratch_violations(
                                        inst, m, std::vector<Minute>(eng.delays().begin(), eng.delays().end())));
  // Smallest escaping delay per flight: 99 + 1, 95 + 5, 90 + 10.
  const Minute d = eng.total_delay();
  EXPECT_TRUE((eng.delay(2) == 1 && d == 1) || (eng.delay(1) == 5 && d == 5) ||
              (eng.delay(0) == 10 && d == 10));
}

TEST(Step, FullNeighbourhoodPicksSmallestDelay) {
  const Instance inst = worked_example(5);
  const PreprocessedModel m = preprocess(inst);
  ViolationEngine eng(m);
  Solver solver(eng, {});
  solver.state().state = HeuristicState::FullNeighbourhood;
  EXPECT_TRUE(solver.step());
  EXPECT_EQ(eng.total_violations(), 0);
  EXPECT_EQ(eng.delay(2), 1);
  EXPECT_EQ(eng.total_delay(), 1);
}

TEST(Step, AllTabuMeansNoMove) {
  const Instance inst = worked_example(5);
  const PreprocessedModel m = preprocess(inst);
  ViolationEngine eng(m);
  Solver solver(eng, {});
  for (auto& t : solver.state().tabu) t = 1000;
  for (auto s : {HeuristicState::Descent, HeuristicState::MostViolated, HeuristicState::FullNeighbourhood}) {
    solver.state().state = s;
    EXPECT_FALSE(solver.step());
    EXPECT_EQ(eng.total_violations(), 1);
    EXPECT_EQ(eng.total_delay(), 0);
  }
}

TEST(Step, DescentFavoursShortDelays) {
  // With g = 120, F3 improves under every positive delay, so each descent
  // step commits exactly the drawn delay.
  const Instance inst = worked_example(120);
  const PreprocessedModel m = preprocess(inst);
  const ExpDistribution dist = exp_probabilities(1.3, 1, 12);
  const int trials = 4000;
  int shortest = 0;
  int longest = 0;
  for (int k = 0; k < trials; ++k) {
    ViolationEngine eng(m);
    SearchConfig c;
    c.rng_seed = static_cast<std::uint64_t>(k + 1);
    Solver solver(eng, c);
    ASSERT_TRUE(solver.step());
    const Minute d = eng.total_delay();
    ASSERT_GE(d, 1);
    ASSERT_LE(d, 120);
    if (d <= 10) ++shortest;
    if (d > 110) ++longest;
  }
  EXPECT_NEAR(static_cast<double>(shortest) / trials, dist.weight(12), 0.03);
  EXPECT_NEAR(static_cast<double>(longest) / trials, dist.weight(1), 0.01);
}

TEST(Diversify, ZeroDelaysUnchanged) {
  const Instance inst = worked_example(120);
  const PreprocessedModel m = preprocess(inst);
  ViolationEngine eng(m);
  Solver solver(eng, {});
  solver.diversify();
  EXPECT_EQ(eng.total_delay(), 0);
  EXPECT_EQ(eng.total_violations(), 1);
}

TEST(Diversify, LongDelayIsReset) {
  const Instance inst = worked_example(120);
  const PreprocessedModel m = preprocess(inst);
  ViolationEngine eng(m);
  eng.commit(0, 115);
  Solver solver(eng, {});
  solver.state().max_diverse = 100;
  solver.diversify();
  EXPECT_EQ(eng.delay(0), 0);
  EXPECT_EQ(eng.total_violations(), 1);
}

TEST(Solve, WorkedExample) {
  const Instance inst = worked_example(5);
  const PreprocessedModel m = preprocess(inst);
  SearchConfig c;
  c.max_iter = 5000;
  const SolveResult r = solve(m, c);
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(r.best_total_delay, 1);
  EXPECT_EQ(r.initial_violations, 1);
  const Assignment a = {groundhold::testing::lift(inst, m, r.best_delays)};
  EXPECT_TRUE(check_full(inst, a).ok);
}

TEST(Solve, NothingPosted) {
  Instance inst = groundhold::testing::one_cell(groundhold::testing::evening(),
                                                {{"a", 1100, 1250, 1300}, {"b", 1150, 1270, 1300}});
  const PreprocessedModel m = preprocess(inst);
  ASSERT_TRUE(m.posted.empty());
  const SolveResult r = solve(m, {});
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(r.best_total_delay, 0);
  EXPECT_EQ(r.best_delays, (std::vector<Minute>{0, 0}));
  EXPECT_EQ(r.first_feasible_iteration, 0);
  EXPECT_EQ(r.moves, 0);
}

TEST(Solve, InfeasibleReportsMinimum) {
  const PreprocessedModel m = preprocess(infeasible_example());
  SearchConfig c;
  c.max_iter = 500;
  const SolveResult r = solve(m, c);
  EXPECT_FALSE(r.feasible);
  EXPECT_TRUE(r.best_delays.empty());
  EXPECT_EQ(r.min_violations, 1);
  EXPECT_EQ(r.iterations, 500);
}

TEST(Solve, SameSeedSameResult) {
  TinyConfig t;
  t.seed = 4;
  t.waiting = 6;
  t.max_hold = 12;
  const PreprocessedModel m = preprocess(tiny(t));
  SearchConfig c;
  c.max_iter = 3000;
  c.rng_seed = 99;
  const SolveResult a = solve(m, c);
  const SolveResult b = solve(m, c);
  EXPECT_EQ(a.best_delays, b.best_delays);
  EXPECT_EQ(a.moves, b.moves);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(Solve, MultistartPrefersFeasible) {
  const PreprocessedModel m = preprocess(worked_example(5));
  SearchConfig c;
  c.max_iter = 2000;
  const SolveResult r = solve_multistart(m, c, 3);
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(r.best_total_delay, 1);
}
