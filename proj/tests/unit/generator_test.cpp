#include <gtest/gtest.h>

#include "groundhold/generator.hpp"
#include "groundhold/oracle.hpp"
#include "groundhold/preprocess.hpp"
#include "scratch.hpp"

using namespace groundhold;

namespace {

GenConfig small_config(std::uint64_t seed) {
  GenConfig c = congested_ecac_config(seed);
  c.flights_per_day = 3000;
  c.nx = 10;
  c.ny = 6;
  c.layers = 2;
  c.airports = 20;
  return c;
}

}  // namespace

TEST(Generate, EmptyTraffic) {
  GenConfig c = small_config(1);
  c.flights_per_day = 0;
  EXPECT_EQ(c.flight_count(), 0);
  const Instance inst = generate(c);
  EXPECT_TRUE(inst.flights().empty());
  EXPECT_EQ(inst.cells().size(), 120u);
}

TEST(Generate, SameSeedSameBytes) {
  EXPECT_EQ(serialize_instance(generate(small_config(8))), serialize_instance(generate(small_config(8))));
  EXPECT_NE(serialize_instance(generate(small_config(8))), serialize_instance(generate(small_config(9))));
}

TEST(Generate, RejectsBadConfig) {
  GenConfig c = small_config(1);
  c.airports = 1;
  EXPECT_THROW(generate(c), GeneratorError);
  c = small_config(1);
  c.params.step = 7;
  EXPECT_THROW(generate(c), GeneratorError);
  c = small_config(1);
  c.span_end = c.span_start - 1;
  EXPECT_THROW(generate(c), GeneratorError);
}

TEST(Generate, CongestedPresetPostsOverloads) {
  const Instance inst = generate(congested_ecac_config(1));
  EXPECT_EQ(inst.cells().size(), 4600u);
  EXPECT_NEAR(static_cast<double>(inst.flights().size()), 50000.0 * 720 / 1440, 1.0);
  const ScenarioParams& p = inst.params();
  EXPECT_EQ(p.cap, 40);
  EXPECT_EQ(p.start - p.now, 180);

  // Recount from the plans: find a cell whose undelayed demand exceeds 40.
  const std::vector<Minute> zero(inst.flights().size(), 0);
  std::vector<std::int32_t> demand(inst.cells().size() * static_cast<std::size_t>(p.num_windows()), 0);
  for (const Flight& f : inst.flights())
    for (const CellEntry& e : f.entries) {
      const WindowRange range = p.windows_containing(e.time);
      for (int r = range.first; r <= range.last; ++r)
        ++demand[static_cast<std::size_t>(e.cell) * static_cast<std::size_t>(p.num_windows()) +
                 static_cast<std::size_t>(r)];
    }
  std::optional<std::pair<int, CellIndex>> over;
  for (std::size_t k = 0; k < demand.size() && !over; ++k)
    if (demand[k] > 40)
      over = {static_cast<int>(k % static_cast<std::size_t>(p.num_windows())),
              static_cast<CellIndex>(k / static_cast<std::size_t>(p.num_windows()))};
  ASSERT_TRUE(over.has_value());
  EXPECT_EQ(groundhold::testing::scratch_demand(inst, zero, over->first, over->second),
            demand[static_cast<std::size_t>(over->second) * 6 + static_cast<std::size_t>(over->first)]);

  const PreprocessedModel m = preprocess(inst);
  bool posted = false;
  for (const PostedConstraint& pc : m.posted)
    posted = posted || (pc.window == over->first && pc.cell == over->second);
  EXPECT_TRUE(posted);
  EXPECT_GT(m.pruning_ratio(), 0.5);
}

TEST(Tiny, Bounds) {
  TinyConfig c;
  c.waiting = 9;
  EXPECT_THROW(tiny(c), GeneratorError);
  c = {};
  c.max_hold = 16;
  EXPECT_THROW(tiny(c), GeneratorError);
  c = {};
  c.cells = 4;
  EXPECT_THROW(tiny(c), GeneratorError);
  c = {};
  c.waiting = 8;
  c.max_hold = 15;
  EXPECT_THROW(tiny(c), GeneratorError);  // 16^8 exceeds the enumeration bound
}

TEST(Tiny, WithinOracleReach) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    TinyConfig c;
    c.seed = seed;
    c.waiting = 6;
    c.max_hold = 15;
    c.steps = 2;
    const Instance inst = tiny(c);
    EXPECT_EQ(classify_flights(inst).waiting.size(), 6u);
    EXPECT_NO_THROW(brute_force_min_delay(inst));
  }
}

TEST(Presets, WorkedAndInfeasible) {
  const OracleResult worked = brute_force_min_delay(preset("worked-example", 1));
  EXPECT_TRUE(worked.feasible);
  EXPECT_EQ(worked.min_total_delay, 1);
  EXPECT_FALSE(brute_force_min_delay(preset("infeasible", 1)).feasible);
  EXPECT_THROW(preset("nope", 1), GeneratorError);
}

TEST(Presets, TwoFlightsUnderCapacity) {
  ScenarioParams p;
  p.now = 0;
  p.start = 100;
  p.end = 100;
  p.window = 60;
  p.step = 10;
  p.max_hold = 5;
  p.cap = 2;
  const Instance inst = groundhold::testing::one_cell(p, {{"a", 40, 50, 60}, {"b", 40, 70, 80}});
  const OracleResult r = brute_force_min_delay(inst);
  EXPECT_TRUE(r.feasible);
  EXPECT_EQ(r.min_total_delay, 0);
  EXPECT_TRUE(preprocess(inst).posted.empty());
}

TEST(GreedyProbe, WitnessPassesCheck) {
  const Instance inst = worked_example(5);
  const auto a = greedy_feasibility_probe(inst);
  ASSERT_TRUE(a.has_value());
  EXPECT_TRUE(check_full(inst, *a).ok);
  EXPECT_EQ(a->total(), 1);
  EXPECT_FALSE(greedy_feasibility_probe(infeasible_example()).has_value());
}
