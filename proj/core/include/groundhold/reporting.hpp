#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "groundhold/instance.hpp"
#include "groundhold/oracle.hpp"
#include "groundhold/preprocess.hpp"
#include "groundhold/search.hpp"

namespace groundhold {

/// Population statistics of one set of demands. The median of an even
/// population is the lower middle value.
struct DemandStats {
  double mean = 0.0;
  double stddev = 0.0;
  double variance = 0.0;
  std::int32_t min = 0;
  std::int32_t median = 0;
  std::int32_t max = 0;
};

DemandStats describe(std::span<const std::int32_t> demands);

struct WindowStats {
  int window = 0;
  Window bounds;
  DemandStats before;
  DemandStats after;
};

enum class StatsPopulation { Relevant, All };

StatsPopulation parse_population(const std::string& name);
std::string to_string(StatsPopulation population);

/// Per-window statistics of the per-cell entering demand, before and after.
/// Delays are per decision variable.
std::vector<WindowStats> window_statistics(const PreprocessedModel& model,
                                           std::size_t cell_count,
                                           std::span<const Minute> before,
                                           std::span<const Minute> after,
                                           StatsPopulation population);

/// Mean over windows of (sigma_after - sigma_before) / sigma_before, skipping
/// windows whose sigma_before is 0. Zero when no window qualifies.
double mean_relative_stddev_change(std::span<const WindowStats> stats);

/// Zero delays in their own bucket; positive delays in [5k+1, 5k+5].
struct DelayHistogram {
  std::int64_t zero = 0;
  Minute width = 5;
  std::vector<std::int64_t> buckets;  // bucket k covers [k*width+1, (k+1)*width]

  std::int64_t total() const;
  Minute bucket_lo(std::size_t k) const { return static_cast<Minute>(k) * width + 1; }
  Minute bucket_hi(std::size_t k) const { return static_cast<Minute>(k + 1) * width; }
};

DelayHistogram delay_histogram(std::span<const Minute> delays, Minute max_hold,
                               Minute width = 5);

struct SolveReport {
  std::optional<double> runtime_seconds;
  std::int64_t iterations = 0;
  bool feasible = false;
  std::size_t waiting_flights = 0;
  std::size_t airborne_flights = 0;
  std::size_t relevant_cells = 0;
  std::size_t posted_constraints = 0;
  double pruning_ratio = 0.0;
  std::int64_t initial_violations = 0;
  std::int64_t final_violations = 0;
  std::int64_t total_delay = 0;
  std::int64_t delayed_flights = 0;
  double average_delay = 0.0;           // over delayed flights
  double average_delay_relevant = 0.0;  // over all relevant flights
  double demand_dev = 0.0;              // mean relative std-dev change
  StatsPopulation population = StatsPopulation::Relevant;
  DelayHistogram histogram;
  std::vector<WindowStats> windows;
  ScenarioParams params;
  SearchConfig config;
  std::vector<std::pair<std::string, Minute>> delays;  // per waiting flight
};

/// Assembles the report of a finished run. When the run is infeasible the
/// delays and "after" statistics describe the final engine assignment.
SolveReport build_report(const Instance& instance, const PreprocessedModel& model,
                         const SearchConfig& config, const SolveResult& result,
                         std::span<const Minute> final_delays,
                         StatsPopulation population, bool include_timing);

nlohmann::ordered_json to_json(const SolveReport& report);

/// Renderings of a report JSON document; numbers are copied verbatim from
/// the JSON so all formats agree.
std::string render_csv(const nlohmann::ordered_json& report);
std::string render_markdown(const nlohmann::ordered_json& report);
std::string render_histogram_svg(const nlohmann::ordered_json& report);

/// Per-flight delays of a report document, as an assignment over the instance.
Assignment assignment_from_report(const Instance& instance,
                                  const nlohmann::ordered_json& report);

/// Per-variable delays lifted to a per-flight assignment.
Assignment to_assignment(const Instance& instance, const PreprocessedModel& model,
                         std::span<const Minute> delays);

}  // namespace groundhold
