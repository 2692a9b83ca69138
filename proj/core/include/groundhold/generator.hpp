#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "groundhold/instance.hpp"
#include "groundhold/oracle.hpp"

namespace groundhold {

class GeneratorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Departure-time bump on top of the uniform base traffic.
struct TrafficPeak {
  Minute center = 0;
  Minute spread = 30;      // standard deviation, minutes
  double intensity = 1.0;  // share relative to base_weight
};

struct GenConfig {
  std::uint64_t seed = 1;
  int nx = 46;
  int ny = 25;
  int layers = 4;

  /// Average daily rate; the generated count is scaled to the departure span.
  double flights_per_day = 50000.0;
  Minute span_start = 600;
  Minute span_end = 1320;
  double base_weight = 1.0;
  std::vector<TrafficPeak> peaks;

  int airports = 400;
  double airport_skew = 0.7;  // Zipf exponent of airport popularity
  /// Destination weight decays as exp(-distance / route_decay) in grid
  /// steps; 0 disables the decay.
  double route_decay = 0.0;
  double dwell_mean = 6.0;    // minutes spent crossing a cell
  double dwell_jitter = 1.5;

  ScenarioParams params;

  void validate() const;
  int flight_count() const;
};

/// Straight-line grid routes: climb at the origin column, cruise on one
/// layer with a random monotone staircase, descend at the destination.
Instance generate(const GenConfig& config);

struct TinyConfig {
  std::uint64_t seed = 1;
  int waiting = 5;      // at most 8
  int airborne = 1;
  int cells = 2;        // at most 3
  Minute max_hold = 8;  // at most 15
  int steps = 1;        // m
  double limit = kDefaultOracleLimit;
};

/// Small instance that the exhaustive oracle can enumerate. Throws
/// GeneratorError when the requested size exceeds the bounds.
Instance tiny(const TinyConfig& config);

/// Three flights entering one cell at 90, 95 and 99 with capacity 2 on the
/// single window [40, 100).
Instance worked_example(Minute max_hold = 5);

/// One flight that cannot leave its cap-0 window within g.
Instance infeasible_example();

/// ~4600 cells, ~50,000 flights/day, cap 40, w=60, t=12, g=120, now three
/// hours before a one-hour interval starting at `start`.
GenConfig congested_ecac_config(std::uint64_t seed, Minute start = 1260);

/// Greedy first-fit placement of the waiting flights in departure order,
/// each at its smallest delay keeping every demand within capacity. A
/// returned assignment is a feasibility witness; nullopt is inconclusive.
std::optional<Assignment> greedy_feasibility_probe(const Instance& instance);

/// Preset names accepted by the CLI.
Instance preset(const std::string& name, std::uint64_t seed);

}  // namespace groundhold
