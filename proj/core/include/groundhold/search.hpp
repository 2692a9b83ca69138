#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "groundhold/engine.hpp"

namespace groundhold {

/// Normalised geometric series: weight(y) = x^y (x - 1) / (x^(hi+1) - x^lo)
/// for lo <= y <= hi.
class ExpDistribution {
 public:
  ExpDistribution(double ratio, int lo, int hi);

  double ratio() const { return ratio_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  double weight(int y) const { return weights_.at(static_cast<std::size_t>(y - lo_)); }
  const std::vector<double>& weights() const { return weights_; }

  /// Draws y in [lo, hi] with probability weight(y).
  template <typename Rng>
  int sample(Rng& rng) const {
    std::discrete_distribution<int> pick(weights_.begin(), weights_.end());
    return lo_ + pick(rng);
  }

 private:
  double ratio_;
  int lo_;
  int hi_;
  std::vector<double> weights_;
};

/// Throws std::invalid_argument for ratio <= 1 or lo > hi.
ExpDistribution exp_probabilities(double ratio, int lo, int hi);

struct SearchConfig {
  std::int64_t max_iter = 40000;
  double state1_ratio = 1.3;
  double diversify_ratio = 1.5;
  std::int64_t state2_threshold = 300;
  std::int64_t state3_threshold = 5;
  std::int64_t diversify_level = 30;
  std::int64_t small_steps = 10;
  std::int64_t large_steps = 100;
  std::int64_t tabu_tenure = 10;
  std::uint64_t rng_seed = 1;
  std::int64_t weight_increment = 1;
  int buckets = 12;       // delay buckets drawn from the distributions
  int bucket_width = 10;  // minutes per bucket
  std::optional<double> time_limit_seconds;

  /// Throws std::invalid_argument.
  void validate() const;
};

enum class HeuristicState : int { Descent = 1, MostViolated = 2, FullNeighbourhood = 3 };

struct SearchState {
  std::int64_t it = 0;
  HeuristicState state = HeuristicState::Descent;
  std::int64_t steady = 0;
  std::int64_t max_diverse = 0;
  std::vector<std::int64_t> tabu;  // a variable is free once tabu[v] <= it
  std::int64_t old_viol = 0;
  std::optional<std::int64_t> best_objective;
  std::vector<Minute> best_assignment;
  ObjectiveWeights weights;
};

struct SolveResult {
  bool feasible = false;
  std::vector<Minute> best_delays;  // per variable; empty when infeasible
  std::int64_t best_total_delay = 0;
  std::int64_t iterations = 0;
  std::int64_t initial_violations = 0;
  std::int64_t min_violations = 0;
  std::int64_t moves = 0;
  std::int64_t diversifications = 0;
  std::optional<std::int64_t> first_feasible_iteration;
  double wall_seconds = 0.0;
};

/// One search run over an engine. Owns the random stream and the tabu list.
class Solver {
 public:
  Solver(ViolationEngine& engine, SearchConfig config);

  /// Executes the current heuristic state once; true when a move was made.
  bool step();

  /// Resets a batch of flights to zero delay, drawn by delay bucket.
  void diversify();

  /// Full meta-heuristic loop; the engine ends holding the best assignment.
  SolveResult run();

  SearchState& state() { return state_; }
  const SearchState& state() const { return state_; }
  const SearchConfig& config() const { return config_; }
  std::mt19937_64& rng() { return rng_; }

 private:
  bool step_descent();
  bool step_most_violated();
  bool step_full();
  bool free(VarIndex v) const { return state_.tabu[static_cast<std::size_t>(v)] <= state_.it; }
  void apply(VarIndex v, Minute d);

  ViolationEngine& engine_;
  SearchConfig config_;
  ExpDistribution descent_dist_;
  ExpDistribution diversify_dist_;
  SearchState state_;
  std::mt19937_64 rng_;
  std::int64_t moves_ = 0;
};

SolveResult solve(const PreprocessedModel& model, const SearchConfig& config);

/// Independent runs with seeds seed, seed+1, ...; returns the best one
/// (feasible first, then least delay, then lowest seed offset).
SolveResult solve_multistart(const PreprocessedModel& model,
                             const SearchConfig& config, int starts);

}  // namespace groundhold
