#include "groundhold/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace groundhold {

ExpDistribution::ExpDistribution(double ratio, int lo, int hi)
    : ratio_(ratio), lo_(lo), hi_(hi) {
  if (!(ratio > 1.0))
    throw std::invalid_argument("exponential ratio must be greater than 1");
  if (lo > hi) throw std::invalid_argument("series powers must satisfy lo <= hi");
  // x^y (x-1) / (x^(hi+1) - x^lo), rewritten with x^lo factored out so that
  // large powers do not overflow.
  const double denom = std::pow(ratio, hi - lo + 1) - 1.0;
  weights_.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (int y = lo; y <= hi; ++y)
    weights_.push_back(std::pow(ratio, y - lo) * (ratio - 1.0) / denom);
}

ExpDistribution exp_probabilities(double ratio, int lo, int hi) {
  return ExpDistribution(ratio, lo, hi);
}

void SearchConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
  };
  require(max_iter > 0, "max_iter must be positive");
  require(state1_ratio > 1.0, "state1 ratio must exceed 1");
  require(diversify_ratio > 1.0, "diversification ratio must exceed 1");
  require(state3_threshold < state2_threshold,
          "state3 threshold must be below state2 threshold");
  require(state3_threshold >= 0, "state thresholds must be non-negative");
  require(diversify_level > 0, "diversify level must be positive");
  require(small_steps >= 0 && large_steps >= 0, "diversification steps must be non-negative");
  require(tabu_tenure >= 0, "tabu tenure must be non-negative");
  require(weight_increment >= 0, "weight increment must be non-negative");
  require(buckets > 0 && bucket_width > 0, "bucket layout must be positive");
  require(!time_limit_seconds || *time_limit_seconds > 0.0, "time limit must be positive");
}

namespace {

// Keeps the first minimum and replaces it by a later tie with probability
// 1 / ties, giving a uniform pick among all tied minima.
template <typename Key, typename Item>
class UniformArgMin {
 public:
  template <typename Rng>
  void offer(const Key& key, const Item& item, Rng& rng) {
    if (!best_ || key < *best_) {
      best_ = key;
      item_ = item;
      ties_ = 1;
    } else if (key == *best_) {
      ++ties_;
      if (std::uniform_int_distribution<std::int64_t>(0, ties_ - 1)(rng) == 0) item_ = item;
    }
  }
  bool empty() const { return !best_.has_value(); }
  const Item& item() const { return item_; }

 private:
  std::optional<Key> best_;
  Item item_{};
  std::int64_t ties_ = 0;
};

struct Move {
  VarIndex var = 0;
  Minute delay = 0;
};

SearchConfig validated(SearchConfig config) {
  config.validate();
  return config;
}

}  // namespace

Solver::Solver(ViolationEngine& engine, SearchConfig config)
    : engine_(engine),
      config_(validated(std::move(config))),
      descent_dist_(config_.state1_ratio, 1, config_.buckets),
      diversify_dist_(config_.diversify_ratio, 1, config_.buckets),
      rng_(config_.rng_seed) {
  state_.tabu.assign(engine_.num_vars(), 0);
  state_.old_viol = engine_.total_violations();
  state_.max_diverse = config_.small_steps;
}

void Solver::apply(VarIndex v, Minute d) {
  engine_.commit(v, d);
  state_.tabu[static_cast<std::size_t>(v)] = state_.it + config_.tabu_tenure;
  ++moves_;
}

bool Solver::step() {
  switch (state_.state) {
    case HeuristicState::Descent:
      return step_descent();
    case HeuristicState::MostViolated:
      return step_most_violated();
    case HeuristicState::FullNeighbourhood:
      return step_full();
  }
  return false;
}

// High-probability buckets map to short delays.
bool Solver::step_descent() {
  const int i = descent_dist_.sample(rng_);
  const Minute g = engine_.model().params.max_hold;
  const Minute lo = std::max<Minute>(1, (config_.buckets - i) * config_.bucket_width + 1);
  const Minute hi = std::min<Minute>(g, (config_.buckets + 1 - i) * config_.bucket_width);
  if (lo > hi) return false;
  const Minute d = std::uniform_int_distribution<Minute>(lo, hi)(rng_);

  UniformArgMin<std::int64_t, VarIndex> pick;
  for (VarIndex v : engine_.violated_vars()) {
    if (!free(v) || engine_.delay(v) == d) continue;
    const std::int64_t ad = engine_.assign_delta(v, d);
    if (ad < 0) pick.offer(ad, v, rng_);
  }
  if (pick.empty()) return false;
  apply(pick.item(), d);
  return true;
}

bool Solver::step_most_violated() {
  UniformArgMin<std::int32_t, VarIndex> pick;
  for (VarIndex v : engine_.violated_vars())
    if (free(v)) pick.offer(-engine_.variable_violations(v), v, rng_);
  if (pick.empty()) return false;

  const VarIndex v = pick.item();
  const Minute g = engine_.model().params.max_hold;
  std::optional<std::pair<std::int64_t, Minute>> best;
  for (Minute d = 0; d <= g; ++d) {
    if (d == engine_.delay(v)) continue;
    const std::int64_t ad = engine_.assign_delta(v, d);
    if (ad < 0 && (!best || std::make_pair(ad, d) < *best)) best = {ad, d};
  }
  if (!best) return false;
  apply(v, best->second);
  return true;
}

bool Solver::step_full() {
  const Minute g = engine_.model().params.max_hold;
  UniformArgMin<std::pair<std::int64_t, Minute>, Move> pick;
  for (VarIndex v : engine_.violated_vars()) {
    if (!free(v)) continue;
    for (Minute d = 0; d <= g; ++d) {
      if (d == engine_.delay(v)) continue;
      const std::int64_t ad = engine_.assign_delta(v, d);
      if (ad < 0) pick.offer({ad, d}, Move{v, d}, rng_);
    }
  }
  if (pick.empty()) return false;
  apply(pick.item().var, pick.item().delay);
  return true;
}

// High-probability buckets map to long delays.
void Solver::diversify() {
  const int buckets = config_.buckets;
  const Minute width = config_.bucket_width;
  std::vector<std::vector<VarIndex>> by_bucket(static_cast<std::size_t>(buckets));
  for (std::size_t v = 0; v < engine_.num_vars(); ++v) {
    const Minute d = engine_.delay(static_cast<VarIndex>(v));
    if (d <= 0) continue;
    const Minute i = (d - 1) / width + 1;  // d in ((i-1)*width, i*width]
    if (i <= buckets) by_bucket[static_cast<std::size_t>(i - 1)].push_back(static_cast<VarIndex>(v));
  }
  for (std::int64_t n = 0; n <= state_.max_diverse; ++n) {
    auto& members = by_bucket[static_cast<std::size_t>(diversify_dist_.sample(rng_) - 1)];
    if (members.empty()) continue;
    const auto pos = std::uniform_int_distribution<std::size_t>(0, members.size() - 1)(rng_);
    const VarIndex v = members[pos];
    members[pos] = members.back();
    members.pop_back();
    engine_.commit(v, 0);
  }
}

SolveResult Solver::run() {
  using Clock = std::chrono::steady_clock;
  const auto started = Clock::now();
  std::optional<Clock::time_point> deadline;
  if (config_.time_limit_seconds)
    deadline = started + std::chrono::duration_cast<Clock::duration>(
                             std::chrono::duration<double>(*config_.time_limit_seconds));

  SolveResult result;
  result.initial_violations = engine_.total_violations();
  result.min_violations = result.initial_violations;
  state_.old_viol = engine_.total_violations();
  const ObjectiveWeights initial_weights = state_.weights;

  while (state_.it < config_.max_iter) {
    if (deadline && Clock::now() >= *deadline) break;
    step();
    const std::int64_t viol = engine_.total_violations();
    result.min_violations = std::min(result.min_violations, viol);
    if (state_.old_viol == viol) {
      ++state_.steady;
    } else {
      state_.steady = 0;
    }

    if (viol == 0) {
      state_.max_diverse = config_.large_steps;
      state_.state = HeuristicState::Descent;
      std::fill(state_.tabu.begin(), state_.tabu.end(), 0);
      const std::int64_t obj = engine_.total_delay();
      if (!state_.best_objective || obj < *state_.best_objective) {
        state_.best_objective = obj;
        state_.best_assignment.assign(engine_.delays().begin(), engine_.delays().end());
        if (!result.first_feasible_iteration) result.first_feasible_iteration = state_.it;
      }
      state_.weights = initial_weights;
    } else {
      state_.max_diverse = config_.small_steps;
      if (viol <= config_.state3_threshold) {
        state_.state = HeuristicState::FullNeighbourhood;
      } else if (viol <= config_.state2_threshold) {
        state_.state = HeuristicState::MostViolated;
      }
    }

    if (state_.steady == config_.diversify_level) {
      if (viol > 0) state_.weights.violation += config_.weight_increment;
      diversify();
      ++result.diversifications;
      state_.steady = 0;
    }
    state_.old_viol = engine_.total_violations();
    ++state_.it;

    // Zero total delay is a lower bound; nothing left to improve.
    if (state_.best_objective && *state_.best_objective == 0) break;
  }

  result.iterations = state_.it;
  result.moves = moves_;
  if (state_.best_objective) {
    engine_.reset(state_.best_assignment);
    result.feasible = true;
    result.best_delays = state_.best_assignment;
    result.best_total_delay = *state_.best_objective;
  }
  result.wall_seconds = std::chrono::duration<double>(Clock::now() - started).count();
  return result;
}

SolveResult solve(const PreprocessedModel& model, const SearchConfig& config) {
  ViolationEngine engine(model);
  Solver solver(engine, config);
  return solver.run();
}

SolveResult solve_multistart(const PreprocessedModel& model,
                             const SearchConfig& config, int starts) {
  if (starts <= 1) return solve(model, config);
  std::vector<SolveResult> results(static_cast<std::size_t>(starts));
  {
    std::vector<std::jthread> workers;
    workers.reserve(results.size());
    for (int k = 0; k < starts; ++k) {
      workers.emplace_back([&, k] {
        SearchConfig c = config;
        c.rng_seed = config.rng_seed + static_cast<std::uint64_t>(k);
        results[static_cast<std::size_t>(k)] = solve(model, c);
      });
    }
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < results.size(); ++k) {
    const SolveResult& a = results[k];
    const SolveResult& b = results[best];
    if (a.feasible != b.feasible) {
      if (a.feasible) best = k;
    } else if (a.feasible ? a.best_total_delay < b.best_total_delay
                          : a.min_violations < b.min_violations) {
      best = k;
    }
  }
  return results[best];
}

}  // namespace groundhold
