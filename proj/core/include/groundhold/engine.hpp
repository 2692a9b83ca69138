#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "groundhold/preprocess.hpp"

namespace groundhold {

/// Weights of the objective
///   delay * sum(deltaT) + violation * total_violations
///   + balance * round(kBalanceScale * sigma(demand)).
struct ObjectiveWeights {
  std::int64_t delay = 1;
  std::int64_t violation = 1;
  std::int64_t balance = 0;

  static constexpr double kBalanceScale = 1000.0;
};

/// Population standard deviation of the demands over all (relevant cell,
/// window) pairs; 0 for an empty population.
double demand_stddev(std::span<const std::int32_t> demands);

/// Decision variables plus incrementally maintained constraint counts.
///
/// Each posted constraint keeps the number of its candidates whose delayed
/// entry lies inside its window; its violation is the overflow
/// max(0, count - residual_cap). Every variable also keeps the number of
/// currently violated constraints holding it, and the variables with a
/// positive number form an indexable set for the search.
class ViolationEngine {
 public:
  explicit ViolationEngine(const PreprocessedModel& model);

  const PreprocessedModel& model() const { return *model_; }
  std::size_t num_vars() const { return delays_.size(); }

  Minute delay(VarIndex v) const { return delays_[idx(v)]; }
  std::span<const Minute> delays() const { return delays_; }

  std::int64_t total_violations() const { return total_violations_; }
  std::int64_t total_delay() const { return total_delay_; }

  /// Change of total_violations if delay(v) became d; no mutation.
  std::int64_t assign_delta(VarIndex v, Minute d) const;

  /// Sets delay(v) = d and updates every count incrementally.
  void commit(VarIndex v, Minute d);

  /// Replaces the whole assignment and recounts from scratch.
  void reset(std::span<const Minute> delays);

  /// Number of violated posted constraints whose window currently holds v.
  std::int32_t variable_violations(VarIndex v) const { return var_viol_[idx(v)]; }

  /// Variables with variable_violations > 0, in unspecified order.
  std::span<const VarIndex> violated_vars() const { return violated_; }

  std::int32_t count(std::size_t constraint) const { return counts_[constraint]; }
  std::int64_t overflow(std::size_t constraint) const;

  std::int64_t objective(const ObjectiveWeights& weights) const;

 private:
  static std::size_t idx(VarIndex v) { return static_cast<std::size_t>(v); }

  void recount();
  void enter(std::int32_t constraint, VarIndex v);
  void leave(std::int32_t constraint, VarIndex v);
  void bump_var(VarIndex v, std::int32_t amount);
  bool holds(const PostedConstraint& pc, const Candidate& cand) const {
    return pc.bounds.contains(cand.entry + delays_[idx(cand.var)]);
  }

  const PreprocessedModel* model_;
  std::vector<Minute> delays_;
  std::vector<std::int32_t> counts_;
  std::vector<std::int32_t> var_viol_;
  std::vector<VarIndex> violated_;
  std::vector<std::int32_t> violated_pos_;
  std::int64_t total_violations_ = 0;
  std::int64_t total_delay_ = 0;
};

}  // namespace groundhold
