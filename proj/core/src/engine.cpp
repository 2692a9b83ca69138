#include "groundhold/engine.hpp"

#include <cassert>
#include <cmath>

namespace groundhold {

double demand_stddev(std::span<const std::int32_t> demands) {
  if (demands.empty()) return 0.0;
  double mean = 0.0;
  for (std::int32_t d : demands) mean += d;
  mean /= static_cast<double>(demands.size());
  double sq = 0.0;
  for (std::int32_t d : demands) sq += (d - mean) * (d - mean);
  return std::sqrt(sq / static_cast<double>(demands.size()));
}

ViolationEngine::ViolationEngine(const PreprocessedModel& model)
    : model_(&model),
      delays_(model.num_vars(), 0),
      counts_(model.posted.size(), 0),
      var_viol_(model.num_vars(), 0),
      violated_pos_(model.num_vars(), -1) {
  recount();
}

std::int64_t ViolationEngine::overflow(std::size_t constraint) const {
  const std::int64_t over =
      counts_[constraint] - model_->posted[constraint].residual_cap;
  return over > 0 ? over : 0;
}

void ViolationEngine::reset(std::span<const Minute> delays) {
  assert(delays.size() == delays_.size());
  delays_.assign(delays.begin(), delays.end());
  recount();
}

void ViolationEngine::recount() {
  total_delay_ = 0;
  for (Minute d : delays_) total_delay_ += d;

  total_violations_ = 0;
  std::fill(var_viol_.begin(), var_viol_.end(), 0);
  for (std::size_t k = 0; k < model_->posted.size(); ++k) {
    const PostedConstraint& pc = model_->posted[k];
    std::int32_t n = 0;
    for (const Candidate& cand : model_->list_of(pc).flights)
      if (holds(pc, cand)) ++n;
    counts_[k] = n;
    if (n > pc.residual_cap) {
      total_violations_ += n - pc.residual_cap;
      for (const Candidate& cand : model_->list_of(pc).flights)
        if (holds(pc, cand)) ++var_viol_[idx(cand.var)];
    }
  }

  violated_.clear();
  std::fill(violated_pos_.begin(), violated_pos_.end(), -1);
  for (std::size_t v = 0; v < var_viol_.size(); ++v)
    if (var_viol_[v] > 0) {
      violated_pos_[v] = static_cast<std::int32_t>(violated_.size());
      violated_.push_back(static_cast<VarIndex>(v));
    }
}

std::int64_t ViolationEngine::assign_delta(VarIndex v, Minute d) const {
  const Minute cur = delays_[idx(v)];
  if (cur == d) return 0;
  const ScenarioParams& p = model_->params;
  std::int64_t delta = 0;
  for (const Touch& t : model_->touches_of(v)) {
    const WindowRange from = p.windows_containing(t.entry + cur);
    const WindowRange to = p.windows_containing(t.entry + d);
    for (int r = from.first; r <= from.last; ++r) {
      if (to.contains(r)) continue;
      const std::int32_t k = model_->constraint_at(t.slot, r);
      if (k < 0) continue;
      if (counts_[static_cast<std::size_t>(k)] >
          model_->posted[static_cast<std::size_t>(k)].residual_cap)
        --delta;
    }
    for (int r = to.first; r <= to.last; ++r) {
      if (from.contains(r)) continue;
      const std::int32_t k = model_->constraint_at(t.slot, r);
      if (k < 0) continue;
      if (counts_[static_cast<std::size_t>(k)] >=
          model_->posted[static_cast<std::size_t>(k)].residual_cap)
        ++delta;
    }
  }
  return delta;
}

void ViolationEngine::bump_var(VarIndex v, std::int32_t amount) {
  std::int32_t& n = var_viol_[idx(v)];
  const bool was = n > 0;
  n += amount;
  assert(n >= 0);
  const bool now = n > 0;
  if (was == now) return;
  if (now) {
    violated_pos_[idx(v)] = static_cast<std::int32_t>(violated_.size());
    violated_.push_back(v);
  } else {
    const auto pos = static_cast<std::size_t>(violated_pos_[idx(v)]);
    const VarIndex last = violated_.back();
    violated_[pos] = last;
    violated_pos_[idx(last)] = static_cast<std::int32_t>(pos);
    violated_.pop_back();
    violated_pos_[idx(v)] = -1;
  }
}

// Called after delays_[v] already moved into the window of `constraint`.
void ViolationEngine::enter(std::int32_t constraint, VarIndex v) {
  const auto k = static_cast<std::size_t>(constraint);
  const PostedConstraint& pc = model_->posted[k];
  const std::int32_t before = counts_[k]++;
  if (before < pc.residual_cap) return;
  ++total_violations_;
  if (before == pc.residual_cap) {
    for (const Candidate& cand : model_->list_of(pc).flights)
      if (holds(pc, cand)) bump_var(cand.var, +1);
  } else {
    bump_var(v, +1);
  }
}

// Called after delays_[v] already moved out of the window of `constraint`.
void ViolationEngine::leave(std::int32_t constraint, VarIndex v) {
  const auto k = static_cast<std::size_t>(constraint);
  const PostedConstraint& pc = model_->posted[k];
  const std::int32_t before = counts_[k]--;
  if (before <= pc.residual_cap) return;
  --total_violations_;
  bump_var(v, -1);
  if (before == pc.residual_cap + 1) {
    for (const Candidate& cand : model_->list_of(pc).flights)
      if (holds(pc, cand)) bump_var(cand.var, -1);
  }
}

void ViolationEngine::commit(VarIndex v, Minute d) {
  const Minute cur = delays_[idx(v)];
  if (cur == d) return;
  delays_[idx(v)] = d;
  total_delay_ += d - cur;
  const ScenarioParams& p = model_->params;
  for (const Touch& t : model_->touches_of(v)) {
    const WindowRange from = p.windows_containing(t.entry + cur);
    const WindowRange to = p.windows_containing(t.entry + d);
    for (int r = from.first; r <= from.last; ++r) {
      if (to.contains(r)) continue;
      const std::int32_t k = model_->constraint_at(t.slot, r);
      if (k >= 0) leave(k, v);
    }
    for (int r = to.first; r <= to.last; ++r) {
      if (from.contains(r)) continue;
      const std::int32_t k = model_->constraint_at(t.slot, r);
      if (k >= 0) enter(k, v);
    }
  }
}

std::int64_t ViolationEngine::objective(const ObjectiveWeights& weights) const {
  std::int64_t value =
      weights.delay * total_delay_ + weights.violation * total_violations_;
  if (weights.balance != 0) {
    const auto demands =
        demand_matrix(*model_, model_->relevant_cells, delays_);
    value += weights.balance *
             std::llround(ObjectiveWeights::kBalanceScale * demand_stddev(demands));
  }
  return value;
}

}  // namespace groundhold
