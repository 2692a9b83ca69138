#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "groundhold/instance.hpp"

namespace groundhold {

/// RF, RAF and RWF as sorted flight indices.
struct FlightClassification {
  std::vector<FlightIndex> relevant;
  std::vector<FlightIndex> airborne;
  std::vector<FlightIndex> waiting;
};

/// Index of a waiting flight in FlightClassification::waiting; this is the
/// decision-variable index used by the engine and the search.
using VarIndex = std::int32_t;

struct Candidate {
  VarIndex var = 0;
  Minute entry = 0;  // planned (undelayed) entry time into the cell
  friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// Waiting flights able to enter `cell` during window `window` under some
/// delay in [0, g]; sorted by entry time.
struct CandidateList {
  int window = 0;
  CellIndex cell = 0;
  std::vector<Candidate> flights;
};

/// Capacity constraint surviving the pruning guard.
struct PostedConstraint {
  int window = 0;
  CellIndex cell = 0;
  Window bounds;
  std::int32_t residual_cap = 0;  // cap(c) - P[r,c]; may be negative
  std::int32_t list = 0;          // index into PreprocessedModel::candidates
};

/// Known demand P[r, c] of airborne flights, for every cell of the instance.
class KnownDemand {
 public:
  KnownDemand() = default;
  KnownDemand(int windows, std::size_t cells)
      : windows_(windows), counts_(static_cast<std::size_t>(windows) * cells, 0) {}

  std::int32_t operator()(int r, CellIndex c) const {
    return counts_[index(r, c)];
  }
  std::int32_t& operator()(int r, CellIndex c) { return counts_[index(r, c)]; }
  int windows() const { return windows_; }

  friend bool operator==(const KnownDemand&, const KnownDemand&) = default;

 private:
  std::size_t index(int r, CellIndex c) const {
    return static_cast<std::size_t>(c) * static_cast<std::size_t>(windows_) +
           static_cast<std::size_t>(r);
  }
  int windows_ = 0;
  std::vector<std::int32_t> counts_;
};

/// A planned entry of a waiting flight that can land in some posted window.
struct Touch {
  Minute entry = 0;
  std::int32_t slot = 0;  // index into PreprocessedModel::slot_cells
};

struct PreprocessedModel {
  ScenarioParams params;
  FlightClassification classification;

  /// RC, sorted.
  std::vector<CellIndex> relevant_cells;

  /// One list per (cell, window) of the instance, at index c * W + r. Lists
  /// are empty outside RC.
  std::vector<CandidateList> candidates;

  KnownDemand known;
  std::vector<PostedConstraint> posted;

  /// (m + 1) * |RC|, i.e. the number of constraints before pruning.
  std::int64_t unpruned_count = 0;

  /// Cells with a posted constraint; slot k covers windows
  /// constraint_of[k * W .. k * W + W) with -1 meaning "not posted".
  std::vector<CellIndex> slot_cells;
  std::vector<std::int32_t> constraint_of;

  /// Per-variable touches in CSR form.
  std::vector<std::int32_t> touch_offsets;
  std::vector<Touch> touches;

  /// Cells outside RC whose airborne demand alone exceeds capacity. These
  /// are still posted and make the model infeasible.
  std::int64_t airborne_overloads = 0;

  int num_windows() const { return params.num_windows(); }
  std::size_t num_vars() const { return classification.waiting.size(); }

  std::span<const Touch> touches_of(VarIndex v) const {
    const auto b = static_cast<std::size_t>(touch_offsets[static_cast<std::size_t>(v)]);
    const auto e = static_cast<std::size_t>(touch_offsets[static_cast<std::size_t>(v) + 1]);
    return std::span<const Touch>(touches).subspan(b, e - b);
  }

  std::int32_t constraint_at(std::int32_t slot, int r) const {
    return constraint_of[static_cast<std::size_t>(slot) *
                             static_cast<std::size_t>(num_windows()) +
                         static_cast<std::size_t>(r)];
  }

  const CandidateList& list_of(const PostedConstraint& pc) const {
    return candidates[static_cast<std::size_t>(pc.list)];
  }

  const CandidateList& candidates_at(int r, CellIndex c) const {
    return candidates[static_cast<std::size_t>(c) *
                          static_cast<std::size_t>(num_windows()) +
                      static_cast<std::size_t>(r)];
  }

  /// Fraction of the unpruned constraints that were not posted.
  double pruning_ratio() const;
};

FlightClassification classify_flights(const Instance& instance);

struct CandidateSets {
  std::vector<CellIndex> relevant_cells;
  std::vector<CandidateList> lists;  // index c * W + r over all cells
};

CandidateSets build_candidates(const Instance& instance,
                               const FlightClassification& classification);

KnownDemand known_demand(const Instance& instance,
                         const FlightClassification& classification);

/// Applies the guard P[r,c] + |candidates(r,c)| > cap(c) over every cell.
std::vector<PostedConstraint> post_constraints(
    const Instance& instance, const std::vector<CandidateList>& lists,
    const KnownDemand& known);

/// Runs the full pipeline and builds the engine's lookup tables.
PreprocessedModel preprocess(const Instance& instance);

/// Demand per (cell, window) under the given per-variable delays, for the
/// listed cells: P[r,c] plus delayed candidate entries inside S_r.
/// Result is indexed [cell_position * W + r].
std::vector<std::int32_t> demand_matrix(const PreprocessedModel& model,
                                        std::span<const CellIndex> cells,
                                        std::span<const Minute> delays);

/// Counts-only summary for debugging, as a JSON string.
std::string model_summary_json(const PreprocessedModel& model);

}  // namespace groundhold
