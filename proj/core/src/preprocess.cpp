#include "groundhold/preprocess.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace groundhold {

namespace {

std::size_t list_index(CellIndex c, int r, int windows) {
  return static_cast<std::size_t>(c) * static_cast<std::size_t>(windows) +
         static_cast<std::size_t>(r);
}

// Windows r whose candidate range [s - w - g + r*t, s + r*t) holds `entry`.
WindowRange candidate_windows(const ScenarioParams& p, Minute entry) {
  const int first = std::max(0, floor_div(entry - p.start, p.step) + 1);
  const int last = std::min(
      p.window_count(), floor_div(entry - p.start + p.window + p.max_hold, p.step));
  return {first, last};
}

}  // namespace

double PreprocessedModel::pruning_ratio() const {
  if (unpruned_count == 0) return 0.0;
  const auto kept = static_cast<std::int64_t>(posted.size()) - airborne_overloads;
  return 1.0 - static_cast<double>(kept) / static_cast<double>(unpruned_count);
}

FlightClassification classify_flights(const Instance& instance) {
  const ScenarioParams& p = instance.params();
  FlightClassification out;
  const auto& flights = instance.flights();
  for (std::size_t i = 0; i < flights.size(); ++i) {
    const Flight& f = flights[i];
    if (f.departure > p.end || f.arrival < p.start - p.window) continue;
    const auto idx = static_cast<FlightIndex>(i);
    out.relevant.push_back(idx);
    (f.departure <= p.now ? out.airborne : out.waiting).push_back(idx);
  }
  return out;
}

CandidateSets build_candidates(const Instance& instance,
                               const FlightClassification& classification) {
  const ScenarioParams& p = instance.params();
  const int windows = p.num_windows();
  CandidateSets out;
  out.lists.resize(instance.cells().size() * static_cast<std::size_t>(windows));
  for (std::size_t c = 0; c < instance.cells().size(); ++c)
    for (int r = 0; r < windows; ++r) {
      auto& list = out.lists[list_index(static_cast<CellIndex>(c), r, windows)];
      list.window = r;
      list.cell = static_cast<CellIndex>(c);
    }

  const auto& waiting = classification.waiting;
  for (std::size_t v = 0; v < waiting.size(); ++v) {
    const Flight& f = instance.flights()[static_cast<std::size_t>(waiting[v])];
    for (const CellEntry& e : f.entries) {
      const WindowRange range = candidate_windows(p, e.time);
      for (int r = range.first; r <= range.last; ++r)
        out.lists[list_index(e.cell, r, windows)].flights.push_back(
            {static_cast<VarIndex>(v), e.time});
    }
  }

  std::vector<char> relevant(instance.cells().size(), 0);
  for (auto& list : out.lists) {
    if (list.flights.empty()) continue;
    std::sort(list.flights.begin(), list.flights.end(),
              [](const Candidate& a, const Candidate& b) {
                return a.entry != b.entry ? a.entry < b.entry : a.var < b.var;
              });
    relevant[static_cast<std::size_t>(list.cell)] = 1;
  }
  for (std::size_t c = 0; c < relevant.size(); ++c)
    if (relevant[c]) out.relevant_cells.push_back(static_cast<CellIndex>(c));
  return out;
}

KnownDemand known_demand(const Instance& instance,
                         const FlightClassification& classification) {
  const ScenarioParams& p = instance.params();
  KnownDemand known(p.num_windows(), instance.cells().size());
  for (FlightIndex fi : classification.airborne) {
    for (const CellEntry& e : instance.flights()[static_cast<std::size_t>(fi)].entries) {
      const WindowRange range = p.windows_containing(e.time);
      for (int r = range.first; r <= range.last; ++r) ++known(r, e.cell);
    }
  }
  return known;
}

std::vector<PostedConstraint> post_constraints(
    const Instance& instance, const std::vector<CandidateList>& lists,
    const KnownDemand& known) {
  const ScenarioParams& p = instance.params();
  const int windows = p.num_windows();
  std::vector<PostedConstraint> posted;
  for (std::size_t c = 0; c < instance.cells().size(); ++c) {
    const auto cell = static_cast<CellIndex>(c);
    const std::int32_t cap = instance.capacity(cell);
    for (int r = 0; r < windows; ++r) {
      const std::size_t li = list_index(cell, r, windows);
      const auto size = static_cast<std::int64_t>(lists[li].flights.size());
      if (known(r, cell) + size <= cap) continue;
      posted.push_back({r, cell, p.window_bounds(r), cap - known(r, cell),
                        static_cast<std::int32_t>(li)});
    }
  }
  return posted;
}

PreprocessedModel preprocess(const Instance& instance) {
  PreprocessedModel model;
  model.params = instance.params();
  model.classification = classify_flights(instance);
  CandidateSets sets = build_candidates(instance, model.classification);
  model.relevant_cells = std::move(sets.relevant_cells);
  model.candidates = std::move(sets.lists);
  model.known = known_demand(instance, model.classification);
  model.posted = post_constraints(instance, model.candidates, model.known);

  const int windows = model.num_windows();
  model.unpruned_count =
      static_cast<std::int64_t>(windows) *
      static_cast<std::int64_t>(model.relevant_cells.size());

  std::vector<std::int32_t> slot_of(instance.cells().size(), -1);
  for (std::size_t k = 0; k < model.posted.size(); ++k) {
    const PostedConstraint& pc = model.posted[k];
    if (model.list_of(pc).flights.empty()) ++model.airborne_overloads;
    auto& slot = slot_of[static_cast<std::size_t>(pc.cell)];
    if (slot < 0) {
      slot = static_cast<std::int32_t>(model.slot_cells.size());
      model.slot_cells.push_back(pc.cell);
      model.constraint_of.resize(model.constraint_of.size() +
                                     static_cast<std::size_t>(windows), -1);
    }
    model.constraint_of[static_cast<std::size_t>(slot) * static_cast<std::size_t>(windows) +
                        static_cast<std::size_t>(pc.window)] =
        static_cast<std::int32_t>(k);
  }

  const ScenarioParams& p = model.params;
  const auto& waiting = model.classification.waiting;
  model.touch_offsets.reserve(waiting.size() + 1);
  model.touch_offsets.push_back(0);
  for (FlightIndex fi : waiting) {
    for (const CellEntry& e : instance.flights()[static_cast<std::size_t>(fi)].entries) {
      const std::int32_t slot = slot_of[static_cast<std::size_t>(e.cell)];
      if (slot < 0 || candidate_windows(p, e.time).empty()) continue;
      model.touches.push_back({e.time, slot});
    }
    model.touch_offsets.push_back(static_cast<std::int32_t>(model.touches.size()));
  }
  return model;
}

std::vector<std::int32_t> demand_matrix(const PreprocessedModel& model,
                                        std::span<const CellIndex> cells,
                                        std::span<const Minute> delays) {
  const int windows = model.num_windows();
  std::vector<std::int32_t> out(cells.size() * static_cast<std::size_t>(windows), 0);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (int r = 0; r < windows; ++r) {
      const Window bounds = model.params.window_bounds(r);
      std::int32_t count = model.known(r, cells[i]);
      for (const Candidate& cand : model.candidates_at(r, cells[i]).flights)
        if (bounds.contains(cand.entry + delays[static_cast<std::size_t>(cand.var)]))
          ++count;
      out[i * static_cast<std::size_t>(windows) + static_cast<std::size_t>(r)] = count;
    }
  }
  return out;
}

std::string model_summary_json(const PreprocessedModel& model) {
  nlohmann::ordered_json j;
  j["relevant_flights"] = model.classification.relevant.size();
  j["relevant_airborne_flights"] = model.classification.airborne.size();
  j["relevant_waiting_flights"] = model.classification.waiting.size();
  j["relevant_cells"] = model.relevant_cells.size();
  j["windows"] = model.num_windows();
  j["unpruned_constraints"] = model.unpruned_count;
  j["posted_constraints"] = model.posted.size();
  j["airborne_overloads"] = model.airborne_overloads;
  j["pruning_ratio"] = model.pruning_ratio();
  return j.dump(2) + "\n";
}

}  // namespace groundhold
