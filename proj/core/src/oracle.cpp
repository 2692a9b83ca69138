#include "groundhold/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace groundhold {

namespace {

struct Frame {
  Minute s, w, t, g;
  int windows;
  Minute lo(int r) const { return s - w + r * t; }
  Minute hi(int r) const { return s + r * t; }
};

Frame frame_of(const ScenarioParams& p) {
  return {p.start, p.window, p.step, p.max_hold, (p.end - p.start) / p.step + 1};
}

bool holdable(const ScenarioParams& p, const Flight& f) {
  return f.departure > p.now && f.departure <= p.end &&
         f.arrival >= p.start - p.window;
}

// Demand grid over every cell of the instance, [cell * windows + r].
class DemandGrid {
 public:
  DemandGrid(const Instance& instance, const Frame& frame)
      : instance_(&instance),
        frame_(frame),
        demand_(instance.cells().size() * static_cast<std::size_t>(frame.windows), 0) {}

  // Adds (sign = +1) or removes (-1) the entries of flight f delayed by d.
  // Returns the change in the number of over-capacity (cell, window) pairs.
  int apply(const Flight& f, Minute d, int sign) {
    int change = 0;
    for (const CellEntry& e : f.entries) {
      const Minute tau = e.time + d;
      for (int r = 0; r < frame_.windows; ++r) {
        if (tau < frame_.lo(r) || tau >= frame_.hi(r)) continue;
        std::int32_t& n = at(e.cell, r);
        const std::int32_t cap = instance_->capacity(e.cell);
        const bool before = n > cap;
        n += sign;
        const bool after = n > cap;
        change += static_cast<int>(after) - static_cast<int>(before);
      }
    }
    return change;
  }

  std::int32_t& at(CellIndex c, int r) {
    return demand_[static_cast<std::size_t>(c) * static_cast<std::size_t>(frame_.windows) +
                   static_cast<std::size_t>(r)];
  }

 private:
  const Instance* instance_;
  Frame frame_;
  std::vector<std::int32_t> demand_;
};

}  // namespace

CheckResult check_full(const Instance& instance, const Assignment& assignment) {
  const ScenarioParams& p = instance.params();
  if (assignment.delay.size() != instance.flights().size())
    throw std::invalid_argument("assignment size does not match the flight count");
  const Frame frame = frame_of(p);
  DemandGrid grid(instance, frame);
  for (std::size_t i = 0; i < instance.flights().size(); ++i) {
    const Flight& f = instance.flights()[i];
    const Minute d = assignment.delay[i];
    if (d < 0 || d > p.max_hold)
      throw std::invalid_argument("flight '" + f.id + "': delay outside [0, g]");
    if (d != 0 && !holdable(p, f))
      throw std::invalid_argument("flight '" + f.id + "' cannot be ground-held");
    grid.apply(f, d, +1);
  }

  CheckResult out;
  for (int r = 0; r < frame.windows; ++r) {
    for (std::size_t c = 0; c < instance.cells().size(); ++c) {
      const auto cell = static_cast<CellIndex>(c);
      const std::int32_t demand = grid.at(cell, r);
      const std::int32_t cap = instance.capacity(cell);
      if (demand > cap) {
        out.violated.push_back({r, cell, demand, cap});
        out.total_overflow += demand - cap;
      }
    }
  }
  out.ok = out.violated.empty();
  return out;
}

namespace {

class Enumerator {
 public:
  Enumerator(const Instance& instance, std::vector<FlightIndex> active)
      : instance_(instance),
        frame_(frame_of(instance.params())),
        grid_(instance, frame_),
        active_(std::move(active)),
        current_(Assignment::zeros(instance)) {}

  OracleResult run() {
    // Flights whose delay cannot matter stay at zero and form the base load.
    std::vector<char> is_active(instance_.flights().size(), 0);
    for (FlightIndex f : active_) is_active[static_cast<std::size_t>(f)] = 1;
    for (std::size_t i = 0; i < instance_.flights().size(); ++i)
      if (!is_active[i]) over_ += grid_.apply(instance_.flights()[i], 0, +1);
    if (over_ == 0) descend(0, 0);
    result_.feasible = best_.has_value();
    if (best_) result_.min_total_delay = *best_;
    return result_;
  }

 private:
  void descend(std::size_t depth, std::int64_t partial) {
    ++result_.visited;
    if (depth == active_.size()) {
      best_ = partial;
      result_.witness = current_;
      return;
    }
    const FlightIndex fi = active_[depth];
    const Flight& f = instance_.flights()[static_cast<std::size_t>(fi)];
    for (Minute d = 0; d <= frame_.g; ++d) {
      if (best_ && partial + d >= *best_) break;
      const int change = grid_.apply(f, d, +1);
      over_ += change;
      // Demands only grow as more flights are placed.
      if (over_ == 0) {
        current_.delay[static_cast<std::size_t>(fi)] = d;
        descend(depth + 1, partial + d);
        current_.delay[static_cast<std::size_t>(fi)] = 0;
      }
      over_ += grid_.apply(f, d, -1);
    }
  }

  const Instance& instance_;
  Frame frame_;
  DemandGrid grid_;
  std::vector<FlightIndex> active_;
  Assignment current_;
  int over_ = 0;
  std::optional<std::int64_t> best_;
  OracleResult result_;
};

}  // namespace

OracleResult brute_force_min_delay(const Instance& instance, double limit) {
  const ScenarioParams& p = instance.params();
  const Frame frame = frame_of(p);
  const Minute first = frame.lo(0) - p.max_hold;
  const Minute last = frame.hi(frame.windows - 1);

  std::vector<FlightIndex> active;
  for (std::size_t i = 0; i < instance.flights().size(); ++i) {
    const Flight& f = instance.flights()[i];
    if (!holdable(p, f)) continue;
    const bool reaches = std::any_of(f.entries.begin(), f.entries.end(),
                                     [&](const CellEntry& e) {
                                       return e.time >= first && e.time < last;
                                     });
    if (reaches) active.push_back(static_cast<FlightIndex>(i));
  }

  const double space =
      std::pow(static_cast<double>(p.max_hold) + 1.0, static_cast<double>(active.size()));
  if (space > limit)
    throw OracleLimitError("oracle enumeration space " + std::to_string(space) +
                           " exceeds limit " + std::to_string(limit));

  OracleResult result = Enumerator(instance, std::move(active)).run();
  if (!result.feasible) result.witness = {};
  return result;
}

}  // namespace groundhold
