#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace groundhold {

/// Integer minutes since midnight of the traffic day. Multi-day plans use
/// values above 1440.
using Minute = std::int32_t;

/// Index of a cell inside Instance::cells.
using CellIndex = std::int32_t;

/// Index of a flight inside Instance::flights.
using FlightIndex = std::int32_t;

/// Raised for malformed instance documents and for invariant violations.
/// The message names the offending field or flight.
class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Right-open interval [lo, hi).
struct Window {
  Minute lo = 0;
  Minute hi = 0;

  bool contains(Minute tau) const { return lo <= tau && tau < hi; }
  Minute length() const { return hi - lo; }
  friend bool operator==(const Window&, const Window&) = default;
};

/// Inclusive range of window indices; empty when first > last.
struct WindowRange {
  int first = 0;
  int last = -1;

  bool empty() const { return first > last; }
  int size() const { return empty() ? 0 : last - first + 1; }
  bool contains(int r) const { return first <= r && r <= last; }
  friend bool operator==(const WindowRange&, const WindowRange&) = default;
};

/// Time frame of one re-planning run.
struct ScenarioParams {
  Minute now = 0;          // moment the re-planning is launched
  Minute start = 0;        // s: start of the re-planning interval
  Minute end = 0;          // e: end of the re-planning interval
  Minute window = 60;      // w: sliding window length
  Minute step = 12;        // t: step between consecutive windows
  Minute max_hold = 120;   // g: maximum ground holding per flight
  std::int32_t cap = 40;   // default per-cell capacity (entries per window)

  /// Throws InstanceError when the parameters are inconsistent.
  void validate() const;

  /// Number of time steps m = (e - s) / t. There are m + 1 windows.
  int window_count() const { return (end - start) / step; }
  int num_windows() const { return window_count() + 1; }

  /// S_r = [s - w + r*t, s + r*t). Throws std::out_of_range unless
  /// 0 <= r <= m.
  Window window_bounds(int r) const;

  /// All r in [0, m] whose window contains tau.
  WindowRange windows_containing(Minute tau) const;

  /// Earliest minute that can ever matter to a window under ground holding.
  Minute horizon_lo() const { return start - window - max_hold; }

  friend bool operator==(const ScenarioParams&, const ScenarioParams&) = default;
};

struct CellEntry {
  CellIndex cell = 0;
  Minute time = 0;
  friend bool operator==(const CellEntry&, const CellEntry&) = default;
};

struct Flight {
  std::string id;
  Minute departure = 0;
  Minute arrival = 0;
  std::vector<CellEntry> entries;  // sorted by time, one per cell

  friend bool operator==(const Flight&, const Flight&) = default;
};

struct Cell {
  std::string id;
  std::optional<std::int32_t> cap;  // overrides ScenarioParams::cap

  friend bool operator==(const Cell&, const Cell&) = default;
};

class Instance {
 public:
  Instance() = default;

  /// Validates all invariants and builds the id lookup tables.
  Instance(ScenarioParams params, std::vector<Cell> cells,
           std::vector<Flight> flights);

  const ScenarioParams& params() const { return params_; }
  const std::vector<Cell>& cells() const { return cells_; }
  const std::vector<Flight>& flights() const { return flights_; }

  std::int32_t capacity(CellIndex c) const {
    return cells_[static_cast<std::size_t>(c)].cap.value_or(params_.cap);
  }

  std::optional<CellIndex> find_cell(std::string_view id) const;
  std::optional<FlightIndex> find_flight(std::string_view id) const;

  /// Same traffic under different scenario parameters (CLI overrides).
  Instance with_params(const ScenarioParams& params) const;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.params_ == b.params_ && a.cells_ == b.cells_ &&
           a.flights_ == b.flights_;
  }

 private:
  ScenarioParams params_;
  std::vector<Cell> cells_;
  std::vector<Flight> flights_;
  std::unordered_map<std::string, CellIndex> cell_index_;
  std::unordered_map<std::string, FlightIndex> flight_index_;
};

/// Floor division for possibly negative numerators; divisor must be > 0.
constexpr Minute floor_div(Minute num, Minute den) {
  Minute q = num / den;
  if ((num % den != 0) && (num < 0)) --q;
  return q;
}

/// Parses the JSON instance document. Throws InstanceError.
Instance parse_instance(std::string_view text);

/// Compact, deterministic JSON rendering; parse_instance round-trips it.
std::string serialize_instance(const Instance& instance);

Instance load_instance(const std::string& path);
void save_instance(const Instance& instance, const std::string& path);

}  // namespace groundhold
