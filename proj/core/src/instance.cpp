#include "groundhold/instance.hpp"

#include <algorithm>
#include <unordered_set>
#include <utility>

#include <nlohmann/json.hpp>

#include "groundhold/io.hpp"

namespace groundhold {

using nlohmann::json;

void ScenarioParams::validate() const {
  if (now < 0) throw InstanceError("params.now must be non-negative");
  if (!(now < start))
    throw InstanceError("params: now (" + std::to_string(now) +
                        ") must precede s (" + std::to_string(start) + ")");
  if (end < start)
    throw InstanceError("params: e (" + std::to_string(end) +
                        ") must not precede s (" + std::to_string(start) + ")");
  if (window <= 0) throw InstanceError("params.w must be positive");
  if (step <= 0) throw InstanceError("params.t must be positive");
  if ((end - start) % step != 0)
    throw InstanceError("params.t (" + std::to_string(step) +
                        ") does not divide e - s (" +
                        std::to_string(end - start) + ")");
  if (max_hold < 0) throw InstanceError("params.g must be non-negative");
  if (cap < 0) throw InstanceError("params.cap must be non-negative");
}

Window ScenarioParams::window_bounds(int r) const {
  if (r < 0 || r > window_count())
    throw std::out_of_range("window index " + std::to_string(r) +
                            " outside [0, " + std::to_string(window_count()) +
                            "]");
  return {start - window + r * step, start + r * step};
}

WindowRange ScenarioParams::windows_containing(Minute tau) const {
  const int first = std::max(0, floor_div(tau - start, step) + 1);
  const int last = std::min(window_count(), floor_div(tau - start + window, step));
  return {first, last};
}

Instance::Instance(ScenarioParams params, std::vector<Cell> cells,
                   std::vector<Flight> flights)
    : params_(params), cells_(std::move(cells)), flights_(std::move(flights)) {
  params_.validate();

  cell_index_.reserve(cells_.size());
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    const Cell& c = cells_[i];
    if (c.cap && *c.cap < 0)
      throw InstanceError("cell '" + c.id + "': cap must be non-negative");
    if (!cell_index_.emplace(c.id, static_cast<CellIndex>(i)).second)
      throw InstanceError("duplicate cell id '" + c.id + "'");
  }

  flight_index_.reserve(flights_.size());
  std::vector<char> seen(cells_.size(), 0);
  for (std::size_t i = 0; i < flights_.size(); ++i) {
    const Flight& f = flights_[i];
    if (!flight_index_.emplace(f.id, static_cast<FlightIndex>(i)).second)
      throw InstanceError("duplicate flight id '" + f.id + "'");
    if (f.departure < 0)
      throw InstanceError("flight '" + f.id + "': negative departure time");
    if (f.departure > f.arrival)
      throw InstanceError("flight '" + f.id + "': departure after arrival");

    Minute prev = f.departure;
    for (const CellEntry& e : f.entries) {
      if (e.cell < 0 || static_cast<std::size_t>(e.cell) >= cells_.size())
        throw InstanceError("flight '" + f.id + "': unknown cell index");
      if (e.time < prev)
        throw InstanceError("flight '" + f.id +
                            "': entries not sorted by time or before departure");
      if (e.time > f.arrival)
        throw InstanceError("flight '" + f.id + "': entry after arrival");
      if (seen[static_cast<std::size_t>(e.cell)])
        throw InstanceError("flight '" + f.id + "' re-enters cell '" +
                            cells_[static_cast<std::size_t>(e.cell)].id + "'");
      seen[static_cast<std::size_t>(e.cell)] = 1;
      prev = e.time;
    }
    for (const CellEntry& e : f.entries) seen[static_cast<std::size_t>(e.cell)] = 0;
  }
}

std::optional<CellIndex> Instance::find_cell(std::string_view id) const {
  auto it = cell_index_.find(std::string(id));
  if (it == cell_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<FlightIndex> Instance::find_flight(std::string_view id) const {
  auto it = flight_index_.find(std::string(id));
  if (it == flight_index_.end()) return std::nullopt;
  return it->second;
}

Instance Instance::with_params(const ScenarioParams& params) const {
  params.validate();
  Instance copy = *this;
  copy.params_ = params;
  return copy;
}

namespace {

template <typename T>
T field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw InstanceError(where + ": missing field '" + key + "'");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw InstanceError(where + ": field '" + key + "' has the wrong type");
  }
}

Minute minute_field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw InstanceError(where + ": missing field '" + key + "'");
  if (!it->is_number_integer())
    throw InstanceError(where + ": field '" + key + "' must be an integer");
  return it->get<Minute>();
}

}  // namespace

Instance parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InstanceError("syntax error at byte " + std::to_string(e.byte) +
                        ": " + e.what());
  }
  if (!doc.is_object()) throw InstanceError("document root must be an object");

  const json& p = doc.contains("params") ? doc.at("params") : json();
  if (!p.is_object()) throw InstanceError("missing object 'params'");
  ScenarioParams params;
  params.now = minute_field(p, "now", "params");
  params.start = minute_field(p, "s", "params");
  params.end = minute_field(p, "e", "params");
  params.window = minute_field(p, "w", "params");
  params.step = minute_field(p, "t", "params");
  params.max_hold = minute_field(p, "g", "params");
  params.cap = minute_field(p, "cap", "params");

  if (!doc.contains("cells") || !doc.at("cells").is_array())
    throw InstanceError("missing array 'cells'");
  std::vector<Cell> cells;
  std::unordered_map<std::string, CellIndex> lookup;
  for (const json& c : doc.at("cells")) {
    if (!c.is_object()) throw InstanceError("cells: entries must be objects");
    Cell cell;
    cell.id = field<std::string>(c, "id", "cells");
    if (auto it = c.find("cap"); it != c.end() && !it->is_null()) {
      if (!it->is_number_integer())
        throw InstanceError("cell '" + cell.id + "': cap must be an integer");
      cell.cap = it->get<std::int32_t>();
    }
    lookup.emplace(cell.id, static_cast<CellIndex>(cells.size()));
    cells.push_back(std::move(cell));
  }

  if (!doc.contains("flights") || !doc.at("flights").is_array())
    throw InstanceError("missing array 'flights'");
  std::vector<Flight> flights;
  flights.reserve(doc.at("flights").size());
  for (const json& f : doc.at("flights")) {
    if (!f.is_object()) throw InstanceError("flights: entries must be objects");
    Flight flight;
    flight.id = field<std::string>(f, "id", "flights");
    const std::string where = "flight '" + flight.id + "'";
    flight.departure = minute_field(f, "dep", where);
    flight.arrival = minute_field(f, "arr", where);
    if (!f.contains("entries") || !f.at("entries").is_array())
      throw InstanceError(where + ": missing array 'entries'");
    for (const json& e : f.at("entries")) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
          !e[1].is_string())
        throw InstanceError(where + ": entries must be [time, cell_id] pairs");
      const auto cell_id = e[1].get<std::string>();
      auto it = lookup.find(cell_id);
      if (it == lookup.end())
        throw InstanceError(where + ": unknown cell id '" + cell_id + "'");
      flight.entries.push_back({it->second, e[0].get<Minute>()});
    }
    flights.push_back(std::move(flight));
  }

  return Instance(params, std::move(cells), std::move(flights));
}

std::string serialize_instance(const Instance& instance) {
  const ScenarioParams& p = instance.params();
  json doc;
  doc["params"] = {{"now", p.now}, {"s", p.start}, {"e", p.end},
                   {"w", p.window}, {"t", p.step}, {"g", p.max_hold},
                   {"cap", p.cap}};
  json cells = json::array();
  for (const Cell& c : instance.cells()) {
    json cell = {{"id", c.id}};
    if (c.cap) cell["cap"] = *c.cap;
    cells.push_back(std::move(cell));
  }
  doc["cells"] = std::move(cells);
  json flights = json::array();
  for (const Flight& f : instance.flights()) {
    json entries = json::array();
    for (const CellEntry& e : f.entries)
      entries.push_back({e.time, instance.cells()[static_cast<std::size_t>(e.cell)].id});
    flights.push_back({{"id", f.id},
                       {"dep", f.departure},
                       {"arr", f.arrival},
                       {"entries", std::move(entries)}});
  }
  doc["flights"] = std::move(flights);
  return doc.dump() + "\n";
}

Instance load_instance(const std::string& path) {
  return parse_instance(read_file(path));
}

void save_instance(const Instance& instance, const std::string& path) {
  write_file_atomic(path, serialize_instance(instance));
}

}  // namespace groundhold
