#include "groundhold/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace groundhold {

void GenConfig::validate() const {
  if (nx < 1 || ny < 1 || layers < 1) throw GeneratorError("grid dimensions must be positive");
  if (flights_per_day < 0) throw GeneratorError("flight rate must be non-negative");
  if (span_end < span_start) throw GeneratorError("departure span is inverted");
  if (span_start < 0) throw GeneratorError("departure span must start at a non-negative minute");
  if (airports < 2 || airports > nx * ny)
    throw GeneratorError("airport count must be in [2, nx * ny]");
  if (base_weight < 0) throw GeneratorError("base weight must be non-negative");
  for (const TrafficPeak& p : peaks)
    if (p.intensity < 0 || p.spread <= 0) throw GeneratorError("invalid traffic peak");
  if (route_decay < 0) throw GeneratorError("route decay must be non-negative");
  if (dwell_mean < 1.0 || dwell_jitter < 0.0) throw GeneratorError("invalid dwell time");
  try {
    params.validate();
  } catch (const InstanceError& e) {
    throw GeneratorError(e.what());
  }
}

int GenConfig::flight_count() const {
  return static_cast<int>(std::lround(flights_per_day *
                                      static_cast<double>(span_end - span_start) / 1440.0));
}

namespace {

struct Column {
  int x = 0;
  int y = 0;
};

class RouteBuilder {
 public:
  explicit RouteBuilder(const GenConfig& c) : c_(c) {}

  CellIndex cell(int x, int y, int layer) const {
    return static_cast<CellIndex>((layer * c_.ny + y) * c_.nx + x);
  }

  std::vector<CellIndex> route(Column from, Column to, int cruise, std::mt19937_64& rng) const {
    std::vector<CellIndex> cells;
    for (int l = 0; l < cruise; ++l) cells.push_back(cell(from.x, from.y, l));
    int x = from.x;
    int y = from.y;
    cells.push_back(cell(x, y, cruise));
    const int sx = to.x > x ? 1 : -1;
    const int sy = to.y > y ? 1 : -1;
    int rx = std::abs(to.x - x);
    int ry = std::abs(to.y - y);
    while (rx + ry > 0) {
      std::uniform_int_distribution<int> pick(1, rx + ry);
      if (pick(rng) <= rx) {
        x += sx;
        --rx;
      } else {
        y += sy;
        --ry;
      }
      cells.push_back(cell(x, y, cruise));
    }
    for (int l = cruise - 1; l >= 0; --l) cells.push_back(cell(to.x, to.y, l));
    return cells;
  }

 private:
  const GenConfig& c_;
};

std::string cell_name(int x, int y, int layer) {
  return "L" + std::to_string(layer) + "X" + std::to_string(x) + "Y" + std::to_string(y);
}

std::string flight_name(std::size_t i, std::size_t width) {
  std::string digits = std::to_string(i);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return "F" + digits;
}

}  // namespace

Instance generate(const GenConfig& config) {
  config.validate();
  std::mt19937_64 rng(config.seed);

  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(config.nx * config.ny * config.layers));
  for (int l = 0; l < config.layers; ++l)
    for (int y = 0; y < config.ny; ++y)
      for (int x = 0; x < config.nx; ++x) cells.push_back({cell_name(x, y, l), std::nullopt});

  std::vector<int> columns(static_cast<std::size_t>(config.nx * config.ny));
  std::iota(columns.begin(), columns.end(), 0);
  std::shuffle(columns.begin(), columns.end(), rng);
  std::vector<Column> airports;
  std::vector<double> popularity;
  for (int a = 0; a < config.airports; ++a) {
    const int col = columns[static_cast<std::size_t>(a)];
    airports.push_back({col % config.nx, col / config.nx});
    popularity.push_back(1.0 / std::pow(static_cast<double>(a + 1), config.airport_skew));
  }
  std::discrete_distribution<int> pick_origin(popularity.begin(), popularity.end());
  std::vector<std::discrete_distribution<int>> pick_dest;
  pick_dest.reserve(airports.size());
  for (std::size_t o = 0; o < airports.size(); ++o) {
    std::vector<double> w(popularity);
    w[o] = 0.0;
    if (config.route_decay > 0)
      for (std::size_t q = 0; q < airports.size(); ++q) {
        const int dist = std::abs(airports[q].x - airports[o].x) +
                         std::abs(airports[q].y - airports[o].y);
        w[q] *= std::exp(-static_cast<double>(dist) / config.route_decay);
      }
    pick_dest.emplace_back(w.begin(), w.end());
  }

  std::vector<double> mix{config.base_weight};
  for (const TrafficPeak& p : config.peaks) mix.push_back(p.intensity);
  const bool any_weight = std::any_of(mix.begin(), mix.end(), [](double w) { return w > 0; });
  if (!any_weight) mix[0] = 1.0;
  std::discrete_distribution<int> pick_component(mix.begin(), mix.end());
  std::uniform_int_distribution<Minute> uniform_dep(config.span_start, config.span_end);
  std::normal_distribution<double> dwell(config.dwell_mean, config.dwell_jitter);
  std::uniform_int_distribution<int> pick_layer(config.layers > 1 ? 1 : 0,
                                                config.layers > 1 ? config.layers - 1 : 0);

  const RouteBuilder builder(config);
  const int count = config.flight_count();
  const std::size_t width = std::to_string(std::max(count, 1)).size();
  std::vector<Flight> flights;
  flights.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    Minute dep;
    const int component = pick_component(rng);
    if (component == 0) {
      dep = uniform_dep(rng);
    } else {
      const TrafficPeak& peak = config.peaks[static_cast<std::size_t>(component - 1)];
      std::normal_distribution<double> around(peak.center, peak.spread);
      dep = std::clamp(static_cast<Minute>(std::lround(around(rng))), config.span_start,
                       config.span_end);
    }
    const int origin = pick_origin(rng);
    const int dest = pick_dest[static_cast<std::size_t>(origin)](rng);

    Flight f;
    f.id = flight_name(static_cast<std::size_t>(i), width);
    f.departure = dep;
    Minute t = dep;
    const int cruise = pick_layer(rng);
    for (CellIndex c : builder.route(airports[static_cast<std::size_t>(origin)],
                                     airports[static_cast<std::size_t>(dest)], cruise, rng)) {
      f.entries.push_back({c, t});
      t += std::max<Minute>(1, static_cast<Minute>(std::lround(dwell(rng))));
    }
    f.arrival = t;
    flights.push_back(std::move(f));
  }
  return Instance(config.params, std::move(cells), std::move(flights));
}

Instance tiny(const TinyConfig& config) {
  if (config.waiting < 0 || config.waiting > 8)
    throw GeneratorError("tiny instances hold at most 8 waiting flights");
  if (config.airborne < 0 || config.airborne > 4)
    throw GeneratorError("tiny instances hold at most 4 airborne flights");
  if (config.cells < 1 || config.cells > 3)
    throw GeneratorError("tiny instances use 1 to 3 cells");
  if (config.max_hold < 0 || config.max_hold > 15)
    throw GeneratorError("tiny instances need g in [0, 15]");
  if (config.steps < 0 || config.steps > 4)
    throw GeneratorError("tiny instances use at most 4 time steps");
  const double space = std::pow(config.max_hold + 1.0, config.waiting);
  if (space > config.limit)
    throw GeneratorError("tiny instance exceeds the oracle enumeration bound");

  std::mt19937_64 rng(config.seed);
  ScenarioParams p;
  p.now = 0;
  p.start = 60;
  p.window = 10;
  p.step = 5;
  p.end = p.start + config.steps * p.step;
  p.max_hold = config.max_hold;
  p.cap = 2;

  std::vector<Cell> cells;
  std::uniform_int_distribution<std::int32_t> pick_cap(1, 2);
  for (int c = 0; c < config.cells; ++c)
    cells.push_back({"C" + std::to_string(c), pick_cap(rng)});

  const Minute first_lo = p.start - p.window - 3;
  const Minute first_hi = p.end - 1;
  std::uniform_int_distribution<Minute> first_entry(first_lo, first_hi);
  std::uniform_int_distribution<Minute> gap(1, 6);
  std::uniform_int_distribution<Minute> lead(0, 2);
  std::uniform_int_distribution<int> entry_count(1, config.cells);

  auto make_route = [&](Flight& f, Minute start) {
    std::vector<CellIndex> order(static_cast<std::size_t>(config.cells));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    order.resize(static_cast<std::size_t>(entry_count(rng)));
    Minute t = start;
    for (CellIndex c : order) {
      f.entries.push_back({c, t});
      t += gap(rng);
    }
    f.arrival = t;
  };

  std::vector<Flight> flights;
  for (int i = 0; i < config.waiting; ++i) {
    Flight f;
    f.id = "W" + std::to_string(i);
    const Minute start = first_entry(rng);
    f.departure = std::max<Minute>(1, start - lead(rng));
    make_route(f, start);
    f.arrival = std::max(f.arrival, p.start - p.window);
    flights.push_back(std::move(f));
  }
  for (int i = 0; i < config.airborne; ++i) {
    Flight f;
    f.id = "A" + std::to_string(i);
    f.departure = 0;
    make_route(f, first_entry(rng));
    flights.push_back(std::move(f));
  }
  return Instance(p, std::move(cells), std::move(flights));
}

Instance worked_example(Minute max_hold) {
  ScenarioParams p;
  p.now = 0;
  p.start = 100;
  p.end = 100;
  p.window = 60;
  p.step = 10;
  p.max_hold = max_hold;
  p.cap = 2;
  std::vector<Flight> flights;
  for (const auto& [id, entry] : {std::pair{"F1", 90}, {"F2", 95}, {"F3", 99}})
    flights.push_back({id, entry - 5, entry + 5, {{0, entry}}});
  return Instance(p, {{"C0", std::nullopt}}, std::move(flights));
}

Instance infeasible_example() {
  ScenarioParams p;
  p.now = 0;
  p.start = 100;
  p.end = 100;
  p.window = 60;
  p.step = 10;
  p.max_hold = 10;
  p.cap = 0;
  return Instance(p, {{"C0", std::nullopt}}, {{"F1", 45, 55, {{0, 50}}}});
}

GenConfig congested_ecac_config(std::uint64_t seed, Minute start) {
  GenConfig c;
  c.seed = seed;
  c.params.start = start;
  c.params.end = start + 60;
  c.params.now = start - 180;
  c.params.window = 60;
  c.params.step = 12;
  c.params.max_hold = 120;
  c.params.cap = 40;
  c.span_start = std::max<Minute>(0, start - 660);
  c.span_end = start + 60;
  c.peaks = {{start - 30, 45, 0.1}};
  c.airports = 400;
  c.airport_skew = 0.6;
  c.route_decay = 6.0;
  return c;
}

std::optional<Assignment> greedy_feasibility_probe(const Instance& instance) {
  const ScenarioParams& p = instance.params();
  const int windows = p.num_windows();
  std::vector<std::int32_t> demand(instance.cells().size() * static_cast<std::size_t>(windows), 0);
  auto slot = [&](CellIndex c, int r) -> std::int32_t& {
    return demand[static_cast<std::size_t>(c) * static_cast<std::size_t>(windows) +
                  static_cast<std::size_t>(r)];
  };
  auto fits = [&](const Flight& f, Minute d) {
    for (const CellEntry& e : f.entries) {
      const WindowRange range = p.windows_containing(e.time + d);
      for (int r = range.first; r <= range.last; ++r)
        if (slot(e.cell, r) + 1 > instance.capacity(e.cell)) return false;
    }
    return true;
  };
  auto place = [&](const Flight& f, Minute d) {
    for (const CellEntry& e : f.entries) {
      const WindowRange range = p.windows_containing(e.time + d);
      for (int r = range.first; r <= range.last; ++r) ++slot(e.cell, r);
    }
  };

  std::vector<FlightIndex> waiting;
  for (std::size_t i = 0; i < instance.flights().size(); ++i) {
    const Flight& f = instance.flights()[i];
    const bool holdable = f.departure > p.now && f.departure <= p.end &&
                          f.arrival >= p.start - p.window;
    if (holdable) {
      waiting.push_back(static_cast<FlightIndex>(i));
    } else {
      place(f, 0);
    }
  }
  for (std::size_t k = 0; k < demand.size(); ++k) {
    const auto c = static_cast<CellIndex>(k / static_cast<std::size_t>(windows));
    if (demand[k] > instance.capacity(c)) return std::nullopt;
  }

  std::stable_sort(waiting.begin(), waiting.end(), [&](FlightIndex a, FlightIndex b) {
    return instance.flights()[static_cast<std::size_t>(a)].departure <
           instance.flights()[static_cast<std::size_t>(b)].departure;
  });
  Assignment out = Assignment::zeros(instance);
  for (FlightIndex fi : waiting) {
    const Flight& f = instance.flights()[static_cast<std::size_t>(fi)];
    std::optional<Minute> chosen;
    for (Minute d = 0; d <= p.max_hold && !chosen; ++d)
      if (fits(f, d)) chosen = d;
    if (!chosen) return std::nullopt;
    place(f, *chosen);
    out.delay[static_cast<std::size_t>(fi)] = *chosen;
  }
  return out;
}

Instance preset(const std::string& name, std::uint64_t seed) {
  if (name == "tiny") {
    TinyConfig c;
    c.seed = seed;
    return tiny(c);
  }
  if (name == "congested-ecac") return generate(congested_ecac_config(seed));
  if (name == "infeasible") return infeasible_example();
  if (name == "worked-example") return worked_example();
  throw GeneratorError("unknown preset '" + name + "'");
}

}  // namespace groundhold
