#include "groundhold/reporting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace groundhold {

using nlohmann::ordered_json;

DemandStats describe(std::span<const std::int32_t> demands) {
  DemandStats s;
  if (demands.empty()) return s;
  std::vector<std::int32_t> sorted(demands.begin(), demands.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  double sum = 0.0;
  for (std::int32_t d : sorted) sum += d;
  s.mean = sum / n;
  double sq = 0.0;
  for (std::int32_t d : sorted) sq += (d - s.mean) * (d - s.mean);
  s.variance = sq / n;
  s.stddev = std::sqrt(s.variance);
  s.min = sorted.front();
  s.max = sorted.back();
  s.median = sorted[(sorted.size() - 1) / 2];
  return s;
}

StatsPopulation parse_population(const std::string& name) {
  if (name == "relevant") return StatsPopulation::Relevant;
  if (name == "all") return StatsPopulation::All;
  throw std::invalid_argument("unknown statistics population '" + name + "'");
}

std::string to_string(StatsPopulation population) {
  return population == StatsPopulation::All ? "all" : "relevant";
}

std::vector<WindowStats> window_statistics(const PreprocessedModel& model,
                                           std::size_t cell_count,
                                           std::span<const Minute> before,
                                           std::span<const Minute> after,
                                           StatsPopulation population) {
  std::vector<CellIndex> cells;
  if (population == StatsPopulation::All) {
    cells.resize(cell_count);
    std::iota(cells.begin(), cells.end(), 0);
  } else {
    cells = model.relevant_cells;
  }
  const int windows = model.num_windows();
  const auto demand_before = demand_matrix(model, cells, before);
  const auto demand_after = demand_matrix(model, cells, after);

  std::vector<WindowStats> out;
  std::vector<std::int32_t> column(cells.size());
  for (int r = 0; r < windows; ++r) {
    WindowStats ws;
    ws.window = r;
    ws.bounds = model.params.window_bounds(r);
    for (std::size_t i = 0; i < cells.size(); ++i)
      column[i] = demand_before[i * static_cast<std::size_t>(windows) + static_cast<std::size_t>(r)];
    ws.before = describe(column);
    for (std::size_t i = 0; i < cells.size(); ++i)
      column[i] = demand_after[i * static_cast<std::size_t>(windows) + static_cast<std::size_t>(r)];
    ws.after = describe(column);
    out.push_back(ws);
  }
  return out;
}

double mean_relative_stddev_change(std::span<const WindowStats> stats) {
  double sum = 0.0;
  int n = 0;
  for (const WindowStats& ws : stats) {
    if (ws.before.stddev <= 0.0) continue;
    sum += (ws.after.stddev - ws.before.stddev) / ws.before.stddev;
    ++n;
  }
  return n == 0 ? 0.0 : sum / n;
}

std::int64_t DelayHistogram::total() const {
  return std::accumulate(buckets.begin(), buckets.end(), zero);
}

DelayHistogram delay_histogram(std::span<const Minute> delays, Minute max_hold,
                               Minute width) {
  if (width <= 0) throw std::invalid_argument("histogram bucket width must be positive");
  DelayHistogram h;
  h.width = width;
  h.buckets.assign(static_cast<std::size_t>((max_hold + width - 1) / width), 0);
  for (Minute d : delays) {
    if (d <= 0) {
      ++h.zero;
      continue;
    }
    const auto k = static_cast<std::size_t>((d - 1) / width);
    if (k >= h.buckets.size()) h.buckets.resize(k + 1, 0);
    ++h.buckets[k];
  }
  return h;
}

Assignment to_assignment(const Instance& instance, const PreprocessedModel& model,
                         std::span<const Minute> delays) {
  Assignment a = Assignment::zeros(instance);
  const auto& waiting = model.classification.waiting;
  for (std::size_t v = 0; v < waiting.size() && v < delays.size(); ++v)
    a.delay[static_cast<std::size_t>(waiting[v])] = delays[v];
  return a;
}

SolveReport build_report(const Instance& instance, const PreprocessedModel& model,
                         const SearchConfig& config, const SolveResult& result,
                         std::span<const Minute> final_delays,
                         StatsPopulation population, bool include_timing) {
  SolveReport rep;
  if (include_timing) rep.runtime_seconds = result.wall_seconds;
  rep.iterations = result.iterations;
  rep.feasible = result.feasible;
  rep.waiting_flights = model.classification.waiting.size();
  rep.airborne_flights = model.classification.airborne.size();
  rep.relevant_cells = model.relevant_cells.size();
  rep.posted_constraints = model.posted.size();
  rep.pruning_ratio = model.pruning_ratio();
  rep.initial_violations = result.initial_violations;
  rep.final_violations = result.feasible ? 0 : result.min_violations;
  rep.population = population;
  rep.params = model.params;
  rep.config = config;

  for (Minute d : final_delays) {
    rep.total_delay += d;
    if (d > 0) ++rep.delayed_flights;
  }
  rep.average_delay = rep.delayed_flights == 0
                          ? 0.0
                          : static_cast<double>(rep.total_delay) /
                                static_cast<double>(rep.delayed_flights);
  const std::size_t relevant = model.classification.relevant.size();
  rep.average_delay_relevant =
      relevant == 0 ? 0.0
                    : static_cast<double>(rep.total_delay) / static_cast<double>(relevant);

  rep.histogram = delay_histogram(final_delays, model.params.max_hold);
  const std::vector<Minute> zeros(final_delays.size(), 0);
  rep.windows = window_statistics(model, instance.cells().size(), zeros, final_delays,
                                  population);
  rep.demand_dev = mean_relative_stddev_change(rep.windows);

  const auto& waiting = model.classification.waiting;
  rep.delays.reserve(waiting.size());
  for (std::size_t v = 0; v < waiting.size(); ++v)
    rep.delays.emplace_back(instance.flights()[static_cast<std::size_t>(waiting[v])].id,
                            final_delays[v]);
  return rep;
}

namespace {

ordered_json stats_json(const DemandStats& s) {
  return ordered_json{{"mean", s.mean},     {"stddev", s.stddev}, {"variance", s.variance},
                      {"min", s.min},       {"median", s.median}, {"max", s.max}};
}

std::string clock_label(Minute m) {
  const Minute day = ((m % 1440) + 1440) % 1440;
  char buf[8];
  std::snprintf(buf, sizeof buf, "%02d:%02d", day / 60, day % 60);
  return buf;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

ordered_json to_json(const SolveReport& r) {
  ordered_json summary;
  if (r.runtime_seconds) summary["runtime_seconds"] = *r.runtime_seconds;
  summary["iterations"] = r.iterations;
  summary["feasible"] = r.feasible;
  summary["relevant_waiting_flights"] = r.waiting_flights;
  summary["relevant_airborne_flights"] = r.airborne_flights;
  summary["relevant_cells"] = r.relevant_cells;
  summary["posted_constraints"] = r.posted_constraints;
  summary["pruning_ratio"] = r.pruning_ratio;
  summary["initial_violations"] = r.initial_violations;
  summary["final_violations"] = r.final_violations;
  summary["total_delay"] = r.total_delay;
  summary["delayed_flights"] = r.delayed_flights;
  summary["average_delay"] = r.average_delay;
  summary["average_delay_relevant"] = r.average_delay_relevant;
  summary["demand_dev"] = r.demand_dev;
  summary["stats_population"] = to_string(r.population);

  const ScenarioParams& p = r.params;
  ordered_json params{{"now", p.now}, {"s", p.start},      {"e", p.end},  {"w", p.window},
                      {"t", p.step},  {"g", p.max_hold},   {"cap", p.cap}};

  const SearchConfig& c = r.config;
  ordered_json config{{"max_iter", c.max_iter},
                      {"seed", c.rng_seed},
                      {"state1_ratio", c.state1_ratio},
                      {"diversify_ratio", c.diversify_ratio},
                      {"state2_threshold", c.state2_threshold},
                      {"state3_threshold", c.state3_threshold},
                      {"diversify_level", c.diversify_level},
                      {"small_steps", c.small_steps},
                      {"large_steps", c.large_steps},
                      {"tabu_tenure", c.tabu_tenure},
                      {"weight_increment", c.weight_increment}};
  if (c.time_limit_seconds) config["time_limit_seconds"] = *c.time_limit_seconds;

  ordered_json buckets = ordered_json::array();
  for (std::size_t k = 0; k < r.histogram.buckets.size(); ++k)
    buckets.push_back({{"lo", r.histogram.bucket_lo(k)},
                       {"hi", r.histogram.bucket_hi(k)},
                       {"count", r.histogram.buckets[k]}});
  ordered_json histogram{{"zero", r.histogram.zero},
                         {"width", r.histogram.width},
                         {"buckets", std::move(buckets)}};

  ordered_json windows = ordered_json::array();
  for (const WindowStats& ws : r.windows)
    windows.push_back({{"window", ws.window},
                       {"lo", ws.bounds.lo},
                       {"hi", ws.bounds.hi},
                       {"before", stats_json(ws.before)},
                       {"after", stats_json(ws.after)}});

  ordered_json delays = ordered_json::array();
  for (const auto& [id, d] : r.delays) delays.push_back({id, d});

  ordered_json doc;
  doc["summary"] = std::move(summary);
  doc["params"] = std::move(params);
  doc["config"] = std::move(config);
  doc["histogram"] = std::move(histogram);
  doc["windows"] = std::move(windows);
  doc["delays"] = std::move(delays);
  return doc;
}

namespace {

const char* const kStatKeys[] = {"mean", "stddev", "variance", "min", "median", "max"};

void require_report(const ordered_json& doc) {
  for (const char* key : {"summary", "histogram", "windows"})
    if (!doc.contains(key)) throw std::invalid_argument(std::string("report lacks '") + key + "'");
}

}  // namespace

std::string render_csv(const ordered_json& doc) {
  require_report(doc);
  std::ostringstream out;
  out << "# summary\nkey,value\n";
  for (const auto& [key, value] : doc.at("summary").items())
    out << key << ',' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';

  out << "\n# windows\nwindow,lo,hi";
  for (const char* phase : {"before", "after"})
    for (const char* key : kStatKeys) out << ',' << key << '_' << phase;
  out << '\n';
  for (const auto& w : doc.at("windows")) {
    out << w.at("window").dump() << ',' << w.at("lo").dump() << ',' << w.at("hi").dump();
    for (const char* phase : {"before", "after"})
      for (const char* key : kStatKeys) out << ',' << w.at(phase).at(key).dump();
    out << '\n';
  }

  const auto& h = doc.at("histogram");
  out << "\n# histogram\nlo,hi,count\n";
  out << "0,0," << h.at("zero").dump() << '\n';
  for (const auto& b : h.at("buckets"))
    out << b.at("lo").dump() << ',' << b.at("hi").dump() << ',' << b.at("count").dump() << '\n';
  return out.str();
}

std::string render_markdown(const ordered_json& doc) {
  require_report(doc);
  const auto& s = doc.at("summary");
  std::ostringstream out;
  out << "## Run summary\n\n"
      << "| Run-time | Iterations | RWF | RAF | Total delay | Avg delay (delayed) "
         "| Avg delay (relevant) | Demand dev | Initial violations | Feasible |\n"
      << "|---:|---:|---:|---:|---:|---:|---:|---:|---:|:---:|\n";
  out << "| "
      << (s.contains("runtime_seconds") ? fixed(s.at("runtime_seconds").get<double>(), 1) + " s"
                                        : std::string("n/a"))
      << " | " << s.at("iterations").dump() << " | " << s.at("relevant_waiting_flights").dump()
      << " | " << s.at("relevant_airborne_flights").dump() << " | "
      << s.at("total_delay").dump() << " min | "
      << fixed(s.at("average_delay").get<double>(), 2) << " min | "
      << fixed(s.at("average_delay_relevant").get<double>(), 2) << " min | "
      << fixed(100.0 * s.at("demand_dev").get<double>(), 1) << "% | "
      << s.at("initial_violations").dump() << " | "
      << (s.at("feasible").get<bool>() ? "yes" : "no") << " |\n\n";

  out << "## Cell demand per sliding window (" << s.at("stats_population").get<std::string>()
      << " cells)\n\n"
      << "| Window | Mean before | Mean after | Std dev before | Std dev after "
         "| Variance before | Variance after | Min before | Min after "
         "| Med before | Med after | Max before | Max after |\n"
      << "|---|---:|---:|---:|---:|---:|---:|---:|---:|---:|---:|---:|---:|\n";
  for (const auto& w : doc.at("windows")) {
    const auto& b = w.at("before");
    const auto& a = w.at("after");
    out << "| " << clock_label(w.at("lo").get<Minute>()) << "-"
        << clock_label(w.at("hi").get<Minute>());
    for (const char* key : {"mean", "stddev", "variance"})
      out << " | " << fixed(b.at(key).get<double>(), 3) << " | "
          << fixed(a.at(key).get<double>(), 3);
    for (const char* key : {"min", "median", "max"})
      out << " | " << b.at(key).dump() << " | " << a.at(key).dump();
    out << " |\n";
  }

  const auto& h = doc.at("histogram");
  out << "\n## Delay histogram\n\n| Delay (min) | Flights |\n|---|---:|\n";
  out << "| 0 | " << h.at("zero").dump() << " |\n";
  for (const auto& b : h.at("buckets"))
    out << "| " << b.at("lo").dump() << "-" << b.at("hi").dump() << " | "
        << b.at("count").dump() << " |\n";
  return out.str();
}

std::string render_histogram_svg(const ordered_json& doc) {
  require_report(doc);
  const auto& h = doc.at("histogram");
  std::vector<std::pair<std::string, std::int64_t>> bars;
  bars.emplace_back("0", h.at("zero").get<std::int64_t>());
  for (const auto& b : h.at("buckets"))
    bars.emplace_back(b.at("hi").dump(), b.at("count").get<std::int64_t>());

  std::int64_t peak = 1;
  for (const auto& bar : bars) peak = std::max(peak, bar.second);
  const double top = std::log10(static_cast<double>(peak) + 1.0);
  const int bar_w = 18;
  const int gap = 4;
  const int plot_h = 240;
  const int margin = 40;
  const int width = margin * 2 + static_cast<int>(bars.size()) * (bar_w + gap);
  const int height = plot_h + margin * 2;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" font-family=\"sans-serif\" font-size=\"9\">\n"
      << "<text x=\"" << margin << "\" y=\"20\" font-size=\"12\">Delayed flights per "
      << h.at("width").dump() << "-minute bucket (log scale)</text>\n";
  for (std::size_t i = 0; i < bars.size(); ++i) {
    const double frac =
        top > 0.0 ? std::log10(static_cast<double>(bars[i].second) + 1.0) / top : 0.0;
    const int bh = static_cast<int>(std::lround(frac * plot_h));
    const int x = margin + static_cast<int>(i) * (bar_w + gap);
    out << "<rect x=\"" << x << "\" y=\"" << margin + plot_h - bh << "\" width=\"" << bar_w
        << "\" height=\"" << bh << "\" fill=\"#4a7ab5\"><title>" << bars[i].second
        << "</title></rect>\n"
        << "<text x=\"" << x + bar_w / 2 << "\" y=\"" << margin + plot_h + 12
        << "\" text-anchor=\"middle\">" << bars[i].first << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

Assignment assignment_from_report(const Instance& instance, const ordered_json& doc) {
  if (!doc.contains("delays") || !doc.at("delays").is_array())
    throw std::invalid_argument("report lacks a 'delays' array");
  Assignment a = Assignment::zeros(instance);
  for (const auto& row : doc.at("delays")) {
    if (!row.is_array() || row.size() != 2)
      throw std::invalid_argument("report delays must be [flight_id, minutes] pairs");
    const auto id = row[0].get<std::string>();
    const auto f = instance.find_flight(id);
    if (!f) throw std::invalid_argument("report names unknown flight '" + id + "'");
    a.delay[static_cast<std::size_t>(*f)] = row[1].get<Minute>();
  }
  return a;
}

}  // namespace groundhold
