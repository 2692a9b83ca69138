#include "cli.hpp"

#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "groundhold/engine.hpp"
#include "groundhold/generator.hpp"
#include "groundhold/instance.hpp"
#include "groundhold/io.hpp"
#include "groundhold/oracle.hpp"
#include "groundhold/preprocess.hpp"
#include "groundhold/reporting.hpp"
#include "groundhold/search.hpp"

namespace groundhold::cli {

namespace {

using nlohmann::ordered_json;

struct ScenarioFlags {
  std::optional<Minute> now, start, end, window, step, max_hold, cap;

  void attach(CLI::App& app) {
    app.add_option("--now", now, "Re-planning launch time (minutes)");
    app.add_option("--start", start, "Start s of the re-planning interval");
    app.add_option("--end", end, "End e of the re-planning interval");
    app.add_option("--window", window, "Sliding window length w");
    app.add_option("--step", step, "Time step t between windows");
    app.add_option("--max-hold", max_hold, "Maximum ground holding g");
    app.add_option("--cap", cap, "Default cell capacity");
  }

  bool any() const { return now || start || end || window || step || max_hold || cap; }

  ScenarioParams apply(ScenarioParams p) const {
    if (now) p.now = *now;
    if (start) p.start = *start;
    if (end) p.end = *end;
    if (window) p.window = *window;
    if (step) p.step = *step;
    if (max_hold) p.max_hold = *max_hold;
    if (cap) p.cap = *cap;
    return p;
  }
};

struct SearchFlags {
  std::optional<std::int64_t> max_iter, tabu_tenure, diversify_level, small_steps, large_steps;
  std::optional<std::uint64_t> seed;
  std::optional<double> time_limit;
  std::string config_path;

  void attach(CLI::App& app) {
    app.add_option("--max-iter", max_iter, "Iteration budget");
    app.add_option("--seed", seed, "Random seed");
    app.add_option("--time-limit", time_limit, "Soft wall-clock limit in seconds");
    app.add_option("--tabu-tenure", tabu_tenure, "Iterations a moved flight stays tabu");
    app.add_option("--diversify-level", diversify_level,
                   "Stagnant iterations before diversification");
    app.add_option("--small-steps", small_steps, "Diversification size while infeasible");
    app.add_option("--large-steps", large_steps, "Diversification size once feasible");
    app.add_option("--config", config_path, "JSON file with search settings");
  }

  SearchConfig build() const {
    SearchConfig c;
    if (!config_path.empty()) {
      const ordered_json j = ordered_json::parse(read_file(config_path));
      auto take = [&](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
      };
      take("max_iter", c.max_iter);
      take("seed", c.rng_seed);
      take("state1_ratio", c.state1_ratio);
      take("diversify_ratio", c.diversify_ratio);
      take("state2_threshold", c.state2_threshold);
      take("state3_threshold", c.state3_threshold);
      take("diversify_level", c.diversify_level);
      take("small_steps", c.small_steps);
      take("large_steps", c.large_steps);
      take("tabu_tenure", c.tabu_tenure);
      take("weight_increment", c.weight_increment);
      if (j.contains("time_limit_seconds"))
        c.time_limit_seconds = j.at("time_limit_seconds").get<double>();
    }
    if (max_iter) c.max_iter = *max_iter;
    if (seed) c.rng_seed = *seed;
    if (time_limit) c.time_limit_seconds = *time_limit;
    if (tabu_tenure) c.tabu_tenure = *tabu_tenure;
    if (diversify_level) c.diversify_level = *diversify_level;
    if (small_steps) c.small_steps = *small_steps;
    if (large_steps) c.large_steps = *large_steps;
    c.validate();
    return c;
  }
};

std::string render(const ordered_json& report, const std::string& format) {
  if (format == "json") return report.dump(2) + "\n";
  if (format == "csv") return render_csv(report);
  return render_markdown(report);
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_file_atomic(path, text);
  }
}

int cmd_generate(const std::string& preset_name, std::uint64_t seed, const std::string& out_path,
                 std::optional<double> flights_per_day, std::optional<Minute> start,
                 bool probe, std::ostream& out, std::ostream& err) {
  Instance instance;
  if (preset_name == "congested-ecac" && (flights_per_day || start)) {
    GenConfig c = congested_ecac_config(seed, start.value_or(1260));
    if (flights_per_day) c.flights_per_day = *flights_per_day;
    instance = generate(c);
  } else {
    instance = preset(preset_name, seed);
  }
  emit(serialize_instance(instance), out_path, out);
  err << "generated " << instance.flights().size() << " flights over "
      << instance.cells().size() << " cells\n";
  if (probe) {
    const auto witness = greedy_feasibility_probe(instance);
    err << "greedy feasibility probe: "
        << (witness ? "feasible (total delay " + std::to_string(witness->total()) + ")"
                    : std::string("inconclusive"))
        << "\n";
  }
  return kOk;
}

struct SolveOptions {
  std::string instance_path;
  std::string out_path;
  std::string format = "json";
  std::string population = "relevant";
  std::string svg_path;
  std::string dump_model_path;
  int starts = 1;
  bool reproducible = false;
};

int cmd_solve(const SolveOptions& o, const ScenarioFlags& scenario, const SearchFlags& search,
              std::ostream& out, std::ostream& err) {
  Instance instance = load_instance(o.instance_path);
  if (scenario.any()) instance = instance.with_params(scenario.apply(instance.params()));
  const SearchConfig config = search.build();
  const StatsPopulation population = parse_population(o.population);

  const PreprocessedModel model = preprocess(instance);
  if (!o.dump_model_path.empty()) write_file_atomic(o.dump_model_path, model_summary_json(model));
  if (model.airborne_overloads > 0)
    err << "warning: " << model.airborne_overloads
        << " windows are overloaded by airborne flights alone\n";

  SolveResult result;
  std::vector<Minute> final_delays;
  if (o.starts > 1) {
    result = solve_multistart(model, config, o.starts);
    final_delays = result.feasible ? result.best_delays : std::vector<Minute>(model.num_vars(), 0);
  } else {
    ViolationEngine engine(model);
    Solver solver(engine, config);
    result = solver.run();
    final_delays.assign(engine.delays().begin(), engine.delays().end());
  }

  const SolveReport report = build_report(instance, model, config, result, final_delays,
                                          population, !o.reproducible);
  const ordered_json doc = to_json(report);
  emit(render(doc, o.format), o.out_path, out);
  if (!o.svg_path.empty()) write_file_atomic(o.svg_path, render_histogram_svg(doc));

  err << (result.feasible ? "feasible" : "infeasible within budget")
      << ": total delay " << report.total_delay << " min, " << report.delayed_flights << "/"
      << report.waiting_flights << " flights delayed, initial violations "
      << result.initial_violations << ", minimum violations " << result.min_violations
      << ", iterations " << result.iterations << ", " << result.wall_seconds << " s\n";
  return result.feasible ? kOk : kInfeasible;
}

int cmd_report(const std::string& in_path, const std::string& format, const std::string& out_path,
               const std::string& svg_path, std::ostream& out) {
  const ordered_json doc = ordered_json::parse(read_file(in_path));
  emit(render(doc, format), out_path, out);
  if (!svg_path.empty()) write_file_atomic(svg_path, render_histogram_svg(doc));
  return kOk;
}

int cmd_verify(const std::string& instance_path, const std::string& report_path, bool oracle,
               std::ostream& out) {
  const Instance instance = load_instance(instance_path);
  if (oracle) {
    const OracleResult r = brute_force_min_delay(instance);
    if (!r.feasible) {
      out << "oracle: infeasible\n";
      return kInfeasible;
    }
    out << "oracle: feasible, minimum total delay " << r.min_total_delay << " min\n";
    if (report_path.empty()) return kOk;
  }
  if (report_path.empty()) {
    out << "verify: nothing to check (pass --report or --oracle)\n";
    return kUsage;
  }
  const ordered_json doc = ordered_json::parse(read_file(report_path));
  const Assignment a = assignment_from_report(instance, doc);
  const CheckResult check = check_full(instance, a);
  if (check.ok) {
    out << "verify: ok, total delay " << a.total() << " min\n";
    return kOk;
  }
  out << "verify: " << check.violated.size() << " overloaded (window, cell) pairs, overflow "
      << check.total_overflow << "\n";
  for (const Overflow& o : check.violated)
    out << "  window " << o.window << " cell " << instance.cells()[static_cast<std::size_t>(o.cell)].id
        << ": " << o.demand << " > " << o.cap << "\n";
  return kVerifyFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ground-holding capacity re-planning with constraint-based local search",
               "groundhold"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("generate", "Write a synthetic instance");
  std::string preset_name = "tiny";
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  std::optional<double> flights_per_day;
  std::optional<Minute> gen_start;
  bool probe = false;
  gen->add_option("--preset", preset_name, "tiny | congested-ecac | infeasible | worked-example")
      ->check(CLI::IsMember({"tiny", "congested-ecac", "infeasible", "worked-example"}));
  gen->add_option("--seed", gen_seed, "Random seed");
  gen->add_option("--out", gen_out, "Output path (stdout when omitted)");
  gen->add_option("--flights-per-day", flights_per_day, "Traffic rate (congested-ecac)");
  gen->add_option("--start", gen_start, "Interval start in minutes (congested-ecac)");
  gen->add_flag("--probe", probe, "Run the greedy feasibility probe");

  auto* solve_cmd = app.add_subcommand("solve", "Re-plan take-off times of an instance");
  SolveOptions solve_opts;
  ScenarioFlags scenario;
  SearchFlags search;
  solve_cmd->add_option("--instance", solve_opts.instance_path, "Instance JSON")->required();
  scenario.attach(*solve_cmd);
  search.attach(*solve_cmd);
  solve_cmd->add_option("--out", solve_opts.out_path, "Report path (stdout when omitted)");
  solve_cmd->add_option("--format", solve_opts.format, "json | csv | md")
      ->check(CLI::IsMember({"json", "csv", "md"}));
  solve_cmd->add_option("--stats-population", solve_opts.population, "relevant | all")
      ->check(CLI::IsMember({"relevant", "all"}));
  solve_cmd->add_option("--svg", solve_opts.svg_path, "Write the delay histogram as SVG");
  solve_cmd->add_option("--dump-model", solve_opts.dump_model_path,
                        "Write preprocessing counts as JSON");
  solve_cmd->add_option("--starts", solve_opts.starts, "Independent seeded runs")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_flag("--reproducible", solve_opts.reproducible,
                      "Omit wall-clock timing from the report");

  auto* report_cmd = app.add_subcommand("report", "Render a report JSON as CSV or Markdown");
  std::string report_in;
  std::string report_format = "md";
  std::string report_out;
  std::string report_svg;
  report_cmd->add_option("--in", report_in, "Report JSON")->required();
  report_cmd->add_option("--format", report_format, "json | csv | md")
      ->check(CLI::IsMember({"json", "csv", "md"}));
  report_cmd->add_option("--out", report_out, "Output path (stdout when omitted)");
  report_cmd->add_option("--svg", report_svg, "Write the delay histogram as SVG");

  auto* verify_cmd = app.add_subcommand("verify", "Check a report against all capacity constraints");
  std::string verify_instance;
  std::string verify_report;
  bool verify_oracle = false;
  verify_cmd->add_option("--instance", verify_instance, "Instance JSON")->required();
  verify_cmd->add_option("--report", verify_report, "Report JSON whose delays are checked");
  verify_cmd->add_flag("--oracle", verify_oracle, "Exhaustive minimum-delay search (tiny only)");
  verify_cmd->group("");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*gen)
      return cmd_generate(preset_name, gen_seed, gen_out, flights_per_day, gen_start, probe, out,
                          err);
    if (*solve_cmd) return cmd_solve(solve_opts, scenario, search, out, err);
    if (*report_cmd) return cmd_report(report_in, report_format, report_out, report_svg, out);
    if (*verify_cmd) return cmd_verify(verify_instance, verify_report, verify_oracle, out);
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kIoError;
  } catch (const InstanceError& e) {
    err << "invalid instance: " << e.what() << "\n";
    return kParseError;
  } catch (const nlohmann::json::exception& e) {
    err << "invalid JSON: " << e.what() << "\n";
    return kParseError;
  } catch (const OracleLimitError& e) {
    err << "oracle: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kParseError;
  }
  return kUsage;
}

}  // namespace groundhold::cli
