#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "groundhold/generator.hpp"
#include "groundhold/reporting.hpp"
#include "scratch.hpp"

using namespace groundhold;

TEST(Describe, LowerMiddleMedian) {
  const std::vector<std::int32_t> d{4, 1, 3, 2};
  const DemandStats s = describe(d);
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_EQ(s.median, 2);
  EXPECT_EQ(s.min, 1);
  EXPECT_EQ(s.max, 4);
  EXPECT_DOUBLE_EQ(s.variance, 1.25);
}

TEST(Describe, Constant) {
  const std::vector<std::int32_t> d{7, 7, 7};
  const DemandStats s = describe(d);
  EXPECT_EQ(s.stddev, 0.0);
  EXPECT_EQ(s.variance, 0.0);
  EXPECT_EQ(s.median, 7);
}

TEST(Histogram, Buckets) {
  const std::vector<Minute> d{0, 0, 1, 4, 5, 7};
  const DelayHistogram h = delay_histogram(d, 120);
  EXPECT_EQ(h.zero, 2);
  ASSERT_GE(h.buckets.size(), 2u);
  EXPECT_EQ(h.buckets[0], 3);
  EXPECT_EQ(h.buckets[1], 1);
  EXPECT_EQ(h.bucket_lo(1), 6);
  EXPECT_EQ(h.bucket_hi(1), 10);
  EXPECT_EQ(h.total(), 6);
}

TEST(Histogram, AllZero) {
  const std::vector<Minute> d(17, 0);
  const DelayHistogram h = delay_histogram(d, 120);
  EXPECT_EQ(h.zero, 17);
  for (auto b : h.buckets) EXPECT_EQ(b, 0);
}

TEST(WindowStats, RelativeChange) {
  std::vector<WindowStats> ws(3);
  ws[0].before.stddev = 2.0;
  ws[0].after.stddev = 1.0;
  ws[1].before.stddev = 4.0;
  ws[1].after.stddev = 5.0;
  ws[2].before.stddev = 0.0;
  ws[2].after.stddev = 3.0;
  EXPECT_DOUBLE_EQ(mean_relative_stddev_change(ws), (-0.5 + 0.25) / 2);
  EXPECT_EQ(mean_relative_stddev_change(std::vector<WindowStats>{}), 0.0);
}

TEST(WindowStats, MatchScratchDemand) {
  const Instance inst = worked_example(5);
  const PreprocessedModel m = preprocess(inst);
  const std::vector<Minute> before{0, 0, 0};
  const std::vector<Minute> after{0, 0, 1};
  const auto ws = window_statistics(m, inst.cells().size(), before, after, StatsPopulation::All);
  ASSERT_EQ(ws.size(), 1u);
  EXPECT_EQ(ws[0].before.max, 3);
  EXPECT_EQ(ws[0].after.max, 2);
  EXPECT_EQ(ws[0].bounds, (Window{40, 100}));
}

TEST(Population, Names) {
  EXPECT_EQ(parse_population("relevant"), StatsPopulation::Relevant);
  EXPECT_EQ(parse_population("all"), StatsPopulation::All);
  EXPECT_EQ(to_string(StatsPopulation::All), "all");
  EXPECT_THROW(parse_population("some"), std::invalid_argument);
}

class ReportFixture : public ::testing::Test {
 protected:
  void SetUp() override {
    model = preprocess(inst);
    config.max_iter = 1000;
    result = solve(model, config);
    report = build_report(inst, model, config, result, result.best_delays,
                          StatsPopulation::Relevant, false);
    doc = to_json(report);
  }

  Instance inst = worked_example(5);
  PreprocessedModel model;
  SearchConfig config;
  SolveResult result;
  SolveReport report;
  nlohmann::ordered_json doc;
};

TEST_F(ReportFixture, Summary) {
  EXPECT_TRUE(report.feasible);
  EXPECT_EQ(report.total_delay, 1);
  EXPECT_EQ(report.delayed_flights, 1);
  EXPECT_DOUBLE_EQ(report.average_delay, 1.0);
  EXPECT_DOUBLE_EQ(report.average_delay_relevant, 1.0 / 3.0);
  EXPECT_FALSE(doc.at("summary").contains("runtime_seconds"));
  EXPECT_EQ(doc.at("delays").size(), 3u);
}

TEST_F(ReportFixture, AssignmentRoundTrip) {
  const Assignment a = assignment_from_report(inst, doc);
  EXPECT_EQ(a.total(), 1);
  EXPECT_TRUE(check_full(inst, a).ok);
  EXPECT_EQ(a, to_assignment(inst, model, result.best_delays));
}

TEST_F(ReportFixture, CsvAgreesWithJson) {
  const std::string csv = render_csv(doc);
  std::istringstream in(csv);
  std::string line;
  std::map<std::string, std::string> summary;
  std::getline(in, line);
  std::getline(in, line);
  while (std::getline(in, line) && !line.empty()) {
    const auto comma = line.find(',');
    summary[line.substr(0, comma)] = line.substr(comma + 1);
  }
  for (const auto& [key, value] : doc.at("summary").items())
    EXPECT_EQ(summary.at(key), value.is_string() ? value.get<std::string>() : value.dump()) << key;
  EXPECT_NE(csv.find("\n0,0,2\n"), std::string::npos);
}

TEST_F(ReportFixture, MarkdownAndSvg) {
  const std::string md = render_markdown(doc);
  EXPECT_NE(md.find("| 00:40-01:40 |"), std::string::npos);
  EXPECT_NE(md.find("| 1 min |"), std::string::npos);
  const std::string svg = render_histogram_svg(doc);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_THROW(render_csv(nlohmann::ordered_json::object()), std::invalid_argument);
}
