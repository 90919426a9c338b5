#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "support/util.hpp"

using namespace webwise;

namespace {

std::vector<EpisodeResult> outcomes(int successes, int failures, int tle = 0) {
  std::vector<EpisodeResult> out;
  for (int i = 0; i < successes; ++i) out.push_back({"t", 0, "", 1, 1, false, 1, {}});
  for (int i = 0; i < failures; ++i) out.push_back({"t", 0, "", -1, 1, false, 1, {}});
  for (int i = 0; i < tle; ++i) out.push_back({"t", 0, "", -1, 0, true, 0, {}});
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(MakeRow, Arithmetic) {
  auto row = make_row("t", FunctionCategory::One, "webwise", 1, outcomes(40, 10));
  EXPECT_EQ(row.episodes, 50);
  EXPECT_EQ(row.successes, 40);
  EXPECT_DOUBLE_EQ(row.success_rate, 0.80);
  auto tle = make_row("t", FunctionCategory::One, "whole", 0, outcomes(0, 0, 5));
  EXPECT_EQ(tle.tle_count, 5);
  EXPECT_EQ(tle.success_rate, 0.0);
  EXPECT_LE(tle.tle_count, tle.episodes - tle.successes);
}

TEST(CategoryMeans, UnweightedMean) {
  std::vector<ReportRow> rows{make_row("a", FunctionCategory::Two, "m", 0, outcomes(10, 0)),
                              make_row("b", FunctionCategory::Two, "m", 0, outcomes(1, 1))};
  auto cats = category_means(rows);
  ASSERT_EQ(cats.size(), 1U);
  EXPECT_DOUBLE_EQ(cats[0].mean_rate, 0.75);
  EXPECT_EQ(cats[0].tasks, 2);
}

TEST(CategoryMeans, OrderedByCellThenCategory) {
  std::vector<ReportRow> rows{make_row("v", FunctionCategory::Variable, "webwise", 1, outcomes(1, 0)),
                              make_row("o", FunctionCategory::One, "webwise", 1, outcomes(1, 0)),
                              make_row("o", FunctionCategory::One, "filtered", 0, outcomes(1, 0))};
  auto cats = category_means(rows);
  ASSERT_EQ(cats.size(), 3U);
  EXPECT_EQ(cats[0].method, "webwise");
  EXPECT_EQ(cats[0].category, FunctionCategory::One);
  EXPECT_EQ(cats[1].category, FunctionCategory::Variable);
  EXPECT_EQ(cats[2].method, "filtered");
}

TEST(CategoryMeans, RandomMatricesMatchRecomputation) {
  std::mt19937_64 rng(2024);
  const std::vector<std::string> methods{"instruction-only", "filtered", "whole", "webwise"};
  for (int round = 0; round < 100; ++round) {
    std::vector<ReportRow> rows;
    std::map<std::tuple<std::string, int, int>, std::pair<double, int>> oracle;
    auto n_tasks = 1 + rng() % 12;
    for (std::size_t t = 0; t < n_tasks; ++t) {
      auto cat = kAllCategories[rng() % 4];
      for (const auto& m : methods) {
        for (int k = 0; k <= 1; ++k) {
          int episodes = 1 + static_cast<int>(rng() % 60);
          int wins = static_cast<int>(rng() % (episodes + 1));
          auto row = make_row("task" + std::to_string(t), cat, m, k, outcomes(wins, episodes - wins));
          ASSERT_EQ(row.success_rate, static_cast<double>(wins) / episodes);
          rows.push_back(row);
          auto& acc = oracle[{m, k, static_cast<int>(cat)}];
          acc.first += static_cast<double>(wins) / episodes;
          acc.second += 1;
        }
      }
    }
    auto cats = category_means(rows);
    EXPECT_EQ(cats.size(), oracle.size());
    for (const auto& c : cats) {
      const auto& acc = oracle.at({c.method, c.k, static_cast<int>(c.category)});
      EXPECT_NEAR(c.mean_rate, acc.first / acc.second, 1e-12);
      EXPECT_EQ(c.tasks, acc.second);
    }
  }
}

TEST(Emit, CsvHeaderAndOneLine) {
  Report r;
  r.rows.push_back(make_row("click-test", FunctionCategory::One, "webwise", 1, outcomes(3, 1)));
  r.categories = category_means(r.rows);
  auto csv = render_report(r, ReportFormat::csv);
  EXPECT_EQ(csv, "task_id,method,k,episodes,successes,tle_count,success_rate\nclick-test,webwise,1,4,3,0,0.750000\n");
}

TEST(Emit, JsonMirrorsFields) {
  Report r;
  r.rows.push_back(make_row("click-test", FunctionCategory::One, "webwise", 1, outcomes(3, 1)));
  r.categories = category_means(r.rows);
  auto j = nlohmann::json::parse(render_report(r, ReportFormat::json));
  EXPECT_EQ(j["rows"][0]["task_id"], "click-test");
  EXPECT_EQ(j["rows"][0]["successes"], 3);
  EXPECT_EQ(j["rows"][0]["tle_count"], 0);
  EXPECT_DOUBLE_EQ(j["rows"][0]["success_rate"].get<double>(), 0.75);
  EXPECT_EQ(j["categories"][0]["category"], "one");
  EXPECT_DOUBLE_EQ(j["categories"][0]["mean_rate"].get<double>(), 0.75);
}

TEST(Emit, TableGroupsCategoriesInOrder) {
  Report r;
  r.rows = {make_row("a", FunctionCategory::Variable, "webwise", 0, outcomes(1, 1)),
            make_row("b", FunctionCategory::One, "webwise", 1, outcomes(1, 0)),
            make_row("c", FunctionCategory::Two, "whole", 0, outcomes(0, 0, 4))};
  r.categories = category_means(r.rows);
  auto table = render_report(r, ReportFormat::table);
  auto header = table.substr(0, table.find('\n'));
  auto p1 = header.find("1 Function");
  auto p2 = header.find("2 Function");
  auto p3 = header.find("3-6 Function");
  auto p4 = header.find("Variable Function");
  EXPECT_LT(p1, p2);
  EXPECT_LT(p2, p3);
  EXPECT_LT(p3, p4);
  EXPECT_NE(table.find("TLE"), std::string::npos);
  EXPECT_NE(table.find("0.50"), std::string::npos);
}

TEST(Emit, FileOutputIsDeterministic) {
  Report r;
  r.rows.push_back(make_row("click-test", FunctionCategory::One, "webwise", 1, outcomes(1, 2)));
  r.categories = category_means(r.rows);
  auto dir = testutil::temp_dir("emit");
  for (auto f : {ReportFormat::table, ReportFormat::csv, ReportFormat::json}) {
    auto a = (dir / "a.out").string();
    auto b = (dir / "b.out").string();
    emit_report(r, f, a);
    emit_report(r, f, b);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_EQ(slurp(a), render_report(r, f));
  }
}

TEST(Emit, EmptyReportAndBadPath) {
  try {
    emit_report(Report{}, ReportFormat::csv, "-");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::io_error);
  }
  Report r;
  r.rows.push_back(make_row("t", FunctionCategory::One, "m", 0, outcomes(1, 0)));
  EXPECT_THROW(emit_report(r, ReportFormat::csv, "/nonexistent-dir/x/report.csv"), Error);
}

TEST(Emit, FormatNames) {
  EXPECT_EQ(parse_format("table"), ReportFormat::table);
  EXPECT_EQ(parse_format("csv"), ReportFormat::csv);
  EXPECT_EQ(parse_format("json"), ReportFormat::json);
  EXPECT_THROW(parse_format("xml"), Error);
}
