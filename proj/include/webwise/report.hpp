#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "webwise/agent.hpp"
#include "webwise/env.hpp"
#include "webwise/error.hpp"

namespace webwise {

struct ReportRow {
  std::string task_id;
  std::string method;
  int k = 0;
  int episodes = 0;
  int successes = 0;
  int tle_count = 0;
  double success_rate = 0.0;
  FunctionCategory category = FunctionCategory::One;
};

struct CategoryReport {
  std::string method;
  int k = 0;
  FunctionCategory category = FunctionCategory::One;
  double mean_rate = 0.0;
  int tasks = 0;
  bool all_tle = false;
};

struct Report {
  std::vector<ReportRow> rows;
  std::vector<CategoryReport> categories;
  std::vector<std::string> replay_lines;  // not part of the emitted report
};

inline ReportRow make_row(std::string task_id, FunctionCategory category, std::string method, int k,
                          const std::vector<EpisodeResult>& results) {
  ReportRow row{std::move(task_id), std::move(method), k};
  row.category = category;
  row.episodes = static_cast<int>(results.size());
  for (const auto& r : results) {
    row.successes += r.score == 1;
    row.tle_count += r.tle;
  }
  row.success_rate = row.episodes ? static_cast<double>(row.successes) / row.episodes : 0.0;
  return row;
}

/// Unweighted mean of task success rates per (method, k, category), in the
/// order (method, k) first appears and then the four categories in order.
inline std::vector<CategoryReport> category_means(const std::vector<ReportRow>& rows) {
  std::vector<std::pair<std::string, int>> cells;
  for (const auto& r : rows) {
    std::pair<std::string, int> cell{r.method, r.k};
    if (std::find(cells.begin(), cells.end(), cell) == cells.end()) cells.push_back(cell);
  }
  std::vector<CategoryReport> out;
  for (const auto& [method, k] : cells) {
    for (auto cat : kAllCategories) {
      double sum = 0.0;
      int n = 0;
      bool all_tle = true;
      for (const auto& r : rows) {
        if (r.method != method || r.k != k || r.category != cat) continue;
        sum += r.success_rate;
        ++n;
        all_tle = all_tle && r.episodes > 0 && r.tle_count == r.episodes;
      }
      if (n == 0) continue;
      out.push_back({method, k, cat, sum / n, n, all_tle});
    }
  }
  return out;
}

enum class ReportFormat { table, csv, json };

inline ReportFormat parse_format(std::string_view s) {
  if (s == "table") return ReportFormat::table;
  if (s == "csv") return ReportFormat::csv;
  if (s == "json") return ReportFormat::json;
  throw Error(Errc::config_error, "unknown report format: " + std::string(s));
}

inline std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

inline nlohmann::ordered_json report_json(const Report& report) {
  nlohmann::ordered_json j;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    j["rows"].push_back({{"task_id", r.task_id},
                         {"method", r.method},
                         {"k", r.k},
                         {"category", category_key(r.category)},
                         {"episodes", r.episodes},
                         {"successes", r.successes},
                         {"tle_count", r.tle_count},
                         {"success_rate", r.success_rate}});
  }
  j["categories"] = nlohmann::ordered_json::array();
  for (const auto& c : report.categories) {
    j["categories"].push_back({{"method", c.method},
                               {"k", c.k},
                               {"category", category_key(c.category)},
                               {"tasks", c.tasks},
                               {"mean_rate", c.mean_rate}});
  }
  return j;
}

inline std::string render_csv(const Report& report) {
  std::string out = "task_id,method,k,episodes,successes,tle_count,success_rate\n";
  for (const auto& r : report.rows) {
    out += r.task_id + "," + r.method + "," + std::to_string(r.k) + "," + std::to_string(r.episodes) + "," +
           std::to_string(r.successes) + "," + std::to_string(r.tle_count) + "," + fixed(r.success_rate, 6) +
           "\n";
  }
  return out;
}

namespace detail {

inline std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace detail

// Methods as rows, the four function-count groups as column pairs (k=0, k=1),
// followed by the per-task rows.
inline std::string render_table(const Report& report) {
  std::vector<std::string> methods;
  for (const auto& c : report.categories) {
    if (std::find(methods.begin(), methods.end(), c.method) == methods.end()) methods.push_back(c.method);
  }
  std::ostringstream os;
  os << detail::pad("Method", 18);
  for (auto cat : kAllCategories) os << "| " << detail::pad(category_name(cat), 17);
  os << "\n" << detail::pad("", 18);
  for (std::size_t i = 0; i < std::size(kAllCategories); ++i) os << "| " << detail::pad("k=0", 8) << detail::pad("k=1", 9);
  os << "\n";
  for (const auto& m : methods) {
    os << detail::pad(m, 18);
    for (auto cat : kAllCategories) {
      os << "| ";
      for (int k = 0; k <= 1; ++k) {
        std::string cell = "-";
        for (const auto& c : report.categories) {
          if (c.method == m && c.k == k && c.category == cat) cell = c.all_tle ? "TLE" : fixed(c.mean_rate, 2);
        }
        os << detail::pad(cell, k == 0 ? 8 : 9);
      }
    }
    os << "\n";
  }
  os << "\n"
     << detail::pad("task", 28) << detail::pad("method", 18) << detail::pad("k", 3) << detail::pad("episodes", 10)
     << detail::pad("successes", 11) << detail::pad("tle", 5) << "rate\n";
  for (const auto& r : report.rows) {
    os << detail::pad(r.task_id, 28) << detail::pad(r.method, 18) << detail::pad(std::to_string(r.k), 3)
       << detail::pad(std::to_string(r.episodes), 10) << detail::pad(std::to_string(r.successes), 11)
       << detail::pad(std::to_string(r.tle_count), 5)
       << (r.episodes > 0 && r.tle_count == r.episodes ? "TLE" : fixed(r.success_rate, 2)) << "\n";
  }
  return os.str();
}

inline std::string render_report(const Report& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::csv: return render_csv(report);
    case ReportFormat::json: return report_json(report).dump(2) + "\n";
    case ReportFormat::table: return render_table(report);
  }
  return {};
}

/// Writes to `path`, or to stdout when the path is empty or "-".
inline void emit_report(const Report& report, ReportFormat format, const std::string& path) {
  if (report.rows.empty()) throw Error(Errc::io_error, "refusing to emit an empty report");
  auto body = render_report(report, format);
  if (path.empty() || path == "-") {
    std::fwrite(body.data(), 1, body.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io_error, "cannot write report: " + path);
  out << body;
  if (!out) throw Error(Errc::io_error, "write failed: " + path);
}

}  // namespace webwise
