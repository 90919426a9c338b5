#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "webwise/agent.hpp"
#include "webwise/llm.hpp"
#include "webwise/report.hpp"
#include "webwise/tasks.hpp"

namespace webwise {

inline const std::vector<std::string>& method_keys() {
  static const std::vector<std::string> kKeys{"instruction-only", "filtered", "whole", "webwise", "acg"};
  return kKeys;
}

inline Method parse_method(std::string_view key) {
  if (key == "instruction-only") return Method::InstructionOnly;
  if (key == "filtered") return Method::SingleStepFiltered;
  if (key == "whole") return Method::SingleStepWhole;
  if (key == "webwise") return Method::WebWise;
  throw Error(Errc::config_error, "unknown method: " + std::string(key));
}

struct CellSpec {
  std::string method;  // one of method_keys()
  int k = 0;
};

struct OutputConfig {
  std::string format = "table";
  std::string path;
  std::string replay_path;
};

struct BenchConfig {
  LlmConfig llm;
  FilterConfig filter = FilterConfig::defaults();
  std::vector<CellSpec> methods;
  std::vector<std::string> tasks;
  int episodes = 50;
  std::uint64_t seed_base = 0;
  int max_iter = 10;
  int acg_trials = 10;
  std::filesystem::path examples_dir;
  OutputConfig output;
  unsigned jobs = 1;
};

namespace detail {

inline std::filesystem::path resolve_path(const std::filesystem::path& base, const std::string& p) {
  if (p.empty() || p == "-") return p;
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace detail

/// Checks ranges and names; an empty task list becomes every catalog task.
inline void validate_config(BenchConfig& cfg, const TaskCatalog& catalog) {
  if (cfg.episodes < 1) throw Error(Errc::config_error, "episodes must be >= 1");
  if (cfg.max_iter < 1) throw Error(Errc::config_error, "max_iter must be >= 1");
  if (cfg.acg_trials < 0) throw Error(Errc::config_error, "acg_trials must be >= 0");
  if (cfg.llm.temperature < 0) throw Error(Errc::config_error, "temperature must be >= 0");
  if (cfg.llm.max_tokens == 0) throw Error(Errc::config_error, "max_tokens must be > 0");
  (void)task_message(cfg.llm.task_message_variant);
  if (cfg.methods.empty()) throw Error(Errc::config_error, "no methods configured");
  for (const auto& c : cfg.methods) {
    if (std::find(method_keys().begin(), method_keys().end(), c.method) == method_keys().end()) {
      throw Error(Errc::config_error, "unknown method: " + c.method);
    }
    if (c.k != 0 && c.k != 1) throw Error(Errc::config_error, "k must be 0 or 1");
    if (c.method == "acg" && c.k != 0) throw Error(Errc::config_error, "acg cells are zero-shot (k=0)");
  }
  if (cfg.tasks.empty()) {
    for (const auto& m : catalog.list()) cfg.tasks.push_back(m.task_id);
  }
  for (const auto& t : cfg.tasks) {
    if (!catalog.find(t)) throw Error(Errc::config_error, "unknown task in config: " + t);
  }
  (void)parse_format(cfg.output.format);
  if (cfg.jobs == 0) cfg.jobs = 1;
}

/// Parses the JSON harness config. Relative paths are resolved against the
/// directory holding the config file.
inline BenchConfig load_config(const std::filesystem::path& path, const TaskCatalog& catalog = bundled_catalog()) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::config_error, "cannot open config: " + path.string());
  auto base = path.parent_path();
  BenchConfig cfg;
  try {
    auto j = nlohmann::json::parse(in);
    if (j.contains("llm")) {
      const auto& l = j["llm"];
      cfg.llm.model_name = l.value("model", cfg.llm.model_name);
      cfg.llm.temperature = l.value("temperature", cfg.llm.temperature);
      cfg.llm.max_tokens = l.value("max_tokens", cfg.llm.max_tokens);
      cfg.llm.task_message_variant = l.value("task_message_variant", cfg.llm.task_message_variant);
      cfg.llm.base_url = l.value("base_url", cfg.llm.base_url);
      auto backend = l.value("backend", std::string("scripted"));
      if (backend == "scripted") {
        cfg.llm.backend = BackendKind::scripted;
      } else if (backend == "remote") {
        cfg.llm.backend = BackendKind::remote;
      } else {
        throw Error(Errc::config_error, "unknown backend: " + backend);
      }
      if (l.contains("fixture")) cfg.llm.fixture_path = detail::resolve_path(base, l["fixture"].get<std::string>()).string();
    }
    if (j.contains("filter")) {
      const auto& f = j["filter"];
      if (f.contains("useful_tags")) {
        cfg.filter.useful_tags.clear();
        for (const auto& t : f["useful_tags"]) cfg.filter.useful_tags.insert(text::to_lower(t.get<std::string>()));
      }
      if (f.contains("useful_classes")) {
        cfg.filter.useful_classes.clear();
        for (const auto& c : f["useful_classes"]) cfg.filter.useful_classes.insert(text::to_lower(c.get<std::string>()));
      }
      cfg.filter.preserve_order = f.value("preserve_order", true);
    }
    if (j.contains("methods")) {
      for (const auto& m : j["methods"]) cfg.methods.push_back({m.at("method").get<std::string>(), m.value("k", 0)});
    }
    if (j.contains("tasks")) {
      if (j["tasks"].is_string() && j["tasks"].get<std::string>() == "all") {
        cfg.tasks.clear();
      } else {
        cfg.tasks = j["tasks"].get<std::vector<std::string>>();
      }
    }
    cfg.episodes = j.value("episodes", cfg.episodes);
    cfg.seed_base = j.value("seed_base", cfg.seed_base);
    cfg.max_iter = j.value("max_iter", cfg.max_iter);
    cfg.acg_trials = j.value("acg_trials", cfg.acg_trials);
    cfg.jobs = j.value("jobs", cfg.jobs);
    cfg.examples_dir = detail::resolve_path(base, j.value("examples_dir", std::string()));
    if (j.contains("output")) {
      const auto& o = j["output"];
      cfg.output.format = o.value("format", cfg.output.format);
      cfg.output.path = detail::resolve_path(base, o.value("path", std::string())).string();
      cfg.output.replay_path = detail::resolve_path(base, o.value("replay", std::string())).string();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::config_error, path.string() + ": " + e.what());
  }
  validate_config(cfg, catalog);
  return cfg;
}

inline std::unique_ptr<LlmBackend> make_backend(const LlmConfig& llm) {
  if (llm.backend == BackendKind::remote) return std::make_unique<RemoteBackend>(RemoteBackend::from_environment(llm));
  if (llm.fixture_path.empty()) throw Error(Errc::config_error, "scripted backend needs llm.fixture");
  return std::make_unique<ScriptedBackend>(load_script(llm.fixture_path));
}

namespace detail {

inline void append_replay(std::vector<std::string>& out, const CellSpec& cell, const EpisodeResult& r) {
  for (const auto& it : r.trace) {
    if (!it.usable || it.aborted_reason) {
      nlohmann::ordered_json j{{"type", "iteration"}, {"task_id", r.task_id}, {"method", cell.method},
                               {"k", cell.k}, {"seed", r.seed}, {"iteration", it.iteration},
                               {"usable", it.usable}};
      if (it.aborted_reason) j["aborted_reason"] = *it.aborted_reason;
      out.push_back(j.dump());
    }
    for (const auto& a : it.actions) {
      nlohmann::ordered_json j{{"type", "action"}, {"task_id", r.task_id}, {"method", cell.method},
                               {"k", cell.k}, {"seed", r.seed}, {"iteration", it.iteration},
                               {"call", a.call}, {"action", a.action}, {"reward", a.reward},
                               {"terminated", a.terminated}, {"truncated", a.truncated},
                               {"info", a.info}};
      out.push_back(j.dump());
    }
  }
  nlohmann::ordered_json j{{"type", "episode"}, {"task_id", r.task_id}, {"method", cell.method},
                           {"k", cell.k}, {"seed", r.seed}, {"score", r.score},
                           {"steps_taken", r.steps_taken}, {"completions", r.completions},
                           {"tle", r.tle}};
  out.push_back(j.dump());
}

struct CellJob {
  std::string task_id;
  CellSpec cell;
  std::vector<EpisodeResult> results;
  std::exception_ptr error;
};

inline void run_cell(CellJob& job, const BenchConfig& cfg, LlmBackend& backend, const TaskCatalog& catalog) {
  RunConfig run;
  run.llm = cfg.llm;
  run.filter = cfg.filter;
  run.max_iter = cfg.max_iter;
  if (job.cell.method == "acg") {
    run.method = {Method::SingleStepFiltered, 0};
    auto store = acg_collect(job.task_id, cfg.acg_trials, run, backend, catalog, cfg.seed_base);
    job.results = run_acg(job.task_id, store, cfg.episodes, run, backend, catalog, cfg.seed_base);
    return;
  }
  run.method = {parse_method(job.cell.method), job.cell.k};
  std::vector<ContextExample> examples;
  if (job.cell.k > 0) examples.push_back(load_manual_example(cfg.examples_dir, job.task_id));
  for (int i = 0; i < cfg.episodes; ++i) {
    job.results.push_back(run_episode(job.task_id, cfg.seed_base + static_cast<std::uint64_t>(i), run,
                                      examples, backend, catalog));
  }
}

}  // namespace detail

/// Runs every (task, method, k) cell over seeds seed_base..seed_base+episodes-1,
/// fanning cells out over `cfg.jobs` workers. Rows come back task-major in
/// config order regardless of scheduling.
inline Report run_benchmark(const BenchConfig& cfg, LlmBackend& backend,
                            const TaskCatalog& catalog = bundled_catalog()) {
  std::vector<detail::CellJob> jobs;
  for (const auto& t : cfg.tasks) {
    for (const auto& c : cfg.methods) jobs.push_back({t, c, {}, nullptr});
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (auto i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1)) {
      try {
        detail::run_cell(jobs[i], cfg, backend, catalog);
      } catch (...) {
        jobs[i].error = std::current_exception();
      }
    }
  };
  auto n_workers = std::min<std::size_t>(std::max(1U, cfg.jobs), jobs.size());
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  }

  Report report;
  for (auto& job : jobs) {
    if (job.error) std::rethrow_exception(job.error);
    report.rows.push_back(make_row(job.task_id, catalog.at(job.task_id).meta.num_functions_category,
                                   job.cell.method, job.cell.k, job.results));
    for (const auto& r : job.results) detail::append_replay(report.replay_lines, job.cell, r);
  }
  report.categories = category_means(report.rows);
  return report;
}

inline Report run_benchmark(const std::filesystem::path& config_path) {
  auto cfg = load_config(config_path);
  auto backend = make_backend(cfg.llm);
  return run_benchmark(cfg, *backend);
}

inline void write_replay(const Report& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io_error, "cannot write replay log: " + path);
  for (const auto& line : report.replay_lines) out << line << '\n';
}

struct VariantReport {
  int variant = 0;
  std::vector<CategoryReport> categories;
  std::map<int, double> overall;  // k -> unweighted mean over tasks
};

/// Repeats the WebWISE cells once per task-message variant 1..13.
inline std::vector<VariantReport> sweep_task_messages(const BenchConfig& cfg, LlmBackend& backend,
                                                      const TaskCatalog& catalog = bundled_catalog()) {
  auto base = cfg;
  base.methods.clear();
  for (const auto& c : cfg.methods) {
    if (c.method == "webwise") base.methods.push_back(c);
  }
  if (base.methods.empty()) throw Error(Errc::config_error, "sweep-messages needs at least one webwise cell");

  std::vector<VariantReport> out;
  for (int v = 1; v <= static_cast<int>(assets::kTaskMessages.size()); ++v) {
    auto run = base;
    run.llm.task_message_variant = v;
    auto report = run_benchmark(run, backend, catalog);
    VariantReport vr{v, report.categories, {}};
    std::map<int, std::pair<double, int>> acc;
    for (const auto& r : report.rows) {
      acc[r.k].first += r.success_rate;
      acc[r.k].second += 1;
    }
    for (const auto& [k, sn] : acc) vr.overall[k] = sn.first / sn.second;
    out.push_back(std::move(vr));
  }
  return out;
}

inline std::string render_sweep(const std::vector<VariantReport>& sweep, ReportFormat format) {
  if (format == ReportFormat::json) {
    auto j = nlohmann::ordered_json::array();
    for (const auto& v : sweep) {
      nlohmann::ordered_json item;
      item["variant"] = v.variant;
      item["overall"] = nlohmann::ordered_json::object();
      for (const auto& [k, rate] : v.overall) item["overall"]["k=" + std::to_string(k)] = rate;
      item["categories"] = nlohmann::ordered_json::array();
      for (const auto& c : v.categories) {
        item["categories"].push_back({{"k", c.k}, {"category", category_key(c.category)}, {"mean_rate", c.mean_rate}});
      }
      j.push_back(item);
    }
    return j.dump(2) + "\n";
  }
  std::string sep = format == ReportFormat::csv ? "," : " | ";
  std::string out = "variant" + sep + "k=0" + sep + "k=1\n";
  for (const auto& v : sweep) {
    auto cell = [&](int k) { return v.overall.contains(k) ? fixed(v.overall.at(k), format == ReportFormat::csv ? 6 : 2) : "-"; };
    out += std::to_string(v.variant) + sep + cell(0) + sep + cell(1) + "\n";
  }
  return out;
}

}  // namespace webwise
