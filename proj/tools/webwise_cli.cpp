#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "webwise/webwise.hpp"

namespace {

struct Overrides {
  std::vector<std::string> tasks;
  std::vector<std::string> methods;
  std::optional<int> k;
  std::optional<int> episodes;
  std::optional<std::uint64_t> seed_base;
  std::optional<unsigned> jobs;
  std::string backend;
  std::string fixture;
  std::string out;
  std::string format;
  std::string replay;
};

void add_run_options(CLI::App* cmd, std::string& config, Overrides& o) {
  cmd->add_option("-c,--config", config, "harness config (JSON)")->required()->check(CLI::ExistingFile);
  cmd->add_option("-t,--task", o.tasks, "restrict to these task ids (repeatable)");
  cmd->add_option("-m,--method", o.methods, "instruction-only | filtered | whole | webwise | acg (repeatable)");
  cmd->add_option("-k,--k", o.k, "number of manual in-context examples for --method cells")->check(CLI::Range(0, 1));
  cmd->add_option("-n,--episodes", o.episodes, "episodes per cell")->check(CLI::PositiveNumber);
  cmd->add_option("--seed-base", o.seed_base, "first evaluation seed");
  cmd->add_option("-j,--jobs", o.jobs, "worker threads");
  cmd->add_option("--backend", o.backend, "scripted | remote")->check(CLI::IsMember({"scripted", "remote"}));
  cmd->add_option("--fixture", o.fixture, "scripted fixture (JSONL)");
  cmd->add_option("-o,--out", o.out, "report path, '-' for stdout");
  cmd->add_option("-f,--format", o.format, "table | csv | json")->check(CLI::IsMember({"table", "csv", "json"}));
  cmd->add_option("--replay", o.replay, "replay log path (JSONL, default webwise-replay.jsonl)");
}

webwise::BenchConfig load(const std::string& path, const Overrides& o) {
  auto cfg = webwise::load_config(path);
  if (!o.tasks.empty()) cfg.tasks = o.tasks;
  if (!o.methods.empty()) {
    cfg.methods.clear();
    for (const auto& m : o.methods) {
      int k = m == "acg" ? 0 : o.k.value_or(0);
      cfg.methods.push_back({m, k});
    }
  } else if (o.k) {
    for (auto& c : cfg.methods) {
      if (c.method != "acg") c.k = *o.k;
    }
  }
  if (o.episodes) cfg.episodes = *o.episodes;
  if (o.seed_base) cfg.seed_base = *o.seed_base;
  if (o.jobs) cfg.jobs = *o.jobs;
  if (!o.backend.empty()) {
    cfg.llm.backend = o.backend == "remote" ? webwise::BackendKind::remote : webwise::BackendKind::scripted;
  }
  if (!o.fixture.empty()) cfg.llm.fixture_path = o.fixture;
  if (!o.out.empty()) cfg.output.path = o.out;
  if (!o.format.empty()) cfg.output.format = o.format;
  if (!o.replay.empty()) cfg.output.replay_path = o.replay;
  webwise::validate_config(cfg, webwise::bundled_catalog());
  return cfg;
}

int cmd_run(const std::string& config, const Overrides& o) {
  auto cfg = load(config, o);
  auto backend = webwise::make_backend(cfg.llm);
  auto report = webwise::run_benchmark(cfg, *backend);
  webwise::emit_report(report, webwise::parse_format(cfg.output.format), cfg.output.path);
  if (!cfg.output.path.empty() && cfg.output.path != "-") std::cerr << "report: " << cfg.output.path << "\n";
  auto replay = cfg.output.replay_path.empty() ? std::string("webwise-replay.jsonl") : cfg.output.replay_path;
  webwise::write_replay(report, replay);
  std::cerr << "replay log: " << replay << "\n";
  return 0;
}

int cmd_sweep(const std::string& config, const Overrides& o) {
  auto cfg = load(config, o);
  auto backend = webwise::make_backend(cfg.llm);
  auto sweep = webwise::sweep_task_messages(cfg, *backend);
  auto body = webwise::render_sweep(sweep, webwise::parse_format(cfg.output.format));
  if (cfg.output.path.empty() || cfg.output.path == "-") {
    std::cout << body;
  } else {
    std::ofstream out(cfg.output.path, std::ios::binary);
    if (!out) throw webwise::Error(webwise::Errc::io_error, "cannot write " + cfg.output.path);
    out << body;
    std::cerr << "report: " << cfg.output.path << "\n";
  }
  return 0;
}

int cmd_list_tasks(bool as_json) {
  auto tasks = webwise::list_tasks();
  if (as_json) {
    auto j = nlohmann::ordered_json::array();
    for (const auto& t : tasks) {
      j.push_back({{"task_id", t.task_id},
                   {"category", webwise::category_key(t.num_functions_category)},
                   {"incorrect_answers_present", t.incorrect_answers_present},
                   {"target_not_in_initial_dom", t.target_not_in_initial_dom}});
    }
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  for (const auto& t : tasks) {
    std::cout << t.task_id << "\t" << webwise::category_name(t.num_functions_category) << "\t"
              << (t.incorrect_answers_present ? "Y" : "N") << "\t" << (t.target_not_in_initial_dom ? "Y" : "N")
              << "\n";
  }
  return 0;
}

// Pretty-prints a replay log, optionally narrowed to one task and seed.
int cmd_replay(const std::string& path, const std::string& task, std::optional<std::uint64_t> seed) {
  std::ifstream in(path);
  if (!in) throw webwise::Error(webwise::Errc::io_error, "cannot open replay log: " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto j = nlohmann::json::parse(line);
    if (!task.empty() && j.value("task_id", "") != task) continue;
    if (seed && j.value("seed", std::uint64_t{0}) != *seed) continue;
    auto head = j["task_id"].get<std::string>() + " " + j["method"].get<std::string>() + " k=" +
                std::to_string(j["k"].get<int>()) + " seed=" + std::to_string(j["seed"].get<std::uint64_t>());
    auto type = j["type"].get<std::string>();
    if (type == "action") {
      std::cout << head << " it=" << j["iteration"].get<int>() << "  " << j["call"].get<std::string>() << "  -> "
                << j["action"].get<std::string>() << "  reward=" << j["reward"].get<int>()
                << (j["terminated"].get<bool>() ? " terminated" : "") << (j["truncated"].get<bool>() ? " truncated" : "");
      for (const auto& [k, v] : j["info"].items()) std::cout << " " << k << "=" << v.get<std::string>();
      std::cout << "\n";
    } else if (type == "iteration") {
      std::cout << head << " it=" << j["iteration"].get<int>()
                << (j["usable"].get<bool>() ? "" : "  unusable program")
                << (j.contains("aborted_reason") ? "  aborted: " + j["aborted_reason"].get<std::string>() : "") << "\n";
    } else {
      std::cout << head << "  score=" << j["score"].get<int>() << " steps=" << j["steps_taken"].get<int>()
                << " completions=" << j["completions"].get<int>() << (j["tle"].get<bool>() ? " TLE" : "") << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"webwise: program-synthesis web agents on a synthetic task suite"};
  app.require_subcommand(1);

  std::string config;
  Overrides o;
  auto* run = app.add_subcommand("run", "evaluate the configured methods and print a report");
  add_run_options(run, config, o);

  std::string sweep_config;
  Overrides so;
  auto* sweep = app.add_subcommand("sweep-messages", "rerun the webwise cells once per task message variant");
  add_run_options(sweep, sweep_config, so);

  bool list_json = false;
  auto* list = app.add_subcommand("list-tasks", "print the bundled tasks");
  list->add_flag("--json", list_json, "print JSON");

  std::string replay_path;
  std::string replay_task;
  std::optional<std::uint64_t> replay_seed;
  auto* replay = app.add_subcommand("replay", "pretty-print a replay log");
  replay->add_option("log", replay_path, "replay JSONL")->required()->check(CLI::ExistingFile);
  replay->add_option("--task", replay_task, "only this task");
  replay->add_option("--seed", replay_seed, "only this seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config, o);
    if (*sweep) return cmd_sweep(sweep_config, so);
    if (*list) return cmd_list_tasks(list_json);
    if (*replay) return cmd_replay(replay_path, replay_task, replay_seed);
  } catch (const webwise::Error& e) {
    std::cerr << "error [" << webwise::errc_name(e.code()) << "]: " << e.what() << "\n";
    return e.code() == webwise::Errc::config_error ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
