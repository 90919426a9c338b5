#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "webwise/dom.hpp"
#include "webwise/env.hpp"
#include "webwise/llm.hpp"
#include "webwise/program.hpp"
#include "webwise/prompt.hpp"
#include "webwise/tasks.hpp"

namespace webwise {

struct MethodKind {
  Method variant = Method::SingleStepFiltered;
  int k = 0;
};

struct RunConfig {
  MethodKind method;
  int max_iter = 10;
  LlmConfig llm;
  FilterConfig filter = FilterConfig::defaults();
};

struct ActionRecord {
  std::string call;
  std::string action;
  int reward = 0;
  bool terminated = false;
  bool truncated = false;
  InfoMap info;
};

struct IterationRecord {
  int iteration = 0;
  std::string response_text;
  bool usable = false;
  std::vector<ActionRecord> actions;
  std::optional<std::string> aborted_reason;
};

struct EpisodeResult {
  std::string task_id;
  std::uint64_t seed = 0;
  std::string instruction;
  int score = -1;
  int steps_taken = 0;
  bool tle = false;
  int completions = 0;
  std::vector<IterationRecord> trace;
};

// Offset separating ACG trial seeds from evaluation seeds.
inline constexpr std::uint64_t kAcgSeedOffset = 1'000'000;
inline constexpr std::size_t kAcgCapacity = 2;

struct AcgStore {
  std::string task_id;
  std::vector<ContextExample> examples;
  std::vector<int> source_trials;  // 1-based trial numbers the examples came from
  std::vector<int> trial_scores;
};

inline std::string observation_text(Method method, const Observation& obs, const FilterConfig& filter) {
  switch (method) {
    case Method::InstructionOnly: return {};
    case Method::SingleStepWhole: return serialize_whole_dom(obs);
    case Method::SingleStepFiltered:
    case Method::WebWise: return serialize_observation(filter_dom(obs, filter), true);
  }
  return {};
}

namespace detail {

inline IterationRecord run_program(int iteration, const GeneratedText& generated, EpisodeState& st) {
  IterationRecord rec;
  rec.iteration = iteration;
  rec.response_text = generated.raw;
  auto prog = extract_program(generated);
  rec.usable = prog.usable;
  if (!prog.usable) return rec;
  auto exec = execute_program(prog, st);
  for (const auto& s : exec.trace) {
    rec.actions.push_back({render(s.call), describe(s.action), s.outcome.reward, s.outcome.terminated,
                           s.outcome.truncated, s.outcome.info});
  }
  rec.aborted_reason = exec.aborted_reason;
  return rec;
}

inline void finish(EpisodeResult& r, const EpisodeState& st) {
  r.steps_taken = st.step_count;
  r.score = (st.terminated && st.reward == 1) ? 1 : -1;
}

}  // namespace detail

/// One completion, one program, executed to the end. Anything short of a +1
/// terminal reward scores -1, including unusable programs and TLE.
inline EpisodeResult run_single_step(std::string_view task_id, std::uint64_t seed, const RunConfig& cfg,
                                     const std::vector<ContextExample>& examples, LlmBackend& backend,
                                     const TaskCatalog& catalog = bundled_catalog()) {
  if (cfg.method.variant == Method::WebWise) {
    throw Error(Errc::config_error, "run_single_step called with the WebWISE method");
  }
  auto st = reset(catalog, task_id, seed);
  EpisodeResult r;
  r.task_id = std::string(task_id);
  r.seed = seed;
  r.instruction = st.instruction;
  auto obs_text = observation_text(cfg.method.variant, st.current_observation, cfg.filter);
  auto bundle = assemble_prompt(cfg.method.variant, cfg.method.k, examples, st.instruction, obs_text, cfg.llm);
  GeneratedText generated;
  try {
    generated = complete(bundle, cfg.llm, backend, {r.task_id, seed, 0});
  } catch (const Error& e) {
    if (e.code() != Errc::token_limit_exceeded) throw;
    r.tle = true;
    return r;
  }
  r.completions = 1;
  r.trace.push_back(detail::run_program(0, generated, st));
  detail::finish(r, st);
  return r;
}

/// Generate-execute loop: each iteration re-filters the current DOM, asks for
/// a program, runs it, and stops on a terminal reward or after max_iter
/// completions. Unusable programs still consume an iteration.
inline EpisodeResult run_webwise(std::string_view task_id, std::uint64_t seed, const RunConfig& cfg,
                                 const std::vector<ContextExample>& examples, LlmBackend& backend,
                                 const TaskCatalog& catalog = bundled_catalog()) {
  if (cfg.method.variant != Method::WebWise) {
    throw Error(Errc::config_error, "run_webwise requires the WebWISE method");
  }
  if (cfg.max_iter < 1) throw Error(Errc::config_error, "max_iter must be >= 1");
  auto st = reset(catalog, task_id, seed);
  EpisodeResult r;
  r.task_id = std::string(task_id);
  r.seed = seed;
  r.instruction = st.instruction;
  for (int iter = 0; iter < cfg.max_iter && !st.terminated; ++iter) {
    auto obs_text = observation_text(Method::WebWise, st.current_observation, cfg.filter);
    auto bundle = assemble_prompt(Method::WebWise, cfg.method.k, examples, st.instruction, obs_text, cfg.llm);
    GeneratedText generated;
    try {
      generated = complete(bundle, cfg.llm, backend, {r.task_id, seed, iter});
    } catch (const Error& e) {
      if (e.code() != Errc::token_limit_exceeded) throw;
      r.tle = true;
      break;
    }
    ++r.completions;
    r.trace.push_back(detail::run_program(iter, generated, st));
  }
  detail::finish(r, st);
  if (r.tle) r.score = -1;
  return r;
}

inline EpisodeResult run_episode(std::string_view task_id, std::uint64_t seed, const RunConfig& cfg,
                                 const std::vector<ContextExample>& examples, LlmBackend& backend,
                                 const TaskCatalog& catalog = bundled_catalog()) {
  return cfg.method.variant == Method::WebWise ? run_webwise(task_id, seed, cfg, examples, backend, catalog)
                                               : run_single_step(task_id, seed, cfg, examples, backend, catalog);
}

/// Zero-shot trials that harvest the first two successful programs as
/// automatic in-context examples. All `n_trials` run regardless.
inline AcgStore acg_collect(std::string_view task_id, int n_trials, const RunConfig& cfg, LlmBackend& backend,
                            const TaskCatalog& catalog = bundled_catalog(), std::uint64_t seed_base = 0) {
  if (cfg.method.variant == Method::WebWise || cfg.method.k != 0) {
    throw Error(Errc::config_error, "acg_collect requires a zero-shot single-step configuration");
  }
  AcgStore store;
  store.task_id = std::string(task_id);
  for (int trial = 1; trial <= n_trials; ++trial) {
    auto seed = seed_base + kAcgSeedOffset + static_cast<std::uint64_t>(trial - 1);
    auto result = run_single_step(task_id, seed, cfg, {}, backend, catalog);
    store.trial_scores.push_back(result.score);
    if (result.score != 1 || store.examples.size() >= kAcgCapacity) continue;

    auto initial = reset(catalog, task_id, seed);
    auto prog = extract_program({result.trace.front().response_text});
    store.examples.push_back({initial.instruction,
                              serialize_observation(filter_dom(initial.current_observation, cfg.filter), true),
                              render_program(prog.actions()), ExampleOrigin::automatic});
    store.source_trials.push_back(trial);
  }
  return store;
}

/// Instruction + filtered DOM episodes with the harvested examples in the prompt.
inline std::vector<EpisodeResult> run_acg(std::string_view task_id, const AcgStore& store, int iterations,
                                          const RunConfig& cfg, LlmBackend& backend,
                                          const TaskCatalog& catalog = bundled_catalog(),
                                          std::uint64_t seed_base = 0) {
  if (store.task_id != task_id) {
    throw Error(Errc::config_error, "ACG store was built for " + store.task_id + ", not " + std::string(task_id));
  }
  auto run_cfg = cfg;
  run_cfg.method = {Method::SingleStepFiltered, 0};
  std::vector<EpisodeResult> results;
  results.reserve(static_cast<std::size_t>(iterations));
  for (int i = 0; i < iterations; ++i) {
    results.push_back(run_single_step(task_id, seed_base + static_cast<std::uint64_t>(i), run_cfg,
                                      store.examples, backend, catalog));
  }
  return results;
}

/// Reads `<dir>/<task_id>.json` with keys task_description,
/// serialized_observation and program_text.
inline ContextExample load_manual_example(const std::filesystem::path& dir, std::string_view task_id) {
  auto path = dir / (std::string(task_id) + ".json");
  std::ifstream in(path);
  if (!in) throw Error(Errc::config_error, "missing manual example: " + path.string());
  try {
    auto j = nlohmann::json::parse(in);
    return {j.at("task_description").get<std::string>(), j.at("serialized_observation").get<std::string>(),
            j.at("program_text").get<std::string>(), ExampleOrigin::manual};
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::config_error, path.string() + ": " + e.what());
  }
}

}  // namespace webwise
