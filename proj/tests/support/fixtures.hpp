#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "support/solver.hpp"

namespace fixtures {

// Evaluation seeds plus the ACG trial seeds for seed_base 0.
inline constexpr std::uint64_t kEvalSeeds = 100;
inline constexpr std::uint64_t kAcgSeeds = 10;

// Seed for the hand-picked demonstrations, outside both ranges above.
inline constexpr std::uint64_t kExampleSeed = 7'777;

inline std::vector<std::uint64_t> fixture_seeds() {
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 0; s < kEvalSeeds; ++s) seeds.push_back(s);
  for (std::uint64_t s = 0; s < kAcgSeeds; ++s) seeds.push_back(webwise::kAcgSeedOffset + s);
  return seeds;
}

/// One record per (task, step) when every seed shares the response, otherwise
/// one record per (task, seed, step).
inline std::vector<webwise::ScriptRecord> golden_records() {
  std::vector<webwise::ScriptRecord> out;
  auto seeds = fixture_seeds();
  for (const auto& meta : webwise::list_tasks()) {
    std::map<std::uint64_t, std::vector<std::string>> by_seed;
    std::size_t max_steps = 0;
    for (auto seed : seeds) {
      for (const auto& phase : solver::solve(meta.task_id, seed)) by_seed[seed].push_back(solver::fenced(phase));
      max_steps = std::max(max_steps, by_seed[seed].size());
    }
    for (std::size_t step = 0; step < max_steps; ++step) {
      std::optional<std::string> shared;
      bool uniform = true;
      for (auto seed : seeds) {
        const auto& v = by_seed[seed];
        if (step >= v.size()) {
          uniform = false;
          break;
        }
        if (!shared) shared = v[step];
        if (*shared != v[step]) {
          uniform = false;
          break;
        }
      }
      if (uniform) {
        out.push_back({meta.task_id, std::nullopt, static_cast<int>(step), *shared});
        continue;
      }
      for (auto seed : seeds) {
        const auto& v = by_seed[seed];
        if (step < v.size()) out.push_back({meta.task_id, seed, static_cast<int>(step), v[step]});
      }
    }
  }
  return out;
}

inline std::string golden_jsonl() {
  std::string out;
  for (const auto& r : golden_records()) out += webwise::to_jsonl_line(r) + "\n";
  return out;
}

/// Demonstrations: the full solution written against the initial observation.
inline std::map<std::string, std::string> manual_examples() {
  std::map<std::string, std::string> out;
  for (const auto& meta : webwise::list_tasks()) {
    auto st = webwise::reset(meta.task_id, kExampleSeed);
    std::vector<webwise::ActionCall> calls;
    for (const auto& phase : solver::solve(meta.task_id, kExampleSeed)) {
      calls.insert(calls.end(), phase.begin(), phase.end());
    }
    nlohmann::ordered_json j;
    j["task_description"] = st.instruction;
    j["serialized_observation"] = webwise::serialize_observation(
        webwise::filter_dom(st.current_observation, webwise::FilterConfig::defaults()), true);
    j["program_text"] = webwise::render_program(calls);
    out[meta.task_id] = j.dump(2) + "\n";
  }
  return out;
}

}  // namespace fixtures
