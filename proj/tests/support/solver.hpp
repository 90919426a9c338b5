#pragma once

// Reference policy used to produce the golden fixtures. It reads only the
// instruction and the observation the agent would see at each phase; it
// simulates on copies of the state only to pick which tab to open and to
// learn the guess-number feedback.

#include <string>
#include <vector>

#include "webwise/webwise.hpp"

namespace solver {

using webwise::ActionCall;
using Phase = std::vector<ActionCall>;

inline ActionCall click(std::string tag, std::string name) {
  return {std::string(webwise::kClickFn), {std::move(tag), std::move(name)}};
}
inline ActionCall type(std::string text) { return {std::string(webwise::kEnterTextFn), {std::move(text)}}; }

inline const webwise::DomElement* by_text(const webwise::Observation& obs, const std::string& t) {
  for (const auto& e : obs.elements) {
    if (e.text && *e.text == t) return &e;
  }
  return nullptr;
}

inline void run_phase(webwise::EpisodeState& st, const Phase& phase) {
  webwise::Program prog;
  for (const auto& c : phase) prog.statements.emplace_back(c);
  prog.usable = !phase.empty();
  webwise::execute_program(prog, st);
}

/// Next phase for the state as it stands. Empty once nothing sensible is left.
/// `lo`..`hi` is the guess-number interval still consistent with the feedback.
inline Phase next_phase(const webwise::EpisodeState& st, int lo = 0, int hi = 9) {
  const auto& task = st.task_id;
  const auto& obs = st.current_observation;
  auto quoted = webwise::text::quoted_segments(st.instruction);

  if (task == "click-test") return {click("button", "Click Me!")};
  if (task == "click-button" || task == "click-dialog-2") return {click("button", quoted.at(0))};
  if (task == "click-checkboxes-transfer") {
    Phase p;
    for (const auto& w : quoted) p.push_back(click("input_checkbox", w));
    p.push_back(click("button", "Submit"));
    return p;
  }
  if (task == "click-collapsible") return {click("h3", "Section #1"), click("button", "Submit")};
  if (task == "enter-text") {
    return {click("input_text", "tt"), type(quoted.at(0)), click("button", "Submit")};
  }
  if (task == "login-user") {
    return {click("input_text", "username"), type(quoted.at(0)), click("input_password", "password"),
            type(quoted.at(1)), click("button", "Login")};
  }
  if (task == "click-tab-2-easy") {
    const auto& link = quoted.at(0);
    if (by_text(obs, link)) return {click("a", link)};
    for (const auto& e : obs.elements) {
      if (e.klass != "ui-tabs-anchor") continue;
      auto probe = st;
      run_phase(probe, {click("a", *e.text)});
      if (by_text(probe.current_observation, link)) return {click("a", *e.text)};
    }
    return {};
  }
  if (task == "navigate-tree") {
    const auto& target = quoted.at(0);
    if (by_text(obs, target)) return {click("span", target)};
    // Expand every collapsed top-level folder and every visible subfolder whose
    // children are not shown yet, shallowest first, one phase at a time.
    Phase p;
    auto probe = st;
    for (const auto& e : obs.elements) {
      if (e.klass != "folder") continue;
      auto copy = probe;
      auto before = copy.current_observation.elements.size();
      run_phase(copy, {click("span", *e.text)});
      if (copy.terminated) continue;
      if (copy.current_observation.elements.size() > before) {
        p.push_back(click("span", *e.text));
        probe = copy;
      }
    }
    return p;
  }
  if (task == "guess-number") {
    auto guess = std::to_string((lo + hi) / 2);
    return {click("input_number", "tt"), type(guess), click("button", "Submit")};
  }
  return {};
}

/// Drives an episode with the reference policy, returning the phases issued.
inline std::vector<Phase> solve(const std::string& task_id, std::uint64_t seed, int max_phases = 10) {
  auto st = webwise::reset(task_id, seed);
  std::vector<Phase> phases;
  int lo = 0;
  int hi = 9;
  for (int i = 0; i < max_phases && !st.terminated; ++i) {
    auto phase = next_phase(st, lo, hi);
    if (phase.empty()) break;
    webwise::Program prog;
    for (const auto& c : phase) prog.statements.emplace_back(c);
    prog.usable = true;
    auto result = webwise::execute_program(prog, st);
    phases.push_back(phase);
    if (task_id == "guess-number" && !st.terminated) {
      int guess = (lo + hi) / 2;
      const auto& hint = result.final_outcome.info.at("hint");
      if (hint == "higher") lo = guess + 1;
      if (hint == "lower") hi = guess - 1;
    }
  }
  return phases;
}

inline std::string fenced(const Phase& phase) {
  return "```python\n" + webwise::render_program(phase) + "```";
}

}  // namespace solver
