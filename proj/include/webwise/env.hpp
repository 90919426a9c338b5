#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "webwise/action.hpp"
#include "webwise/dom.hpp"
#include "webwise/error.hpp"

namespace webwise {

enum class FunctionCategory { One, Two, ThreeToSix, Variable };

inline constexpr FunctionCategory kAllCategories[] = {
    FunctionCategory::One, FunctionCategory::Two, FunctionCategory::ThreeToSix,
    FunctionCategory::Variable};

inline const char* category_name(FunctionCategory c) {
  switch (c) {
    case FunctionCategory::One: return "1 Function";
    case FunctionCategory::Two: return "2 Function";
    case FunctionCategory::ThreeToSix: return "3-6 Function";
    case FunctionCategory::Variable: return "Variable Function";
  }
  return "?";
}

inline const char* category_key(FunctionCategory c) {
  switch (c) {
    case FunctionCategory::One: return "one";
    case FunctionCategory::Two: return "two";
    case FunctionCategory::ThreeToSix: return "three_to_six";
    case FunctionCategory::Variable: return "variable";
  }
  return "?";
}

struct TaskMetadata {
  std::string task_id;
  FunctionCategory num_functions_category = FunctionCategory::One;
  bool incorrect_answers_present = false;
  bool target_not_in_initial_dom = false;
};

/// Simulator-side view of one element. Detached nodes exist in the page model
/// but are not part of the observation (collapsed tree nodes, inactive tabs).
struct PageNode {
  DomElement element;
  bool attached = true;
  std::optional<std::uint32_t> owner;  // index of the node that reveals this one
};

using InfoMap = std::map<std::string, std::string>;

struct StepOutcome {
  Observation observation;
  int reward = 0;
  bool terminated = false;
  bool truncated = false;
  InfoMap info;
};

struct TaskDefinition;

struct EpisodeState {
  std::string task_id;
  std::uint64_t seed = 0;
  std::string instruction;
  Observation current_observation;
  std::optional<ElementId> focused_element;
  int step_count = 0;
  bool terminated = false;
  int reward = 0;

  std::vector<PageNode> page;
  std::map<std::string, std::string> params;
  std::shared_ptr<const TaskDefinition> task;
};

struct Verdict {
  int reward = 0;
  InfoMap info;
};

struct GeneratedPage {
  std::string instruction;
  std::vector<PageNode> page;
  std::map<std::string, std::string> params;
};

/// A task template: a seeded page generator plus reactions to clicks and to
/// enter-submits. Generic mutations (focus, checkbox toggling, typing,
/// scrolling) are applied by the engine before the hooks run.
struct TaskDefinition {
  TaskMetadata meta;
  std::function<GeneratedPage(std::mt19937_64&)> generate;
  std::function<Verdict(EpisodeState&, std::uint32_t)> on_click;
  std::function<Verdict(EpisodeState&, std::uint32_t)> on_submit;
};

// Environment steps per episode before truncation.
inline constexpr int kStepBudget = 30;

class TaskCatalog {
 public:
  void add(TaskDefinition def) {
    if (find(def.meta.task_id)) {
      throw Error(Errc::config_error, "duplicate task id: " + def.meta.task_id);
    }
    tasks_.push_back(std::make_shared<const TaskDefinition>(std::move(def)));
  }

  [[nodiscard]] std::shared_ptr<const TaskDefinition> find(std::string_view id) const {
    for (const auto& t : tasks_) {
      if (t->meta.task_id == id) return t;
    }
    return nullptr;
  }

  [[nodiscard]] const TaskDefinition& at(std::string_view id) const {
    auto t = find(id);
    if (!t) throw Error(Errc::unknown_task, "unknown task: " + std::string(id));
    return *t;
  }

  [[nodiscard]] std::vector<TaskMetadata> list() const {
    std::vector<TaskMetadata> out;
    out.reserve(tasks_.size());
    for (const auto& t : tasks_) out.push_back(t->meta);
    return out;
  }

 private:
  std::vector<std::shared_ptr<const TaskDefinition>> tasks_;
};

namespace detail {

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline void rebuild_observation(EpisodeState& st) {
  st.current_observation.elements.clear();
  for (const auto& node : st.page) {
    if (node.attached) st.current_observation.elements.push_back(node.element);
  }
  if (st.focused_element && !st.page[to_index(*st.focused_element)].attached) {
    st.focused_element.reset();
  }
}

}  // namespace detail

inline EpisodeState reset(const TaskCatalog& catalog, std::string_view task_id, std::uint64_t seed) {
  auto def = catalog.find(task_id);
  if (!def) throw Error(Errc::unknown_task, "unknown task: " + std::string(task_id));
  std::mt19937_64 rng(seed ^ detail::fnv1a(task_id));
  auto generated = def->generate(rng);

  EpisodeState st;
  st.task_id = std::string(task_id);
  st.seed = seed;
  st.instruction = std::move(generated.instruction);
  st.page = std::move(generated.page);
  st.params = std::move(generated.params);
  st.task = def;
  for (std::uint32_t i = 0; i < st.page.size(); ++i) {
    auto& e = st.page[i].element;
    e = normalized(std::move(e));
    e.element_id = ElementId{i};
    e.doc_order = i;
  }
  detail::rebuild_observation(st);
  return st;
}

inline const std::string& instruction(const EpisodeState& st) { return st.instruction; }

inline StepOutcome step(EpisodeState& st, const Action& action) {
  if (st.terminated) throw Error(Errc::episode_finished, "episode already finished");

  Verdict verdict;
  auto live = [&](ElementId id) -> PageNode* {
    auto i = to_index(id);
    if (i >= st.page.size() || !st.page[i].attached) return nullptr;
    return &st.page[i];
  };

  std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        PageNode* node = live(a.target);
        if (!node) {
          verdict.info["error"] = "no such element";
          return;
        }
        auto& e = node->element;
        if constexpr (std::is_same_v<T, Click>) {
          if (!e.visible) {
            verdict.info["error"] = "not visible";
            return;
          }
          st.current_observation.interaction_log.insert(e.element_id);
          st.focused_element = e.focusable ? std::optional(e.element_id) : std::nullopt;
          if (e.tag == "input_checkbox") e.checked = !e.checked.value_or(false);
          if (e.tag == "input_radio") e.checked = true;
          if (st.task->on_click) verdict = st.task->on_click(st, to_index(a.target));
        } else if constexpr (std::is_same_v<T, EnterText>) {
          if (!accepts_text(e.tag)) {
            verdict.info["error"] = "element does not accept text";
            return;
          }
          // Typing replaces the field content.
          e.value = a.submits() ? a.text.substr(0, a.text.size() - 1) : a.text;
          st.current_observation.interaction_log.insert(e.element_id);
          if (a.submits() && st.task->on_submit) verdict = st.task->on_submit(st, to_index(a.target));
        } else {
          e.visible = true;
        }
      },
      action);

  ++st.step_count;
  StepOutcome out;
  out.info = std::move(verdict.info);
  if (verdict.reward != 0) {
    st.reward = verdict.reward > 0 ? 1 : -1;
    st.terminated = true;
    out.terminated = true;
  } else if (st.step_count >= kStepBudget) {
    st.reward = -1;
    st.terminated = true;
    out.truncated = true;
  }
  out.reward = st.reward;
  detail::rebuild_observation(st);
  out.observation = st.current_observation;
  return out;
}

}  // namespace webwise
