#pragma once

// Bundled task templates. Each generator is a pure function of the seeded
// engine; rewards follow these rules:
//   * the task's success predicate yields +1 and ends the episode;
//   * clicking a wrong answer ends the episode with -1 only for tasks flagged
//     incorrect_answers_present, otherwise it is a no-op;
//   * a Submit/Login press with the wrong form content always ends with -1.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "webwise/env.hpp"

namespace webwise {

namespace tasks {

// Portable draws: std distributions are implementation-defined, the engine is not.
inline std::uint32_t pick(std::mt19937_64& rng, std::uint32_t n) {
  return static_cast<std::uint32_t>(rng() % n);
}

template <class T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[pick(rng, static_cast<std::uint32_t>(i))]);
  }
}

inline const std::vector<std::string>& word_pool() {
  static const std::vector<std::string> kWords{
      "apple", "banana", "cherry", "delta", "echo", "falcon", "garnet", "harbor", "indigo",
      "jasper", "kettle", "lemon", "maple", "nectar", "ocean", "pepper", "quartz", "raven",
      "saddle", "timber", "umber", "velvet", "willow", "xenon", "yonder", "zephyr", "amber",
      "brisk", "cobalt", "dune", "ember", "fjord", "glade", "hollow", "ivory", "juniper",
      "karma", "lotus", "mango", "north", "onyx", "plume", "quill", "ridge", "sierra",
      "tundra", "vista", "wharf", "yarrow", "basil"};
  return kWords;
}

inline const std::vector<std::string>& name_pool() {
  static const std::vector<std::string> kNames{
      "Alice", "Bruno", "Carla", "Dmitri", "Elena", "Farid", "Gwen", "Hiro", "Ines",
      "Jonas", "Kira", "Liam", "Mara", "Nils", "Oona", "Pavel", "Quinn", "Rosa",
      "Sven", "Tara", "Umar", "Vera", "Wade", "Xena", "Yusuf", "Zoe"};
  return kNames;
}

inline std::vector<std::string> sample(const std::vector<std::string>& pool, std::size_t k,
                                       std::mt19937_64& rng) {
  auto copy = pool;
  shuffle(copy, rng);
  copy.resize(k);
  return copy;
}

inline PageNode node(std::string tag, std::optional<std::string> text = std::nullopt,
                     std::optional<std::string> dom_id = std::nullopt,
                     std::optional<std::string> klass = std::nullopt) {
  PageNode n;
  n.element.tag = std::move(tag);
  n.element.text = std::move(text);
  n.element.dom_id = std::move(dom_id);
  n.element.klass = std::move(klass);
  n.element.focusable = accepts_text(n.element.tag);
  return n;
}

inline std::uint32_t push(GeneratedPage& g, PageNode n) {
  g.page.push_back(std::move(n));
  return static_cast<std::uint32_t>(g.page.size() - 1);
}

inline std::uint32_t param_index(const EpisodeState& st, const std::string& key) {
  return static_cast<std::uint32_t>(std::stoul(st.params.at(key)));
}

inline std::optional<std::uint32_t> index_of_dom_id(const EpisodeState& st, std::string_view id) {
  for (std::uint32_t i = 0; i < st.page.size(); ++i) {
    if (st.page[i].element.dom_id == id) return i;
  }
  return std::nullopt;
}

inline Verdict success() { return Verdict{1, {}}; }
inline Verdict failure(std::string why) { return Verdict{-1, {{"failure", std::move(why)}}}; }

// --- click-test -------------------------------------------------------------

inline TaskDefinition click_test() {
  TaskDefinition def;
  def.meta = {"click-test", FunctionCategory::One, false, false};
  def.generate = [](std::mt19937_64&) {
    GeneratedPage g;
    g.instruction = "Click the button.";
    push(g, node("body", std::nullopt, "wrap"));
    push(g, node("script", "core.startEpisode();"));
    push(g, node("div", std::nullopt, "area"));
    g.params["button"] = std::to_string(push(g, node("button", "Click Me!", "subbtn")));
    return g;
  };
  def.on_click = [](EpisodeState& st, std::uint32_t i) {
    return i == param_index(st, "button") ? success() : Verdict{};
  };
  return def;
}

// --- click-button -------------------------------------------------------------

inline TaskDefinition click_button() {
  TaskDefinition def;
  def.meta = {"click-button", FunctionCategory::One, false, false};
  def.generate = [](std::mt19937_64& rng) {
    static const std::vector<std::string> kLabels{"Submit", "Ok", "No", "Cancel", "Yes",
                                                  "Previous", "Next", "Okay"};
    GeneratedPage g;
    auto n = 3 + pick(rng, 4);
    auto labels = sample(kLabels, n, rng);
    auto target = pick(rng, n);
    g.instruction = "Click on the \"" + labels[target] + "\" button.";
    push(g, node("body", std::nullopt, "wrap"));
    push(g, node("div", std::nullopt, "area"));
    push(g, node("span", sample(word_pool(), 1, rng).front()));
    for (std::uint32_t b = 0; b < n; ++b) {
      auto idx = push(g, node("button", labels[b]));
      if (b == target) g.params["target"] = std::to_string(idx);
    }
    push(g, node("br"));
    return g;
  };
  def.on_click = [](EpisodeState& st, std::uint32_t i) {
    if (i == param_index(st, "target")) return success();
    return Verdict{};
  };
  return def;
}

// --- click-dialog-2 -------------------------------------------------------------

inline TaskDefinition click_dialog_2() {
  TaskDefinition def;
  def.meta = {"click-dialog-2", FunctionCategory::One, true, false};
  def.generate = [](std::mt19937_64& rng) {
    GeneratedPage g;
    const std::vector<std::string> labels{"x", "OK", "Cancel"};
    auto target = pick(rng, 3);
    g.instruction = "Click the button in the dialog box labeled \"" + labels[target] + "\".";
    push(g, node("body", std::nullopt, "wrap"));
    push(g, node("div", std::nullopt, "dialog", "ui-dialog"));
    push(g, node("span", "Dialog", std::nullopt, "ui-dialog-title"));
    auto close = push(g, node("button", "x", std::nullopt, "ui-dialog-titlebar-close"));
    auto words = sample(word_pool(), 3, rng);
    push(g, node("p", words[0] + " " + words[1] + " " + words[2] + "."));
    auto ok = push(g, node("button", "OK"));
    auto cancel = push(g, node("button", "Cancel"));
    std::uint32_t ids[] = {close, ok, cancel};
    g.params["target"] = std::to_string(ids[target]);
    g.params["buttons"] = std::to_string(close) + "," + std::to_string(ok) + "," + std::to_string(cancel);
    return g;
  };
  def.on_click = [](EpisodeState& st, std::uint32_t i) {
    if (i == param_index(st, "target")) return success();
    if (st.page[i].element.tag == "button") return failure("wrong dialog button");
    return Verdict{};
  };
  return def;
}

// --- click-checkboxes-transfer ----------------------------------------------------

inline TaskDefinition click_checkboxes_transfer() {
  TaskDefinition def;
  def.meta = {"click-checkboxes-transfer", FunctionCategory::Variable, true, false};
  def.generate = [](std::mt19937_64& rng) {
    GeneratedPage g;
    auto n = 2 + pick(rng, 5);
    auto words = sample(word_pool(), n, rng);
    std::vector<std::string> chosen;
    std::string wanted;
    push(g, node("body", std::nullopt, "wrap"));
    push(g, node("div", std::nullopt, "boxes"));
    for (std::uint32_t b = 0; b < n; ++b) {
      auto n_box = node("input_checkbox", words[b]);
      n_box.element.checked = false;
      auto idx = push(g, std::move(n_box));
      if (rng() & 1U) {
        chosen.push_back(words[b]);
        wanted += (wanted.empty() ? "" : ",") + std::to_string(idx);
      }
    }
    g.params["wanted"] = wanted;
    g.params["submit"] = std::to_string(push(g, node("button", "Submit", "subbtn")));
    if (chosen.empty()) {
      g.instruction = "Select nothing and click Submit.";
    } else {
      g.instruction = "Select ";
      for (std::size_t c = 0; c < chosen.size(); ++c) {
        if (c) g.instruction += c + 1 == chosen.size() ? " and " : ", ";
        g.instruction += "\"" + chosen[c] + "\"";
      }
      g.instruction += " then click Submit.";
    }
    return g;
  };
  def.on_click = [](EpisodeState& st, std::uint32_t i) {
    if (i != param_index(st, "submit")) return Verdict{};
    std::string checked;
    for (std::uint32_t b = 0; b < st.page.size(); ++b) {
      const auto& e = st.page[b].element;
      if (e.tag == "input_checkbox" && e.checked.value_or(false)) {
        checked += (checked.empty() ? "" : ",") + std::to_string(b);
      }
    }
    return checked == st.params.at("wanted") ? success() : failure("wrong checkbox selection");
  };
  return def;
}

// --- click-tab-2-easy -------------------------------------------------------------
// Inactive tab panels are detached, so the target link is absent from the
// initial observation.

inline TaskDefinition click_tab_2_easy() {
  TaskDefinition def;
  def.meta = {"click-tab-2-easy", FunctionCategory::Two, true, true};
  def.generate = [](std::mt19937_64& rng) {
    GeneratedPage g;
    auto n_tabs = 2 + pick(rng, 2);
    std::vector<std::uint32_t> per_tab;
    std::uint32_t total = 0;
    for (std::uint32_t t = 0; t < n_tabs; ++t) {
      per_tab.push_back(2 + pick(rng, 2));
      total += per_tab.back();
    }
    auto words = sample(word_pool(), total, rng);
    auto target_tab = 1 + pick(rng, n_tabs - 1);
    auto target_link = pick(rng, per_tab[target_tab]);

    push(g, node("body", std::nullopt, "wrap"));
    push(g, node("ul", std::nullopt, "tabs", "ui-tabs-nav"));
    std::vector<std::uint32_t> headers;
    for (std::uint32_t t = 0; t < n_tabs; ++t) {
      headers.push_back(push(g, node("a", "Tab #" + std::to_string(t + 1), std::nullopt, "ui-tabs-anchor")));
    }
    std::size_t w = 0;
    for (std::uint32_t t = 0; t < n_tabs; ++t) {
      auto panel = node("div", std::nullopt, "tabs-" + std::to_string(t + 1), "ui-tabs-panel");
      panel.owner = headers[t];
      panel.attached = t == 0;
      push(g, std::move(panel));
      for (std::uint32_t l = 0; l < per_tab[t]; ++l) {
        auto link = node("a", words[w++]);
        link.owner = headers[t];
        link.attached = t == 0;
        auto idx = push(g, std::move(link));
        if (t == target_tab && l == target_link) {
          g.params["target"] = std::to_string(idx);
          g.instruction = "Switch between the tabs to find and click on the link \"" +
                          *g.page[idx].element.text + "\".";
        }
      }
    }
    return g;
  };
  def.on_click = [](EpisodeState& st, std::uint32_t i) {
    if (i == param_index(st, "target")) return success();
    const auto& e = st.page[i].element;
    if (e.klass == "ui-tabs-anchor") {
      for (auto& n : st.page) {
        if (n.owner) n.attached = *n.owner == i;
      }
      return Verdict{};
    }
    if (e.tag == "a") return failure("wrong link");
    return Verdict{};
  };
  return def;
}

// --- click-collapsible ------------------------------------------------------------
// The collapsed section is in the DOM but not visible until its header is clicked.

inline TaskDefinition click_collapsible() {
  TaskDefinition def;
  def.meta = {"click-collapsible", FunctionCategory::Two, false, false};
  def.generate = [](std::mt19937_64& rng) {
    GeneratedPage g;
    g.instruction = "Expand the section below and click submit.";
    push(g, node("body", std::nullopt, "wrap"));
    push(g, node("div", std::nullopt, "area"));
    auto header = push(g, node("h3", "Section #1", std::nullopt, "ui-accordion-header"));
    auto words = sample(word_pool(), 4, rng);
    auto body = node("p", words[0] + " " + words[1] + " " + words[2] + " " + words[3] + ".");
    body.owner = header;
    body.element.visible = false;
    push(g, std::move(body));
    auto submit = node("button", "Submit", "subbtn");
    submit.owner = header;
    submit.element.visible = false;
    g.params["submit"] = std::to_string(push(g, std::move(submit)));
    g.params["header"] = std::to_string(header);
    return g;
  };
  def.on_click = [](EpisodeState& st, std::uint32_t i) {
    if (i == param_index(st, "submit")) return success();
    if (i == param_index(st, "header")) {
      for (auto& n : st.page) {
        if (n.owner == i) n.element.visible = !n.element.visible;
      }
    }
    return Verdict{};
  };
  return def;
}

// --- enter-text ---------------------------------------------------------------------

inline TaskDefinition enter_text() {
  TaskDefinition def;
  def.meta = {"enter-text", FunctionCategory::ThreeToSix, false, false};
  def.generate = [](std::mt19937_64& rng) {
    GeneratedPage g;
    auto word = sample(word_pool(), 1, rng).front();
    g.instruction = "Enter \"" + word + "\" into the text field and press Submit.";
    g.params["word"] = word;
    push(g, node("body", std::nullopt, "wrap"));
    push(g, node("div", std::nullopt, "form"));
    push(g, node("input_text", std::nullopt, "tt"));
    g.params["submit"] = std::to_string(push(g, node("button", "Submit", "subbtn")));
    return g;
  };
  auto check = [](EpisodeState& st) {
    auto tt = index_of_dom_id(st, "tt");
    return st.page[*tt].element.value == st.params.at("word") ? success() : failure("wrong text");
  };
  def.on_click = [check](EpisodeState& st, std::uint32_t i) {
    return i == param_index(st, "submit") ? check(st) : Verdict{};
  };
  def.on_submit = [check](EpisodeState& st, std::uint32_t) { return check(st); };
  return def;
}

// --- login-user -----------------------------------------------------------------------

inline TaskDefinition login_user() {
  TaskDefinition def;
  def.meta = {"login-user", FunctionCategory::ThreeToSix, false, false};
  def.generate = [](std::mt19937_64& rng) {
    GeneratedPage g;
    auto user = text::to_lower(sample(name_pool(), 1, rng).front());
    auto pass = sample(word_pool(), 1, rng).front() + std::to_string(pick(rng, 90) + 10);
    g.instruction = "Enter the username \"" + user + "\" and the password \"" + pass +
                    "\" into the text fields and press login.";
    g.params["user"] = user;
    g.params["pass"] = pass;
    push(g, node("body", std::nullopt, "wrap"));
    push(g, node("div", std::nullopt, "form"));
    push(g, node("label", "Username"));
    push(g, node("input_text", std::nullopt, "username"));
    push(g, node("label", "Password"));
    push(g, node("input_password", std::nullopt, "password"));
    g.params["login"] = std::to_string(push(g, node("button", "Login", "subbtn")));
    return g;
  };
  auto check = [](EpisodeState& st) {
    const auto& u = st.page[*index_of_dom_id(st, "username")].element.value;
    const auto& p = st.page[*index_of_dom_id(st, "password")].element.value;
    bool ok = u == st.params.at("user") && p == st.params.at("pass");
    return ok ? success() : failure("wrong credentials");
  };
  def.on_click = [check](EpisodeState& st, std::uint32_t i) {
    return i == param_index(st, "login") ? check(st) : Verdict{};
  };
  def.on_submit = [check](EpisodeState& st, std::uint32_t) { return check(st); };
  return def;
}

// --- guess-number ---------------------------------------------------------------------
// Wrong guesses never end the episode; info["hint"] says "higher" or "lower".

inline TaskDefinition guess_number() {
  TaskDefinition def;
  def.meta = {"guess-number", FunctionCategory::Variable, false, false};
  def.generate = [](std::mt19937_64& rng) {
    GeneratedPage g;
    g.instruction = "Guess the number between 0-9 and press Submit. Use the feedback below to find the right number.";
    g.params["target"] = std::to_string(pick(rng, 10));
    push(g, node("body", std::nullopt, "wrap"));
    push(g, node("div", std::nullopt, "area"));
    push(g, node("input_number", std::nullopt, "tt"));
    g.params["submit"] = std::to_string(push(g, node("button", "Submit", "subbtn")));
    push(g, node("div", std::nullopt, "feedback"));
    return g;
  };
  auto check = [](EpisodeState& st) {
    auto& field = st.page[*index_of_dom_id(st, "tt")].element;
    auto& feedback = st.page[*index_of_dom_id(st, "feedback")].element;
    auto raw = std::string(text::trim(field.value.value_or("")));
    field.value.reset();
    int target = std::stoi(st.params.at("target"));
    if (raw.size() != 1 || raw[0] < '0' || raw[0] > '9') {
      feedback.text = "Please enter a number between 0 and 9.";
      return Verdict{0, {{"hint", "invalid"}}};
    }
    int guess = raw[0] - '0';
    if (guess == target) return success();
    auto hint = target > guess ? std::string("higher") : std::string("lower");
    feedback.text = "The number is " + hint + " than " + raw + ".";
    return Verdict{0, {{"hint", hint}}};
  };
  def.on_click = [check](EpisodeState& st, std::uint32_t i) {
    return i == param_index(st, "submit") ? check(st) : Verdict{};
  };
  def.on_submit = [check](EpisodeState& st, std::uint32_t) { return check(st); };
  return def;
}

// --- navigate-tree ----------------------------------------------------------------------
// Folders start collapsed; the target always sits below the top level.

inline TaskDefinition navigate_tree() {
  TaskDefinition def;
  def.meta = {"navigate-tree", FunctionCategory::Variable, true, true};
  def.generate = [](std::mt19937_64& rng) {
    GeneratedPage g;
    auto names = sample(word_pool(), word_pool().size(), rng);  // up to 30 nodes
    std::size_t next = 0;
    std::vector<std::uint32_t> candidates;

    push(g, node("body", std::nullopt, "wrap"));
    push(g, node("div", std::nullopt, "tree"));
    auto n_roots = 2 + pick(rng, 2);
    for (std::uint32_t r = 0; r < n_roots; ++r) {
      auto root = push(g, node("span", names[next++], std::nullopt, "folder"));
      auto n_children = 1 + pick(rng, 3);
      for (std::uint32_t c = 0; c < n_children; ++c) {
        bool sub = pick(rng, 3) == 0;
        auto child = node("span", names[next++], std::nullopt, sub ? "folder" : "file");
        child.owner = root;
        child.attached = false;
        auto ci = push(g, std::move(child));
        candidates.push_back(ci);
        if (!sub) continue;
        auto n_leaves = 1 + pick(rng, 2);
        for (std::uint32_t l = 0; l < n_leaves; ++l) {
          auto leaf = node("span", names[next++], std::nullopt, "file");
          leaf.owner = ci;
          leaf.attached = false;
          candidates.push_back(push(g, std::move(leaf)));
        }
      }
    }
    auto target = candidates[pick(rng, static_cast<std::uint32_t>(candidates.size()))];
    g.params["target"] = std::to_string(target);
    g.instruction = "Navigate through the file tree. Find and click on the folder or file named \"" +
                    *g.page[target].element.text + "\".";
    return g;
  };
  def.on_click = [](EpisodeState& st, std::uint32_t i) {
    if (i == param_index(st, "target")) return success();
    const auto& e = st.page[i].element;
    if (e.klass == "file") return failure("wrong file");
    if (e.klass != "folder") return Verdict{};
    auto key = "open." + std::to_string(i);
    bool open = st.params.contains(key);
    if (!open) {
      st.params[key] = "1";
      for (auto& n : st.page) {
        if (n.owner == i) n.attached = true;
      }
      return Verdict{};
    }
    // Collapse: detach every descendant and forget their expansion state.
    st.params.erase(key);
    std::vector<std::uint32_t> stack{i};
    while (!stack.empty()) {
      auto cur = stack.back();
      stack.pop_back();
      for (std::uint32_t k = 0; k < st.page.size(); ++k) {
        if (st.page[k].owner == cur) {
          st.page[k].attached = false;
          st.params.erase("open." + std::to_string(k));
          stack.push_back(k);
        }
      }
    }
    return Verdict{};
  };
  return def;
}

}  // namespace tasks

inline const TaskCatalog& bundled_catalog() {
  static const TaskCatalog kCatalog = [] {
    TaskCatalog c;
    c.add(tasks::click_test());
    c.add(tasks::click_button());
    c.add(tasks::click_dialog_2());
    c.add(tasks::click_checkboxes_transfer());
    c.add(tasks::click_tab_2_easy());
    c.add(tasks::click_collapsible());
    c.add(tasks::enter_text());
    c.add(tasks::login_user());
    c.add(tasks::guess_number());
    c.add(tasks::navigate_tree());
    return c;
  }();
  return kCatalog;
}

inline std::vector<TaskMetadata> list_tasks() { return bundled_catalog().list(); }

inline EpisodeState reset(std::string_view task_id, std::uint64_t seed) {
  return reset(bundled_catalog(), task_id, seed);
}

}  // namespace webwise
