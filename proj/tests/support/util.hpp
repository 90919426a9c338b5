#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "webwise/webwise.hpp"

namespace testutil {

inline std::filesystem::path data_dir() { return WEBWISE_DATA_DIR; }
inline std::filesystem::path config_dir() { return WEBWISE_CONFIG_DIR; }
inline std::string golden_fixture() { return (data_dir() / "fixtures" / "golden.jsonl").string(); }

inline std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("webwise-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// Tag vocabulary for random pages: every whitelisted tag, mixed case
// variants, and tags the filter must drop.
inline const std::vector<std::string>& random_tags() {
  static const std::vector<std::string> kTags{
      "button", "text", "input_time", "textarea", "polygon", "label", "input_password", "rect", "tt",
      "circle", "span", "input_text", "input_number", "input_date", "input_radio", "tspan",
      "input_checkbox", "t", "h3", "ul", "a", "p", "div", "th", "tr", "td",
      "BUTTON", "Span", "DIV", "li", "body", "script", "img", "svg", "h1", "h2", "table", "form",
      "input_range", "select", "option", "em", "strong", "nav", "i", "b", "path"};
  return kTags;
}

inline const std::vector<std::string>& random_classes() {
  static const std::vector<std::string> kClasses{"folder", "Folder", "FOLDER", "file", "ui-tabs-anchor",
                                                 "folders", "folder-open", "btn", "x"};
  return kClasses;
}

inline std::string random_word(std::mt19937_64& rng) {
  static const std::string kAlpha = "abcdefghijklmnopqrstuvwxyz ABC'\"\\";
  std::string w;
  auto n = 1 + rng() % 8;
  for (std::size_t i = 0; i < n; ++i) w.push_back(kAlpha[rng() % kAlpha.size()]);
  return w;
}

inline webwise::Observation random_observation(std::mt19937_64& rng, std::size_t max_elements = 40) {
  webwise::Observation obs;
  auto n = rng() % (max_elements + 1);
  for (std::uint32_t i = 0; i < n; ++i) {
    webwise::DomElement e;
    e.element_id = webwise::ElementId{i};
    e.doc_order = i;
    e.tag = random_tags()[rng() % random_tags().size()];
    if (rng() % 3 == 0) e.klass = random_classes()[rng() % random_classes().size()];
    if (rng() % 4 == 0) e.dom_id = random_word(rng);
    if (rng() % 2 == 0) e.text = random_word(rng);
    e.visible = rng() % 5 != 0;
    obs.elements.push_back(e);
    if (rng() % 4 == 0) obs.interaction_log.insert(e.element_id);
  }
  return obs;
}

inline std::string random_bytes(std::mt19937_64& rng, std::size_t max_len = 400) {
  std::string s(rng() % (max_len + 1), '\0');
  for (auto& c : s) c = static_cast<char>(rng() & 0xFF);
  return s;
}

// Random mutations of otherwise well-formed program text.
inline std::string random_program_like(std::mt19937_64& rng) {
  static const std::vector<std::string> kPieces{
      "action = click_action1('button', 'ONE', observation)\n",
      "action = enter_text_action('Hello', observation)\n",
      "action = scroll_action1('Apple',observation)\n",
      "observation, reward, terminated, truncated, info = env.step(action)\n",
      "```python\n", "```\n", "for i in range(3):\n", "    ", "if x:\n", "# comment\n",
      "action = click_action1(", "'", "\"", "\\", ")", "(", "text=", ",", "\n", "\r\n", "\t",
      "Solution:", "getSummary(dom)\n", "def f():\n", "else:\n", "observation", "None"};
  std::string s;
  auto n = rng() % 30;
  for (std::size_t i = 0; i < n; ++i) s += kPieces[rng() % kPieces.size()];
  return s;
}

}  // namespace testutil
