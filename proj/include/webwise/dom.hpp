#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "webwise/text.hpp"

namespace webwise {

enum class ElementId : std::uint32_t {};

inline std::uint32_t to_index(ElementId id) noexcept { return static_cast<std::uint32_t>(id); }

/// One element of the page state. `tag` and `klass` are lowercase tokens;
/// `value` holds whatever was typed into a text-accepting element.
struct DomElement {
  ElementId element_id{};
  std::string tag;
  std::optional<std::string> klass;
  std::optional<std::string> dom_id;
  std::optional<std::string> text;
  std::optional<std::string> value;
  bool visible = true;
  bool focusable = false;
  std::optional<bool> checked;
  std::uint32_t doc_order = 0;

  friend bool operator==(const DomElement&, const DomElement&) = default;
};

inline bool accepts_text(std::string_view tag) {
  static const std::set<std::string, std::less<>> kTextTags{
      "input_text", "input_password", "input_number", "input_date", "input_time", "textarea"};
  return kTextTags.contains(tag);
}

/// Lowercases tag and class, the canonical form every consumer compares against.
inline DomElement normalized(DomElement e) {
  e.tag = text::to_lower(e.tag);
  if (e.klass) e.klass = text::to_lower(*e.klass);
  return e;
}

struct Observation {
  std::vector<DomElement> elements;
  std::set<ElementId> interaction_log;

  [[nodiscard]] const DomElement* find(ElementId id) const {
    auto it = std::find_if(elements.begin(), elements.end(),
                           [id](const DomElement& e) { return e.element_id == id; });
    return it == elements.end() ? nullptr : &*it;
  }
};

// Published "useful_tag" / "useful_classes" lists, duplicates included as printed.
inline constexpr std::string_view kUsefulTagListing[] = {
    "button", "text", "input_time", "textarea", "polygon", "label", "input_password",
    "rect", "tt", "circle", "input_password", "span", "input_text", "input_number",
    "input_date", "input_radio", "tspan", "input_checkbox", "t", "button", "h3",
    "ul", "a", "p", "div", "th", "tr", "td"};
inline constexpr std::string_view kUsefulClassListing[] = {"folder"};

struct FilterConfig {
  std::set<std::string, std::less<>> useful_tags;
  std::set<std::string, std::less<>> useful_classes;
  bool preserve_order = true;

  static FilterConfig defaults() {
    FilterConfig cfg;
    for (auto tag : kUsefulTagListing) cfg.useful_tags.emplace(tag);
    for (auto cls : kUsefulClassListing) cfg.useful_classes.emplace(cls);
    return cfg;
  }

  [[nodiscard]] bool accepts(const DomElement& e) const {
    if (useful_tags.contains(text::to_lower(e.tag))) return true;
    return e.klass && useful_classes.contains(text::to_lower(*e.klass));
  }
};

struct FilteredObservation {
  std::vector<DomElement> elements;
  std::vector<std::uint8_t> flags;
};

/// The getSummary step: whitelist by tag or class, with a parallel array of
/// clicked/modified flags. Without `preserve_order` elements come out grouped by
/// tag, which reproduces the order loss of the original filter.
inline FilteredObservation filter_dom(const Observation& obs, const FilterConfig& cfg) {
  FilteredObservation out;
  for (const auto& e : obs.elements) {
    if (cfg.accepts(e)) out.elements.push_back(e);
  }
  if (!cfg.preserve_order) {
    std::stable_sort(out.elements.begin(), out.elements.end(),
                     [](const DomElement& a, const DomElement& b) {
                       return text::to_lower(a.tag) < text::to_lower(b.tag);
                     });
  }
  out.flags.reserve(out.elements.size());
  for (const auto& e : out.elements) {
    out.flags.push_back(obs.interaction_log.contains(e.element_id) ? 1 : 0);
  }
  return out;
}

inline std::string render_element(const DomElement& e) {
  std::string line = e.tag;
  if (e.klass) line += " " + *e.klass;
  if (e.dom_id) line += " id=" + *e.dom_id;
  if (e.text) line += " text=" + text::quote(*e.text);
  if (e.value) line += " value=" + text::quote(*e.value);
  if (e.checked) line += *e.checked ? " checked=true" : " checked=false";
  if (!e.visible) line += " hidden";
  return line;
}

inline std::string serialize_observation(const FilteredObservation& fobs, bool include_flags) {
  std::string out;
  for (const auto& e : fobs.elements) {
    out += render_element(e);
    out += '\n';
  }
  if (include_flags) {
    out += "flags: [";
    for (std::size_t i = 0; i < fobs.flags.size(); ++i) {
      if (i) out += ',';
      out += fobs.flags[i] ? '1' : '0';
    }
    out += "]\n";
  }
  return out;
}

inline std::string serialize_whole_dom(const Observation& obs) {
  std::string out;
  for (const auto& e : obs.elements) {
    out += render_element(e);
    out += '\n';
  }
  return out;
}

}  // namespace webwise
