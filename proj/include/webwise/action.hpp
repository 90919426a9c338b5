#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "webwise/dom.hpp"
#include "webwise/error.hpp"
#include "webwise/text.hpp"

namespace webwise {

struct Click {
  ElementId target{};
  friend bool operator==(const Click&, const Click&) = default;
};

/// Text typed into `target`. A trailing newline stands for pressing enter.
struct EnterText {
  std::string text;
  ElementId target{};

  [[nodiscard]] bool submits() const { return !text.empty() && text.back() == '\n'; }
  friend bool operator==(const EnterText&, const EnterText&) = default;
};

struct Scroll {
  ElementId target{};
  friend bool operator==(const Scroll&, const Scroll&) = default;
};

using Action = std::variant<Click, EnterText, Scroll>;

inline constexpr std::string_view kNotFoundDiagnostic = "Cannot find in the DOM_element";

namespace detail {

template <class Pred>
const DomElement* first_in_document_order(const Observation& obs, Pred pred) {
  const DomElement* best = nullptr;
  for (const auto& e : obs.elements) {
    if (pred(e) && (!best || e.doc_order < best->doc_order)) best = &e;
  }
  return best;
}

inline bool matches_opt(const std::optional<std::string>& field, std::string_view want) {
  return field && text::iequals(*field, want);
}

}  // namespace detail

inline Action click_action(std::string_view tag_class_name, std::string_view id_text_name,
                           const Observation& obs) {
  const auto* hit = detail::first_in_document_order(obs, [&](const DomElement& e) {
    if (!e.visible) return false;
    bool kind = text::iequals(e.tag, tag_class_name) || detail::matches_opt(e.klass, tag_class_name);
    bool name = detail::matches_opt(e.dom_id, id_text_name) || detail::matches_opt(e.text, id_text_name);
    return kind && name;
  });
  if (!hit) throw Error(Errc::element_not_found, std::string(kNotFoundDiagnostic));
  return Click{hit->element_id};
}

inline Action enter_text_action(std::string_view input_text, const Observation& obs,
                                std::optional<ElementId> focused) {
  const DomElement* target = focused ? obs.find(*focused) : nullptr;
  if (!target || !target->focusable || !accepts_text(target->tag)) {
    throw Error(Errc::no_focused_element,
                "no text-accepting element is focused; click it with click_action1 first");
  }
  return EnterText{std::string(input_text), target->element_id};
}

// Unlike clicks, scrolling may target elements that are currently off-screen.
inline Action scroll_action(std::string_view text_to_scroll_to, const Observation& obs) {
  const auto* hit = detail::first_in_document_order(
      obs, [&](const DomElement& e) { return detail::matches_opt(e.text, text_to_scroll_to); });
  if (!hit) throw Error(Errc::element_not_found, std::string(kNotFoundDiagnostic));
  return Scroll{hit->element_id};
}

inline std::string describe(const Action& action) {
  return std::visit(
      [](const auto& a) -> std::string {
        using T = std::decay_t<decltype(a)>;
        auto id = std::to_string(to_index(a.target));
        if constexpr (std::is_same_v<T, Click>) {
          return "click #" + id;
        } else if constexpr (std::is_same_v<T, EnterText>) {
          return "enter_text #" + id + " " + text::quote(a.text);
        } else {
          return "scroll #" + id;
        }
      },
      action);
}

}  // namespace webwise
