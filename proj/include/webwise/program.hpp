#pragma once

#include <array>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "webwise/action.hpp"
#include "webwise/env.hpp"
#include "webwise/error.hpp"
#include "webwise/text.hpp"

namespace webwise {

inline constexpr std::string_view kClickFn = "click_action1";
inline constexpr std::string_view kEnterTextFn = "enter_text_action";
inline constexpr std::string_view kScrollFn = "scroll_action1";
inline constexpr std::string_view kStepLine =
    "observation, reward, terminated, truncated, info = env.step(action)";

struct GeneratedText {
  std::string raw;
};

struct ActionCall {
  std::string function;
  std::vector<std::string> args;
  friend bool operator==(const ActionCall&, const ActionCall&) = default;
};

struct StepCall {
  friend bool operator==(const StepCall&, const StepCall&) = default;
};

struct Unsupported {
  std::string line;
  std::string reason;
  friend bool operator==(const Unsupported&, const Unsupported&) = default;
};

using Statement = std::variant<ActionCall, StepCall, Unsupported>;

struct Program {
  std::vector<Statement> statements;
  bool usable = false;

  [[nodiscard]] std::size_t action_count() const {
    std::size_t n = 0;
    for (const auto& s : statements) n += std::holds_alternative<ActionCall>(s);
    return n;
  }
  [[nodiscard]] std::size_t step_count() const {
    std::size_t n = 0;
    for (const auto& s : statements) n += std::holds_alternative<StepCall>(s);
    return n;
  }
  [[nodiscard]] std::vector<ActionCall> actions() const {
    std::vector<ActionCall> out;
    for (const auto& s : statements) {
      if (const auto* a = std::get_if<ActionCall>(&s)) out.push_back(*a);
    }
    return out;
  }
};

namespace detail {

inline std::size_t literal_arity(std::string_view fn) {
  if (fn == kClickFn) return 2;
  if (fn == kEnterTextFn || fn == kScrollFn) return 1;
  return 0;
}

class LineScanner {
 public:
  explicit LineScanner(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  [[nodiscard]] bool done() const { return pos_ >= s_.size(); }
  [[nodiscard]] char peek() const { return done() ? '\0' : s_[pos_]; }
  [[nodiscard]] char peek_at(std::size_t ahead) const {
    return pos_ + ahead < s_.size() ? s_[pos_ + ahead] : '\0';
  }
  bool eat(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  std::string_view identifier() {
    auto start = pos_;
    auto ok = [](char c, bool first) {
      auto u = static_cast<unsigned char>(c);
      return std::isalpha(u) || c == '_' || (!first && std::isdigit(u));
    };
    while (!done() && ok(s_[pos_], pos_ == start)) ++pos_;
    return s_.substr(start, pos_ - start);
  }

  // Python-style quoted literal; the scanner sits on the opening quote.
  std::optional<std::string> string_literal() {
    char quote = peek();
    if (quote != '\'' && quote != '"') return std::nullopt;
    ++pos_;
    std::string out;
    while (!done()) {
      char c = s_[pos_++];
      if (c == quote) return out;
      if (c != '\\') {
        out.push_back(c);
        continue;
      }
      if (done()) return std::nullopt;
      char esc = s_[pos_++];
      switch (esc) {
        case 'n': out.push_back('\n'); break;
        case 't': out.push_back('\t'); break;
        case 'r': out.push_back('\r'); break;
        case '\\': out.push_back('\\'); break;
        case '\'': out.push_back('\''); break;
        case '"': out.push_back('"'); break;
        default:
          out.push_back('\\');
          out.push_back(esc);
      }
    }
    return std::nullopt;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

inline bool is_step_line(std::string_view line) {
  std::string compact;
  for (char c : line) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  }
  if (!compact.empty() && compact.back() == ';') compact.pop_back();
  return compact == "observation,reward,terminated,truncated,info=env.step(action)";
}

inline bool starts_control_flow(std::string_view line) {
  static constexpr std::array<std::string_view, 9> kKeywords{
      "if", "elif", "else", "for", "while", "try", "except", "with", "def"};
  for (auto kw : kKeywords) {
    if (line.substr(0, kw.size()) != kw) continue;
    if (line.size() == kw.size()) return true;
    char next = line[kw.size()];
    if (next == ' ' || next == ':' || next == '(' || next == '\t') return true;
  }
  return false;
}

// nullopt: the line is not an action assignment at all.
inline std::optional<Statement> parse_action_line(std::string_view line) {
  LineScanner sc(line);
  sc.skip_ws();
  if (sc.identifier() != "action") return std::nullopt;
  sc.skip_ws();
  if (!sc.eat('=') || sc.peek() == '=') return std::nullopt;
  sc.skip_ws();
  auto fn = sc.identifier();
  sc.skip_ws();
  if (!sc.eat('(')) return std::nullopt;

  auto unsupported = [&](std::string reason) -> Statement {
    return Unsupported{std::string(line), std::move(reason)};
  };
  auto arity = literal_arity(fn);
  if (arity == 0) return unsupported("unknown function '" + std::string(fn) + "'");

  ActionCall call{std::string(fn), {}};
  sc.skip_ws();
  bool closed = sc.eat(')');
  while (!closed) {
    sc.skip_ws();
    if (sc.peek() == '\'' || sc.peek() == '"') {
      auto lit = sc.string_literal();
      if (!lit) return unsupported("unterminated string literal");
      call.args.push_back(std::move(*lit));
    } else {
      auto name = sc.identifier();
      if (name.empty()) return unsupported("non-literal argument");
      sc.skip_ws();
      if (sc.peek() == '=' && sc.peek_at(1) != '=') {
        sc.eat('=');
        sc.skip_ws();
        auto lit = sc.string_literal();
        if (!lit) return unsupported("non-literal argument");
        call.args.push_back(std::move(*lit));
      } else if (name != "observation") {
        return unsupported("non-literal argument '" + std::string(name) + "'");
      }
    }
    sc.skip_ws();
    if (sc.eat(')')) {
      closed = true;
    } else if (!sc.eat(',')) {
      return unsupported("malformed argument list");
    }
  }
  sc.skip_ws();
  sc.eat(';');
  sc.skip_ws();
  if (!sc.done() && sc.peek() != '#') return unsupported("trailing text after call");
  if (call.args.size() != arity) {
    return unsupported(std::string(fn) + " expects " + std::to_string(arity) + " literal argument(s)");
  }
  return call;
}

inline std::size_t indentation(std::string_view line) {
  std::size_t n = 0;
  while (n < line.size() && (line[n] == ' ' || line[n] == '\t')) ++n;
  return n;
}

}  // namespace detail

/// Line-oriented extraction of the three API calls and the env.step
/// confirmations from free-form completion text. Never throws.
inline Program extract_program(const GeneratedText& generated) {
  Program prog;
  std::optional<std::size_t> block_indent;
  for (auto raw_line : text::split_lines(generated.raw)) {
    auto trimmed = text::trim(raw_line);
    if (trimmed.empty()) continue;
    auto indent = detail::indentation(raw_line);
    auto keep = [&](std::string reason) {
      prog.statements.emplace_back(Unsupported{std::string(trimmed), std::move(reason)});
    };

    if (trimmed.substr(0, 3) == "```") {
      keep("code fence");
      continue;
    }
    if (block_indent) {
      if (indent > *block_indent) {
        keep("inside control-flow block");
        continue;
      }
      block_indent.reset();
    }
    if (trimmed.substr(0, 9) == "Solution:") trimmed = text::trim(trimmed.substr(9));
    if (trimmed.empty()) continue;
    if (trimmed.front() == '#') {
      keep("comment");
      continue;
    }
    if (detail::starts_control_flow(trimmed)) {
      block_indent = indent;
      keep("control flow is not interpreted");
      continue;
    }
    if (trimmed.find("getSummary(") != std::string_view::npos) {
      keep("getSummary: observation refresh is implicit");
      continue;
    }
    if (detail::is_step_line(trimmed)) {
      prog.statements.emplace_back(StepCall{});
      continue;
    }
    if (auto stmt = detail::parse_action_line(trimmed)) {
      prog.statements.push_back(std::move(*stmt));
      continue;
    }
    keep("not an API call");
  }
  prog.usable = prog.action_count() > 0;
  return prog;
}

inline std::string render(const ActionCall& call) {
  std::string out = "action = " + call.function + "(";
  for (const auto& arg : call.args) out += text::py_literal(arg) + ", ";
  out += "observation)";
  return out;
}

/// Canonical program text: each call followed by its env.step confirmation.
inline std::string render_program(const std::vector<ActionCall>& calls) {
  std::string out;
  for (const auto& c : calls) {
    out += render(c);
    out += '\n';
    out += kStepLine;
    out += '\n';
  }
  return out;
}

inline Action resolve(const ActionCall& call, const Observation& obs, std::optional<ElementId> focused) {
  if (call.function == kClickFn) return click_action(call.args.at(0), call.args.at(1), obs);
  if (call.function == kEnterTextFn) return enter_text_action(call.args.at(0), obs, focused);
  if (call.function == kScrollFn) return scroll_action(call.args.at(0), obs);
  throw Error(Errc::program_unusable, "unknown function " + call.function);
}

struct ExecutedStep {
  ActionCall call;
  Action action;
  StepOutcome outcome;
};

struct ExecutionResult {
  StepOutcome final_outcome;
  std::vector<ExecutedStep> trace;
  std::optional<std::string> aborted_reason;
};

/// Runs each ActionCall as exactly one environment step, resolving against the
/// observation current at that point. A resolution failure stops execution but
/// leaves the episode running.
inline ExecutionResult execute_program(const Program& prog, EpisodeState& state) {
  if (!prog.usable) throw Error(Errc::program_unusable, "program contains no usable action");
  if (state.terminated) throw Error(Errc::episode_finished, "episode already finished");

  ExecutionResult result;
  result.final_outcome.observation = state.current_observation;
  for (const auto& stmt : prog.statements) {
    const auto* call = std::get_if<ActionCall>(&stmt);
    if (!call) continue;
    Action action;
    try {
      action = resolve(*call, state.current_observation, state.focused_element);
    } catch (const Error& e) {
      result.aborted_reason = render(*call) + ": " + e.what();
      break;
    }
    auto outcome = step(state, action);
    result.final_outcome = outcome;
    result.trace.push_back({*call, std::move(action), std::move(outcome)});
    if (state.terminated) break;
  }
  return result;
}

}  // namespace webwise
