#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "webwise/error.hpp"
#include "webwise/prompt_assets.hpp"
#include "webwise/text.hpp"

namespace webwise {

enum class Method { InstructionOnly, SingleStepFiltered, SingleStepWhole, WebWise };

inline const char* method_key(Method m) {
  switch (m) {
    case Method::InstructionOnly: return "instruction-only";
    case Method::SingleStepFiltered: return "filtered";
    case Method::SingleStepWhole: return "whole";
    case Method::WebWise: return "webwise";
  }
  return "?";
}

enum class Role { system, user, assistant };

inline const char* role_name(Role r) {
  switch (r) {
    case Role::system: return "system";
    case Role::user: return "user";
    case Role::assistant: return "assistant";
  }
  return "?";
}

struct Message {
  Role role = Role::user;
  std::string content;
  friend bool operator==(const Message&, const Message&) = default;
};

struct PromptBundle {
  std::vector<Message> messages;
  std::size_t token_estimate = 0;
  friend bool operator==(const PromptBundle&, const PromptBundle&) = default;
};

enum class ExampleOrigin { manual, automatic };

struct ContextExample {
  std::string task_description;
  std::string serialized_observation;
  std::string program_text;
  ExampleOrigin origin = ExampleOrigin::manual;
  friend bool operator==(const ContextExample&, const ContextExample&) = default;
};

enum class BackendKind { remote, scripted };

struct LlmConfig {
  std::string model_name = "gpt-3.5-turbo";
  double temperature = 0.0;
  std::size_t max_tokens = 4096;
  int task_message_variant = assets::kDefaultTaskMessage;
  BackendKind backend = BackendKind::scripted;
  std::string base_url = "https://api.openai.com";
  std::string fixture_path;
};

/// chars/4, rounded up, over every message body.
inline std::size_t estimate_tokens(const PromptBundle& bundle) {
  std::size_t chars = 0;
  for (const auto& m : bundle.messages) chars += m.content.size();
  return (chars + 3) / 4;
}

inline std::string_view task_message(int variant) {
  if (variant < 1 || variant > static_cast<int>(assets::kTaskMessages.size())) {
    throw Error(Errc::config_error, "task_message_variant must be in 1..13, got " + std::to_string(variant));
  }
  return assets::kTaskMessages[static_cast<std::size_t>(variant - 1)];
}

// The Instruction-Only API text carries no "Objects in Image" fragments.
inline std::string api_description(Method method) {
  if (method != Method::InstructionOnly) return std::string(assets::kApiDescription);
  std::string out;
  for (auto line : text::split_lines(assets::kApiDescription)) {
    auto cut = line.find("Objects in Image");
    if (cut != std::string_view::npos) {
      line = line.substr(0, cut);
      while (!line.empty() && (line.back() == ' ' || line.back() == '\t')) line.remove_suffix(1);
    }
    out.append(line);
    out.push_back('\n');
  }
  out.pop_back();
  return out;
}

inline std::string render_query(std::string_view obs_text, std::string_view task, bool with_objects) {
  std::string out;
  if (with_objects) {
    auto obs = obs_text;
    while (!obs.empty() && obs.back() == '\n') obs.remove_suffix(1);
    out += "Objects in Image: ";
    out += obs;
    out += ";\n";
  }
  out += "Task: ";
  out += task;
  out += ";\nSolution?";
  return out;
}

/// Message order: system message, API, solution guidelines, [task message for
/// WebWISE], in-context examples (query + solution pairs), task query. Every
/// automatic example is included; manual ones up to `k`.
inline PromptBundle assemble_prompt(Method method, int k, const std::vector<ContextExample>& examples,
                                    std::string_view instruction, std::string_view obs_text,
                                    const LlmConfig& cfg) {
  bool instruction_only = method == Method::InstructionOnly;
  if (instruction_only != obs_text.empty()) {
    throw Error(Errc::config_error, "observation text must be empty exactly for the Instruction-Only method");
  }
  PromptBundle bundle;
  bundle.messages.push_back({Role::system, std::string(assets::kSystemMessage)});
  bundle.messages.push_back({Role::system, api_description(method)});
  bundle.messages.push_back({Role::system, std::string(assets::kSolutionDescription)});
  if (method == Method::WebWise) {
    bundle.messages.push_back({Role::system, std::string(task_message(cfg.task_message_variant))});
  }

  int manual_used = 0;
  for (const auto& ex : examples) {
    if (ex.origin == ExampleOrigin::manual) {
      if (manual_used >= k) continue;
      ++manual_used;
    }
    std::string query;
    if (ex.origin == ExampleOrigin::automatic) {
      query += assets::kAutoContextPreamble;
      query += '\n';
    }
    query += render_query(ex.serialized_observation, ex.task_description, !instruction_only);
    bundle.messages.push_back({Role::user, std::move(query)});
    bundle.messages.push_back({Role::assistant, ex.program_text});
  }
  if (manual_used < k) {
    throw Error(Errc::config_error, "k=" + std::to_string(k) + " but only " +
                                        std::to_string(manual_used) + " manual example(s) available");
  }

  bundle.messages.push_back({Role::user, render_query(obs_text, instruction, !instruction_only)});
  bundle.token_estimate = estimate_tokens(bundle);
  return bundle;
}

}  // namespace webwise
