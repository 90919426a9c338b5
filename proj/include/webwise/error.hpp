#pragma once

#include <stdexcept>
#include <string>

namespace webwise {

enum class Errc {
  unknown_task,
  episode_finished,
  element_not_found,
  no_focused_element,
  program_unusable,
  token_limit_exceeded,
  transport_error,
  script_miss,
  config_error,
  io_error,
};

inline const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::unknown_task: return "UnknownTask";
    case Errc::episode_finished: return "EpisodeFinished";
    case Errc::element_not_found: return "ElementNotFound";
    case Errc::no_focused_element: return "NoFocusedElement";
    case Errc::program_unusable: return "ProgramUnusable";
    case Errc::token_limit_exceeded: return "TokenLimitExceeded";
    case Errc::transport_error: return "TransportError";
    case Errc::script_miss: return "ScriptMiss";
    case Errc::config_error: return "ConfigError";
    case Errc::io_error: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library. `code()` identifies the category,
/// `what()` carries the diagnostic text.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  [[nodiscard]] Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace webwise
