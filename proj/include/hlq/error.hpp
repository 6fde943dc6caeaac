#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hlq {

enum class ErrorKind {
  domain_error,
  precision_unreachable,
  checkpoint_conflict,
  io_error,
  format_error,
  no_convergence,
  insufficient_span,
  near_zero_abort,
  precondition,
};

constexpr std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain_error: return "domain_error";
    case ErrorKind::precision_unreachable: return "precision_unreachable";
    case ErrorKind::checkpoint_conflict: return "checkpoint_conflict";
    case ErrorKind::io_error: return "io_error";
    case ErrorKind::format_error: return "format_error";
    case ErrorKind::no_convergence: return "no_convergence";
    case ErrorKind::insufficient_span: return "insufficient_span";
    case ErrorKind::near_zero_abort: return "near_zero_abort";
    case ErrorKind::precondition: return "precondition";
  }
  return "unknown";
}

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can report it by name.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace hlq
