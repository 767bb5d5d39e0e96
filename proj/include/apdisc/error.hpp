#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace apdisc {

enum class ErrorCode {
  PreconditionViolation,
  NotCoprime,
  DegenerateModulus,
  CapExceeded,
  BadK,
  GridTooCoarse,
  BelowMinN,
  InternalInvariantViolation,
  ContainmentViolation,
  FamilyMismatch,
  Overflow,
  ParseError,
};

std::string_view to_string(ErrorCode code);

// Every failure carries the module that owns the violated invariant so the
// CLI can emit a machine-readable failure record.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string module, const std::string& what)
      : std::runtime_error(what), code_(code), module_(std::move(module)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& module() const noexcept { return module_; }

 private:
  ErrorCode code_;
  std::string module_;
};

#define APDISC_ENSURE(cond, code, module, msg)                 \
  do {                                                         \
    if (!(cond)) throw ::apdisc::Error((code), (module), (msg)); \
  } while (false)

}  // namespace apdisc
