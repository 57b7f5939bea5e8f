#pragma once

#include <stdexcept>
#include <string>

namespace wsq {

// Failure categories surfaced to callers.  The CLI maps horizon_exceeded to
// exit code 3 and everything else to exit code 2.
enum class errc {
  invalid_parameter,
  unresolved_name,
  horizon_exceeded,
  not_log_convex,
  no_positive_quotient,
  not_lc,
  maximizer_at_bracket_cap,
  non_finite,
  incompatible_systems,
  prerequisite_not_met,
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace wsq
