#pragma once

#include <stdexcept>
#include <string>

namespace qrep {

/// Raised when an operation's input violates one of its preconditions.
/// `precondition()` is a short stable identifier (e.g. "power_of_two",
/// "chirp_resolution") that the CLI reports verbatim.
class PreconditionError : public std::invalid_argument {
 public:
  PreconditionError(std::string precondition, const std::string& detail)
      : std::invalid_argument(precondition + ": " + detail),
        precondition_(std::move(precondition)) {}

  const std::string& precondition() const noexcept { return precondition_; }

 private:
  std::string precondition_;
};

namespace detail {

inline void require(bool ok, const char* precondition, const std::string& detail) {
  if (!ok) throw PreconditionError(precondition, detail);
}

}  // namespace detail
}  // namespace qrep
