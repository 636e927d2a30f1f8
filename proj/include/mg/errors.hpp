#ifndef MG_ERRORS_HPP
#define MG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mg {

// Bad user input: unknown type label, generator index out of range, word not
// reduced, malformed config.
struct UsageError : std::invalid_argument {
  explicit UsageError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Enumeration guard tripped.
struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

// A Hilbert function that cannot come from a graded free module.
struct NotGradedFree : std::runtime_error {
  explicit NotGradedFree(const std::string& msg) : std::runtime_error(msg) {}
};

// BMP construction could not certify stabilization at the requested bound.
struct DegreeBoundError : std::runtime_error {
  explicit DegreeBoundError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace mg

#endif
