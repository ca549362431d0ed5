#pragma once

#include <stdexcept>
#include <string>

namespace stq {

// Raised when a requested problem size exceeds the configured memory caps
// (n^q tensor entries or 2^n amplitudes). CLI maps this to exit code 3.
struct CapacityError : std::runtime_error {
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Raised on malformed or inconsistent inputs/configs. CLI maps this to exit code 2.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stq
