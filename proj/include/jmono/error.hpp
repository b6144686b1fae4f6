#pragma once
#include <stdexcept>
#include <string>

namespace jmono {

// Bad user-supplied data (malformed input, violated precondition). CLI exit code 1.
struct input_error : std::runtime_error {
  explicit input_error(const std::string& m) : std::runtime_error(m) {}
};

// Broken internal invariant; indicates a bug, not bad input. CLI exit code 2.
struct internal_error : std::logic_error {
  explicit internal_error(const std::string& m) : std::logic_error(m) {}
};

}  // namespace jmono
