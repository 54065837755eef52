#pragma once

#include <stdexcept>
#include <string>

namespace rcc5 {

// Malformed external input (files, CLI arguments).  CLI exit code 2.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// A construction failed its own post-verification.  CLI exit code 3.
struct VerificationError : std::logic_error {
  explicit VerificationError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace rcc5
