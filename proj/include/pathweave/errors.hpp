#pragma once

#include <stdexcept>

namespace pathweave {

/// Invalid configuration or command-line input. Maps to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unusable engine state file (missing, wrong version, checksum mismatch).
/// Maps to exit status 2.
class StateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that violates a stream contract, e.g. timestamps out of order.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pathweave
