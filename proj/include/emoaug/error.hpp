#pragma once

#include <stdexcept>
#include <string>

namespace emoaug {

// Bad input data: malformed records, failed invariants, empty results.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inconsistent settings (language mismatch, invalid thresholds, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Failure inside a model provider. Retryable failures may succeed on a later
// attempt; permanent ones will not.
class ProviderError : public std::runtime_error {
 public:
  ProviderError(const std::string& what, bool retryable)
      : std::runtime_error(what), retryable_(retryable) {}

  bool retryable() const noexcept { return retryable_; }

 private:
  bool retryable_;
};

}  // namespace emoaug
