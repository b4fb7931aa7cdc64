#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace subseries {

// A criterion refused to run because one of its inputs breaks a contract
// (non-monotone source, domination failure, too small a ratio constant).
// The witness is the index that triggered the refusal, when there is one.
class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(const std::string& what,
                             std::optional<std::int64_t> witness = std::nullopt)
      : std::runtime_error(what), witness_(witness) {}

  std::optional<std::int64_t> witness() const { return witness_; }

 private:
  std::optional<std::int64_t> witness_;
};

// A sandwich or chain inequality that must hold by construction did not.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The requested horizon needs more term evaluations than the configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace subseries
