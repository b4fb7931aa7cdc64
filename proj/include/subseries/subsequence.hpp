#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "subseries/kernels.hpp"

namespace subseries {

enum class SeqKind { identity, geometric, polynomial, digit_restricted, explicit_list, affine, rule };

// Positive integers whose unpadded base-`base` representation avoids every
// digit in `forbidden`.
struct DigitRestriction {
  int base = 10;
  std::vector<int> forbidden;

  // Throws std::invalid_argument unless base >= 2, forbidden is a nonempty
  // proper subset of the digits, and some nonzero digit stays allowed.
  void validate() const;
  bool allows(Index n) const;
  int allowed_count() const;
};

// Density envelope S(n)/n <= c * n^{-alpha}, 0 < alpha < 1.
struct PolySparsity {
  double c = 1.0;
  double alpha = 0.5;

  static PolySparsity make(double c, double alpha);
  double beta() const { return 1.0 / (1.0 - alpha); }
};

// s(k) >= gamma * k^beta for every k >= 1.
struct PowerLowerBound {
  double gamma = 1.0;
  double beta = 1.0;
};

// A strictly increasing sequence s(1) < s(2) < ... of positive integers, with
// its counting function S(n) = #{k : s(k) <= n}.
//
// Value semantics: copies share an immutable implementation. All evaluation
// is pure and safe to call concurrently.
class Subsequence {
 public:
  struct Impl;

  static Subsequence identity();
  // s(k) = ratio^{k-1}, ratio >= 2
  static Subsequence geometric(Index ratio);
  static Subsequence powers_of_two() { return geometric(2); }
  // s(k) = floor(k^beta), beta > 1
  static Subsequence polynomial(double beta);
  // s(k) = k^exponent computed exactly, exponent >= 2
  static Subsequence integer_power(int exponent);
  static Subsequence squares() { return integer_power(2); }
  static Subsequence cubes() { return integer_power(3); }
  static Subsequence digit_restricted(DigitRestriction restriction);
  // Finite list; not required to be increasing (validate() reports that).
  static Subsequence explicit_list(std::vector<Index> values);
  // s(k) = slope * k + offset, slope >= 1, slope + offset >= 1
  static Subsequence affine(Index slope, Index offset);
  // Arbitrary value rule; counting is derived by galloping search.
  static Subsequence from_value_rule(std::string name, std::function<Index(Index)> rule);

  // s(k), k >= 1. Throws std::out_of_range past the end of a finite list and
  // std::overflow_error when s(k) does not fit in 64 bits.
  Index value(Index k) const;
  // S(n) for n >= 0 (S(0) = 0).
  Index counting(Index n) const;
  // Δs(k) = s(k+1) - s(k)
  Index forward_diff(Index k) const;
  // Δs(S(n)) for n >= s(1); std::domain_error below s(1).
  Index weight_at(Index n) const;

  std::optional<Index> length() const;
  SeqKind kind() const;
  const std::string& name() const;
  std::string spec() const;

  // Registered analytic facts; empty when the kind has none.
  std::optional<PowerLowerBound> power_lower_bound() const;
  std::optional<PolySparsity> sparsity_envelope() const;
  // g with s(k) <= g * k for all k.
  std::optional<double> linear_upper_bound() const;
  const DigitRestriction* digit_restriction() const;

 private:
  explicit Subsequence(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

struct ValidationReport {
  bool passed = true;
  Index checked_k = 0;  // horizon_k, capped by the list length and 64-bit values
  std::optional<Index> failed_k;
  std::optional<Index> failed_n;
  std::string reason;
};

// Checks strict increase for k < horizon_k, S(s(k)) = k and S(s(k)-1) = k-1
// for k <= horizon_k, and s(S(n)) <= n < s(S(n)+1) for n in [s(1), horizon_n].
// Digit-restricted sequences are also compared against direct enumeration.
ValidationReport validate(const Subsequence& seq, Index horizon_k, Index horizon_n);

}  // namespace subseries
