#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "subseries/config.hpp"
#include "subseries/kernels.hpp"

namespace subseries {

using TermRule = std::function<double(Index)>;

enum class Family { harmonic, pseries, geometric, constant, custom };

// A known finite value (or upper bound) for sum_n a_n^p.
struct PowerSum {
  double p = 2.0;
  double bound = 0.0;
};

// A nonnegative, nonincreasing series given by its term rule.
//
// Registered families know a few analytic facts about themselves: a bound on
// the tail sum_{n>N} a_n, a bound on sum_n a_n^p, and constants C, m with
// m/n <= a_n <= C/n. Series built from an arbitrary rule know none of these,
// which makes every downstream verdict on them Inconclusive.
class MonotoneSeries {
 public:
  static MonotoneSeries harmonic();
  // a_n = n^{-exponent}, exponent > 0
  static MonotoneSeries pseries(double exponent);
  // a_n = ratio^{n-1}, 0 <= ratio < 1
  static MonotoneSeries geometric(double ratio);
  // a_n = value, value >= 0
  static MonotoneSeries constant(double value);
  static MonotoneSeries from_rule(std::string name, TermRule rule);

  // a_n for n >= 1; throws std::domain_error otherwise.
  double term(Index n) const;
  // Unchecked access for hot loops that already validated the range.
  double operator()(Index n) const { return rule_(n); }

  const std::string& name() const { return name_; }
  Family family() const { return family_; }
  double parameter() const { return parameter_; }

  // Upper bound on sum_{n>N} a_n, N >= 0. Empty when no analytic bound is
  // registered or the series diverges.
  std::optional<double> tail_bound(Index N) const;

  const std::optional<PowerSum>& power_sum() const { return power_sum_; }
  MonotoneSeries with_power_sum(PowerSum ps) const;
  // Certified upper bound for sum_n a_n^p: the registered value when p
  // matches it, otherwise the family's analytic bound if one exists.
  std::optional<double> power_sum_bound(double p) const;

  // C with a_n <= C/n for all n, when registered.
  std::optional<double> harmonic_majorant() const;
  // m > 0 with a_n >= m/n for all n, when registered.
  std::optional<double> harmonic_minorant() const;

  // Canonical spec string ("harmonic", "pseries:2", ...).
  std::string spec() const;

 private:
  MonotoneSeries(std::string name, Family family, double parameter, TermRule rule);

  std::string name_;
  Family family_ = Family::custom;
  double parameter_ = 0.0;
  TermRule rule_;
  std::optional<PowerSum> power_sum_;
};

struct PartialSum {
  Index upto = 0;
  double value = 0.0;
  double compensation = 0.0;
};

// sum_{n=from}^{to} a_n with compensated summation; 1 <= from <= to.
PartialSum partial_sum(const MonotoneSeries& series, Index from, Index to);

struct MonotoneCheck {
  bool monotone = true;
  std::optional<Index> first_violation;
  Index checked_upto = 0;
};

// True iff a_n >= a_{n+1} >= 0 for every n < upto; upto >= 2.
MonotoneCheck check_monotone(const MonotoneSeries& series, Index upto);

// Throws PreconditionError carrying the first violation when the series is not
// monotone on [1, upto].
void require_monotone(const MonotoneSeries& series, Index upto);

}  // namespace subseries
