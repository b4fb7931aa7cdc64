#include "subseries/series.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "subseries/errors.hpp"
#include "subseries/format.hpp"

namespace subseries {

namespace {

double round_up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

// sum_{n>=1} n^{-q} <= 1 + 1/(q-1) for q > 1.
double zeta_upper(double q) { return round_up(q / (q - 1.0)); }

}  // namespace

MonotoneSeries::MonotoneSeries(std::string name, Family family, double parameter, TermRule rule)
    : name_(std::move(name)), family_(family), parameter_(parameter), rule_(std::move(rule)) {}

MonotoneSeries MonotoneSeries::harmonic() {
  MonotoneSeries s("harmonic", Family::harmonic, 1.0,
                   [](Index n) { return 1.0 / static_cast<double>(n); });
  constexpr double basel = std::numbers::pi * std::numbers::pi / 6.0;
  s.power_sum_ = PowerSum{2.0, round_up(round_up(basel))};
  return s;
}

MonotoneSeries MonotoneSeries::pseries(double exponent) {
  if (!(exponent > 0.0) || !std::isfinite(exponent))
    throw std::domain_error("pseries: exponent must be positive and finite");
  if (exponent == 1.0) return harmonic();
  return MonotoneSeries("pseries:" + shortest(exponent), Family::pseries, exponent,
                        [exponent](Index n) {
                          return 1.0 / std::pow(static_cast<double>(n), exponent);
                        });
}

MonotoneSeries MonotoneSeries::geometric(double ratio) {
  if (!(ratio >= 0.0 && ratio < 1.0))
    throw std::domain_error("geometric: ratio must lie in [0, 1)");
  return MonotoneSeries("geometric:" + shortest(ratio), Family::geometric, ratio,
                        [ratio](Index n) {
                          if (n == 1) return 1.0;
                          return std::pow(ratio, static_cast<double>(n - 1));
                        });
}

MonotoneSeries MonotoneSeries::constant(double value) {
  if (!(value >= 0.0) || !std::isfinite(value))
    throw std::domain_error("const: value must be finite and nonnegative");
  return MonotoneSeries("const:" + shortest(value), Family::constant, value,
                        [value](Index) { return value; });
}

MonotoneSeries MonotoneSeries::from_rule(std::string name, TermRule rule) {
  if (!rule) throw std::invalid_argument("from_rule: empty term rule");
  return MonotoneSeries(std::move(name), Family::custom, 0.0, std::move(rule));
}

double MonotoneSeries::term(Index n) const {
  if (n < 1) throw std::domain_error("term: index must be >= 1, got " + std::to_string(n));
  return rule_(n);
}

std::optional<double> MonotoneSeries::tail_bound(Index N) const {
  if (N < 0) throw std::domain_error("tail_bound: N must be >= 0");
  switch (family_) {
    case Family::pseries: {
      const double e = parameter_;
      if (e <= 1.0) return std::nullopt;
      if (N == 0) return zeta_upper(e);
      // sum_{n>N} n^{-e} < int_N^inf x^{-e} dx
      return round_up(std::pow(static_cast<double>(N), 1.0 - e) / (e - 1.0));
    }
    case Family::geometric: {
      const double r = parameter_;
      return round_up(std::pow(r, static_cast<double>(N)) / (1.0 - r));
    }
    case Family::constant:
      if (parameter_ == 0.0) return 0.0;
      return std::nullopt;
    case Family::harmonic:
    case Family::custom:
      return std::nullopt;
  }
  return std::nullopt;
}

MonotoneSeries MonotoneSeries::with_power_sum(PowerSum ps) const {
  if (!(ps.p > 1.0)) throw std::domain_error("with_power_sum: p must exceed 1");
  if (!(ps.bound >= 0.0)) throw std::domain_error("with_power_sum: bound must be >= 0");
  MonotoneSeries copy = *this;
  copy.power_sum_ = ps;
  return copy;
}

std::optional<double> MonotoneSeries::power_sum_bound(double p) const {
  if (power_sum_ && power_sum_->p == p) return power_sum_->bound;
  if (!(p > 1.0)) return std::nullopt;
  switch (family_) {
    case Family::harmonic:
      return zeta_upper(p);
    case Family::pseries:
      if (parameter_ * p > 1.0) return zeta_upper(parameter_ * p);
      return std::nullopt;
    case Family::geometric:
      return round_up(1.0 / (1.0 - std::pow(parameter_, p)));
    case Family::constant:
      if (parameter_ == 0.0) return 0.0;
      return std::nullopt;
    case Family::custom:
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<double> MonotoneSeries::harmonic_majorant() const {
  switch (family_) {
    case Family::harmonic:
      return 1.0;
    case Family::pseries:
      if (parameter_ >= 1.0) return 1.0;
      return std::nullopt;
    case Family::constant:
      if (parameter_ == 0.0) return 0.0;
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

std::optional<double> MonotoneSeries::harmonic_minorant() const {
  switch (family_) {
    case Family::harmonic:
      return 1.0;
    case Family::pseries:
      if (parameter_ <= 1.0) return 1.0;
      return std::nullopt;
    case Family::constant:
      if (parameter_ > 0.0) return parameter_;
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

std::string MonotoneSeries::spec() const { return name_; }

PartialSum partial_sum(const MonotoneSeries& series, Index from, Index to) {
  if (from < 1) throw std::domain_error("partial_sum: from must be >= 1");
  if (from > to) throw std::domain_error("partial_sum: from > to");
  const Compensated acc = parallel::sum_range(series, from, to);
  return {to, acc.value(), acc.comp};
}

MonotoneCheck check_monotone(const MonotoneSeries& series, Index upto) {
  if (upto < 2) throw std::domain_error("check_monotone: upto must be >= 2");
  MonotoneCheck out;
  out.checked_upto = upto;
  out.first_violation = parallel::first_increase(series, Index{1}, upto);
  out.monotone = !out.first_violation.has_value();
  return out;
}

void require_monotone(const MonotoneSeries& series, Index upto) {
  if (upto < 2) upto = 2;
  const auto check = check_monotone(series, upto);
  if (!check.monotone)
    throw PreconditionError("series '" + series.name() + "' is not monotone: a_n < a_{n+1} or negative at n=" +
                                std::to_string(*check.first_violation),
                            check.first_violation);
}

}  // namespace subseries
