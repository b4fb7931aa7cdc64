#include "subseries/subsequence.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "subseries/format.hpp"

namespace subseries {

namespace {

constexpr Index kMaxIndex = std::numeric_limits<Index>::max();

Index checked_mul(Index a, Index b) {
  Index out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("subsequence value exceeds 64 bits");
  return out;
}

Index checked_add(Index a, Index b) {
  Index out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("subsequence value exceeds 64 bits");
  return out;
}

Index checked_pow(Index base, int exponent) {
  Index out = 1;
  for (int i = 0; i < exponent; ++i) out = checked_mul(out, base);
  return out;
}

void require_k(Index k) {
  if (k < 1) throw std::domain_error("subsequence index k must be >= 1, got " + std::to_string(k));
}

}  // namespace

// ---------------------------------------------------------------------------
// Implementation hierarchy

struct Subsequence::Impl {
  std::string name;
  SeqKind kind;

  Impl(std::string n, SeqKind k) : name(std::move(n)), kind(k) {}
  virtual ~Impl() = default;

  virtual Index value(Index k) const = 0;
  virtual Index counting(Index n) const { return gallop_counting(n); }
  virtual std::optional<Index> length() const { return std::nullopt; }
  virtual std::string spec() const { return name; }
  virtual std::optional<PowerLowerBound> lower_bound() const {
    if (auto env = envelope()) return PowerLowerBound{std::pow(env->c, -env->beta()), env->beta()};
    return std::nullopt;
  }
  virtual std::optional<PolySparsity> envelope() const { return std::nullopt; }
  virtual std::optional<double> linear_upper() const { return std::nullopt; }
  virtual const DigitRestriction* digits() const { return nullptr; }

  // Largest k with s(k) <= n, by doubling then bisection over value().
  Index gallop_counting(Index n) const {
    if (n < 1) return 0;
    const auto len = length();
    auto at_most_n = [&](Index k) {
      if (len && k > *len) return false;
      try {
        return value(k) <= n;
      } catch (const std::overflow_error&) {
        return false;
      }
    };
    if (!at_most_n(1)) return 0;
    Index lo = 1;
    Index hi = 2;
    while (at_most_n(hi)) {
      lo = hi;
      if (hi > kMaxIndex / 2) return hi;
      hi *= 2;
    }
    while (hi - lo > 1) {
      const Index mid = lo + (hi - lo) / 2;
      (at_most_n(mid) ? lo : hi) = mid;
    }
    return lo;
  }

  // Smallest n with S(n) >= k, by doubling then bisection over counting().
  Index value_from_counting(Index k) const {
    Index lo = k - 1;  // s(k) >= k, so S(k-1) < k
    Index hi = k;
    while (counting(hi) < k) {
      lo = hi;
      if (hi > kMaxIndex / 2) throw std::overflow_error("subsequence value exceeds 64 bits");
      hi *= 2;
    }
    while (hi - lo > 1) {
      const Index mid = lo + (hi - lo) / 2;
      (counting(mid) >= k ? hi : lo) = mid;
    }
    return hi;
  }
};

namespace {

struct IdentityImpl final : Subsequence::Impl {
  IdentityImpl() : Impl("id", SeqKind::identity) {}
  Index value(Index k) const override { return k; }
  Index counting(Index n) const override { return std::max<Index>(n, 0); }
  std::optional<PowerLowerBound> lower_bound() const override { return PowerLowerBound{1.0, 1.0}; }
  std::optional<double> linear_upper() const override { return 1.0; }
};

struct GeometricImpl final : Subsequence::Impl {
  Index ratio;

  explicit GeometricImpl(Index r)
      : Impl(r == 2 ? "pow2" : "geom:" + std::to_string(r), SeqKind::geometric), ratio(r) {}

  Index value(Index k) const override {
    Index v = 1;
    for (Index i = 1; i < k; ++i) v = checked_mul(v, ratio);
    return v;
  }

  Index counting(Index n) const override {
    if (n < 1) return 0;
    Index count = 1;
    Index v = 1;
    while (v <= n / ratio) {
      v *= ratio;
      ++count;
    }
    return count;
  }

  // r^{k-1} >= gamma k^3 with gamma the minimum of r^{k-1}/k^3, which is
  // attained before k = 3/ln(r) + 1 <= 6.
  std::optional<PowerLowerBound> lower_bound() const override {
    double gamma = 1.0;
    for (int k = 1; k <= 8; ++k) {
      const double kk = static_cast<double>(k);
      gamma = std::min(gamma, std::pow(static_cast<double>(ratio), kk - 1.0) / (kk * kk * kk));
    }
    return PowerLowerBound{gamma * (1.0 - 1e-12), 3.0};
  }
};

struct IntegerPowerImpl final : Subsequence::Impl {
  int exponent;

  explicit IntegerPowerImpl(int e)
      : Impl(e == 2 ? "squares" : e == 3 ? "cubes" : "poly:" + std::to_string(e), SeqKind::polynomial),
        exponent(e) {}

  Index value(Index k) const override { return checked_pow(k, exponent); }

  Index counting(Index n) const override {
    if (n < 1) return 0;
    auto fits = [&](Index r) {
      try {
        return checked_pow(r, exponent) <= n;
      } catch (const std::overflow_error&) {
        return false;
      }
    };
    Index r = static_cast<Index>(std::pow(static_cast<long double>(n), 1.0L / exponent));
    r = std::max<Index>(r, 1);
    while (r > 1 && !fits(r)) --r;
    while (fits(r + 1)) ++r;
    return fits(r) ? r : 0;
  }

  std::optional<PolySparsity> envelope() const override {
    return PolySparsity{1.0, 1.0 - 1.0 / exponent};
  }
  std::optional<PowerLowerBound> lower_bound() const override {
    return PowerLowerBound{1.0, static_cast<double>(exponent)};
  }
};

struct PolynomialImpl final : Subsequence::Impl {
  double beta;

  explicit PolynomialImpl(double b) : Impl("poly:" + shortest(b), SeqKind::polynomial), beta(b) {}

  Index value(Index k) const override {
    const long double v = std::floor(std::pow(static_cast<long double>(k), static_cast<long double>(beta)));
    if (!(v < 9.2e18L)) throw std::overflow_error("subsequence value exceeds 64 bits");
    return static_cast<Index>(v);
  }

  // S(n) = #{k : k^beta < n+1} <= (2n)^{1/beta}
  std::optional<PolySparsity> envelope() const override {
    return PolySparsity{std::pow(2.0, 1.0 / beta), 1.0 - 1.0 / beta};
  }
  // floor(x) >= x/2 for x >= 1
  std::optional<PowerLowerBound> lower_bound() const override { return PowerLowerBound{0.5, beta}; }
};

struct DigitImpl final : Subsequence::Impl {
  DigitRestriction restriction;
  std::vector<bool> forbidden;
  std::vector<int> allowed_below;          // allowed digits < d
  std::vector<int> allowed_nonzero_below;  // allowed digits in [1, d)
  int allowed = 0;
  int allowed_nonzero = 0;

  explicit DigitImpl(DigitRestriction r) : Impl("", SeqKind::digit_restricted), restriction(std::move(r)) {
    std::sort(restriction.forbidden.begin(), restriction.forbidden.end());
    restriction.forbidden.erase(std::unique(restriction.forbidden.begin(), restriction.forbidden.end()),
                                restriction.forbidden.end());
    const int b = restriction.base;
    forbidden.assign(static_cast<std::size_t>(b), false);
    for (int d : restriction.forbidden) forbidden[static_cast<std::size_t>(d)] = true;
    allowed_below.assign(static_cast<std::size_t>(b) + 1, 0);
    allowed_nonzero_below.assign(static_cast<std::size_t>(b) + 1, 0);
    for (int d = 0; d < b; ++d) {
      const bool ok = !forbidden[static_cast<std::size_t>(d)];
      allowed_below[static_cast<std::size_t>(d) + 1] = allowed_below[static_cast<std::size_t>(d)] + ok;
      allowed_nonzero_below[static_cast<std::size_t>(d) + 1] =
          allowed_nonzero_below[static_cast<std::size_t>(d)] + (ok && d != 0);
    }
    allowed = allowed_below[static_cast<std::size_t>(b)];
    allowed_nonzero = allowed_nonzero_below[static_cast<std::size_t>(b)];
    name = spec();
  }

  std::string spec() const override {
    std::string digits;
    for (std::size_t i = 0; i < restriction.forbidden.size(); ++i) {
      if (i) digits += ',';
      digits += std::to_string(restriction.forbidden[i]);
    }
    return "nodigit:" + digits + ":" + std::to_string(restriction.base);
  }

  Index value(Index k) const override { return value_from_counting(k); }

  // Digit DP over the representation of n: all shorter admissible numbers,
  // then for each prefix of n the admissible numbers that first drop below n
  // at that position.
  Index counting(Index n) const override {
    if (n < 1) return 0;
    const Index b = restriction.base;
    std::array<int, 64> digit{};
    int m = 0;
    for (Index x = n; x > 0; x /= b) digit[static_cast<std::size_t>(m++)] = static_cast<int>(x % b);
    std::array<Index, 64> pow_allowed{};
    pow_allowed[0] = 1;
    for (int i = 1; i < m; ++i) pow_allowed[static_cast<std::size_t>(i)] = pow_allowed[static_cast<std::size_t>(i - 1)] * allowed;

    Index count = 0;
    for (int len = 1; len < m; ++len) count += allowed_nonzero * pow_allowed[static_cast<std::size_t>(len - 1)];
    for (int i = m - 1; i >= 0; --i) {
      const auto d = static_cast<std::size_t>(digit[static_cast<std::size_t>(i)]);
      const Index below = (i == m - 1) ? allowed_nonzero_below[d] : allowed_below[d];
      count += below * pow_allowed[static_cast<std::size_t>(i)];
      if (forbidden[d]) return count;
    }
    return count + 1;
  }

  // Numbers below base^m have at most allowed^m
  // admissible members (times allowed/(allowed-1) when 0 is forbidden).
  std::optional<PolySparsity> envelope() const override {
    if (allowed < 2) return std::nullopt;
    const double a = allowed;
    const double alpha = 1.0 - std::log(a) / std::log(static_cast<double>(restriction.base));
    const double c = forbidden[0] ? a * a / (a - 1.0) : a;
    return PolySparsity{c, alpha};
  }

  const DigitRestriction* digits() const override { return &restriction; }
};

struct ExplicitImpl final : Subsequence::Impl {
  std::vector<Index> values;

  explicit ExplicitImpl(std::vector<Index> v) : Impl("", SeqKind::explicit_list), values(std::move(v)) {
    name = spec();
  }

  Index value(Index k) const override {
    require_k(k);
    if (static_cast<std::size_t>(k) > values.size())
      throw std::out_of_range("explicit list has " + std::to_string(values.size()) + " entries, asked for k=" +
                              std::to_string(k));
    return values[static_cast<std::size_t>(k - 1)];
  }

  Index counting(Index n) const override {
    return static_cast<Index>(std::upper_bound(values.begin(), values.end(), n) - values.begin());
  }

  std::optional<Index> length() const override { return static_cast<Index>(values.size()); }

  std::string spec() const override {
    std::string out = "list:[";
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(values[i]);
    }
    return out + "]";
  }
};

struct AffineImpl final : Subsequence::Impl {
  Index slope;
  Index offset;

  AffineImpl(Index a, Index b)
      : Impl("affine:" + std::to_string(a) + ":" + std::to_string(b), SeqKind::affine), slope(a), offset(b) {}

  Index value(Index k) const override { return checked_add(checked_mul(slope, k), offset); }

  Index counting(Index n) const override {
    if (n < slope + offset) return 0;
    return (n - offset) / slope;
  }

  std::optional<double> linear_upper() const override {
    return static_cast<double>(slope + std::max<Index>(offset, 0));
  }
};

struct RuleImpl final : Subsequence::Impl {
  std::function<Index(Index)> rule;

  RuleImpl(std::string n, std::function<Index(Index)> r) : Impl(std::move(n), SeqKind::rule), rule(std::move(r)) {}

  Index value(Index k) const override { return rule(k); }
};

}  // namespace

// ---------------------------------------------------------------------------
// DigitRestriction / PolySparsity

void DigitRestriction::validate() const {
  if (base < 2) throw std::invalid_argument("digit restriction: base must be >= 2");
  if (forbidden.empty()) throw std::invalid_argument("digit restriction: forbidden set is empty");
  std::vector<bool> seen(static_cast<std::size_t>(base), false);
  for (int d : forbidden) {
    if (d < 0 || d >= base)
      throw std::invalid_argument("digit restriction: digit " + std::to_string(d) + " out of range for base " +
                                  std::to_string(base));
    seen[static_cast<std::size_t>(d)] = true;
  }
  bool nonzero_allowed = false;
  for (int d = 1; d < base; ++d) nonzero_allowed = nonzero_allowed || !seen[static_cast<std::size_t>(d)];
  if (!nonzero_allowed) throw std::invalid_argument("digit restriction: no admissible leading digit remains");
}

bool DigitRestriction::allows(Index n) const {
  for (; n > 0; n /= base)
    if (std::find(forbidden.begin(), forbidden.end(), static_cast<int>(n % base)) != forbidden.end())
      return false;
  return true;
}

int DigitRestriction::allowed_count() const {
  std::vector<bool> seen(static_cast<std::size_t>(base), false);
  for (int d : forbidden) seen[static_cast<std::size_t>(d)] = true;
  return static_cast<int>(std::count(seen.begin(), seen.end(), false));
}

PolySparsity PolySparsity::make(double c, double alpha) {
  if (!(c > 0.0) || !std::isfinite(c)) throw std::domain_error("poly sparsity: c must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("poly sparsity: alpha must lie in (0, 1)");
  return PolySparsity{c, alpha};
}

// ---------------------------------------------------------------------------
// Subsequence

Subsequence Subsequence::identity() { return Subsequence(std::make_shared<IdentityImpl>()); }

Subsequence Subsequence::geometric(Index ratio) {
  if (ratio < 2) throw std::domain_error("geometric subsequence: ratio must be >= 2");
  return Subsequence(std::make_shared<GeometricImpl>(ratio));
}

Subsequence Subsequence::polynomial(double beta) {
  if (!(beta > 1.0) || !std::isfinite(beta))
    throw std::domain_error("polynomial subsequence: beta must exceed 1, got " + shortest(beta));
  if (beta == std::floor(beta) && beta <= 62.0) return integer_power(static_cast<int>(beta));
  return Subsequence(std::make_shared<PolynomialImpl>(beta));
}

Subsequence Subsequence::integer_power(int exponent) {
  if (exponent < 2) throw std::domain_error("integer power subsequence: exponent must be >= 2");
  return Subsequence(std::make_shared<IntegerPowerImpl>(exponent));
}

Subsequence Subsequence::digit_restricted(DigitRestriction restriction) {
  restriction.validate();
  return Subsequence(std::make_shared<DigitImpl>(std::move(restriction)));
}

Subsequence Subsequence::explicit_list(std::vector<Index> values) {
  if (values.empty()) throw std::invalid_argument("explicit list: empty");
  for (Index v : values)
    if (v < 1) throw std::domain_error("explicit list: entries must be positive, got " + std::to_string(v));
  return Subsequence(std::make_shared<ExplicitImpl>(std::move(values)));
}

Subsequence Subsequence::affine(Index slope, Index offset) {
  if (slope < 1) throw std::domain_error("affine subsequence: slope must be >= 1");
  if (slope + offset < 1) throw std::domain_error("affine subsequence: s(1) = slope + offset must be >= 1");
  if (slope == 1 && offset == 0) return identity();
  return Subsequence(std::make_shared<AffineImpl>(slope, offset));
}

Subsequence Subsequence::from_value_rule(std::string name, std::function<Index(Index)> rule) {
  if (!rule) throw std::invalid_argument("from_value_rule: empty rule");
  return Subsequence(std::make_shared<RuleImpl>(std::move(name), std::move(rule)));
}

Index Subsequence::value(Index k) const {
  require_k(k);
  return impl_->value(k);
}

Index Subsequence::counting(Index n) const {
  if (n < 0) throw std::domain_error("counting: n must be >= 0");
  return impl_->counting(n);
}

Index Subsequence::forward_diff(Index k) const {
  require_k(k);
  return impl_->value(k + 1) - impl_->value(k);
}

Index Subsequence::weight_at(Index n) const {
  const Index first = impl_->value(1);
  if (n < first)
    throw std::domain_error("weight_at: n=" + std::to_string(n) + " lies below s(1)=" + std::to_string(first));
  return forward_diff(impl_->counting(n));
}

std::optional<Index> Subsequence::length() const { return impl_->length(); }
SeqKind Subsequence::kind() const { return impl_->kind; }
const std::string& Subsequence::name() const { return impl_->name; }
std::string Subsequence::spec() const { return impl_->spec(); }
std::optional<PowerLowerBound> Subsequence::power_lower_bound() const { return impl_->lower_bound(); }
std::optional<PolySparsity> Subsequence::sparsity_envelope() const { return impl_->envelope(); }
std::optional<double> Subsequence::linear_upper_bound() const { return impl_->linear_upper(); }
const DigitRestriction* Subsequence::digit_restriction() const { return impl_->digits(); }

// ---------------------------------------------------------------------------
// validate

ValidationReport validate(const Subsequence& seq, Index horizon_k, Index horizon_n) {
  if (horizon_k < 1 || horizon_n < 1) throw std::domain_error("validate: horizons must be >= 1");
  ValidationReport report;
  auto fail_k = [&](Index k, std::string why) {
    report.passed = false;
    report.failed_k = k;
    report.reason = std::move(why);
    return report;
  };
  auto fail_n = [&](Index n, std::string why) {
    report.passed = false;
    report.failed_n = n;
    report.reason = std::move(why);
    return report;
  };

  const auto len = seq.length();
  Index kmax = len ? std::min(horizon_k, *len) : horizon_k;
  Index prev = seq.value(1);
  if (prev < 1) return fail_k(1, "s(1) < 1");
  for (Index k = 1; k < kmax; ++k) {
    Index next = 0;
    try {
      next = seq.value(k + 1);
    } catch (const std::overflow_error&) {
      // Values past 64 bits are outside every horizon; stop there.
      kmax = k;
      break;
    }
    if (next <= prev) return fail_k(k, "not strictly increasing: s(k+1) <= s(k)");
    prev = next;
  }
  report.checked_k = kmax;
  for (Index k = 1; k <= kmax; ++k) {
    const Index v = seq.value(k);
    if (seq.counting(v) != k) return fail_k(k, "S(s(k)) != k");
    if (v > 1 && seq.counting(v - 1) != k - 1) return fail_k(k, "S(s(k)-1) != k-1");
  }

  const Index first = seq.value(1);
  Index n = first;
  try {
    Index prev_count = seq.counting(first - 1);
    for (n = first; n <= horizon_n; ++n) {
      const Index c = seq.counting(n);
      if (c - prev_count != 0 && c - prev_count != 1) return fail_n(n, "S(n) - S(n-1) not in {0, 1}");
      prev_count = c;
      if (seq.value(c) > n) return fail_n(n, "s(S(n)) > n");
      if ((!len || c < *len) && seq.value(c + 1) <= n) return fail_n(n, "s(S(n)+1) <= n");
    }
  } catch (const std::overflow_error& e) {
    return fail_n(n, e.what());
  }

  if (const auto* digits = seq.digit_restriction()) {
    Index enumerated = 0;
    for (n = 1; n <= horizon_n; ++n) {
      enumerated += digits->allows(n);
      if (seq.counting(n) != enumerated) return fail_n(n, "digit-DP count differs from enumeration");
    }
  }
  return report;
}

}  // namespace subseries
