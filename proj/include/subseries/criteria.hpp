#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "subseries/config.hpp"
#include "subseries/series.hpp"
#include "subseries/subsequence.hpp"
#include "subseries/transforms.hpp"

namespace subseries {

// Exact nonnegative fraction num/den, den > 0, kept in lowest terms.
struct Rational {
  Index num = 0;
  Index den = 1;

  static Rational make(Index num, Index den);
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);
};

// ---------------------------------------------------------------------------
// Gap ratio bound for condensation

struct RatioBoundReport {
  Index horizon_k = 0;
  Rational max_ratio;   // max over k <= horizon_k of Δs(k+1)/Δs(k)
  Index attained_at = 0;  // smallest k attaining the maximum
};

RatioBoundReport ratio_bound(const Subsequence& seq, Index horizon_k);

struct SchlomilchReport {
  Index K = 0;
  double c = 0.0;
  double lower = 0.0;   // c^{-1} sum_{k=2}^{K} a_{s(k)} Δs(k)
  double middle = 0.0;  // sum_{n=s(1)}^{s(K+1)-1} a_n
  double upper = 0.0;   // sum_{k=1}^{K} a_{s(k)} Δs(k)
};

// Block-aligned condensation sandwich. Throws PreconditionError when c is
// below the observed gap ratio on k <= K-1 and InvariantViolation when the
// sums come out unordered.
SchlomilchReport schlomilch_sandwich(const MonotoneSeries& src, const Subsequence& seq, Index K, double c,
                                     const Config& cfg = {});

// ---------------------------------------------------------------------------
// Dilution sandwich

struct SandwichReport {
  Index K = 0;
  double lower = 0.0;   // sum_{k=2}^{K} a_{s(k)}
  double middle = 0.0;  // diluted partial sum over blocks 1..K
  double upper = 0.0;   // sum_{k=1}^{K} a_{s(k)}
  double a_first = 0.0;  // a_{s(1)}
  double a_after = 0.0;  // a_{s(K+1)}

  // Per-block bounds telescope to sum_{k=2}^{K+1} a_{s(k)} <= middle, so the
  // tight bracket [tight_lower, upper] has width a_{s(1)} - a_{s(K+1)}.
  double tight_lower() const { return lower + a_after; }
  double width() const { return upper - tight_lower(); }
};

// Refuses (PreconditionError) if src is not monotone on [1, s(K+1)].
SandwichReport dilution_sandwich(const MonotoneSeries& src, const Subsequence& seq, Index K,
                                 const Config& cfg = {});

// ---------------------------------------------------------------------------
// Verdicts and certificates

enum class Outcome { converges, diverges, inconclusive };

std::string to_string(Outcome o);

// One link lhs <= rhs of a certificate's inequality chain.
struct Inequality {
  std::string lhs;
  double lhs_value = 0.0;
  std::string rhs;
  double rhs_value = 0.0;

  bool holds(double rel_tol) const { return leq_rel(lhs_value, rhs_value, rel_tol); }
  friend bool operator==(const Inequality&, const Inequality&) = default;
};

// Evidence that one of the convergence criteria fired. `params` holds every
// input needed to rebuild the certificate; `chain` the inequalities it rests
// on; `premises` nested certificates it delegates to.
struct Certificate {
  std::string kind;
  std::string statement;
  std::map<std::string, double> params;
  std::vector<Inequality> chain;
  std::vector<Certificate> premises;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct Verdict {
  Outcome outcome = Outcome::inconclusive;
  std::optional<Certificate> certificate;
  std::optional<SandwichReport> sandwich;
  std::vector<std::pair<std::string, double>> evidence;
  std::vector<std::string> notes;
};

// Rebuilds `cert` from its stored parameters against (src, seq) and checks
// that every inequality holds and every value matches.
bool revalidate(const Certificate& cert, const MonotoneSeries& src, const Subsequence& seq,
                const Config& cfg = {});

// ---------------------------------------------------------------------------
// Sparsity sufficient condition

struct SparsityParams {
  double p = 2.0;
  double series_power_sum_bound = 0.0;  // upper bound for sum_n a_n^p

  static SparsityParams from_series(const MonotoneSeries& src, double p);
};

// Converges when sum_k s(k)^{-1/p} can be bounded through a registered lower
// bound s(k) >= gamma k^beta with beta/p > 1; Inconclusive otherwise.
Verdict sparsity_test(const MonotoneSeries& src, const Subsequence& seq, const SparsityParams& params, Index K,
                      const Config& cfg = {});

struct BlockAverages {
  Index k = 0;
  double A = 0.0;  // mean of a_n over block k
  double B = 0.0;  // mean of a_1..a_{s(k)}
};

struct JensenReport {
  BlockAverages averages;
  double jensen_bound = 0.0;  // (s(k)^{-1} sum_{n<=s(k)} a_n^p)^{1/p}
  bool holds = false;         // A_k <= B_k <= jensen_bound
};

JensenReport jensen_chain(const MonotoneSeries& src, const Subsequence& seq, double p, Index k,
                          const Config& cfg = {});

// ---------------------------------------------------------------------------
// Polynomial sparsity

struct PolySparsityReport {
  bool passed = true;
  Index horizon_n = 0;
  Index checked_k = 0;                      // S(horizon_n)
  std::optional<Index> density_failure_n;   // first n with S(n)/n > c n^{-alpha}
  std::optional<Index> lower_bound_failure_k;  // first k with s(k) < (k/c)^beta
};

PolySparsityReport poly_sparsity_check(const Subsequence& seq, const PolySparsity& ps, Index horizon_n,
                                       double rel_tol = Config{}.rel_tol);

// Harmonic series over a polynomially sparse sequence. Refuses
// (PreconditionError) when the envelope fails on cfg.poly_horizon.
Verdict harmonic_poly_sparse_verdict(const Subsequence& seq, const PolySparsity& ps, Index K,
                                     const Config& cfg = {});

struct PowellSalatResult {
  Index N = 0;
  double partial = 0.0;  // sum_{n=1}^{N} S(n)/n^2
  std::optional<double> tail_bound;
  bool envelope_verified = false;
};

PowellSalatResult powell_salat_partial(const Subsequence& seq, Index N,
                                       std::optional<PolySparsity> envelope = std::nullopt);

// ---------------------------------------------------------------------------
// Majorant test and the orchestrating classifier

// Never returns Diverges. Refuses (PreconditionError with the witness n) when
// |a_n| > b_n for some n <= s(K+1).
Verdict majorant_subseries_test(const TermRule& terms, const MonotoneSeries& majorant, const Subsequence& seq,
                                Index K, const Config& cfg = {});

// Analytic certificates first, then the dilution bracket with registered
// tail bounds or minorants, then Inconclusive with the gathered evidence.
Verdict classify(const MonotoneSeries& src, const Subsequence& seq, const Config& cfg = {});

}  // namespace subseries
