#include "subseries/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "subseries/errors.hpp"
#include "subseries/format.hpp"

namespace subseries {

// ---------------------------------------------------------------------------
// Rational

Rational Rational::make(Index num, Index den) {
  if (den == 0) throw std::domain_error("rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const Index g = std::gcd(num, den);
  return g > 1 ? Rational{num / g, den / g} : Rational{num, den};
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const __int128 lhs = static_cast<__int128>(a.num) * b.den;
  const __int128 rhs = static_cast<__int128>(b.num) * a.den;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::converges:
      return "Converges";
    case Outcome::diverges:
      return "Diverges";
    case Outcome::inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

namespace {

double as_double(Index v) { return static_cast<double>(v); }

Index param_index(const Certificate& cert, const std::string& key) {
  return static_cast<Index>(cert.params.at(key));
}

Inequality link(std::string lhs, double lhs_value, std::string rhs, double rhs_value) {
  return Inequality{std::move(lhs), lhs_value, std::move(rhs), rhs_value};
}

bool chain_holds(const Certificate& cert, double tol) {
  return std::all_of(cert.chain.begin(), cert.chain.end(), [tol](const Inequality& i) { return i.holds(tol); });
}

// Integral comparison: sum_{k>K} k^{-q} <= K^{1-q}/(q-1), q > 1, K >= 1.
double power_tail(Index K, double q) {
  return std::nextafter(std::pow(as_double(K), 1.0 - q) / (q - 1.0), std::numeric_limits<double>::infinity());
}

// Largest K' <= K whose blocks 1..K' stay within the term budget, the length
// of a finite sequence and 64-bit values. Zero when not even one block fits.
Index affordable_blocks(const Subsequence& seq, Index K, Index max_terms) {
  const Index first = seq.value(1);
  auto fits = [&](Index k) {
    if (auto len = seq.length(); len && k + 1 > *len) return false;
    try {
      return seq.value(k + 1) - first <= max_terms;
    } catch (const std::overflow_error&) {
      return false;
    }
  };
  if (!fits(1)) return 0;
  Index lo = 1;
  Index hi = K;
  if (fits(hi)) return hi;
  while (hi - lo > 1) {
    const Index mid = lo + (hi - lo) / 2;
    (fits(mid) ? lo : hi) = mid;
  }
  return lo;
}

// ---------------------------------------------------------------------------
// Certificate builders. Each takes exactly the inputs recorded in `params`,
// so revalidate() can call it again and compare.

struct SparsityBuild {
  std::optional<Certificate> cert;
  double root_sum_partial = 0.0;
  std::string reason;
};

SparsityBuild build_sparsity(const MonotoneSeries& src, const Subsequence& seq, const SparsityParams& params,
                             std::optional<PowerLowerBound> lower, Index K, bool block_chain, const Config& cfg) {
  SparsityBuild out;
  const double p = params.p;
  const double inv_p = 1.0 / p;

  Compensated root_sum;
  for (Index k = 1; k <= K; ++k) root_sum.add(std::pow(as_double(seq.value(k)), -inv_p));
  out.root_sum_partial = root_sum.value();

  if (!lower) {
    out.reason = "no registered lower bound s(k) >= gamma k^beta for this sequence";
    return out;
  }
  const double q = lower->beta / p;
  if (!(q > 1.0)) {
    out.reason = "registered growth beta=" + shortest(lower->beta) + " gives beta/p=" + shortest(q) +
                 " <= 1; the sparsity series cannot be bounded this way";
    return out;
  }

  const double certified = *src.power_sum_bound(p);
  const double root = std::pow(params.series_power_sum_bound, inv_p);

  // Spot check of the registered growth on k <= K.
  const double worst_growth = serial::max_over(
      [&](Index k) { return lower->gamma * std::pow(as_double(k), lower->beta) / as_double(seq.value(k)); },
      Index{1}, K);
  if (!leq_rel(worst_growth, 1.0, cfg.rel_tol)) {
    out.reason = "registered lower bound s(k) >= gamma k^beta fails on k <= K";
    return out;
  }

  const double tail = std::pow(lower->gamma, -inv_p) * power_tail(K, q);
  const double total = root_sum.value() + tail;
  const double dilution_bound = root * total;

  Certificate cert;
  cert.kind = "sparsity";
  cert.statement =
      "sum_k s(k)^(-1/p) is finite, so the diluted series is at most (sum a_n^p)^(1/p) * sum_k s(k)^(-1/p) "
      "and the subseries converges";
  cert.params = {{"p", p},
                 {"power_sum_bound", params.series_power_sum_bound},
                 {"gamma", lower->gamma},
                 {"beta", lower->beta},
                 {"K", as_double(K)},
                 {"block_chain", block_chain ? 1.0 : 0.0},
                 {"root_sum_partial", root_sum.value()},
                 {"root_sum_tail_bound", tail},
                 {"root_sum_total_bound", total},
                 {"dilution_bound", dilution_bound},
                 {"subseries_bound", src.term(seq.value(1)) + dilution_bound}};
  cert.chain.push_back(link("certified sum a_n^p", certified, "supplied power-sum bound", params.series_power_sum_bound));
  cert.chain.push_back(link("max_{k<=K} gamma k^beta / s(k)", worst_growth, "1", 1.0));
  cert.chain.push_back(link("1", 1.0, "beta/p", q));

  if (block_chain) {
    const auto details = block_details(src, seq, K, cfg.max_terms);
    Compensated prefix;
    if (const Index first = seq.value(1); first > 1) prefix.merge(parallel::sum_range(src, Index{1}, first - 1));
    Compensated sum_a;
    Compensated sum_b;
    Compensated sum_bound;
    double worst_b = -std::numeric_limits<double>::infinity();
    for (const auto& d : details) {
      const double s_k = as_double(d.block.first);
      Compensated through = prefix;
      through.add(d.a_first);
      const double b_k = through.value() / s_k;
      sum_a.add(d.raw_sum / as_double(d.block.width()));
      sum_b.add(b_k);
      const double b_bound = root * std::pow(s_k, -inv_p);
      sum_bound.add(b_bound);
      worst_b = std::max(worst_b, b_k - b_bound);
      prefix.add(d.raw_sum);
    }
    cert.params["sum_A"] = sum_a.value();
    cert.params["sum_B"] = sum_b.value();
    cert.chain.push_back(link("sum_{k<=K} A_k", sum_a.value(), "sum_{k<=K} B_k", sum_b.value()));
    cert.chain.push_back(link("sum_{k<=K} B_k", sum_b.value(), "(sum a_n^p)^(1/p) * sum_{k<=K} s(k)^(-1/p)",
                              sum_bound.value()));
    cert.chain.push_back(link("max_{k<=K} B_k - (sum a_n^p)^(1/p) s(k)^(-1/p)", worst_b, "0", 0.0));
    cert.chain.push_back(link("sum_{k<=K} A_k", sum_a.value(), "dilution bound", dilution_bound));
  }
  cert.chain.push_back(link("sum_{k<=K} s(k)^(-1/p)", root_sum.value(), "partial + tail bound", total));

  if (!chain_holds(cert, cfg.rel_tol)) throw InvariantViolation("sparsity certificate chain does not hold");
  out.cert = std::move(cert);
  return out;
}

bool sparsity_block_chain_affordable(const Subsequence& seq, Index K, const Config& cfg) {
  try {
    return seq.value(K + 1) <= cfg.max_terms;
  } catch (const std::exception&) {
    return false;
  }
}

std::optional<Certificate> build_poly_sparse(const Subsequence& seq, const PolySparsity& ps, Index K,
                                             Index horizon_n, const Config& cfg) {
  const auto report = poly_sparsity_check(seq, ps, horizon_n, cfg.rel_tol);
  if (!report.passed) return std::nullopt;

  const double beta = ps.beta();
  const double p = 0.5 * (1.0 + beta);
  const auto harmonic = MonotoneSeries::harmonic();
  const SparsityParams params{p, *harmonic.power_sum_bound(p)};
  const PowerLowerBound lower{std::pow(ps.c, -beta), beta};
  auto inner = build_sparsity(harmonic, seq, params, lower, K, sparsity_block_chain_affordable(seq, K, cfg), cfg);
  if (!inner.cert) return std::nullopt;

  const double density = parallel::max_over(
      [&](Index n) { return as_double(seq.counting(n)) / (ps.c * std::pow(as_double(n), 1.0 - ps.alpha)); },
      Index{1}, horizon_n);

  Certificate cert;
  cert.kind = "poly_sparse_harmonic";
  cert.statement = "S(n)/n <= c n^(-alpha) gives s(k) >= (k/c)^beta; with p = (1+beta)/2 in (1, beta) the "
                   "sparsity condition holds and the harmonic subseries converges";
  cert.params = {{"c", ps.c},
                 {"alpha", ps.alpha},
                 {"beta", beta},
                 {"p", p},
                 {"horizon_n", as_double(horizon_n)},
                 {"K", as_double(K)}};
  cert.chain.push_back(link("max_{n<=N} S(n) / (c n^(1-alpha))", density, "1", 1.0));
  cert.chain.push_back(link("1", 1.0, "p", p));
  cert.chain.push_back(link("p", p, "beta", beta));
  cert.premises.push_back(std::move(*inner.cert));
  return cert;
}

std::optional<Certificate> build_harmonic_majorant(const MonotoneSeries& src, const Subsequence& seq,
                                                   const Certificate& harmonic_cert, double C, Index horizon,
                                                   const Config& cfg) {
  const double worst = parallel::max_over([&](Index n) { return as_double(n) * src(n); }, Index{1}, horizon);
  Certificate cert;
  cert.kind = "harmonic_majorant";
  cert.statement = "a_n <= C/n termwise, so the subseries is at most C times a convergent harmonic subseries";
  cert.params = {{"C", C}, {"horizon_n", as_double(horizon)}};
  cert.chain.push_back(link("max_{n<=N} n a_n", worst, "C", C));
  cert.premises.push_back(harmonic_cert);
  if (!chain_holds(cert, cfg.rel_tol)) return std::nullopt;
  (void)seq;
  return cert;
}

std::optional<Certificate> build_tail(const MonotoneSeries& src, const Subsequence& seq, const SandwichReport& sw,
                                      const Config& cfg) {
  const Index K = sw.K;
  const Index s_K = seq.value(K);
  const auto tail = src.tail_bound(s_K);
  if (!tail) return std::nullopt;
  Certificate cert;
  cert.kind = "convergent_source_tail";
  cert.statement = "the source has a finite registered tail bound, so sum_{k>K} a_{s(k)} <= sum_{n>s(K)} a_n";
  cert.params = {{"K", as_double(K)},
                 {"s_K", as_double(s_K)},
                 {"head", sw.upper},
                 {"tail_bound", *tail},
                 {"subseries_bound", sw.upper + *tail}};
  cert.chain.push_back(link("sum_{k=2}^{K} a_{s(k)}", sw.lower, "diluted partial sum", sw.middle));
  cert.chain.push_back(link("diluted partial sum", sw.middle, "sum_{k=1}^{K} a_{s(k)}", sw.upper));
  cert.chain.push_back(link("sum_{k=1}^{K} a_{s(k)}", sw.upper, "head + tail_bound(s(K))", sw.upper + *tail));
  if (!chain_holds(cert, cfg.rel_tol)) return std::nullopt;
  return cert;
}

std::optional<Certificate> build_minorant(const MonotoneSeries& src, const Subsequence& seq,
                                          const SandwichReport& sw, const Config& cfg) {
  const auto m = src.harmonic_minorant();
  const auto g = seq.linear_upper_bound();
  if (!m || !g) return std::nullopt;
  const Index K = sw.K;
  const double scale = *m / *g;
  Compensated harmonic_tail;
  for (Index k = 2; k <= K; ++k) harmonic_tail.add(1.0 / as_double(k));
  const double minorant_sum = scale * harmonic_tail.value();
  const double worst = serial::max_over(
      [&](Index k) { return scale / as_double(k) - src(seq.value(k)); }, Index{1}, K);

  Certificate cert;
  cert.kind = "harmonic_minorant_divergence";
  cert.statement = "a_n >= m/n and s(k) <= g k give a_{s(k)} >= (m/g)/k, so the lower dilution sum dominates a "
                   "multiple of the divergent harmonic series";
  cert.params = {{"m", *m}, {"g", *g}, {"K", as_double(K)}, {"minorant_sum", minorant_sum}};
  cert.chain.push_back(link("max_{k<=K} (m/g)/k - a_{s(k)}", worst, "0", 0.0));
  cert.chain.push_back(link("(m/g) sum_{k=2}^{K} 1/k", minorant_sum, "sum_{k=2}^{K} a_{s(k)}", sw.lower));
  cert.chain.push_back(link("sum_{k=2}^{K} a_{s(k)}", sw.lower, "diluted partial sum", sw.middle));
  if (!chain_holds(cert, cfg.rel_tol)) return std::nullopt;
  return cert;
}

Verdict sparsity_verdict(const MonotoneSeries& src, const Subsequence& seq, const SparsityParams& params,
                         std::optional<PowerLowerBound> lower, Index K, const Config& cfg) {
  if (!(params.p > 1.0)) throw std::domain_error("sparsity_test: p must exceed 1, got " + shortest(params.p));
  if (K < 1) throw std::domain_error("sparsity_test: K must be >= 1");
  const auto certified = src.power_sum_bound(params.p);
  if (!certified)
    throw PreconditionError("series '" + src.name() + "' has no certified bound for sum a_n^p at p=" +
                            shortest(params.p));
  if (!(params.series_power_sum_bound >= *certified))
    throw PreconditionError("supplied bound " + shortest(params.series_power_sum_bound) +
                            " is below the certified bound " + shortest(*certified) + " for sum a_n^p");

  auto build = build_sparsity(src, seq, params, lower, K, sparsity_block_chain_affordable(seq, K, cfg), cfg);
  Verdict v;
  v.evidence.emplace_back("root_sum_partial", build.root_sum_partial);
  v.evidence.emplace_back("K", as_double(K));
  if (build.cert) {
    v.outcome = Outcome::converges;
    v.certificate = std::move(build.cert);
  } else {
    v.notes.push_back(build.reason);
  }
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// ratio bound and sandwiches

RatioBoundReport ratio_bound(const Subsequence& seq, Index horizon_k) {
  if (horizon_k < 1) throw std::domain_error("ratio_bound: horizon_k must be >= 1");
  RatioBoundReport report;
  report.horizon_k = horizon_k;
  Index prev_gap = seq.forward_diff(1);
  for (Index k = 1; k <= horizon_k; ++k) {
    const Index next_gap = seq.forward_diff(k + 1);
    const Rational r = Rational::make(next_gap, prev_gap);
    if (k == 1 || r > report.max_ratio) {
      report.max_ratio = r;
      report.attained_at = k;
    }
    prev_gap = next_gap;
  }
  return report;
}

SchlomilchReport schlomilch_sandwich(const MonotoneSeries& src, const Subsequence& seq, Index K, double c,
                                     const Config& cfg) {
  if (K < 2) throw std::domain_error("schlomilch_sandwich: K must be >= 2");
  if (!(c > 0.0)) throw std::domain_error("schlomilch_sandwich: c must be positive");
  require_budget(seq, K, cfg.max_terms);
  const auto ratio = ratio_bound(seq, K - 1);
  if (static_cast<long double>(c) * ratio.max_ratio.den < static_cast<long double>(ratio.max_ratio.num))
    throw PreconditionError("c=" + shortest(c) + " is below the gap ratio " + ratio.max_ratio.str() + " at k=" +
                                std::to_string(ratio.attained_at),
                            ratio.attained_at);
  require_monotone(src, seq.value(K + 1));

  Compensated upper;
  Compensated tail;
  for (Index k = 1; k <= K; ++k) {
    const double t = condensed_term(src, seq, k);
    upper.add(t);
    if (k >= 2) tail.add(t);
  }
  SchlomilchReport r;
  r.K = K;
  r.c = c;
  r.lower = tail.value() / c;
  r.middle = partial_sum(src, seq.value(1), seq.value(K + 1) - 1).value;
  r.upper = upper.value();
  if (!leq_rel(r.lower, r.middle, cfg.rel_tol) || !leq_rel(r.middle, r.upper, cfg.rel_tol))
    throw InvariantViolation("condensation sandwich out of order: " + shortest(r.lower) + ", " + shortest(r.middle) +
                             ", " + shortest(r.upper));
  return r;
}

SandwichReport dilution_sandwich(const MonotoneSeries& src, const Subsequence& seq, Index K, const Config& cfg) {
  if (K < 2) throw std::domain_error("dilution_sandwich: K must be >= 2");
  require_budget(seq, K, cfg.max_terms);
  require_monotone(src, seq.value(K + 1));
  const auto sums = block_aligned_sums(src, seq, K, cfg.max_terms);

  SandwichReport r;
  r.K = K;
  r.lower = sums.subseries_tail;
  r.middle = sums.diluted_sum;
  r.upper = sums.subseries_head;
  r.a_first = src(seq.value(1));
  r.a_after = src(seq.value(K + 1));
  if (!leq_rel(r.lower, r.middle, cfg.rel_tol) || !leq_rel(r.middle, r.upper, cfg.rel_tol))
    throw InvariantViolation("dilution sandwich out of order: " + shortest(r.lower) + ", " + shortest(r.middle) +
                             ", " + shortest(r.upper));
  if (!leq_rel(r.tight_lower(), r.middle, cfg.rel_tol))
    throw InvariantViolation("telescoped dilution bound sum_{k=2}^{K+1} a_{s(k)} exceeds the diluted sum");
  if (!leq_rel(r.width(), r.a_first, cfg.rel_tol))
    throw InvariantViolation("dilution bracket wider than a_{s(1)}");
  return r;
}

// ---------------------------------------------------------------------------
// sparsity

SparsityParams SparsityParams::from_series(const MonotoneSeries& src, double p) {
  const auto bound = src.power_sum_bound(p);
  if (!bound)
    throw PreconditionError("series '" + src.name() + "' has no certified bound for sum a_n^p at p=" + shortest(p));
  return {p, *bound};
}

Verdict sparsity_test(const MonotoneSeries& src, const Subsequence& seq, const SparsityParams& params, Index K,
                      const Config& cfg) {
  return sparsity_verdict(src, seq, params, seq.power_lower_bound(), K, cfg);
}

JensenReport jensen_chain(const MonotoneSeries& src, const Subsequence& seq, double p, Index k, const Config& cfg) {
  if (!(p > 1.0)) throw std::domain_error("jensen_chain: p must exceed 1");
  if (k < 1) throw std::domain_error("jensen_chain: k must be >= 1");
  const Index s_k = seq.value(k);
  const Index s_next = seq.value(k + 1);
  if (s_next - 1 > cfg.max_terms) throw BudgetExceeded("jensen_chain: s(k+1) exceeds the term budget");
  require_monotone(src, s_next);

  const double block = parallel::sum_range(src, s_k, s_next - 1).value();
  const double prefix = parallel::sum_range(src, Index{1}, s_k).value();
  const double powers = parallel::sum_range([&](Index n) { return std::pow(src(n), p); }, Index{1}, s_k).value();

  JensenReport r;
  r.averages = {k, block / as_double(s_next - s_k), prefix / as_double(s_k)};
  r.jensen_bound = std::pow(powers / as_double(s_k), 1.0 / p);
  r.holds = leq_rel(r.averages.A, r.averages.B, cfg.rel_tol) && leq_rel(r.averages.B, r.jensen_bound, cfg.rel_tol);
  return r;
}

// ---------------------------------------------------------------------------
// polynomial sparsity

PolySparsityReport poly_sparsity_check(const Subsequence& seq, const PolySparsity& ps, Index horizon_n,
                                       double rel_tol) {
  if (horizon_n < 1) throw std::domain_error("poly_sparsity_check: horizon_n must be >= 1");
  PolySparsityReport r;
  r.horizon_n = horizon_n;
  const double slack = 1.0 + rel_tol;
  r.density_failure_n = parallel::first_failure(
      [&](Index n) { return as_double(seq.counting(n)) <= ps.c * std::pow(as_double(n), 1.0 - ps.alpha) * slack; },
      Index{1}, horizon_n);
  r.checked_k = seq.counting(horizon_n);
  const double beta = ps.beta();
  if (r.checked_k >= 1)
    r.lower_bound_failure_k = parallel::first_failure(
        [&](Index k) { return as_double(seq.value(k)) * slack >= std::pow(as_double(k) / ps.c, beta); }, Index{1},
        r.checked_k);
  r.passed = !r.density_failure_n && !r.lower_bound_failure_k;
  return r;
}

Verdict harmonic_poly_sparse_verdict(const Subsequence& seq, const PolySparsity& ps, Index K, const Config& cfg) {
  if (!(ps.alpha > 0.0 && ps.alpha < 1.0))
    throw std::domain_error("harmonic_poly_sparse_verdict: alpha must lie in (0, 1) so that beta > 1");
  if (!(ps.c > 0.0)) throw std::domain_error("harmonic_poly_sparse_verdict: c must be positive");
  if (K < 1) throw std::domain_error("harmonic_poly_sparse_verdict: K must be >= 1");

  const auto report = poly_sparsity_check(seq, ps, cfg.poly_horizon, cfg.rel_tol);
  if (!report.passed) {
    if (report.density_failure_n)
      throw PreconditionError("S(n)/n <= c n^(-alpha) fails at n=" + std::to_string(*report.density_failure_n),
                              report.density_failure_n);
    throw PreconditionError("s(k) >= (k/c)^beta fails at k=" + std::to_string(*report.lower_bound_failure_k),
                            report.lower_bound_failure_k);
  }
  auto cert = build_poly_sparse(seq, ps, K, cfg.poly_horizon, cfg);
  Verdict v;
  v.evidence.emplace_back("beta", ps.beta());
  v.evidence.emplace_back("p", 0.5 * (1.0 + ps.beta()));
  if (cert) {
    v.outcome = Outcome::converges;
    v.evidence.emplace_back("root_sum_partial", cert->premises.front().params.at("root_sum_partial"));
    v.certificate = std::move(cert);
  } else {
    v.notes.push_back("registered growth could not be confirmed on k <= K");
  }
  return v;
}

PowellSalatResult powell_salat_partial(const Subsequence& seq, Index N, std::optional<PolySparsity> envelope) {
  if (N < 1) throw std::domain_error("powell_salat_partial: N must be >= 1");
  PowellSalatResult r;
  r.N = N;
  r.partial = parallel::sum_range(
                  [&](Index n) {
                    const double nn = as_double(n);
                    return as_double(seq.counting(n)) / (nn * nn);
                  },
                  Index{1}, N)
                  .value();
  if (envelope) {
    const auto env = *envelope;
    const auto failure = parallel::first_failure(
        [&](Index n) {
          return as_double(seq.counting(n)) <= env.c * std::pow(as_double(n), 1.0 - env.alpha) * (1.0 + 1e-12);
        },
        Index{1}, N);
    r.envelope_verified = !failure;
    // sum_{n>N} c n^{-1-alpha} <= c N^{-alpha} / alpha
    if (r.envelope_verified) r.tail_bound = env.c * std::pow(as_double(N), -env.alpha) / env.alpha;
  }
  return r;
}

// ---------------------------------------------------------------------------
// majorant and classify

Verdict majorant_subseries_test(const TermRule& terms, const MonotoneSeries& majorant, const Subsequence& seq,
                                Index K, const Config& cfg) {
  if (K < 1) throw std::domain_error("majorant_subseries_test: K must be >= 1");
  require_budget(seq, K, cfg.max_terms);
  const Index horizon = seq.value(K + 1);
  const auto witness =
      parallel::first_failure([&](Index n) { return std::abs(terms(n)) <= majorant(n); }, Index{1}, horizon);
  if (witness)
    throw PreconditionError("majorant fails to dominate: |a_n| > b_n at n=" + std::to_string(*witness), witness);

  Config inner_cfg = cfg;
  inner_cfg.default_K = std::max<Index>(K, 2);
  Verdict inner = classify(majorant, seq, inner_cfg);

  Verdict v;
  v.sandwich = inner.sandwich;
  v.evidence = inner.evidence;
  v.notes = inner.notes;
  if (inner.outcome == Outcome::converges && inner.certificate) {
    const double worst =
        parallel::max_over([&](Index n) { return std::abs(terms(n)) - majorant(n); }, Index{1}, horizon);
    Certificate cert;
    cert.kind = "majorant";
    cert.statement = "|a_n| <= b_n with sum_k b_{s(k)} convergent, so sum_k a_{s(k)} converges absolutely";
    cert.params = {{"horizon_n", as_double(horizon)}};
    cert.chain.push_back(link("max_{n<=N} |a_n| - b_n", worst, "0", 0.0));
    cert.premises.push_back(*inner.certificate);
    v.outcome = Outcome::converges;
    v.certificate = std::move(cert);
  } else {
    v.notes.push_back("majorant subseries not certified convergent; no conclusion for the dominated series");
  }
  return v;
}

Verdict classify(const MonotoneSeries& src, const Subsequence& seq, const Config& cfg) {
  Verdict v;
  const Index K = affordable_blocks(seq, cfg.default_K, cfg.max_terms);
  if (K < cfg.default_K)
    v.notes.push_back("horizon reduced from K=" + std::to_string(cfg.default_K) + " to K=" + std::to_string(K) +
                      " by the term budget or sequence length");
  require_monotone(src, cfg.monotone_horizon);

  // (2, evidence) the dilution bracket is gathered up front so every outcome carries it.
  if (K >= 2) {
    try {
      v.sandwich = dilution_sandwich(src, seq, K, cfg);
    } catch (const BudgetExceeded& e) {
      v.notes.push_back(e.what());
    }
  }

  // (1) analytic certificates
  if (K >= 1) {
    if (const auto& ps = src.power_sum()) {
      Verdict s = sparsity_verdict(src, seq, {ps->p, ps->bound}, seq.power_lower_bound(), K, cfg);
      if (s.outcome == Outcome::converges) {
        v.outcome = Outcome::converges;
        v.certificate = std::move(s.certificate);
        v.evidence.insert(v.evidence.end(), s.evidence.begin(), s.evidence.end());
        return v;
      }
      for (auto& n : s.notes) v.notes.push_back("sparsity: " + n);
    }
    const auto C = src.harmonic_majorant();
    const auto env = seq.sparsity_envelope();
    if (C && env) {
      try {
        Verdict h = harmonic_poly_sparse_verdict(seq, *env, K, cfg);
        if (h.outcome == Outcome::converges) {
          std::optional<Certificate> cert = std::move(h.certificate);
          if (src.family() != Family::harmonic) {
            const Index horizon = std::min(seq.value(K + 1), cfg.max_terms);
            cert = build_harmonic_majorant(src, seq, *cert, *C, horizon, cfg);
          }
          if (cert) {
            v.outcome = Outcome::converges;
            v.certificate = std::move(cert);
            v.evidence.insert(v.evidence.end(), h.evidence.begin(), h.evidence.end());
            return v;
          }
        }
      } catch (const PreconditionError& e) {
        v.notes.push_back(std::string("poly sparsity: ") + e.what());
      }
    }
  }

  // (2) block-aligned bracket with registered tail bounds or minorants
  if (v.sandwich) {
    if (auto cert = build_tail(src, seq, *v.sandwich, cfg)) {
      v.outcome = Outcome::converges;
      v.certificate = std::move(cert);
      return v;
    }
    if (auto cert = build_minorant(src, seq, *v.sandwich, cfg)) {
      v.outcome = Outcome::diverges;
      v.certificate = std::move(cert);
      return v;
    }
  }

  // (3)
  v.notes.push_back("no certificate path applies; reporting the gathered evidence only");
  return v;
}

// ---------------------------------------------------------------------------
// revalidation

bool revalidate(const Certificate& cert, const MonotoneSeries& src, const Subsequence& seq, const Config& cfg) {
  if (!chain_holds(cert, cfg.rel_tol)) return false;
  try {
    std::optional<Certificate> rebuilt;
    if (cert.kind == "sparsity") {
      const SparsityParams params{cert.params.at("p"), cert.params.at("power_sum_bound")};
      if (!(params.series_power_sum_bound >= src.power_sum_bound(params.p).value_or(
                                                  std::numeric_limits<double>::infinity())))
        return false;
      rebuilt = build_sparsity(src, seq, params, PowerLowerBound{cert.params.at("gamma"), cert.params.at("beta")},
                               param_index(cert, "K"), cert.params.at("block_chain") != 0.0, cfg)
                    .cert;
    } else if (cert.kind == "poly_sparse_harmonic") {
      rebuilt = build_poly_sparse(seq, PolySparsity{cert.params.at("c"), cert.params.at("alpha")},
                                  param_index(cert, "K"), param_index(cert, "horizon_n"), cfg);
    } else if (cert.kind == "harmonic_majorant") {
      if (cert.premises.size() != 1) return false;
      if (!revalidate(cert.premises.front(), MonotoneSeries::harmonic(), seq, cfg)) return false;
      rebuilt = build_harmonic_majorant(src, seq, cert.premises.front(), cert.params.at("C"),
                                        param_index(cert, "horizon_n"), cfg);
    } else if (cert.kind == "convergent_source_tail" || cert.kind == "harmonic_minorant_divergence") {
      const auto sw = dilution_sandwich(src, seq, param_index(cert, "K"), cfg);
      rebuilt = cert.kind == "convergent_source_tail" ? build_tail(src, seq, sw, cfg)
                                                       : build_minorant(src, seq, sw, cfg);
    } else if (cert.kind == "majorant") {
      // The dominated terms are not part of (src, seq); src is the majorant.
      return cert.premises.size() == 1 && revalidate(cert.premises.front(), src, seq, cfg);
    } else {
      return false;
    }
    return rebuilt && *rebuilt == cert;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace subseries
