#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracle/exact.hpp"
#include "subseries/errors.hpp"
#include "subseries/series.hpp"

using namespace subseries;

namespace {

double rel_err(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

}  // namespace

TEST_CASE("term values") {
  const auto h = MonotoneSeries::harmonic();
  CHECK(h.term(5) == 0.2);
  CHECK(h.term(1) == 1.0);
  CHECK(MonotoneSeries::pseries(2).term(4) == 0.0625);
  CHECK(MonotoneSeries::geometric(0.5).term(3) == 0.25);
  CHECK(MonotoneSeries::constant(0).term(17) == 0.0);
}

TEST_CASE("term rejects non-positive indices") {
  const auto h = MonotoneSeries::harmonic();
  CHECK_THROWS_AS(h.term(0), std::domain_error);
  CHECK_THROWS_AS(h.term(-3), std::domain_error);
}

TEST_CASE("term is deterministic") {
  const auto s = MonotoneSeries::pseries(1.7);
  for (Index n : {1, 2, 3, 999, 123456}) CHECK(s.term(n) == s.term(n));
}

TEST_CASE("family constructors validate parameters") {
  CHECK_THROWS_AS(MonotoneSeries::pseries(0.0), std::domain_error);
  CHECK_THROWS_AS(MonotoneSeries::geometric(1.0), std::domain_error);
  CHECK_THROWS_AS(MonotoneSeries::geometric(-0.1), std::domain_error);
  CHECK_THROWS_AS(MonotoneSeries::constant(-1.0), std::domain_error);
}

TEST_CASE("partial sums of small windows") {
  const auto h = MonotoneSeries::harmonic();
  CHECK(partial_sum(h, 1, 1).value == 1.0);
  const double want = oracle::to_double(oracle::to_mpq(oracle::harmonic(1, 4)));
  CHECK(oracle::to_mpq(oracle::harmonic(1, 4)) == mpq_class(25, 12));
  CHECK(rel_err(partial_sum(h, 1, 4).value, want) <= 1e-15);
  CHECK(partial_sum(h, 1, 4).upto == 4);
  CHECK_THROWS_AS(partial_sum(h, 5, 4), std::domain_error);
  CHECK_THROWS_AS(partial_sum(h, 0, 4), std::domain_error);
}

TEST_CASE("p=2 partial sum to 10^6 sits below pi^2/6 by the tail") {
  const double z2 = std::numbers::pi * std::numbers::pi / 6.0;
  const double v = partial_sum(MonotoneSeries::pseries(2), 1, 1'000'000).value;
  CHECK(v >= z2 - 1e-6 - 1e-12);
  CHECK(v <= z2);
}

TEST_CASE("partial sums match the exact oracle on windows of up to 10^6 terms") {
  struct Window {
    Index from, to;
  };
  const Window windows[] = {{1, 1'000'000}, {1, 1000}, {500'000, 1'000'000}, {7, 77'777}};
  for (const auto& w : windows) {
    CAPTURE(w.from);
    CAPTURE(w.to);
    CHECK(rel_err(partial_sum(MonotoneSeries::harmonic(), w.from, w.to).value,
                  oracle::to_double(oracle::harmonic(w.from, w.to))) <= 1e-12);
    CHECK(rel_err(partial_sum(MonotoneSeries::pseries(2), w.from, w.to).value,
                  oracle::to_double(oracle::pseries(w.from, w.to, 2))) <= 1e-12);
  }
  // Geometric: exact closed form (1 - r^N)/(1 - r) with r = 1/2 -> 2 - 2^{1-N}.
  const double g = partial_sum(MonotoneSeries::geometric(0.5), 1, 40).value;
  CHECK(rel_err(g, 2.0 - std::ldexp(1.0, -39)) <= 1e-15);
  CHECK(partial_sum(MonotoneSeries::constant(0.25), 1, 1'000'000).value == 250'000.0);
}

TEST_CASE("additivity, monotone growth and determinism") {
  const auto h = MonotoneSeries::harmonic();
  const Index n = 1'000'000;
  const double whole = partial_sum(h, 1, n).value;
  for (Index m : {1, 2, 16383, 16384, 16385, 99'999, 500'000, 999'999}) {
    CAPTURE(m);
    const double split = partial_sum(h, 1, m).value + partial_sum(h, m + 1, n).value;
    CHECK(rel_err(split, whole) <= 1e-12);
  }
  double prev = 0.0;
  for (Index m = 1; m <= 100'000; m += 997) {
    const double v = partial_sum(h, 1, m).value;
    CHECK(v >= prev);
    prev = v;
  }
  const auto a = partial_sum(h, 3, n);
  const auto b = partial_sum(h, 3, n);
  CHECK(a.value == b.value);
  CHECK(a.compensation == b.compensation);
}

TEST_CASE("check_monotone") {
  CHECK(check_monotone(MonotoneSeries::harmonic(), 10'000).monotone);
  CHECK(check_monotone(MonotoneSeries::constant(0), 10).monotone);

  const auto wave = MonotoneSeries::from_rule("abs_sin", [](Index n) { return std::abs(std::sin(double(n))); });
  std::optional<Index> brute;
  for (Index n = 1; n < 100 && !brute; ++n)
    if (std::abs(std::sin(double(n))) < std::abs(std::sin(double(n + 1)))) brute = n;
  const auto r = check_monotone(wave, 100);
  CHECK_FALSE(r.monotone);
  REQUIRE(r.first_violation);
  CHECK(*r.first_violation == *brute);
  CHECK(*r.first_violation <= 100);

  const auto negative = MonotoneSeries::from_rule("neg", [](Index n) { return n == 4 ? -1.0 : 0.0; });
  CHECK_FALSE(check_monotone(negative, 10).monotone);

  CHECK_THROWS_AS(check_monotone(MonotoneSeries::harmonic(), 1), std::domain_error);
  try {
    require_monotone(wave, 100);
    FAIL("expected refusal");
  } catch (const PreconditionError& e) {
    REQUIRE(e.witness());
    CHECK(*e.witness() == *brute);
  }
}

TEST_CASE("tail bounds are valid and nonincreasing") {
  const MonotoneSeries families[] = {MonotoneSeries::pseries(2), MonotoneSeries::pseries(1.5),
                                     MonotoneSeries::geometric(0.5), MonotoneSeries::geometric(0.9),
                                     MonotoneSeries::constant(0)};
  for (const auto& s : families) {
    CAPTURE(s.spec());
    double prev = INFINITY;
    for (Index N : {0, 1, 2, 10, 100, 1000}) {
      const auto t = s.tail_bound(N);
      REQUIRE(t);
      CHECK(*t >= 0.0);
      CHECK(*t <= prev);
      prev = *t;
      // A finite stretch of the tail never exceeds the bound.
      CHECK(partial_sum(s, N + 1, N + 200'000).value <= *t);
    }
  }
  CHECK_FALSE(MonotoneSeries::harmonic().tail_bound(10));
  CHECK_FALSE(MonotoneSeries::constant(1).tail_bound(10));
  CHECK_FALSE(MonotoneSeries::from_rule("r", [](Index n) { return 1.0 / double(n * n); }).tail_bound(10));
}

TEST_CASE("power sum bounds") {
  const auto h = MonotoneSeries::harmonic();
  const double z2 = std::numbers::pi * std::numbers::pi / 6.0;
  REQUIRE(h.power_sum());
  CHECK(h.power_sum()->p == 2.0);
  CHECK(h.power_sum()->bound >= z2);
  REQUIRE(h.power_sum_bound(1.5));
  CHECK(*h.power_sum_bound(1.5) >= partial_sum(MonotoneSeries::pseries(1.5), 1, 1'000'000).value);
  CHECK_FALSE(h.power_sum_bound(1.0));
  const auto custom = h.with_power_sum({1.5, 2.7});
  CHECK(custom.power_sum()->p == 1.5);
  CHECK(*custom.power_sum_bound(1.5) == 2.7);
  CHECK_FALSE(MonotoneSeries::from_rule("r", [](Index) { return 0.0; }).power_sum_bound(2));
}

TEST_CASE("harmonic envelopes") {
  const auto h = MonotoneSeries::harmonic();
  CHECK(h.harmonic_majorant() == 1.0);
  CHECK(h.harmonic_minorant() == 1.0);
  const auto p2 = MonotoneSeries::pseries(2);
  REQUIRE(p2.harmonic_majorant());
  for (Index n = 1; n < 1000; ++n) CHECK(p2.term(n) <= *p2.harmonic_majorant() / double(n));
  CHECK_FALSE(MonotoneSeries::pseries(0.5).harmonic_majorant());
}

TEST_CASE("spec strings") {
  CHECK(MonotoneSeries::harmonic().spec() == "harmonic");
  CHECK(MonotoneSeries::pseries(2).spec() == "pseries:2");
  CHECK(MonotoneSeries::pseries(1).spec() == "harmonic");
  CHECK(MonotoneSeries::geometric(0.5).spec() == "geometric:0.5");
  CHECK(MonotoneSeries::constant(0).spec() == "const:0");
}
