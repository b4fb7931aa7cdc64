#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "subseries/errors.hpp"
#include "subseries/spec_parser.hpp"
#include "subseries/thinning.hpp"

using namespace subseries;

namespace {

// Every prefix of the chosen terms stays at or below the target.
void check_no_overshoot(const MonotoneSeries& src, const ThinningResult& r) {
  Compensated run;
  long double wide = 0;
  for (Index n : r.chosen_indices) {
    run.add(src.term(n));
    wide += src.term(n);
    REQUIRE(run.value() <= r.target);
    REQUIRE(wide <= static_cast<long double>(r.target) * (1 + 1e-15L));
  }
  CHECK(r.residual >= 0.0);
  CHECK(r.residual == r.target - r.achieved_sum);
  for (std::size_t i = 1; i < r.chosen_indices.size(); ++i)
    REQUIRE(r.chosen_indices[i - 1] < r.chosen_indices[i]);
}

MonotoneSeries n_log_n() {
  // The n >= 2 family 1/(n log n), reindexed to start at 1.
  return MonotoneSeries::from_rule("1/(n log n)", [](Index n) {
    const double m = static_cast<double>(n + 1);
    return 1.0 / (m * std::log(m));
  });
}

}  // namespace

TEST_CASE("greedy thinning examples") {
  const auto h = MonotoneSeries::harmonic();
  const auto one = greedy_thin(h, 1.0, 1e-9, 10'000'000'000);
  REQUIRE_FALSE(one.chosen_indices.empty());
  CHECK(one.chosen_indices.front() == 1);
  CHECK(one.residual == 0.0);
  CHECK(one.reached);

  const auto three_quarters = greedy_thin(h, 0.75, 1e-12, 10'000'000'000'000);
  REQUIRE(three_quarters.chosen_indices.size() >= 2);
  CHECK(three_quarters.chosen_indices[0] == 2);
  CHECK(three_quarters.chosen_indices[1] == 4);
  CHECK(three_quarters.residual == 0.0);
  CHECK(three_quarters.terms_scanned == 4);

  const auto quarter_pi = greedy_thin(h, std::numbers::pi / 4, 1e-6, 10'000'000);
  CHECK(quarter_pi.residual < 1e-6);
  CHECK(quarter_pi.reached);
  CHECK(quarter_pi.terms_scanned <= 10'000'000);
  check_no_overshoot(h, quarter_pi);
}

TEST_CASE("refusals and domain errors") {
  const auto h = MonotoneSeries::harmonic();
  try {
    greedy_thin(h, 0.75, 1e-12, 10'000'000);
    FAIL("expected refusal");
  } catch (const PreconditionError& e) {
    CHECK(e.witness() == 10'000'000);
  }
  CHECK_THROWS_AS(greedy_thin(h, 0.0, 1e-6, 10'000'000), std::domain_error);
  CHECK_THROWS_AS(greedy_thin(h, -1.0, 1e-6, 10'000'000), std::domain_error);
  CHECK_THROWS_AS(greedy_thin(h, 1.0, 0.0, 10'000'000), std::domain_error);
  CHECK_THROWS_AS(greedy_thin(h, 1.0, 1e-6, 0), std::domain_error);
  // Terms that do not tend to zero are refused.
  CHECK_THROWS_AS(greedy_thin(MonotoneSeries::constant(1.0), 2.5, 1e-6, 1000), PreconditionError);
}

TEST_CASE("no overshoot for 100 random targets in (0, 5]") {
  const auto h = MonotoneSeries::harmonic();
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> target_d(0.0, 5.0);
  for (int i = 0; i < 100; ++i) {
    double t = target_d(rng);
    if (t == 0.0) t = 5.0;
    CAPTURE(t);
    const auto r = greedy_thin(h, t, 1e-6, 10'000'000);
    check_no_overshoot(h, r);
    CHECK(r.residual < 1e-6);
  }
}

TEST_CASE("progress on divergent families with vanishing terms") {
  const MonotoneSeries families[] = {MonotoneSeries::harmonic(), MonotoneSeries::pseries(0.5), n_log_n()};
  for (const auto& src : families) {
    CAPTURE(src.name());
    for (double eps : {1e-2, 1e-4, 1e-6}) {
      Index horizon = 10;
      while (!(src.term(horizon) < eps)) horizon *= 10;
      const auto r = greedy_thin(src, 2.5, eps, horizon * 10);
      CHECK(r.reached);
      CHECK(r.residual < eps);
      check_no_overshoot(src, r);
    }
  }
}

TEST_CASE("a larger target agrees up to the first difference and takes that term") {
  const auto h = MonotoneSeries::harmonic();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(0.05, 4.0);
  for (int i = 0; i < 60; ++i) {
    double lo = d(rng), hi = d(rng);
    if (lo > hi) std::swap(lo, hi);
    if (lo == hi) continue;
    const auto a = greedy_thin(h, lo, 1e-6, 10'000'000);
    const auto b = greedy_thin(h, hi, 1e-6, 10'000'000);
    std::size_t j = 0;
    while (j < a.chosen_indices.size() && j < b.chosen_indices.size() &&
           a.chosen_indices[j] == b.chosen_indices[j])
      ++j;
    if (j < a.chosen_indices.size() && j < b.chosen_indices.size()) CHECK(b.chosen_indices[j] < a.chosen_indices[j]);
  }
  // Taken literally ("the larger target keeps every earlier index") the claim fails:
  // 0.75 picks 1/2 + 1/4 while 1.0 picks 1 and stops.
  const auto small = greedy_thin(h, 0.75, 1e-9, 10'000'000'000);
  const auto large = greedy_thin(h, 1.0, 1e-9, 10'000'000'000);
  CHECK(small.chosen_indices == std::vector<Index>{2, 4});
  CHECK(large.chosen_indices == std::vector<Index>{1});
}

TEST_CASE("chosen indices round-trip through the list spec") {
  const auto h = MonotoneSeries::harmonic();
  const auto r = greedy_thin(h, 1.3, 1e-4, 1'000'000);
  const auto seq = parse_subsequence(r.as_list_spec());
  REQUIRE(seq.length());
  CHECK(*seq.length() == Index(r.chosen_indices.size()));
  for (std::size_t i = 0; i < r.chosen_indices.size(); ++i) CHECK(seq.value(Index(i + 1)) == r.chosen_indices[i]);
  CHECK(validate(seq, *seq.length(), seq.value(*seq.length())).passed);
}

TEST_CASE("thinning is deterministic") {
  const auto h = MonotoneSeries::harmonic();
  const auto a = greedy_thin(h, 2.2, 1e-7, 100'000'000);
  const auto b = greedy_thin(h, 2.2, 1e-7, 100'000'000);
  CHECK(a.chosen_indices == b.chosen_indices);
  CHECK(a.achieved_sum == b.achieved_sum);
}
