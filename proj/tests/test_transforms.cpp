#include <doctest.h>

#include <cmath>

#include "oracle/exact.hpp"
#include "subseries/errors.hpp"
#include "subseries/transforms.hpp"

using namespace subseries;

namespace {

double rel_err(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

bool leq(double a, double b) { return leq_rel(a, b, 1e-12); }

}  // namespace

TEST_CASE("condensed and diluted terms") {
  const auto h = MonotoneSeries::harmonic();
  const auto sq = Subsequence::squares();
  CHECK(condensed_term(h, sq, 2) == 1.25);
  CHECK(condensed_term(h, Subsequence::powers_of_two(), 3) == 1.0);
  CHECK(diluted_term(h, sq, 5) == doctest::Approx(0.04).epsilon(1e-15));
  CHECK(diluted_term(h, sq, 4) == 0.05);
  CHECK_THROWS_AS(diluted_term(h, Subsequence::affine(2, 0), 1), std::domain_error);
}

TEST_CASE("identity collapse: all three views reproduce the source") {
  const auto id = Subsequence::identity();
  const MonotoneSeries sources[] = {MonotoneSeries::harmonic(), MonotoneSeries::pseries(1.3),
                                    MonotoneSeries::geometric(0.7)};
  for (const auto& src : sources) {
    const DerivedSeries cond(src, id, Flavor::condensed), dil(src, id, Flavor::diluted),
        sub(src, id, Flavor::subseries);
    for (Index n = 1; n <= 5'000; ++n) {
      REQUIRE(cond.term(n) == src.term(n));
      REQUIRE(dil.term(n) == src.term(n));
      REQUIRE(sub.term(n) == src.term(n));
    }
  }
}

TEST_CASE("derived series views") {
  const auto h = MonotoneSeries::harmonic();
  const auto aff = Subsequence::affine(3, 4);
  const DerivedSeries dil(h, aff, Flavor::diluted);
  CHECK(dil.first_index() == 7);
  CHECK(dil.term(8) == diluted_term(h, aff, 8));
  const DerivedSeries sub(h, aff, Flavor::subseries);
  CHECK(sub.first_index() == 1);
  CHECK(sub.term(2) == 0.1);
}

TEST_CASE("block partition") {
  CHECK(block_partition(Subsequence::squares(), 2) == std::vector<Block>{{1, 3}, {4, 8}});
  CHECK(block_partition(Subsequence::identity(), 3) == std::vector<Block>{{1, 1}, {2, 2}, {3, 3}});
  CHECK(block_partition(Subsequence::powers_of_two(), 3) == std::vector<Block>{{1, 1}, {2, 3}, {4, 7}});
  const auto blocks = block_partition(Subsequence::cubes(), 40);
  for (std::size_t i = 0; i + 1 < blocks.size(); ++i) CHECK(blocks[i].last + 1 == blocks[i + 1].first);
  CHECK(blocks[4].width() == Subsequence::cubes().forward_diff(5));
  CHECK_THROWS_AS(block_partition(Subsequence::identity(), 0), std::domain_error);
}

TEST_CASE("budget refusal") {
  CHECK_THROWS_AS(require_budget(Subsequence::powers_of_two(), 50, 100'000'000), BudgetExceeded);
  CHECK_THROWS_AS(require_budget(Subsequence::powers_of_two(), 200, 100'000'000), BudgetExceeded);
  CHECK_NOTHROW(require_budget(Subsequence::powers_of_two(), 20, 100'000'000));
  CHECK_THROWS_AS(block_aligned_sums(MonotoneSeries::harmonic(), Subsequence::powers_of_two(), 50), BudgetExceeded);
}

TEST_CASE("block aligned sums: harmonic over identity collapses to H_5") {
  const auto r = block_aligned_sums(MonotoneSeries::harmonic(), Subsequence::identity(), 5);
  const double h5 = oracle::to_double(mpq_class(137, 60));
  CHECK(oracle::to_mpq(oracle::harmonic(1, 5)) == mpq_class(137, 60));
  CHECK(rel_err(r.subseries_head, h5) <= 1e-15);
  CHECK(rel_err(r.diluted_sum, h5) <= 1e-15);
  CHECK(rel_err(r.subseries_tail, h5 - 1.0) <= 1e-15);
  CHECK_THROWS_AS(block_aligned_sums(MonotoneSeries::harmonic(), Subsequence::identity(), 1), std::domain_error);
}

TEST_CASE("block aligned sums: harmonic over squares at K=50") {
  const auto r = block_aligned_sums(MonotoneSeries::harmonic(), Subsequence::squares(), 50);
  CHECK(leq(r.subseries_tail, r.diluted_sum));
  CHECK(leq(r.diluted_sum, r.subseries_head));
  // The telescoped per-block bounds give the tight bracket of width 1 - 1/2601.
  const double tight_lower = r.subseries_tail + 1.0 / 2601.0;
  CHECK(leq(tight_lower, r.diluted_sum));
  CHECK(std::abs((r.subseries_head - tight_lower) - (1.0 - 1.0 / 2601.0)) <= 1e-12);
  // Exact oracle for the middle: sum over k of (1/Δs(k)) * sum_{block k} 1/n.
  mpq_class exact = 0;
  for (Index k = 1; k <= 50; ++k) {
    const Index lo = k * k, hi = (k + 1) * (k + 1) - 1;
    exact += oracle::to_mpq(oracle::harmonic(lo, hi)) / mpq_class(hi - lo + 1);
  }
  CHECK(rel_err(r.diluted_sum, oracle::to_double(exact)) <= 1e-12);
  CHECK(rel_err(r.subseries_head, oracle::to_double(oracle::pseries(1, 50, 2))) <= 1e-12);
}

TEST_CASE("zero series gives zero sums") {
  const auto z = MonotoneSeries::constant(0);
  for (const auto& seq : {Subsequence::identity(), Subsequence::squares(), Subsequence::powers_of_two()}) {
    const auto r = block_aligned_sums(z, seq, 3);
    CHECK(r.subseries_tail == 0.0);
    CHECK(r.diluted_sum == 0.0);
    CHECK(r.subseries_head == 0.0);
  }
}

TEST_CASE("per-block sandwiches hold across a corpus") {
  const MonotoneSeries sources[] = {MonotoneSeries::harmonic(), MonotoneSeries::pseries(2),
                                    MonotoneSeries::pseries(0.5), MonotoneSeries::geometric(0.99),
                                    MonotoneSeries::constant(1.5)};
  const Subsequence seqs[] = {Subsequence::identity(), Subsequence::powers_of_two(), Subsequence::squares(),
                              Subsequence::cubes(), Subsequence::digit_restricted({10, {9}})};
  for (const auto& src : sources) {
    for (const auto& seq : seqs) {
      CAPTURE(src.spec());
      CAPTURE(seq.spec());
      for (const auto& d : block_details(src, seq, 20)) {
        const double w = double(d.block.width());
        REQUIRE(leq(d.a_next * w, d.raw_sum));
        REQUIRE(leq(d.raw_sum, d.a_first * w));
        REQUIRE(leq(d.a_next, d.diluted_sum));
        REQUIRE(leq(d.diluted_sum, d.a_first));
      }
    }
  }
}

TEST_CASE("blockwise and direct diluted sums agree") {
  const auto h = MonotoneSeries::harmonic();
  for (const auto& seq : {Subsequence::squares(), Subsequence::cubes(), Subsequence::powers_of_two(),
                          Subsequence::digit_restricted({10, {9}}), Subsequence::affine(3, 4)}) {
    CAPTURE(seq.spec());
    for (Index K : {2, 10, 20}) {
      const double block = block_aligned_sums(h, seq, K).diluted_sum;
      CHECK(rel_err(direct_diluted_sum(h, seq, K), block) <= 1e-12);
    }
  }
}

TEST_CASE("block details are per-block and deterministic") {
  const auto h = MonotoneSeries::harmonic();
  const auto a = block_details(h, Subsequence::cubes(), 60);
  const auto b = block_details(h, Subsequence::cubes(), 60);
  REQUIRE(a.size() == 60);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].k == Index(i + 1));
    CHECK(a[i].diluted_sum == b[i].diluted_sum);
    CHECK(a[i].raw_sum == b[i].raw_sum);
  }
}
