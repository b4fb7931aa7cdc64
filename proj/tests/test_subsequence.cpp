#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "subseries/subsequence.hpp"

using namespace subseries;

namespace {

// Independent digit test used as the enumeration oracle.
bool avoids(Index n, int base, int digit) {
  for (; n > 0; n /= base)
    if (n % base == digit) return false;
  return true;
}

Subsequence no_nine() { return Subsequence::digit_restricted({10, {9}}); }

std::vector<Subsequence> corpus() {
  std::mt19937_64 rng(20240611);
  std::vector<Index> list;
  Index v = 0;
  for (int i = 0; i < 400; ++i) list.push_back(v += 1 + static_cast<Index>(rng() % 37));
  return {Subsequence::identity(),
          Subsequence::powers_of_two(),
          Subsequence::geometric(3),
          Subsequence::squares(),
          Subsequence::cubes(),
          Subsequence::polynomial(1.5),
          Subsequence::polynomial(2.5),
          no_nine(),
          Subsequence::digit_restricted({7, {0, 3}}),
          Subsequence::explicit_list(list),
          Subsequence::affine(2, 0),
          Subsequence::affine(3, 4),
          Subsequence::from_value_rule("k^2+k", [](Index k) { return k * k + k; })};
}

}  // namespace

TEST_CASE("value examples") {
  CHECK(Subsequence::powers_of_two().value(3) == 4);
  CHECK(Subsequence::identity().value(7) == 7);
  CHECK(no_nine().value(9) == 10);
  CHECK(Subsequence::squares().value(12) == 144);
  CHECK(Subsequence::cubes().value(5) == 125);
  CHECK(Subsequence::affine(2, 0).value(4) == 8);
  CHECK(Subsequence::polynomial(1.5).value(4) == 8);
  CHECK(Subsequence::explicit_list({2, 5, 11}).value(3) == 11);
  CHECK_THROWS_AS(Subsequence::explicit_list({2, 5, 11}).value(4), std::out_of_range);
  CHECK_THROWS_AS(Subsequence::identity().value(0), std::domain_error);
  CHECK_THROWS_AS(Subsequence::powers_of_two().value(64), std::overflow_error);
  CHECK(Subsequence::powers_of_two().value(63) == Index{1} << 62);
  CHECK_THROWS_AS(Subsequence::squares().value(Index{4'000'000'000}), std::overflow_error);
}

TEST_CASE("counting examples") {
  CHECK(Subsequence::squares().counting(10) == 3);
  CHECK(Subsequence::identity().counting(42) == 42);
  CHECK(no_nine().counting(100) == 81);
  CHECK(no_nine().counting(0) == 0);
  CHECK(Subsequence::powers_of_two().counting(1023) == 10);
  CHECK(Subsequence::powers_of_two().counting(1024) == 11);
  CHECK(Subsequence::cubes().counting(Index{1'000'000'000'000'000'000}) == 1'000'000);
  CHECK(Subsequence::explicit_list({2, 5, 11}).counting(1'000'000) == 3);
}

TEST_CASE("forward differences and weights") {
  CHECK(Subsequence::squares().forward_diff(2) == 5);
  CHECK(Subsequence::powers_of_two().forward_diff(2) == 2);
  for (Index k : {1, 2, 50, 1'000'000}) CHECK(Subsequence::identity().forward_diff(k) == 1);
  const auto sq = Subsequence::squares();
  CHECK(sq.weight_at(5) == 5);
  CHECK(sq.weight_at(4) == 5);
  CHECK(sq.weight_at(8) == 5);
  CHECK(sq.weight_at(9) == 7);
  for (Index n : {1, 17, 4096}) CHECK(Subsequence::identity().weight_at(n) == 1);
  CHECK_THROWS_AS(Subsequence::affine(3, 4).weight_at(6), std::domain_error);
  CHECK(Subsequence::affine(3, 4).weight_at(7) == 3);
}

TEST_CASE("weight is constant on every block") {
  for (const auto& seq : corpus()) {
    CAPTURE(seq.name());
    const Index K = seq.length() ? std::min<Index>(*seq.length() - 1, 60) : 60;
    for (Index k = 1; k <= K; ++k) {
      const Index lo = seq.value(k), hi = seq.value(k + 1) - 1;
      if (hi - lo > 100'000) break;
      for (Index n = lo; n <= hi; ++n) REQUIRE(seq.weight_at(n) == seq.forward_diff(k));
    }
  }
}

TEST_CASE("validate examples") {
  CHECK(validate(Subsequence::squares(), 100, 10'000).passed);
  const auto dup = validate(Subsequence::explicit_list({3, 3, 5}), 3, 5);
  CHECK_FALSE(dup.passed);
  REQUIRE(dup.failed_k);
  CHECK(*dup.failed_k == 1);
  CHECK(validate(no_nine(), 500, 10'000).passed);
  const auto down = validate(Subsequence::explicit_list({1, 4, 2}), 3, 5);
  CHECK_FALSE(down.passed);
  CHECK(*down.failed_k == 2);
}

TEST_CASE("a broken counting rule is caught") {
  // Not strictly increasing: s(k) = floor(k/2) + 1 repeats.
  const auto bad = Subsequence::from_value_rule("half", [](Index k) { return k / 2 + 1; });
  CHECK_FALSE(validate(bad, 50, 100).passed);
}

TEST_CASE("Galois consistency across the corpus") {
  for (const auto& seq : corpus()) {
    CAPTURE(seq.name());
    const Index hk = seq.length() ? *seq.length() : 300;
    const auto r = validate(seq, hk, 20'000);
    CHECK_MESSAGE(r.passed, r.reason);
    // Direct re-check with the definitions.
    for (Index n = seq.value(1); n <= 5'000; ++n) {
      const Index S = seq.counting(n);
      if (seq.length() && S >= *seq.length()) break;
      REQUIRE(seq.value(S) <= n);
      REQUIRE(n < seq.value(S + 1));
      REQUIRE(seq.counting(n) - seq.counting(n - 1) <= 1);
    }
  }
}

TEST_CASE("digit DP counting equals enumeration for every base 2..16 and single forbidden digit up to 10^6") {
  const Index horizon = 1'000'000;
  int restrictions = 0;
  for (int base = 2; base <= 16; ++base) {
    for (int d = 0; d < base; ++d) {
      if (base == 2 && d == 1) continue;  // no nonzero digit left
      const auto seq = Subsequence::digit_restricted({base, {d}});
      ++restrictions;
      Index count = 0;
      bool ok = true;
      for (Index n = 1; n <= horizon && ok; ++n) {
        if (avoids(n, base, d)) ++count;
        if (seq.counting(n) != count) {
          ok = false;
          FAIL_CHECK("base " << base << " digit " << d << " n " << n);
        }
      }
      CHECK(ok);
    }
  }
  CHECK(restrictions == 134);
}

TEST_CASE("digit restriction contract") {
  CHECK_THROWS_AS(Subsequence::digit_restricted({1, {0}}), std::invalid_argument);
  CHECK_THROWS_AS(Subsequence::digit_restricted({10, {}}), std::invalid_argument);
  CHECK_THROWS_AS(Subsequence::digit_restricted({2, {1}}), std::invalid_argument);
  CHECK_THROWS_AS(Subsequence::digit_restricted({10, {10}}), std::invalid_argument);
  const auto multi = Subsequence::digit_restricted({10, {1, 3, 5, 7, 9}});
  Index count = 0;
  for (Index n = 1; n <= 200'000; ++n) {
    bool ok = true;
    for (Index m = n; m > 0; m /= 10) ok = ok && (m % 10) % 2 == 0;
    count += ok;
    REQUIRE(multi.counting(n) == count);
  }
  // Zero forbidden: leading zeros never count as digits.
  const auto no_zero = Subsequence::digit_restricted({10, {0}});
  CHECK(no_zero.value(10) == 11);
  CHECK(no_zero.counting(100) == 90);  // 1..9 and 81 two-digit values
}

TEST_CASE("polynomial sequences") {
  CHECK_THROWS_AS(Subsequence::polynomial(1.0), std::domain_error);
  CHECK_THROWS_AS(Subsequence::polynomial(0.5), std::domain_error);
  for (double beta : {1.01, 1.1, 1.5, 2.0, 2.7, 3.0}) {
    CAPTURE(beta);
    const auto seq = Subsequence::polynomial(beta);
    for (Index k = 1; k < 20'000; ++k) REQUIRE(seq.value(k + 1) > seq.value(k));
    CHECK(validate(seq, 2'000, 50'000).passed);
  }
  CHECK(Subsequence::polynomial(2.0).spec() == "squares");
}

TEST_CASE("registered analytic facts hold on a horizon") {
  for (const auto& seq : corpus()) {
    CAPTURE(seq.name());
    const Index hk = seq.length() ? *seq.length() : 2'000;
    if (auto lb = seq.power_lower_bound()) {
      for (Index k = 1; k <= hk; ++k) {
        Index v = 0;
        try {
          v = seq.value(k);
        } catch (const std::overflow_error&) {
          break;
        }
        REQUIRE(double(v) >= lb->gamma * std::pow(double(k), lb->beta));
      }
    }
    if (auto env = seq.sparsity_envelope()) {
      for (Index n = 1; n <= 100'000; ++n)
        REQUIRE(double(seq.counting(n)) <= env->c * std::pow(double(n), 1.0 - env->alpha) * (1 + 1e-12));
    }
    if (auto g = seq.linear_upper_bound()) {
      for (Index k = 1; k <= hk; ++k) REQUIRE(double(seq.value(k)) <= *g * double(k));
    }
  }
  CHECK_FALSE(Subsequence::identity().sparsity_envelope());
  CHECK(Subsequence::identity().linear_upper_bound() == 1.0);
}

TEST_CASE("spec strings") {
  CHECK(Subsequence::identity().spec() == "id");
  CHECK(Subsequence::powers_of_two().spec() == "pow2");
  CHECK(Subsequence::squares().spec() == "squares");
  CHECK(Subsequence::cubes().spec() == "cubes");
  CHECK(no_nine().spec() == "nodigit:9:10");
  CHECK(Subsequence::explicit_list({1, 4, 9}).spec() == "list:[1,4,9]");
  CHECK(Subsequence::affine(2, 0).spec() == "affine:2:0");
  CHECK(Subsequence::affine(1, 0).kind() == SeqKind::identity);
}

TEST_CASE("validate stops at the 64-bit limit") {
  const auto r = validate(Subsequence::powers_of_two(), 300, 1000);
  CHECK(r.passed);
  CHECK(r.checked_k == 63);
  CHECK(validate(Subsequence::explicit_list({1, 2, 3}), 10, 5).checked_k == 3);
}
