#pragma once

#include <vector>

#include "subseries/kernels.hpp"
#include "subseries/series.hpp"
#include "subseries/subsequence.hpp"

namespace subseries {

enum class Flavor { condensed, diluted, subseries };

// a_{s(k)} * Δs(k)
double condensed_term(const MonotoneSeries& src, const Subsequence& seq, Index k);
// a_n / Δs(S(n)) for n >= s(1), evaluated as a_n * (1/Δs(S(n)))
double diluted_term(const MonotoneSeries& src, const Subsequence& seq, Index n);

// A series derived from (src, seq). Condensed and subseries views are indexed
// by k >= 1; the diluted view by n >= s(1).
class DerivedSeries {
 public:
  DerivedSeries(MonotoneSeries source, Subsequence seq, Flavor flavor)
      : source_(std::move(source)), seq_(std::move(seq)), flavor_(flavor) {}

  double term(Index i) const;
  Index first_index() const;

  const MonotoneSeries& source() const { return source_; }
  const Subsequence& sequence() const { return seq_; }
  Flavor flavor() const { return flavor_; }

 private:
  MonotoneSeries source_;
  Subsequence seq_;
  Flavor flavor_;
};

// Blocks [s(k), s(k+1)-1] for k = 1..K.
std::vector<Block> block_partition(const Subsequence& seq, Index K);

// Throws BudgetExceeded when the blocks 1..K span more than max_terms indices.
void require_budget(const Subsequence& seq, Index K, Index max_terms);

struct BlockSums {
  Index K = 0;
  double subseries_tail = 0.0;  // sum_{k=2}^{K} a_{s(k)}
  double diluted_sum = 0.0;     // sum_{k=1}^{K} sum_{n in block k} a_n / Δs(k)
  double subseries_head = 0.0;  // sum_{k=1}^{K} a_{s(k)}
};

// Per-block data behind the block-aligned sandwiches.
struct BlockDetail {
  Index k = 0;
  Block block;
  double raw_sum = 0.0;      // sum of a_n over the block
  double diluted_sum = 0.0;  // sum of a_n / Δs(k) over the block
  double a_first = 0.0;      // a_{s(k)}
  double a_next = 0.0;       // a_{s(k+1)}
};

std::vector<BlockDetail> block_details(const MonotoneSeries& src, const Subsequence& seq, Index K,
                                       Index max_terms = Config{}.max_terms);

// Truncations of the three series in the dilution sandwich at block K >= 2.
BlockSums block_aligned_sums(const MonotoneSeries& src, const Subsequence& seq, Index K,
                             Index max_terms = Config{}.max_terms);

// The diluted partial sum over [s(1), s(K+1)-1] indexed directly by n, with
// the weight looked up through S(n) at every index.
double direct_diluted_sum(const MonotoneSeries& src, const Subsequence& seq, Index K,
                          Index max_terms = Config{}.max_terms);

}  // namespace subseries
