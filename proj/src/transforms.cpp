#include "subseries/transforms.hpp"

#include <stdexcept>
#include <string>

#include "subseries/errors.hpp"

namespace subseries {

namespace {

// Diluted block sums: the weight is constant on a block, so the reciprocal is
// taken once per block and applied termwise. Blocks run concurrently; each
// block is reduced in ascending order.
std::vector<Compensated> diluted_block_sums(const MonotoneSeries& src, const std::vector<Block>& blocks) {
  std::vector<Compensated> out(blocks.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(blocks.size()); ++i) {
    const Block& b = blocks[static_cast<std::size_t>(i)];
    const double inv = 1.0 / static_cast<double>(b.width());
    Compensated acc;
    for (Index n = b.first; n <= b.last; ++n) acc.add(src(n) * inv);
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

}  // namespace

double condensed_term(const MonotoneSeries& src, const Subsequence& seq, Index k) {
  return src.term(seq.value(k)) * static_cast<double>(seq.forward_diff(k));
}

double diluted_term(const MonotoneSeries& src, const Subsequence& seq, Index n) {
  const double inv = 1.0 / static_cast<double>(seq.weight_at(n));
  return src.term(n) * inv;
}

double DerivedSeries::term(Index i) const {
  switch (flavor_) {
    case Flavor::condensed:
      return condensed_term(source_, seq_, i);
    case Flavor::diluted:
      return diluted_term(source_, seq_, i);
    case Flavor::subseries:
      return source_.term(seq_.value(i));
  }
  return 0.0;
}

Index DerivedSeries::first_index() const { return flavor_ == Flavor::diluted ? seq_.value(1) : 1; }

std::vector<Block> block_partition(const Subsequence& seq, Index K) {
  if (K < 1) throw std::domain_error("block_partition: K must be >= 1");
  std::vector<Block> blocks;
  blocks.reserve(static_cast<std::size_t>(K));
  Index start = seq.value(1);
  for (Index k = 1; k <= K; ++k) {
    const Index next = seq.value(k + 1);
    blocks.push_back({start, next - 1});
    start = next;
  }
  return blocks;
}

void require_budget(const Subsequence& seq, Index K, Index max_terms) {
  Index end = 0;
  try {
    end = seq.value(K + 1);
  } catch (const std::overflow_error&) {
    throw BudgetExceeded("s(" + std::to_string(K + 1) + ") does not fit in 64 bits");
  }
  const Index span = end - seq.value(1);
  if (span > max_terms)
    throw BudgetExceeded("blocks 1.." + std::to_string(K) + " span " + std::to_string(span) +
                         " terms, budget is " + std::to_string(max_terms));
}

std::vector<BlockDetail> block_details(const MonotoneSeries& src, const Subsequence& seq, Index K,
                                       Index max_terms) {
  if (K < 1) throw std::domain_error("block_details: K must be >= 1");
  require_budget(seq, K, max_terms);
  const auto blocks = block_partition(seq, K);

  const auto raw = parallel::block_sums(src, std::span<const Block>(blocks));
  const auto diluted = diluted_block_sums(src, blocks);

  std::vector<BlockDetail> out(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const Block& b = blocks[i];
    out[i] = BlockDetail{static_cast<Index>(i) + 1, b,          raw[i].value(),
                         diluted[i].value(),        src(b.first), src(b.last + 1)};
  }
  return out;
}

BlockSums block_aligned_sums(const MonotoneSeries& src, const Subsequence& seq, Index K, Index max_terms) {
  if (K < 2) throw std::domain_error("block_aligned_sums: K must be >= 2");
  require_budget(seq, K, max_terms);
  const auto blocks = block_partition(seq, K);

  const auto diluted = diluted_block_sums(src, blocks);

  Compensated middle;
  for (const auto& d : diluted) middle.merge(d);

  Compensated head;
  Compensated tail;
  for (Index k = 1; k <= K; ++k) {
    const double a = src(blocks[static_cast<std::size_t>(k - 1)].first);
    head.add(a);
    if (k >= 2) tail.add(a);
  }
  return {K, tail.value(), middle.value(), head.value()};
}

double direct_diluted_sum(const MonotoneSeries& src, const Subsequence& seq, Index K, Index max_terms) {
  if (K < 1) throw std::domain_error("direct_diluted_sum: K must be >= 1");
  require_budget(seq, K, max_terms);
  const Index last = seq.value(K + 1) - 1;
  const auto term = [&](Index n) { return src(n) * (1.0 / static_cast<double>(seq.weight_at(n))); };
  return parallel::sum_range(term, seq.value(1), last).value();
}

}  // namespace subseries
