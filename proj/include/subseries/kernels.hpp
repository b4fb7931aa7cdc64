#pragma once

// Data-parallel loops behind partial sums, blockwise dilution sums and the
// density scans. Each kernel has a serial reference in `serial::` and an
// OpenMP version in `parallel::`.
//
// The parallel kernels split [from, to] into fixed chunks of kChunk indices,
// reduce each chunk in ascending order and merge chunk results in ascending
// chunk order. Results therefore depend only on the inputs, never on the
// number of threads.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace subseries {

using Index = std::int64_t;

// Neumaier's variant of Kahan summation.
struct Compensated {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }

  void merge(const Compensated& other) {
    add(other.sum);
    comp += other.comp;
  }

  double value() const { return sum + comp; }
};

// Closed integer interval [first, last].
struct Block {
  Index first = 0;
  Index last = -1;

  Index width() const { return last - first + 1; }
  friend bool operator==(const Block&, const Block&) = default;
};

inline constexpr Index kChunk = Index{1} << 14;

namespace serial {

template <class F>
Compensated sum_range(const F& f, Index from, Index to) {
  Compensated acc;
  for (Index n = from; n <= to; ++n) acc.add(f(n));
  return acc;
}

// Smallest n in [from, to) with f(n) < f(n+1) or a negative value.
template <class F>
std::optional<Index> first_increase(const F& f, Index from, Index to) {
  if (to <= from) return std::nullopt;
  double prev = f(from);
  for (Index n = from; n < to; ++n) {
    const double next = f(n + 1);
    if (prev < 0.0 || next < 0.0 || prev < next) return n;
    prev = next;
  }
  return std::nullopt;
}

// Smallest n in [from, to] for which pred(n) is false.
template <class P>
std::optional<Index> first_failure(const P& pred, Index from, Index to) {
  for (Index n = from; n <= to; ++n)
    if (!pred(n)) return n;
  return std::nullopt;
}

template <class F>
double max_over(const F& f, Index from, Index to) {
  double best = -std::numeric_limits<double>::infinity();
  for (Index n = from; n <= to; ++n) best = std::max(best, f(n));
  return best;
}

// Per-block compensated sums of f.
template <class F>
std::vector<Compensated> block_sums(const F& f, std::span<const Block> blocks) {
  std::vector<Compensated> out(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i)
    out[i] = sum_range(f, blocks[i].first, blocks[i].last);
  return out;
}

}  // namespace serial

namespace parallel {

namespace detail {

inline Index chunk_count(Index from, Index to) {
  return to < from ? 0 : (to - from) / kChunk + 1;
}

}  // namespace detail

template <class F>
Compensated sum_range(const F& f, Index from, Index to) {
  const Index chunks = detail::chunk_count(from, to);
  std::vector<Compensated> partial(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(static)
  for (Index c = 0; c < chunks; ++c) {
    const Index lo = from + c * kChunk;
    const Index hi = std::min(to, lo + kChunk - 1);
    partial[static_cast<std::size_t>(c)] = serial::sum_range(f, lo, hi);
  }
  Compensated acc;
  for (const auto& p : partial) acc.merge(p);
  return acc;
}

template <class F>
std::optional<Index> first_increase(const F& f, Index from, Index to) {
  if (to <= from) return std::nullopt;
  // Chunks cover the pair (n, n+1) for n in [from, to).
  const Index chunks = detail::chunk_count(from, to - 1);
  Index best = std::numeric_limits<Index>::max();
#pragma omp parallel for schedule(static) reduction(min : best)
  for (Index c = 0; c < chunks; ++c) {
    const Index lo = from + c * kChunk;
    const Index hi = std::min(to, lo + kChunk);
    if (auto hit = serial::first_increase(f, lo, hi)) best = std::min(best, *hit);
  }
  if (best == std::numeric_limits<Index>::max()) return std::nullopt;
  return best;
}

template <class P>
std::optional<Index> first_failure(const P& pred, Index from, Index to) {
  const Index chunks = detail::chunk_count(from, to);
  Index best = std::numeric_limits<Index>::max();
#pragma omp parallel for schedule(static) reduction(min : best)
  for (Index c = 0; c < chunks; ++c) {
    const Index lo = from + c * kChunk;
    const Index hi = std::min(to, lo + kChunk - 1);
    if (auto hit = serial::first_failure(pred, lo, hi)) best = std::min(best, *hit);
  }
  if (best == std::numeric_limits<Index>::max()) return std::nullopt;
  return best;
}

template <class F>
double max_over(const F& f, Index from, Index to) {
  const Index chunks = detail::chunk_count(from, to);
  double best = -std::numeric_limits<double>::infinity();
#pragma omp parallel for schedule(static) reduction(max : best)
  for (Index c = 0; c < chunks; ++c) {
    const Index lo = from + c * kChunk;
    const Index hi = std::min(to, lo + kChunk - 1);
    best = std::max(best, serial::max_over(f, lo, hi));
  }
  return best;
}

// Blocks are independent; each one is summed with the chunked scheme so a
// single wide block still spreads over threads.
template <class F>
std::vector<Compensated> block_sums(const F& f, std::span<const Block> blocks) {
  std::vector<Compensated> out(blocks.size());
  std::vector<std::size_t> wide;
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (blocks[i].width() > kChunk) wide.push_back(i);

  const auto narrow_count = static_cast<std::int64_t>(blocks.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < narrow_count; ++i) {
    const auto& b = blocks[static_cast<std::size_t>(i)];
    if (b.width() <= kChunk) out[static_cast<std::size_t>(i)] = serial::sum_range(f, b.first, b.last);
  }
  for (std::size_t i : wide) out[i] = sum_range(f, blocks[i].first, blocks[i].last);
  return out;
}

}  // namespace parallel

}  // namespace subseries
