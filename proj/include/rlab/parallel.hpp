#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace rlab {

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Splits [0, count) into contiguous blocks, one per worker, and calls
/// body(block, begin, end) for each. Blocks are numbered in index order, so
/// callers that combine per-block results by block number get the same
/// answer for every thread count. The body must not throw.
template <class Body>
void parallel_blocks(std::size_t count, unsigned threads, std::size_t blocks, Body&& body) {
  if (count == 0) return;
  blocks = std::max<std::size_t>(1, std::min(blocks, count));
  auto range = [&](std::size_t b) {
    return std::pair{count * b / blocks, count * (b + 1) / blocks};
  };
  threads = std::min<unsigned>(resolve_threads(threads), static_cast<unsigned>(blocks));
  if (threads <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) {
      auto [lo, hi] = range(b);
      body(b, lo, hi);
    }
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t b = t; b < blocks; b += threads) {
        auto [lo, hi] = range(b);
        body(b, lo, hi);
      }
    });
  }
}

}  // namespace rlab
