#ifndef SCHOLNET_PARALLEL_HPP_
#define SCHOLNET_PARALLEL_HPP_

#include <cstddef>
#include <thread>
#include <utility>
#include <vector>

namespace scholnet {

// Splits [0, n) into at most `threads` contiguous chunks and invokes
// fn(begin, end, chunk_index) for each. Chunk boundaries depend only on
// n and the chunk count, never on scheduling, so any per-chunk result
// merged in chunk order is identical to a serial run.
template <typename Fn>
void parallel_chunks(std::size_t n, int threads, Fn&& fn) {
  if (n == 0) return;
  std::size_t chunk_count = threads > 1 ? static_cast<std::size_t>(threads) : 1;
  if (chunk_count > n) chunk_count = n;
  if (chunk_count == 1) {
    fn(std::size_t{0}, n, std::size_t{0});
    return;
  }
  std::size_t base = n / chunk_count;
  std::size_t rem = n % chunk_count;
  std::vector<std::thread> workers;
  workers.reserve(chunk_count);
  std::size_t begin = 0;
  for (std::size_t c = 0; c < chunk_count; ++c) {
    std::size_t len = base + (c < rem ? 1 : 0);
    std::size_t end = begin + len;
    workers.emplace_back([&fn, begin, end, c] { fn(begin, end, c); });
    begin = end;
  }
  for (auto& w : workers) w.join();
}

// Maps chunks of [0, n) to partial results and folds them left-to-right
// in chunk order. `map(begin, end)` must be a pure function of its range;
// `reduce(acc, partial)` is applied sequentially, so the fold order (and
// therefore the result) does not depend on the thread count as long as
// reduce is associative over adjacent ranges.
template <typename R, typename Map, typename Reduce>
R parallel_map_reduce(std::size_t n, int threads, Map&& map, Reduce&& reduce) {
  if (n == 0) return R{};
  std::size_t chunk_count = threads > 1 ? static_cast<std::size_t>(threads) : 1;
  if (chunk_count > n) chunk_count = n;
  std::vector<R> partials(chunk_count);
  parallel_chunks(n, threads,
                  [&](std::size_t begin, std::size_t end, std::size_t c) {
                    partials[c] = map(begin, end);
                  });
  R acc = std::move(partials[0]);
  for (std::size_t c = 1; c < chunk_count; ++c) {
    reduce(acc, std::move(partials[c]));
  }
  return acc;
}

}  // namespace scholnet

#endif  // SCHOLNET_PARALLEL_HPP_
