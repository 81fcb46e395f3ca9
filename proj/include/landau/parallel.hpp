#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace landau {

/// Thread budget for grid passes. threads == 1 is the strictly sequential mode.
struct Exec {
  unsigned threads = 1;

  static Exec sequential() { return {1}; }
  static Exec hardware() { return {std::max(1u, std::thread::hardware_concurrency())}; }
};

// Splits [0, count) into contiguous chunks, one per worker. Each index is
// handled by exactly one call of fn(begin, end), so workers that only write
// their own slice produce results independent of the thread count.
template <class Fn>
void parallel_for(std::size_t count, Exec exec, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(std::max(1u, exec.threads), count);
  if (workers <= 1) {
    fn(std::size_t{0}, count);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 1; w < workers; ++w) {
    const std::size_t b = w * chunk;
    const std::size_t e = std::min(count, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&fn, b, e] { fn(b, e); });
  }
  fn(std::size_t{0}, std::min(count, chunk));
  for (auto& t : pool) t.join();
}

}  // namespace landau
