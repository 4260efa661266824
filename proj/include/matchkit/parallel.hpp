/**
 * Copyright (c) 2026 The matchkit authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace matchkit {

/** Worker cap: MATCHKIT_THREADS when set and positive, else hardware
 *  concurrency. Always at least 1. */
inline std::size_t max_threads() {
  if (const char* env = std::getenv("MATCHKIT_THREADS")) {
    const long v = std::atol(env);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

/** Run f(begin, end) over [0, n) split into contiguous chunks, one per
 *  worker. Chunks are disjoint, so workers may write disjoint slices of a
 *  shared output without synchronization; the result is identical to the
 *  serial run. */
template <typename F>
void parallel_chunks(std::size_t n, F&& f) {
  const std::size_t workers = std::min(max_threads(), std::max<std::size_t>(n, 1));
  if (n == 0) return;
  if (workers <= 1 || n < 2 * workers) {
    f(std::size_t{0}, n);
    return;
  }
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    if (lo >= n) break;
    const std::size_t hi = std::min(n, lo + chunk);
    pool.emplace_back([&f, lo, hi] { f(lo, hi); });
  }
  f(std::size_t{0}, std::min(n, chunk));
  for (auto& t : pool) t.join();
}

}  // namespace matchkit
