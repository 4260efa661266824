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

/** \file rng.hpp
 *  \brief Seeded random source with portable value transforms.
 *
 *  The mt19937_64 word stream is pinned by the C++ standard, but the
 *  standard distribution adaptors are not. All transforms here are
 *  hand-rolled so that a given seed produces the same values on every
 *  platform and standard library.
 */

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>

namespace matchkit {

/** SplitMix64 step; used to derive independent stream seeds. */
inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/** FNV-1a hash of a short name; the conventional purpose tag for
 *  derive_seed. Constexpr so tags cost nothing at runtime. */
inline constexpr std::uint64_t stream_tag(std::string_view name) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (const char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

/** Derive a stream seed from (root seed, purpose tag, element index).
 *  Streams derived this way stay aligned when unrelated generator
 *  parameters change, which keeps controlled comparisons controlled. */
inline constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t purpose,
                                           std::uint64_t index = 0) noexcept {
  return splitmix64(splitmix64(root ^ (purpose * 0xA24BAED4963EE407ULL)) ^
                    (index * 0x9FB21C651E98DF25ULL));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /** Uniform integer in [0, bound). bound must be > 0. */
  std::size_t uniform_index(std::size_t bound) {
    return static_cast<std::size_t>(next_u64() % bound);
  }

  /** Uniform double in [0, 1). */
  double uniform_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /** Uniform double in [lo, hi). */
  double uniform_range(double lo, double hi) {
    return lo + (hi - lo) * uniform_double();
  }

  /** Standard normal via Box-Muller (two words per draw, no cache). */
  double gaussian() {
    const double u1 =
        (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double u2 = uniform_double();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  double gaussian(double sigma) { return sigma * gaussian(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace matchkit
