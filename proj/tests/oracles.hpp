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

/** \file oracles.hpp
 *  \brief Reference implementations the optimized library paths are checked
 *         against. Everything here deliberately takes the most obvious route:
 *         bit-by-bit distances, a full sort for the two nearest neighbors, a
 *         quadratic scan for neighborhood support. Test-only code.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

#include "matchkit/cascade.hpp"
#include "matchkit/feature_types.hpp"

namespace testkit {

inline int naive_hamming(const matchkit::BinaryDescriptor& a,
                         const matchkit::BinaryDescriptor& b) {
  int d = 0;
  for (std::size_t bit = 0; bit < matchkit::BinaryDescriptor::kBits; ++bit) {
    if (a.test(bit) != b.test(bit)) ++d;
  }
  return d;
}

/** 2-NN by sorting all reference distances per query. Ties fall to the
 *  lower reference index because the comparator says so explicitly. */
inline std::vector<matchkit::Correspondence> naive_knn2(
    const matchkit::FeatureSet& target, const matchkit::FeatureSet& reference) {
  const std::size_t b = reference.size();
  std::vector<matchkit::Correspondence> out;
  out.reserve(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) {
    std::vector<int> dist(b);
    for (std::size_t j = 0; j < b; ++j) {
      dist[j] = naive_hamming(target.descriptors[i], reference.descriptors[j]);
    }
    std::vector<std::size_t> order(b);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&dist](std::size_t x, std::size_t y) {
      if (dist[x] != dist[y]) return dist[x] < dist[y];
      return x < y;
    });
    matchkit::Correspondence c;
    c.query_idx = static_cast<std::uint32_t>(i);
    c.train_idx = static_cast<std::uint32_t>(order[0]);
    c.d1 = dist[order[0]];
    if (b >= 2) c.d2 = dist[order[1]];
    out.push_back(c);
  }
  return out;
}

/** Neighborhood support by the full pairwise scan: j supports i when their
 *  endpoints are within radius (inclusive) in the target AND the reference
 *  image. Support of i excludes i itself. */
inline std::vector<int> naive_support(const matchkit::MatchSet& matches,
                                      const matchkit::FeatureSet& target,
                                      const matchkit::FeatureSet& reference,
                                      double radius) {
  const std::size_t n = matches.size();
  std::vector<int> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const matchkit::Correspondence& mi = matches.matches[i];
    const matchkit::Keypoint& ti = target.keypoints[mi.query_idx];
    const matchkit::Keypoint& ri = reference.keypoints[mi.train_idx];
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const matchkit::Correspondence& mj = matches.matches[j];
      const matchkit::Keypoint& tj = target.keypoints[mj.query_idx];
      const matchkit::Keypoint& rj = reference.keypoints[mj.train_idx];
      const double dt = std::hypot(ti.x - tj.x, ti.y - tj.y);
      const double dr = std::hypot(ri.x - rj.x, ri.y - rj.y);
      if (dt <= radius && dr <= radius) ++out[i];
    }
  }
  return out;
}

}  // namespace testkit
