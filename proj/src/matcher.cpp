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

#include "matchkit/matcher.hpp"

#include <stdexcept>

#include "matchkit/parallel.hpp"

namespace matchkit {

std::vector<Correspondence> knn2_match(const FeatureSet& target,
                                       const FeatureSet& reference) {
  if (reference.size() == 0) throw std::invalid_argument("empty reference");

  const std::size_t a = target.size();
  const std::size_t b = reference.size();
  std::vector<Correspondence> out(a);

  parallel_chunks(a, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const BinaryDescriptor& q = target.descriptors[i];
      // Track best and second best; strict < keeps the lower reference
      // index on ties.
      int d1 = 257, d2 = 257;
      std::size_t best = 0;
      for (std::size_t j = 0; j < b; ++j) {
        const int d = hamming_distance(q, reference.descriptors[j]);
        if (d < d1) {
          d2 = d1;
          d1 = d;
          best = j;
        } else if (d < d2) {
          d2 = d;
        }
      }
      Correspondence c;
      c.query_idx = static_cast<std::uint32_t>(i);
      c.train_idx = static_cast<std::uint32_t>(best);
      c.d1 = d1;
      if (b >= 2) c.d2 = d2;
      out[i] = c;
    }
  });

  return out;
}

}  // namespace matchkit
