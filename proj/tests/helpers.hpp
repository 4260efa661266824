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

/** \file helpers.hpp
 *  \brief Small fixtures shared across the test binaries.
 */

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "matchkit/feature_types.hpp"
#include "matchkit/rng.hpp"
#include "matchkit/synth.hpp"

namespace testkit {

/** n features at uniform positions with uniform descriptors. */
inline matchkit::FeatureSet random_features(std::uint64_t seed, std::size_t n,
                                            double width = 640.0,
                                            double height = 480.0) {
  matchkit::Rng rng(seed);
  matchkit::FeatureSet fs;
  fs.image_width = width;
  fs.image_height = height;
  fs.keypoints.reserve(n);
  fs.descriptors.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    fs.keypoints.push_back(
        {rng.uniform_range(0.0, width), rng.uniform_range(0.0, height)});
    fs.descriptors.push_back(matchkit::random_descriptor(rng));
  }
  return fs;
}

inline matchkit::BinaryDescriptor descriptor_with_bits(
    std::initializer_list<std::size_t> bits) {
  matchkit::BinaryDescriptor d;
  for (const std::size_t bit : bits) d.set(bit);
  return d;
}

inline matchkit::Correspondence corr(std::uint32_t query, std::uint32_t train,
                                     int d1, std::optional<int> d2) {
  matchkit::Correspondence c;
  c.query_idx = query;
  c.train_idx = train;
  c.d1 = d1;
  c.d2 = d2;
  return c;
}

/** Ground-truth pair list as a set, for recall bookkeeping. */
inline std::set<std::pair<std::uint32_t, std::uint32_t>> pair_set(
    const matchkit::ScenePair& scene) {
  std::set<std::pair<std::uint32_t, std::uint32_t>> out;
  for (const auto& pr : *scene.gt_inlier_pairs) out.insert(pr);
  return out;
}

}  // namespace testkit
