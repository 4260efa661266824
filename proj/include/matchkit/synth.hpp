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

/** \file synth.hpp
 *  \brief Synthetic two-view scenes with a known homography, the ground
 *         truth oracle for matcher and estimator tests.
 */

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "matchkit/feature_types.hpp"
#include "matchkit/homography.hpp"
#include "matchkit/rng.hpp"

namespace matchkit {

/** Two feature sets plus, when the scene was generated, the underlying
 *  transform and the true pair list ((target index, reference index)). */
struct ScenePair {
  FeatureSet target;
  FeatureSet reference;
  std::optional<Homography> gt_h;
  std::optional<std::vector<std::pair<std::uint32_t, std::uint32_t>>> gt_inlier_pairs;
};

/** Scene recipe. Everything is determined by `seed`; streams for points,
 *  descriptors, noise, and flips are independent, so changing one knob
 *  (say descriptor_flip_bits) leaves the rest of the scene identical. */
struct SynthConfig {
  std::size_t n_inliers = 200;
  std::size_t n_outliers = 200;
  double image_width = 640.0;
  double image_height = 480.0;
  double noise_sigma = 0.5;        // px, applied to reference inlier points
  int descriptor_flip_bits = 8;    // 0..256 bits flipped on reference copies
  double perspective_magnitude = 0.15;  // in [0, 0.3]
  std::uint64_t seed = 0;
  std::size_t n_confusers = 0;     // extra reference decoys near inlier descriptors
};

/** Identity perturbed by bounded affine and perspective terms: linear part
 *  entries within +-magnitude of identity, translation within
 *  +-magnitude/10 of the image extent, perspective row scaled so the
 *  homogeneous w stays within +-magnitude of 1 over the whole image (no
 *  in-image point at infinity). */
Homography random_bounded_homography(Rng& rng, double magnitude, double width,
                                     double height);

/** Uniformly random 256-bit descriptor. */
BinaryDescriptor random_descriptor(Rng& rng);

/** Build a scene:
 *    - inliers: target point p uniform with project(gt_h, p) inside the
 *      image; reference point q = project(gt_h, p) + truncated Gaussian
 *      noise (norm <= 6 sigma), clipped to bounds; reference descriptor is
 *      the target descriptor with descriptor_flip_bits random bits flipped;
 *    - outliers: independent uniform points and descriptors on both sides;
 *    - confusers: reference-only decoys, an inlier reference descriptor
 *      with 4..16 extra bits flipped at a uniform random point;
 *    - both sides independently shuffled, gt indices remapped to match.
 *
 *  Every gt inlier pair has transfer error under gt_h at most 6 sigma
 *  (clipping to bounds only shrinks it); with noise_sigma == 0 the error
 *  is exactly 0.
 *
 *  Throws std::invalid_argument on an empty scene (n_inliers + n_outliers
 *  == 0), flip bits outside 0..256, perspective magnitude outside [0, 0.3],
 *  nonpositive image dimensions, negative/non-finite sigma, or confusers
 *  requested without inliers.
 */
ScenePair generate_scene(const SynthConfig& cfg);

}  // namespace matchkit
