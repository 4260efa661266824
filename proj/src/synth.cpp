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

#include "matchkit/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <numeric>
#include <stdexcept>

namespace matchkit {
namespace {

void validate(const SynthConfig& cfg) {
  if (cfg.n_inliers + cfg.n_outliers == 0) {
    throw std::invalid_argument("scene needs at least one feature");
  }
  if (cfg.descriptor_flip_bits < 0 ||
      cfg.descriptor_flip_bits > static_cast<int>(BinaryDescriptor::kBits)) {
    throw std::invalid_argument("flip bits out of range 0..256");
  }
  if (!(cfg.perspective_magnitude >= 0.0) || cfg.perspective_magnitude > 0.3) {
    throw std::invalid_argument("perspective magnitude out of range [0, 0.3]");
  }
  if (!(cfg.image_width > 0.0) || !(cfg.image_height > 0.0)) {
    throw std::invalid_argument("image dimensions must be positive");
  }
  if (!(cfg.noise_sigma >= 0.0) || !std::isfinite(cfg.noise_sigma)) {
    throw std::invalid_argument("noise sigma must be finite and >= 0");
  }
  if (cfg.n_confusers > 0 && cfg.n_inliers == 0) {
    throw std::invalid_argument("confusers require at least one inlier");
  }
}

bool in_bounds(const Keypoint& p, double width, double height) {
  return p.x >= 0.0 && p.y >= 0.0 && p.x < width && p.y < height;
}

Keypoint clip_to_bounds(Keypoint p, double width, double height) {
  p.x = std::min(std::max(p.x, 0.0), std::nextafter(width, 0.0));
  p.y = std::min(std::max(p.y, 0.0), std::nextafter(height, 0.0));
  return p;
}

/** Flip `count` distinct bits via a partial Fisher-Yates over bit indices;
 *  consumes exactly `count` words of the stream. */
BinaryDescriptor flip_random_bits(const BinaryDescriptor& base, int count, Rng& rng) {
  std::array<std::uint16_t, BinaryDescriptor::kBits> order{};
  std::iota(order.begin(), order.end(), std::uint16_t{0});
  BinaryDescriptor out = base;
  for (int j = 0; j < count; ++j) {
    const std::size_t pick =
        static_cast<std::size_t>(j) + rng.uniform_index(BinaryDescriptor::kBits - j);
    std::swap(order[static_cast<std::size_t>(j)], order[pick]);
    out.flip(order[static_cast<std::size_t>(j)]);
  }
  return out;
}

/** Index permutation shuffle shared by both sides; returns old -> new. */
std::vector<std::uint32_t> shuffle_features(FeatureSet& fs, Rng& rng) {
  const std::size_t n = fs.size();
  std::vector<std::uint32_t> order(n);  // new position -> old index
  std::iota(order.begin(), order.end(), std::uint32_t{0});
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = rng.uniform_index(i);
    std::swap(order[i - 1], order[j]);
  }
  std::vector<Keypoint> kps(n);
  std::vector<BinaryDescriptor> descs(n);
  std::vector<std::uint32_t> remap(n);  // old index -> new position
  for (std::size_t pos = 0; pos < n; ++pos) {
    kps[pos] = fs.keypoints[order[pos]];
    descs[pos] = fs.descriptors[order[pos]];
    remap[order[pos]] = static_cast<std::uint32_t>(pos);
  }
  fs.keypoints = std::move(kps);
  fs.descriptors = std::move(descs);
  return remap;
}

}  // namespace

Homography random_bounded_homography(Rng& rng, double magnitude, double width,
                                     double height) {
  if (!(magnitude >= 0.0) || magnitude > 0.3) {
    throw std::invalid_argument("perspective magnitude out of range [0, 0.3]");
  }
  const double extent = std::max(width, height);
  Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
  m(0, 0) = 1.0 + rng.uniform_range(-magnitude, magnitude);
  m(0, 1) = rng.uniform_range(-magnitude, magnitude);
  m(1, 0) = rng.uniform_range(-magnitude, magnitude);
  m(1, 1) = 1.0 + rng.uniform_range(-magnitude, magnitude);
  m(0, 2) = rng.uniform_range(-magnitude, magnitude) * extent * 0.1;
  m(1, 2) = rng.uniform_range(-magnitude, magnitude) * extent * 0.1;
  // |g*x + h*y| <= magnitude * (x + y) / (width + height) <= magnitude < 1,
  // so w = g*x + h*y + 1 never vanishes inside the image.
  m(2, 0) = rng.uniform_range(-magnitude, magnitude) / (width + height);
  m(2, 1) = rng.uniform_range(-magnitude, magnitude) / (width + height);
  m(2, 2) = 1.0;
  return Homography::from_matrix(m);
}

BinaryDescriptor random_descriptor(Rng& rng) {
  BinaryDescriptor d;
  for (std::size_t i = 0; i < BinaryDescriptor::kBytes; i += 8) {
    const std::uint64_t word = rng.next_u64();
    std::memcpy(d.bytes.data() + i, &word, 8);
  }
  return d;
}

ScenePair generate_scene(const SynthConfig& cfg) {
  validate(cfg);
  const double w = cfg.image_width;
  const double h = cfg.image_height;

  Rng h_rng(derive_seed(cfg.seed, stream_tag("scene-homography")));
  Rng point_rng(derive_seed(cfg.seed, stream_tag("scene-inlier-points")));
  Rng noise_rng(derive_seed(cfg.seed, stream_tag("scene-noise")));
  Rng desc_rng(derive_seed(cfg.seed, stream_tag("scene-inlier-descriptors")));
  Rng flip_rng(derive_seed(cfg.seed, stream_tag("scene-flips")));
  Rng out_t_rng(derive_seed(cfg.seed, stream_tag("scene-outlier-target")));
  Rng out_r_rng(derive_seed(cfg.seed, stream_tag("scene-outlier-reference")));
  Rng confuser_rng(derive_seed(cfg.seed, stream_tag("scene-confusers")));
  Rng shuffle_t_rng(derive_seed(cfg.seed, stream_tag("scene-shuffle-target")));
  Rng shuffle_r_rng(derive_seed(cfg.seed, stream_tag("scene-shuffle-reference")));

  const Homography gt = random_bounded_homography(h_rng, cfg.perspective_magnitude, w, h);

  ScenePair scene;
  scene.target.image_width = w;
  scene.target.image_height = h;
  scene.reference.image_width = w;
  scene.reference.image_height = h;

  const double noise_cap_sq = 36.0 * cfg.noise_sigma * cfg.noise_sigma;  // 6 sigma
  std::vector<BinaryDescriptor> inlier_ref_descs;
  inlier_ref_descs.reserve(cfg.n_inliers);

  for (std::size_t i = 0; i < cfg.n_inliers; ++i) {
    Keypoint p{0.0, 0.0};
    Keypoint projected{0.0, 0.0};
    bool placed = false;
    for (int tries = 0; tries < 100000; ++tries) {
      p = Keypoint{point_rng.uniform_range(0.0, w), point_rng.uniform_range(0.0, h)};
      if (project_point(gt, p, &projected) && in_bounds(projected, w, h)) {
        placed = true;
        break;
      }
    }
    if (!placed) {
      throw std::runtime_error("could not place an inlier inside the image");
    }

    Keypoint q = projected;
    if (cfg.noise_sigma > 0.0) {
      double nx = 0.0;
      double ny = 0.0;
      do {
        nx = noise_rng.gaussian(cfg.noise_sigma);
        ny = noise_rng.gaussian(cfg.noise_sigma);
      } while (nx * nx + ny * ny > noise_cap_sq);
      q = clip_to_bounds(Keypoint{projected.x + nx, projected.y + ny}, w, h);
    }

    const BinaryDescriptor base = random_descriptor(desc_rng);
    const BinaryDescriptor flipped =
        flip_random_bits(base, cfg.descriptor_flip_bits, flip_rng);
    scene.target.keypoints.push_back(p);
    scene.target.descriptors.push_back(base);
    scene.reference.keypoints.push_back(q);
    scene.reference.descriptors.push_back(flipped);
    inlier_ref_descs.push_back(flipped);
  }

  for (std::size_t i = 0; i < cfg.n_outliers; ++i) {
    scene.target.keypoints.push_back(
        Keypoint{out_t_rng.uniform_range(0.0, w), out_t_rng.uniform_range(0.0, h)});
    scene.target.descriptors.push_back(random_descriptor(out_t_rng));
    scene.reference.keypoints.push_back(
        Keypoint{out_r_rng.uniform_range(0.0, w), out_r_rng.uniform_range(0.0, h)});
    scene.reference.descriptors.push_back(random_descriptor(out_r_rng));
  }

  for (std::size_t i = 0; i < cfg.n_confusers; ++i) {
    const std::size_t source = confuser_rng.uniform_index(cfg.n_inliers);
    const int extra = 4 + static_cast<int>(confuser_rng.uniform_index(13));  // 4..16
    scene.reference.keypoints.push_back(Keypoint{
        confuser_rng.uniform_range(0.0, w), confuser_rng.uniform_range(0.0, h)});
    scene.reference.descriptors.push_back(
        flip_random_bits(inlier_ref_descs[source], extra, confuser_rng));
  }

  const std::vector<std::uint32_t> target_remap =
      shuffle_features(scene.target, shuffle_t_rng);
  const std::vector<std::uint32_t> reference_remap =
      shuffle_features(scene.reference, shuffle_r_rng);

  std::vector<std::pair<std::uint32_t, std::uint32_t>> gt_pairs;
  gt_pairs.reserve(cfg.n_inliers);
  for (std::size_t i = 0; i < cfg.n_inliers; ++i) {
    gt_pairs.emplace_back(target_remap[i], reference_remap[i]);
  }
  scene.gt_h = gt;
  scene.gt_inlier_pairs = std::move(gt_pairs);
  return scene;
}

}  // namespace matchkit
