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

#include "matchkit/cascade.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace matchkit {

const char* stage_name(Stage s) {
  switch (s) {
    case Stage::knn: return "KNN";
    case Stage::tf: return "TF";
    case Stage::gms: return "GMS";
    case Stage::prosac: return "PROSAC";
  }
  return "?";
}

MatchSet ratio_filter(const MatchSet& input, double t_w, RatioFilterStats* stats) {
  MatchSet out;
  out.stage_label = Stage::tf;
  out.matches.reserve(input.matches.size());

  for (const Correspondence& m : input.matches) {
    if (!m.d2.has_value()) {
      if (stats) ++stats->missing_second_dropped;
      continue;
    }
    if (*m.d2 == 0) {
      if (stats) ++stats->ambiguous_dropped;
      continue;
    }
    const double w = static_cast<double>(m.d1) / static_cast<double>(*m.d2);
    if (w < t_w) out.matches.push_back(m);
  }
  return out;
}

namespace {

// Grid cell key packed from two 32-bit signed cell coordinates.
inline std::uint64_t cell_key(std::int64_t cx, std::int64_t cy) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(cx)) << 32) |
         static_cast<std::uint64_t>(static_cast<std::uint32_t>(cy));
}

}  // namespace

std::vector<SupportRecord> neighborhood_support(const MatchSet& input,
                                                const FeatureSet& target,
                                                const FeatureSet& reference,
                                                double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");

  const std::size_t n = input.matches.size();
  std::vector<SupportRecord> out(n);
  if (n == 0) return out;

  // Endpoint coordinates of each match in both images.
  std::vector<Keypoint> tp(n), rp(n);
  for (std::size_t i = 0; i < n; ++i) {
    tp[i] = target.keypoints[input.matches[i].query_idx];
    rp[i] = reference.keypoints[input.matches[i].train_idx];
  }

  // Bucket matches by grid cell of their target endpoint; cell size equals
  // the radius, so any neighbor within the radius lives in the 3x3 block.
  double min_x = std::numeric_limits<double>::infinity();
  double min_y = std::numeric_limits<double>::infinity();
  for (const auto& p : tp) {
    min_x = std::min(min_x, p.x);
    min_y = std::min(min_y, p.y);
  }
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> grid;
  grid.reserve(n * 2);
  auto cell_of = [&](const Keypoint& p) {
    return std::pair<std::int64_t, std::int64_t>(
        static_cast<std::int64_t>(std::floor((p.x - min_x) / radius)),
        static_cast<std::int64_t>(std::floor((p.y - min_y) / radius)));
  };
  for (std::size_t i = 0; i < n; ++i) {
    const auto [cx, cy] = cell_of(tp[i]);
    grid[cell_key(cx, cy)].push_back(static_cast<std::uint32_t>(i));
  }

  const double r2 = radius * radius;
  for (std::size_t i = 0; i < n; ++i) {
    const auto [cx, cy] = cell_of(tp[i]);
    int count = 0;  // includes i itself
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        const auto it = grid.find(cell_key(cx + dx, cy + dy));
        if (it == grid.end()) continue;
        for (const std::uint32_t j : it->second) {
          const double tdx = tp[i].x - tp[j].x;
          const double tdy = tp[i].y - tp[j].y;
          if (tdx * tdx + tdy * tdy > r2) continue;
          const double rdx = rp[i].x - rp[j].x;
          const double rdy = rp[i].y - rp[j].y;
          if (rdx * rdx + rdy * rdy > r2) continue;
          ++count;
        }
      }
    }
    out[i] = SupportRecord{i, count - 1};
  }
  return out;
}

MatchSet support_filter(const MatchSet& input,
                        const std::vector<SupportRecord>& supports, int t_g) {
  if (supports.size() != input.matches.size())
    throw std::invalid_argument("supports not aligned with match set");

  MatchSet out;
  out.stage_label = Stage::gms;
  out.matches.reserve(input.matches.size());
  for (std::size_t i = 0; i < input.matches.size(); ++i)
    if (supports[i].support >= t_g) out.matches.push_back(input.matches[i]);
  return out;
}

double auto_radius(const FeatureSet& image_features) {
  return 0.05 * std::hypot(image_features.image_width, image_features.image_height);
}

}  // namespace matchkit
