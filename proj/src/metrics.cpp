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

#include "matchkit/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "matchkit/matcher.hpp"

namespace matchkit {
namespace {

double pair_metric_error(const PointPair& pair, ErrorMode mode,
                         const std::optional<Homography>& gt_h) {
  if (mode == ErrorMode::displacement) {
    return std::hypot(pair.first.x - pair.second.x, pair.first.y - pair.second.y);
  }
  return transfer_error(*gt_h, pair.first, pair.second);
}

void check_error_inputs(std::span<const PointPair> pairs, ErrorMode mode,
                        const std::optional<Homography>& gt_h) {
  if (pairs.empty()) {
    throw std::invalid_argument("no matches");
  }
  if (mode == ErrorMode::gt_transfer && !gt_h.has_value()) {
    throw std::invalid_argument("gt_transfer mode requires a homography");
  }
}

}  // namespace

const char* error_mode_name(ErrorMode mode) {
  return mode == ErrorMode::displacement ? "displacement" : "gt_transfer";
}

double repeatability(std::size_t n_matched, std::size_t n_detected) {
  if (n_detected == 0) {
    throw std::invalid_argument("no detections");
  }
  if (n_matched > n_detected) {
    throw std::invalid_argument("matched count exceeds detected count");
  }
  return static_cast<double>(n_matched) / static_cast<double>(n_detected);
}

double mean_error(std::span<const PointPair> pairs, ErrorMode mode,
                  const std::optional<Homography>& gt_h) {
  check_error_inputs(pairs, mode, gt_h);
  double sum = 0.0;
  for (const PointPair& p : pairs) {
    sum += pair_metric_error(p, mode, gt_h);
  }
  return sum / static_cast<double>(pairs.size());
}

double rmse(std::span<const PointPair> pairs, ErrorMode mode,
            const std::optional<Homography>& gt_h) {
  check_error_inputs(pairs, mode, gt_h);
  double sum_sq = 0.0;
  for (const PointPair& p : pairs) {
    const double e = pair_metric_error(p, mode, gt_h);
    sum_sq += e * e;
  }
  return std::sqrt(sum_sq / static_cast<double>(pairs.size()));
}

std::vector<bool> correct_match_mask(std::span<const PointPair> pairs,
                                     const Homography& gt_h, double threshold) {
  std::vector<bool> mask(pairs.size(), false);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    Keypoint mapped{0.0, 0.0};
    if (!project_point(gt_h, pairs[i].first, &mapped)) {
      continue;
    }
    const double e =
        std::hypot(mapped.x - pairs[i].second.x, mapped.y - pairs[i].second.y);
    mask[i] = e < threshold;
  }
  return mask;
}

std::vector<PointPair> matched_points(const MatchSet& matches,
                                      const FeatureSet& target,
                                      const FeatureSet& reference) {
  std::vector<PointPair> pairs;
  pairs.reserve(matches.matches.size());
  for (const Correspondence& c : matches.matches) {
    if (c.query_idx >= target.size() || c.train_idx >= reference.size()) {
      throw std::invalid_argument("match index out of range");
    }
    pairs.emplace_back(target.keypoints[c.query_idx], reference.keypoints[c.train_idx]);
  }
  return pairs;
}

namespace {

void check_grid_common(std::size_t n) {
  if (n == 0) {
    throw std::invalid_argument("empty threshold grid");
  }
}

}  // namespace

std::vector<SweepRecord> sweep_tw(const FeatureSet& target,
                                  const FeatureSet& reference,
                                  std::span<const double> tw_values) {
  check_grid_common(tw_values.size());
  for (std::size_t i = 0; i < tw_values.size(); ++i) {
    if (!(tw_values[i] > 0.0) || tw_values[i] > 1.0) {
      throw std::invalid_argument("ratio threshold out of range (0, 1]");
    }
    if (i > 0 && !(tw_values[i] > tw_values[i - 1])) {
      throw std::invalid_argument("ratio thresholds must be strictly increasing");
    }
  }

  MatchSet knn;
  knn.matches = knn2_match(target, reference);
  const std::size_t original = knn.size();

  std::vector<SweepRecord> out;
  out.reserve(tw_values.size());
  for (const double t_w : tw_values) {
    const MatchSet kept = ratio_filter(knn, t_w);
    SweepRecord rec;
    rec.threshold = t_w;
    rec.retained = kept.size();
    rec.q_percent =
        original > 0 ? static_cast<double>(kept.size()) / static_cast<double>(original) : 0.0;
    rec.nm = kept.size();
    rec.avg_diff = 0.0;  // the robust-stage gap is a support-sweep quantity
    if (!out.empty() && rec.q_percent < out.back().q_percent) {
      throw std::logic_error("retention must be nondecreasing in the ratio threshold");
    }
    out.push_back(rec);
  }
  return out;
}

std::vector<SweepRecord> sweep_tg(const FeatureSet& target,
                                  const FeatureSet& reference,
                                  std::span<const int> tg_values,
                                  const TgSweepParams& params) {
  check_grid_common(tg_values.size());
  for (std::size_t i = 0; i < tg_values.size(); ++i) {
    if (tg_values[i] < 0) {
      throw std::invalid_argument("support threshold must be >= 0");
    }
    if (i > 0 && tg_values[i] <= tg_values[i - 1]) {
      throw std::invalid_argument("support thresholds must be strictly increasing");
    }
  }
  if (!(params.t_w > 0.0) || params.t_w > 1.0) {
    throw std::invalid_argument("ratio threshold out of range (0, 1]");
  }

  MatchSet knn;
  knn.matches = knn2_match(target, reference);
  const MatchSet tf = ratio_filter(knn, params.t_w);
  const double radius = params.radius > 0.0 ? params.radius : auto_radius(target);
  const std::vector<SupportRecord> supports =
      neighborhood_support(tf, target, reference, radius);
  const std::size_t original = tf.size();

  std::vector<SweepRecord> out;
  out.reserve(tg_values.size());
  for (const int t_g : tg_values) {
    const MatchSet kept = support_filter(tf, supports, t_g);
    std::size_t final_count = 0;
    if (kept.size() >= 4) {
      const QualityOrderedMatches ordered = quality_order(kept);
      const RobustEstimate est =
          prosac_estimate(ordered, target, reference, params.robust);
      final_count = est.inlier_indices.size();
    }
    SweepRecord rec;
    rec.threshold = static_cast<double>(t_g);
    rec.retained = kept.size();
    rec.q_percent =
        original > 0 ? static_cast<double>(kept.size()) / static_cast<double>(original) : 0.0;
    rec.nm = kept.size();
    rec.avg_diff = static_cast<double>(kept.size()) - static_cast<double>(final_count);
    if (!out.empty() && rec.nm > out.back().nm) {
      throw std::logic_error("match count must be nonincreasing in the support threshold");
    }
    out.push_back(rec);
  }
  return out;
}

}  // namespace matchkit
