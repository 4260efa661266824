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

/** \file metrics.hpp
 *  \brief Match-quality measures (NM, REP, ME, RMSE) and the two threshold
 *         sweeps (ratio threshold t_w, support threshold t_g).
 */

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "matchkit/cascade.hpp"
#include "matchkit/homography.hpp"
#include "matchkit/robust.hpp"

namespace matchkit {

/** How the per-pair distance error is measured.
 *
 *  `displacement` is the raw coordinate distance between the two matched
 *  points; it conflates scene motion with matching error but needs no
 *  ground truth. `gt_transfer` measures against a known homography:
 *  ||project(gt_h, p) - q||.
 */
enum class ErrorMode { displacement, gt_transfer };

const char* error_mode_name(ErrorMode mode);

/** Summary statistics for one evaluated match set. */
struct MetricsReport {
  int nm = 0;         // number of matches evaluated
  double rep = 0.0;   // matched / detected, in [0, 1]
  double me = 0.0;    // mean per-pair error, pixels
  double rmse = 0.0;  // root mean square per-pair error, pixels; >= me
  ErrorMode mode = ErrorMode::displacement;
};

/** One row of a threshold sweep. */
struct SweepRecord {
  double threshold = 0.0;
  std::size_t retained = 0;  // matches surviving the swept filter
  double q_percent = 0.0;    // retained / matches entering the filter
  std::size_t nm = 0;        // == retained
  double avg_diff = 0.0;     // support sweep: retained minus robust-stage count
};

/** Matched / detected. Throws std::invalid_argument("no detections") when
 *  n_detected == 0, and when n_matched exceeds n_detected. */
double repeatability(std::size_t n_matched, std::size_t n_detected);

/** Mean per-pair error over ALL given pairs (no correctness filtering;
 *  callers subset first when they want errors of correct matches only).
 *
 *  Throws std::invalid_argument("no matches") on an empty list and when
 *  mode gt_transfer is requested without gt_h; propagates
 *  std::runtime_error("point at infinity") from degenerate projections.
 */
double mean_error(std::span<const PointPair> pairs, ErrorMode mode,
                  const std::optional<Homography>& gt_h = std::nullopt);

/** Root mean square per-pair error; contract as mean_error. */
double rmse(std::span<const PointPair> pairs, ErrorMode mode,
            const std::optional<Homography>& gt_h = std::nullopt);

/** Flags pairs whose transfer error under gt_h is strictly below the
 *  threshold; pairs projecting to infinity are flagged false. */
std::vector<bool> correct_match_mask(std::span<const PointPair> pairs,
                                     const Homography& gt_h, double threshold);

/** Point pairs (target keypoint, reference keypoint) of a match set.
 *  Throws std::invalid_argument when a match indexes out of range. */
std::vector<PointPair> matched_points(const MatchSet& matches,
                                      const FeatureSet& target,
                                      const FeatureSet& reference);

/** Ratio-threshold sweep: 2-NN matching once, then the ratio filter per
 *  threshold. q_percent is retention relative to the 2-NN match count and
 *  is nondecreasing in the threshold (checked, violation is a logic error).
 *
 *  tw_values must be nonempty, strictly increasing, each in (0, 1].
 */
std::vector<SweepRecord> sweep_tw(const FeatureSet& target,
                                  const FeatureSet& reference,
                                  std::span<const double> tw_values);

/** Fixed upstream parameters for the support-threshold sweep. */
struct TgSweepParams {
  double t_w = 0.66;
  double radius = 0.0;  // <= 0 selects auto_radius(target)
  RobustConfig robust;
};

/** Support-threshold sweep: 2-NN + ratio filter + support computation once,
 *  then per threshold the support filter and a robust-estimation pass.
 *  retained (== nm) is nonincreasing in the threshold (checked); avg_diff
 *  is the gap between nm and the robust-stage inlier count, never negative.
 *
 *  tg_values must be nonempty, strictly increasing, each >= 0.
 */
std::vector<SweepRecord> sweep_tg(const FeatureSet& target,
                                  const FeatureSet& reference,
                                  std::span<const int> tg_values,
                                  const TgSweepParams& params);

}  // namespace matchkit
