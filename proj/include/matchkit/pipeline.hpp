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

/** \file pipeline.hpp
 *  \brief The full matching cascade in one call: 2-NN search, ratio filter,
 *         neighborhood-support filter, progressive robust estimation.
 */

#include <cstdint>
#include <optional>
#include <vector>

#include "matchkit/cascade.hpp"
#include "matchkit/metrics.hpp"
#include "matchkit/robust.hpp"

namespace matchkit {

/** Where to cut the cascade short (stage-ablation runs). */
enum class StopAfter { none, tf, gms };

/** Knobs for one cascade run. Defaults follow the tuned operating point:
 *  ratio threshold 0.66, support threshold 6, radius 5% of the image
 *  diagonal, 3 px inlier threshold. */
struct PipelineConfig {
  double t_w = 0.66;
  int t_g = 6;
  double neighborhood_radius = 0.0;  // <= 0 selects auto_radius(target)
  double inlier_threshold = 3.0;
  int min_inliers = 10;
  int max_iterations = 2000;
  std::uint64_t seed = 0;
  SamplingMode prosac_mode = SamplingMode::standard;
  ErrorMode metric_mode = ErrorMode::displacement;
  StopAfter stop_after = StopAfter::none;

  /** Throws std::invalid_argument on out-of-range values. */
  void validate() const;

  /** The robust-estimation slice of this config. */
  [[nodiscard]] RobustConfig robust() const;
};

/** Match count after one stage. */
struct StageCount {
  Stage stage = Stage::knn;
  std::size_t nm = 0;
};

/** Trace of one cascade run. `stages` lists executed stages in order with
 *  nonincreasing nm; final_matches holds the last stage's matches.
 *  `estimate` is present iff the robust stage executed. */
struct PipelineResult {
  std::vector<StageCount> stages;
  MatchSet final_matches;
  std::optional<RobustEstimate> estimate;
  RatioFilterStats ratio_stats;
  double radius_used = 0.0;
};

/** Run the cascade. Throws std::invalid_argument for invalid config or an
 *  empty reference set. A robust stage with fewer than 4 input matches
 *  yields a present-but-unconverged estimate with no inliers. */
PipelineResult run_pipeline(const FeatureSet& target, const FeatureSet& reference,
                            const PipelineConfig& cfg);

}  // namespace matchkit
