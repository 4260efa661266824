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

/** \file robust.hpp
 *  \brief Progressive (PROSAC) and uniform (RANSAC) hypothesize-and-verify
 *         homography estimation over quality-scored correspondences.
 */

#include <cstdint>
#include <vector>

#include "matchkit/cascade.hpp"
#include "matchkit/homography.hpp"

namespace matchkit {

/** How hypothesis samples are seeded in prosac_estimate. `standard` is the
 *  canonical progressive schedule; `grouped` ranks disjoint quality-sorted
 *  groups of four by quality sum and tries them in order before falling
 *  back to uniform sampling. */
enum class SamplingMode { standard, grouped };

struct RobustConfig {
  double inlier_threshold = 3.0;  // px, forward transfer error (strict <)
  int min_inliers = 10;           // convergence requires at least this many
  int max_iterations = 2000;      // total hypothesis attempts, degenerate included
  double confidence = 0.995;      // early-exit confidence on the inlier ratio
  std::uint64_t seed = 0;
  SamplingMode mode = SamplingMode::standard;

  /** Experiment instrumentation: when > 0, RobustEstimate records the
   *  first hypothesis whose inlier count reaches this value. */
  int success_count_hint = 0;
};

/** Matches sorted by quality ratio beta = d1/d2, ascending (smaller beta is
 *  better). A permutation of the input MatchSet; ties keep input order. */
struct QualityOrderedMatches {
  MatchSet matches;
  std::vector<double> quality;
};

/** Result of a robust estimation run. inlier_indices index the estimator's
 *  input match list and are sorted ascending; every listed inlier has
 *  forward transfer error strictly below the configured threshold under
 *  `homography`. */
struct RobustEstimate {
  Homography homography;
  std::vector<std::size_t> inlier_indices;
  int iterations_used = 0;
  bool converged = false;
  int first_success_iteration = 0;  // 0 when the hint is off or never reached
};

/** Sort matches ascending by beta = d1/d2 (stable).
 *  Throws std::invalid_argument when any match has d2 absent or zero. */
QualityOrderedMatches quality_order(const MatchSet& input);

/** Progressive-schedule growth table for a match list of size n under an
 *  iteration budget: entry [k] is the hypothesis count at which the sample
 *  prefix grows from 4+k to 5+k matches. Strictly increasing. */
std::vector<long long> prosac_growth_limits(std::size_t n_matches, int max_iterations);

/** Prefix size the t-th hypothesis (1-based) draws from, given the growth
 *  table; clamped to [4, n_matches]. Nondecreasing in t. */
std::size_t prosac_prefix_at(const std::vector<long long>& limits,
                             std::size_t n_matches, long long t);

/** PROSAC: hypothesize-and-verify with samples drawn from a progressively
 *  growing top-n prefix of the quality ordering. Each non-degenerate
 *  4-sample is scored by inlier count over all matches (ties break to the
 *  lower mean inlier error); the best hypothesis is refit on its inliers
 *  with a least-squares DLT pass.
 *
 *  Throws std::invalid_argument("insufficient matches") for fewer than 4
 *  matches. When every sample is degenerate the result has converged=false
 *  and an empty inlier set.
 */
RobustEstimate prosac_estimate(const QualityOrderedMatches& ordered,
                               const FeatureSet& target,
                               const FeatureSet& reference,
                               const RobustConfig& cfg);

/** Uniform-sampling baseline with the same scoring, stopping rule, and
 *  refit as prosac_estimate. */
RobustEstimate ransac_estimate(const MatchSet& matches,
                               const FeatureSet& target,
                               const FeatureSet& reference,
                               const RobustConfig& cfg);

}  // namespace matchkit
