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

/** \file cascade.hpp
 *  \brief Intermediate match-refinement stages: nearest/second-nearest
 *         ratio filtering and neighborhood-support outlier rejection.
 *
 *  Both filters only ever remove matches and preserve input order, so the
 *  per-stage match counts are nonincreasing along the cascade.
 */

#include <cstddef>
#include <vector>

#include "matchkit/feature_types.hpp"

namespace matchkit {

/** Cascade stage that produced a MatchSet. */
enum class Stage { knn, tf, gms, prosac };

const char* stage_name(Stage s);

/** Ordered set of correspondences flowing through the cascade. */
struct MatchSet {
  std::vector<Correspondence> matches;
  Stage stage_label = Stage::knn;

  [[nodiscard]] std::size_t size() const { return matches.size(); }
};

/** Neighborhood support of one match: co-neighborhood matches minus the
 *  match itself. Never negative. */
struct SupportRecord {
  std::size_t match_index = 0;
  int support = 0;
};

/** Matches dropped by ratio_filter for reasons other than the threshold. */
struct RatioFilterStats {
  std::size_t ambiguous_dropped = 0;      // d1 == d2 == 0, ratio undefined
  std::size_t missing_second_dropped = 0; // d2 absent (single-entry reference)
};

/** Keep matches whose distance ratio d1/d2 is strictly below t_w.
 *
 *  Matches with d2 absent are dropped; matches with d2 == 0 (which forces
 *  d1 == 0, a perfect duplicate ambiguity) are dropped and tallied in
 *  stats->ambiguous_dropped. Output order follows input order; the result
 *  is labeled Stage::tf.
 */
MatchSet ratio_filter(const MatchSet& input, double t_w,
                      RatioFilterStats* stats = nullptr);

/** Neighborhood support for every match.
 *
 *  Match j supports match i when j's target endpoint lies within `radius`
 *  of i's target endpoint AND j's reference endpoint lies within `radius`
 *  of i's reference endpoint (Euclidean, inclusive). The support of i is
 *  the number of such j, excluding i itself. Indexes a uniform grid over
 *  the target endpoints; results are identical to the full pairwise scan.
 *
 *  Throws std::invalid_argument when radius <= 0.
 */
std::vector<SupportRecord> neighborhood_support(const MatchSet& input,
                                                const FeatureSet& target,
                                                const FeatureSet& reference,
                                                double radius);

/** Keep matches whose support is >= t_g (non-strict). Order preserved;
 *  the result is labeled Stage::gms. `supports` must be aligned with
 *  input (one record per match, in order). */
MatchSet support_filter(const MatchSet& input,
                        const std::vector<SupportRecord>& supports, int t_g);

/** Default neighborhood radius: 5% of the image diagonal. */
double auto_radius(const FeatureSet& image_features);

}  // namespace matchkit
