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

#include "matchkit/pipeline.hpp"

#include <stdexcept>
#include <utility>

#include "matchkit/matcher.hpp"

namespace matchkit {
namespace {

void check_stage_counts(const std::vector<StageCount>& stages) {
  for (std::size_t i = 1; i < stages.size(); ++i) {
    if (stages[i].nm > stages[i - 1].nm) {
      throw std::logic_error("stage match counts must be nonincreasing");
    }
  }
}

}  // namespace

void PipelineConfig::validate() const {
  if (!(t_w > 0.0) || t_w > 1.0) {
    throw std::invalid_argument("ratio threshold out of range (0, 1]");
  }
  if (t_g < 0) {
    throw std::invalid_argument("support threshold must be >= 0");
  }
  if (!(inlier_threshold > 0.0)) {
    throw std::invalid_argument("inlier threshold must be positive");
  }
  if (min_inliers < 4) {
    throw std::invalid_argument("min inliers must be at least 4");
  }
  if (max_iterations < 1) {
    throw std::invalid_argument("max iterations must be positive");
  }
}

RobustConfig PipelineConfig::robust() const {
  RobustConfig rc;
  rc.inlier_threshold = inlier_threshold;
  rc.min_inliers = min_inliers;
  rc.max_iterations = max_iterations;
  rc.seed = seed;
  rc.mode = prosac_mode;
  return rc;
}

PipelineResult run_pipeline(const FeatureSet& target, const FeatureSet& reference,
                            const PipelineConfig& cfg) {
  cfg.validate();

  PipelineResult res;
  MatchSet knn;
  knn.stage_label = Stage::knn;
  knn.matches = knn2_match(target, reference);
  res.stages.push_back(StageCount{Stage::knn, knn.size()});

  MatchSet tf = ratio_filter(knn, cfg.t_w, &res.ratio_stats);
  res.stages.push_back(StageCount{Stage::tf, tf.size()});
  if (cfg.stop_after == StopAfter::tf) {
    res.final_matches = std::move(tf);
    check_stage_counts(res.stages);
    return res;
  }

  res.radius_used = cfg.neighborhood_radius > 0.0 ? cfg.neighborhood_radius
                                                  : auto_radius(target);
  const std::vector<SupportRecord> supports =
      neighborhood_support(tf, target, reference, res.radius_used);
  MatchSet gms = support_filter(tf, supports, cfg.t_g);
  res.stages.push_back(StageCount{Stage::gms, gms.size()});
  if (cfg.stop_after == StopAfter::gms) {
    res.final_matches = std::move(gms);
    check_stage_counts(res.stages);
    return res;
  }

  if (gms.size() < 4) {
    // Too thin for a hypothesis; report an explicit non-converged estimate.
    res.estimate = RobustEstimate{};
    res.final_matches.stage_label = Stage::prosac;
    res.stages.push_back(StageCount{Stage::prosac, 0});
  } else {
    const QualityOrderedMatches ordered = quality_order(gms);
    RobustEstimate est = prosac_estimate(ordered, target, reference, cfg.robust());
    MatchSet fin;
    fin.stage_label = Stage::prosac;
    fin.matches.reserve(est.inlier_indices.size());
    for (const std::size_t idx : est.inlier_indices) {
      fin.matches.push_back(ordered.matches.matches[idx]);
    }
    res.stages.push_back(StageCount{Stage::prosac, fin.size()});
    res.estimate = std::move(est);
    res.final_matches = std::move(fin);
  }
  check_stage_counts(res.stages);
  return res;
}

}  // namespace matchkit
