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

#include "matchkit/robust.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "matchkit/rng.hpp"

namespace matchkit {
namespace {

std::vector<PointPair> collect_pairs(const MatchSet& matches,
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

/** Forward transfer error of one pair; false when the pair maps to infinity. */
bool pair_error(const Homography& h, const PointPair& pair, double& error) {
  Keypoint mapped{0.0, 0.0};
  if (!project_point(h, pair.first, &mapped)) {
    return false;
  }
  const double dx = mapped.x - pair.second.x;
  const double dy = mapped.y - pair.second.y;
  error = std::sqrt(dx * dx + dy * dy);
  return true;
}

void collect_inliers(const Homography& h, const std::vector<PointPair>& pairs,
                     double threshold, std::vector<std::size_t>& out) {
  out.clear();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    double e = 0.0;
    if (pair_error(h, pairs[i], e) && e < threshold) {
      out.push_back(i);
    }
  }
}

/** Draw k distinct indices from [0, bound) into out[0..k). */
void draw_distinct(Rng& rng, std::size_t bound, std::size_t* out, std::size_t k) {
  for (std::size_t i = 0; i < k; ++i) {
    for (;;) {
      const std::size_t v = rng.uniform_index(bound);
      bool seen = false;
      for (std::size_t j = 0; j < i; ++j) {
        if (out[j] == v) {
          seen = true;
          break;
        }
      }
      if (!seen) {
        out[i] = v;
        break;
      }
    }
  }
}

void validate_config(const RobustConfig& cfg) {
  if (!(cfg.inlier_threshold > 0.0)) {
    throw std::invalid_argument("inlier threshold must be positive");
  }
  if (cfg.max_iterations < 1) {
    throw std::invalid_argument("max iterations must be positive");
  }
  if (!(cfg.confidence > 0.0) || !(cfg.confidence < 1.0)) {
    throw std::invalid_argument("confidence must be in (0, 1)");
  }
}

/** Shared hypothesize-and-verify loop. `draw` fills a 4-element index sample
 *  given the attempt number (1-based, counts every sample drawn) and the
 *  schedule position (1-based, counts only samples that produced a scorable
 *  hypothesis, including the pending one). */
template <typename Sampler>
RobustEstimate consensus_loop(const std::vector<PointPair>& pairs,
                              const RobustConfig& cfg, Sampler&& draw) {
  if (pairs.size() < 4) {
    throw std::invalid_argument("insufficient matches");
  }
  validate_config(cfg);

  const std::size_t m = pairs.size();
  RobustEstimate out;
  out.homography = Homography::identity();

  Homography best_h = Homography::identity();
  long long best_count = 0;
  double best_mean = std::numeric_limits<double>::infinity();
  long long scored = 0;
  long long needed = std::numeric_limits<long long>::max();

  std::array<std::size_t, 4> idx{};
  std::array<PointPair, 4> sample{};
  int used = 0;

  for (int attempt = 1; attempt <= cfg.max_iterations; ++attempt) {
    used = attempt;
    draw(attempt, scored + 1, idx);
    for (std::size_t i = 0; i < 4; ++i) {
      sample[i] = pairs[idx[i]];
    }

    Homography h = Homography::identity();
    if (!detail::try_dlt(sample, &h)) {
      continue;  // degenerate draw consumes the attempt, not the schedule
    }
    ++scored;

    long long count = 0;
    double err_sum = 0.0;
    for (const PointPair& p : pairs) {
      double e = 0.0;
      if (pair_error(h, p, e) && e < cfg.inlier_threshold) {
        ++count;
        err_sum += e;
      }
    }
    if (cfg.success_count_hint > 0 && out.first_success_iteration == 0 &&
        count >= cfg.success_count_hint) {
      out.first_success_iteration = attempt;
    }

    const double mean = count > 0 ? err_sum / static_cast<double>(count)
                                  : std::numeric_limits<double>::infinity();
    if (count > best_count || (count == best_count && mean < best_mean)) {
      best_h = h;
      best_count = count;
      best_mean = mean;

      const double w = static_cast<double>(count) / static_cast<double>(m);
      const double fail = 1.0 - w * w * w * w;
      if (fail <= 0.0) {
        needed = scored;
      } else {
        const double k = std::log(1.0 - cfg.confidence) / std::log(fail);
        needed = k >= static_cast<double>(cfg.max_iterations)
                     ? std::numeric_limits<long long>::max()
                     : static_cast<long long>(std::ceil(k));
      }
    }
    if (scored >= needed) {
      break;
    }
  }
  out.iterations_used = used;

  if (best_count > 0) {
    std::vector<std::size_t> inliers;
    collect_inliers(best_h, pairs, cfg.inlier_threshold, inliers);
    if (inliers.size() >= 4) {
      std::vector<PointPair> sub;
      sub.reserve(inliers.size());
      for (const std::size_t i : inliers) {
        sub.push_back(pairs[i]);
      }
      try {
        const Homography refit = dlt_homography_lsq(sub);
        collect_inliers(refit, pairs, cfg.inlier_threshold, inliers);
        best_h = refit;
      } catch (const std::exception&) {
        // refit on a degenerate inlier layout keeps the raw hypothesis
        collect_inliers(best_h, pairs, cfg.inlier_threshold, inliers);
      }
    }
    out.homography = best_h;
    out.inlier_indices = std::move(inliers);
  }
  out.converged =
      best_count > 0 &&
      static_cast<long long>(out.inlier_indices.size()) >= cfg.min_inliers;
  return out;
}

}  // namespace

QualityOrderedMatches quality_order(const MatchSet& input) {
  const std::size_t n = input.matches.size();
  std::vector<double> beta(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const Correspondence& c = input.matches[i];
    if (!c.d2.has_value() || *c.d2 == 0) {
      throw std::invalid_argument("match missing usable second neighbor distance");
    }
    beta[i] = static_cast<double>(c.d1) / static_cast<double>(*c.d2);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&beta](std::size_t a, std::size_t b) { return beta[a] < beta[b]; });

  QualityOrderedMatches out;
  out.matches.stage_label = input.stage_label;
  out.matches.matches.reserve(n);
  out.quality.reserve(n);
  for (const std::size_t i : order) {
    out.matches.matches.push_back(input.matches[i]);
    out.quality.push_back(beta[i]);
  }
  return out;
}

std::vector<long long> prosac_growth_limits(std::size_t n_matches, int max_iterations) {
  if (n_matches < 4 || max_iterations < 1) {
    return {};
  }
  const double nd = static_cast<double>(n_matches);
  const double total_samples = nd * (nd - 1.0) * (nd - 2.0) * (nd - 3.0) / 24.0;

  std::vector<long long> limits(n_matches - 3, 1);
  double t_n = static_cast<double>(max_iterations) / total_samples;
  long long t_prime = 1;
  for (std::size_t n = 5; n <= n_matches; ++n) {
    const double t_next =
        t_n * static_cast<double>(n) / static_cast<double>(n - 4);
    t_prime += static_cast<long long>(std::ceil(t_next - t_n));
    t_n = t_next;
    limits[n - 4] = t_prime;
  }
  return limits;
}

std::size_t prosac_prefix_at(const std::vector<long long>& limits,
                             std::size_t n_matches, long long t) {
  if (n_matches <= 4 || limits.empty()) {
    return std::min<std::size_t>(n_matches, 4);
  }
  const auto past = std::upper_bound(limits.begin(), limits.end(), t);
  const std::size_t grown =
      4 + static_cast<std::size_t>(std::distance(limits.begin(), past));
  return std::min(grown, n_matches);
}

RobustEstimate prosac_estimate(const QualityOrderedMatches& ordered,
                               const FeatureSet& target,
                               const FeatureSet& reference,
                               const RobustConfig& cfg) {
  const std::vector<PointPair> pairs = collect_pairs(ordered.matches, target, reference);
  if (ordered.quality.size() != pairs.size()) {
    throw std::invalid_argument("quality list does not match the match list");
  }

  const std::size_t m = pairs.size();
  Rng rng(derive_seed(cfg.seed, stream_tag("prosac-sampling")));

  if (cfg.mode == SamplingMode::grouped) {
    // Disjoint quads of the ascending quality ordering, tried best-sum
    // first (consecutive quads of a sorted list are already sum-ordered),
    // then uniform draws once the quads are exhausted.
    const long long n_groups = static_cast<long long>(m / 4);
    auto draw = [&rng, m, n_groups](int attempt, long long, std::array<std::size_t, 4>& idx) {
      if (attempt <= n_groups) {
        const std::size_t base = static_cast<std::size_t>(attempt - 1) * 4;
        for (std::size_t i = 0; i < 4; ++i) {
          idx[i] = base + i;
        }
        return;
      }
      draw_distinct(rng, m, idx.data(), 4);
    };
    return consensus_loop(pairs, cfg, draw);
  }

  const std::vector<long long> limits = prosac_growth_limits(m, cfg.max_iterations);
  auto draw = [&rng, &limits, m](int, long long t, std::array<std::size_t, 4>& idx) {
    const std::size_t prefix = prosac_prefix_at(limits, m, t);
    if (limits[prefix - 4] < t) {
      // Growth is capped: the newest prefix member joins every sample.
      draw_distinct(rng, prefix - 1, idx.data(), 3);
      idx[3] = prefix - 1;
      return;
    }
    draw_distinct(rng, prefix, idx.data(), 4);
  };
  return consensus_loop(pairs, cfg, draw);
}

RobustEstimate ransac_estimate(const MatchSet& matches,
                               const FeatureSet& target,
                               const FeatureSet& reference,
                               const RobustConfig& cfg) {
  const std::vector<PointPair> pairs = collect_pairs(matches, target, reference);
  const std::size_t m = pairs.size();
  Rng rng(derive_seed(cfg.seed, stream_tag("ransac-sampling")));
  auto draw = [&rng, m](int, long long, std::array<std::size_t, 4>& idx) {
    draw_distinct(rng, m, idx.data(), 4);
  };
  return consensus_loop(pairs, cfg, draw);
}

}  // namespace matchkit
