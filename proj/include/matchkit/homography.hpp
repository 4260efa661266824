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

/** \file homography.hpp
 *  \brief 3x3 projective transforms: normalized convention, Hartley DLT
 *         estimation from point correspondences, and transfer error.
 */

#include <Eigen/Core>
#include <span>
#include <utility>

#include "matchkit/feature_types.hpp"

namespace matchkit {

using PointPair = std::pair<Keypoint, Keypoint>;

/** 3x3 projective transform, defined up to scale.
 *
 *  Stored normalized: Frobenius norm 1, with the largest-magnitude entry
 *  positive (first such entry in row-major order on ties), so equal
 *  transforms have equal matrices.
 */
struct Homography {
  Eigen::Matrix3d m = Eigen::Matrix3d::Identity() / std::sqrt(3.0);

  /** Normalize an arbitrary nonzero matrix into the stored convention.
   *  Throws std::invalid_argument on a zero or non-finite matrix. */
  static Homography from_matrix(const Eigen::Matrix3d& raw);

  static Homography identity() { return from_matrix(Eigen::Matrix3d::Identity()); }
};

/** Dehomogenized image of p under h. Returns false (out untouched) when
 *  the homogeneous w of H*(p,1) has magnitude <= 1e-12. */
bool project_point(const Homography& h, const Keypoint& p, Keypoint* out) noexcept;

/** Forward transfer error ||dehom(H*p) - q|| in pixels.
 *  Throws std::runtime_error("point at infinity") when |w| <= 1e-12; callers
 *  scoring candidate matches should treat that case as a non-inlier. */
double transfer_error(const Homography& h, const Keypoint& p, const Keypoint& q);

/** Estimate the homography mapping 4 source points onto 4 destination
 *  points via Hartley-normalized DLT (centroids to origin, mean distance
 *  sqrt(2), null space of the 8x9 system).
 *
 *  Throws std::invalid_argument unless exactly 4 pairs are given, and
 *  std::runtime_error("degenerate sample") when any 3 source or destination
 *  points are collinear (duplicates included) or the system is numerically
 *  rank-deficient.
 */
Homography dlt_homography(std::span<const PointPair> pairs);

/** Least-squares DLT over n >= 4 pairs (2n x 9 system); used for the final
 *  all-inlier refit. Throws like dlt_homography. */
Homography dlt_homography_lsq(std::span<const PointPair> pairs);

/** Up-to-scale discrepancy min over sign of ||A - (+-)B||_F between the
 *  normalized forms. 0 means equal up to scale. */
double frobenius_gap(const Homography& a, const Homography& b);

namespace detail {
/** Non-throwing DLT core shared by the estimators. Returns false on a
 *  degenerate or rank-deficient configuration. */
bool try_dlt(std::span<const PointPair> pairs, Homography* out) noexcept;
}  // namespace detail

}  // namespace matchkit
