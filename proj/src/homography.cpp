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

#include "matchkit/homography.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace matchkit {

Homography Homography::from_matrix(const Eigen::Matrix3d& raw) {
  if (!raw.allFinite()) throw std::invalid_argument("homography has non-finite entries");
  const double norm = raw.norm();
  if (norm == 0.0) throw std::invalid_argument("homography is the zero matrix");

  Eigen::Matrix3d m = raw / norm;

  // Sign convention: first largest-magnitude entry (row-major) positive.
  double best = 0.0;
  double best_val = 1.0;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      const double v = m(r, c);
      if (std::abs(v) > best) {
        best = std::abs(v);
        best_val = v;
      }
    }
  }
  if (best_val < 0.0) m = -m;

  Homography h;
  h.m = m;
  return h;
}

bool project_point(const Homography& h, const Keypoint& p, Keypoint* out) noexcept {
  const double w = h.m(2, 0) * p.x + h.m(2, 1) * p.y + h.m(2, 2);
  if (std::abs(w) <= 1e-12) return false;
  out->x = (h.m(0, 0) * p.x + h.m(0, 1) * p.y + h.m(0, 2)) / w;
  out->y = (h.m(1, 0) * p.x + h.m(1, 1) * p.y + h.m(1, 2)) / w;
  return true;
}

double transfer_error(const Homography& h, const Keypoint& p, const Keypoint& q) {
  Keypoint proj;
  if (!project_point(h, p, &proj)) throw std::runtime_error("point at infinity");
  return std::hypot(proj.x - q.x, proj.y - q.y);
}

namespace {

// Similarity transform moving the centroid to the origin and the mean
// distance from it to sqrt(2).
Eigen::Matrix3d hartley_normalization(std::span<const PointPair> pairs, bool source) {
  const std::size_t n = pairs.size();
  double cx = 0.0, cy = 0.0;
  for (const auto& pr : pairs) {
    const Keypoint& p = source ? pr.first : pr.second;
    cx += p.x;
    cy += p.y;
  }
  cx /= static_cast<double>(n);
  cy /= static_cast<double>(n);

  double mean_dist = 0.0;
  for (const auto& pr : pairs) {
    const Keypoint& p = source ? pr.first : pr.second;
    mean_dist += std::hypot(p.x - cx, p.y - cy);
  }
  mean_dist /= static_cast<double>(n);

  const double scale = mean_dist > 1e-12 ? std::sqrt(2.0) / mean_dist : 1.0;
  Eigen::Matrix3d t;
  t << scale, 0.0, -scale * cx,
       0.0, scale, -scale * cy,
       0.0, 0.0, 1.0;
  return t;
}

inline bool collinear(const Keypoint& a, const Keypoint& b, const Keypoint& c) {
  const double abx = b.x - a.x, aby = b.y - a.y;
  const double acx = c.x - a.x, acy = c.y - a.y;
  const double cross = abx * acy - aby * acx;
  const double scale = std::hypot(abx, aby) * std::hypot(acx, acy);
  return std::abs(cross) <= 1e-9 * std::max(1.0, scale);
}

bool any_three_collinear(std::span<const PointPair> pairs, bool source) {
  const std::size_t n = pairs.size();
  for (std::size_t i = 0; i + 2 < n; ++i)
    for (std::size_t j = i + 1; j + 1 < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const Keypoint& a = source ? pairs[i].first : pairs[i].second;
        const Keypoint& b = source ? pairs[j].first : pairs[j].second;
        const Keypoint& c = source ? pairs[k].first : pairs[k].second;
        if (collinear(a, b, c)) return true;
      }
  return false;
}

}  // namespace

namespace detail {

bool try_dlt(std::span<const PointPair> pairs, Homography* out) noexcept {
  const std::size_t n = pairs.size();
  if (n < 4) return false;

  // Minimal samples get the exact collinearity screen; larger systems rely
  // on the rank check (O(n^3) triples would dominate the refit otherwise).
  if (n == 4 && (any_three_collinear(pairs, true) || any_three_collinear(pairs, false)))
    return false;

  const Eigen::Matrix3d ts = hartley_normalization(pairs, true);
  const Eigen::Matrix3d td = hartley_normalization(pairs, false);

  Eigen::MatrixXd a(2 * n, 9);
  for (std::size_t i = 0; i < n; ++i) {
    const Keypoint& ps = pairs[i].first;
    const Keypoint& pd = pairs[i].second;
    const double x = ts(0, 0) * ps.x + ts(0, 2);
    const double y = ts(1, 1) * ps.y + ts(1, 2);
    const double u = td(0, 0) * pd.x + td(0, 2);
    const double v = td(1, 1) * pd.y + td(1, 2);

    a.row(2 * i) << -x, -y, -1.0, 0.0, 0.0, 0.0, u * x, u * y, u;
    a.row(2 * i + 1) << 0.0, 0.0, 0.0, -x, -y, -1.0, v * x, v * y, v;
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  // The system must have rank 8: sv(7) ~ 0 means the points do not
  // determine a homography. The least-squares case gets a looser tolerance
  // since measurement noise keeps sv(7) well away from zero anyway.
  const double rank_tol = (n == 4) ? 1e-9 : 1e-12;
  if (!(sv(0) > 0.0) || sv(7) <= rank_tol * sv(0)) return false;

  const Eigen::VectorXd h = svd.matrixV().col(8);
  Eigen::Matrix3d hn;
  hn << h(0), h(1), h(2), h(3), h(4), h(5), h(6), h(7), h(8);

  const Eigen::Matrix3d td_inv = td.inverse();
  const Eigen::Matrix3d full = td_inv * hn * ts;
  if (!full.allFinite() || full.norm() == 0.0) return false;

  *out = Homography::from_matrix(full);
  return true;
}

}  // namespace detail

Homography dlt_homography(std::span<const PointPair> pairs) {
  if (pairs.size() != 4)
    throw std::invalid_argument("dlt_homography requires exactly 4 pairs");
  Homography h;
  if (!detail::try_dlt(pairs, &h)) throw std::runtime_error("degenerate sample");
  return h;
}

Homography dlt_homography_lsq(std::span<const PointPair> pairs) {
  if (pairs.size() < 4)
    throw std::invalid_argument("dlt_homography_lsq requires at least 4 pairs");
  Homography h;
  if (!detail::try_dlt(pairs, &h)) throw std::runtime_error("degenerate sample");
  return h;
}

double frobenius_gap(const Homography& a, const Homography& b) {
  return std::min((a.m - b.m).norm(), (a.m + b.m).norm());
}

}  // namespace matchkit
