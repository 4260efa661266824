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

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "matchkit/homography.hpp"
#include "matchkit/rng.hpp"
#include "matchkit/synth.hpp"

using namespace matchkit;

TEST_CASE("identity from unit-square corners") {
  const std::vector<PointPair> pairs = {
      {{0, 0}, {0, 0}}, {{1, 0}, {1, 0}}, {{1, 1}, {1, 1}}, {{0, 1}, {0, 1}}};
  const Homography h = dlt_homography(pairs);
  CHECK(frobenius_gap(h, Homography::identity()) < 1e-9);
  CHECK(h.m(0, 0) == doctest::Approx(1.0 / std::sqrt(3.0)));
}

TEST_CASE("known affine map recovered through four points") {
  Eigen::Matrix3d m;
  m << 2, 0, 1, 0, 3, -2, 0, 0, 1;
  const Homography want = Homography::from_matrix(m);

  const Keypoint src[4] = {{0, 0}, {5, 1}, {2, 7}, {9, 4}};
  std::vector<PointPair> pairs;
  for (const Keypoint& p : src) {
    Keypoint q;
    REQUIRE(project_point(want, p, &q));
    pairs.push_back({p, q});
  }
  const Homography got = dlt_homography(pairs);
  CHECK(frobenius_gap(got, want) < 1e-9);

  // a point the solver never saw maps through identically
  const Keypoint probe{3.5, 2.25};
  Keypoint a, b;
  REQUIRE(project_point(want, probe, &a));
  REQUIRE(project_point(got, probe, &b));
  CHECK(std::hypot(a.x - b.x, a.y - b.y) < 1e-9);
}

TEST_CASE("random bounded maps round-trip through the 4-point solver") {
  Rng rng(909);
  int done = 0;
  while (done < 200) {
    const Homography want =
        random_bounded_homography(rng, rng.uniform_range(0.0, 0.3), 640.0, 480.0);
    std::vector<PointPair> pairs;
    for (int k = 0; k < 4; ++k) {
      const Keypoint p{rng.uniform_range(0.0, 640.0), rng.uniform_range(0.0, 480.0)};
      Keypoint q;
      REQUIRE(project_point(want, p, &q));  // bounded maps keep the image finite
      pairs.push_back({p, q});
    }
    Homography got;
    if (!detail::try_dlt(pairs, &got)) continue;  // rare near-collinear draw
    ++done;
    CHECK(frobenius_gap(got, want) < 1e-6);
    for (const auto& [p, q] : pairs) {
      CHECK(transfer_error(got, p, q) < 1e-9);
    }
  }
}

TEST_CASE("collinear and duplicate samples are rejected") {
  const std::vector<PointPair> collinear_src = {
      {{0, 0}, {0, 0}}, {{1, 1}, {1, 0}}, {{2, 2}, {2, 0}}, {{5, 0}, {0, 5}}};
  CHECK_THROWS_WITH_AS(dlt_homography(collinear_src), "degenerate sample",
                       std::runtime_error);

  const std::vector<PointPair> duplicate_src = {
      {{0, 0}, {0, 0}}, {{0, 0}, {1, 0}}, {{2, 3}, {2, 0}}, {{5, 1}, {0, 5}}};
  CHECK_THROWS_AS(dlt_homography(duplicate_src), std::runtime_error);

  // degeneracy on the destination side counts as well
  const std::vector<PointPair> collinear_dst = {
      {{0, 0}, {0, 0}}, {{1, 0}, {1, 1}}, {{0, 1}, {2, 2}}, {{1, 1}, {3, 3}}};
  CHECK_THROWS_AS(dlt_homography(collinear_dst), std::runtime_error);

  Homography unused;
  CHECK_FALSE(detail::try_dlt(collinear_src, &unused));
}

TEST_CASE("pair-count contracts") {
  const std::vector<PointPair> three = {
      {{0, 0}, {0, 0}}, {{1, 0}, {1, 0}}, {{0, 1}, {0, 1}}};
  CHECK_THROWS_AS(dlt_homography(three), std::invalid_argument);
  CHECK_THROWS_AS(dlt_homography_lsq(three), std::invalid_argument);

  const std::vector<PointPair> five = {{{0, 0}, {0, 0}},
                                       {{1, 0}, {1, 0}},
                                       {{1, 1}, {1, 1}},
                                       {{0, 1}, {0, 1}},
                                       {{2, 3}, {2, 3}}};
  CHECK_THROWS_AS(dlt_homography(five), std::invalid_argument);
  CHECK_NOTHROW(dlt_homography_lsq(five));
}

TEST_CASE("least-squares refit is exact on noiseless pairs") {
  Rng rng(4242);
  const Homography want = random_bounded_homography(rng, 0.2, 640.0, 480.0);
  std::vector<PointPair> pairs;
  while (pairs.size() < 24) {
    const Keypoint p{rng.uniform_range(0.0, 640.0), rng.uniform_range(0.0, 480.0)};
    Keypoint q;
    REQUIRE(project_point(want, p, &q));
    pairs.push_back({p, q});
  }
  const Homography got = dlt_homography_lsq(pairs);
  CHECK(frobenius_gap(got, want) < 1e-9);
}

TEST_CASE("transfer error is the Euclidean gap after mapping") {
  const Homography id = Homography::identity();
  CHECK(transfer_error(id, {0, 0}, {3, 4}) == doctest::Approx(5.0));
  CHECK(transfer_error(id, {1, 2}, {1, 2}) == doctest::Approx(0.0));
}

TEST_CASE("points mapped to infinity are reported") {
  Eigen::Matrix3d m;
  m << 1, 0, 0, 0, 1, 0, -1, 0, 1;  // homogeneous w = 1 - x, vanishes at x = 1
  const Homography h = Homography::from_matrix(m);

  Keypoint out;
  CHECK_FALSE(project_point(h, {1.0, 5.0}, &out));
  CHECK(project_point(h, {2.0, 5.0}, &out));
  CHECK_THROWS_WITH_AS(transfer_error(h, {1.0, 5.0}, {0, 0}),
                       "point at infinity", std::runtime_error);
}

TEST_CASE("stored form is scale and sign invariant") {
  Eigen::Matrix3d m;
  m << 1, 2, 3, 4, 5, 6, 7, 8, 10;
  const Homography a = Homography::from_matrix(m);
  const Homography b = Homography::from_matrix(Eigen::Matrix3d(-3.7 * m));
  CHECK((a.m - b.m).norm() < 1e-12);
  CHECK(a.m.norm() == doctest::Approx(1.0));

  // flipping the sign of the identity lands on the exact same bytes
  const Homography pos = Homography::from_matrix(Eigen::Matrix3d::Identity());
  const Homography neg = Homography::from_matrix(Eigen::Matrix3d(-Eigen::Matrix3d::Identity()));
  CHECK((pos.m - neg.m).norm() == 0.0);
  CHECK(pos.m(0, 0) == doctest::Approx(0.5773502691896258));
  CHECK(pos.m(0, 1) == 0.0);
}

TEST_CASE("degenerate matrices are rejected at construction") {
  CHECK_THROWS_AS(Homography::from_matrix(Eigen::Matrix3d::Zero()),
                  std::invalid_argument);
  Eigen::Matrix3d bad = Eigen::Matrix3d::Identity();
  bad(1, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(Homography::from_matrix(bad), std::invalid_argument);
  bad(1, 1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(Homography::from_matrix(bad), std::invalid_argument);
}

TEST_CASE("frobenius gap is sign-blind, symmetric, and zero on equal input") {
  Rng rng(77);
  const Homography a = random_bounded_homography(rng, 0.25, 640.0, 480.0);
  const Homography b = random_bounded_homography(rng, 0.25, 640.0, 480.0);
  CHECK(frobenius_gap(a, a) == 0.0);
  CHECK(frobenius_gap(a, b) == doctest::Approx(frobenius_gap(b, a)));
  CHECK(frobenius_gap(a, b) > 0.0);

  const Homography flipped = Homography::from_matrix(Eigen::Matrix3d(-a.m));
  CHECK(frobenius_gap(a, flipped) == 0.0);
}
