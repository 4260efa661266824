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

#include <cstdlib>
#include <stdexcept>

#include "doctest.h"
#include "helpers.hpp"
#include "matchkit/matcher.hpp"
#include "matchkit/rng.hpp"
#include "matchkit/synth.hpp"
#include "oracles.hpp"

using namespace matchkit;

TEST_CASE("hamming distance on hand-built patterns") {
  const BinaryDescriptor zero;
  CHECK(hamming_distance(zero, zero) == 0);
  CHECK(hamming_distance(zero, zero.complement()) == 256);

  BinaryDescriptor one_bit;
  one_bit.flip(0);
  CHECK(hamming_distance(zero, one_bit) == 1);
  // bit 0 is the most significant bit of the first byte
  CHECK(one_bit.bytes[0] == 0x80);

  const BinaryDescriptor spread = testkit::descriptor_with_bits({0, 77, 255});
  CHECK(hamming_distance(zero, spread) == 3);
  CHECK(hamming_distance(spread, one_bit) == 2);
}

TEST_CASE("hamming distance equals the bit-loop oracle") {
  Rng rng(101);
  for (int it = 0; it < 200; ++it) {
    const BinaryDescriptor a = random_descriptor(rng);
    const BinaryDescriptor b = random_descriptor(rng);
    const int d = hamming_distance(a, b);
    CHECK(d == testkit::naive_hamming(a, b));
    CHECK(d == hamming_distance(b, a));
    CHECK(hamming_distance(a, a) == 0);
  }
}

TEST_CASE("2-NN equals the sort-based oracle on random instances") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng shape(derive_seed(seed, stream_tag("knn-shape")));
    const std::size_t a = 1 + shape.uniform_index(60);
    const std::size_t b = 1 + shape.uniform_index(60);
    const FeatureSet target =
        testkit::random_features(derive_seed(seed, stream_tag("knn-target")), a);
    const FeatureSet reference = testkit::random_features(
        derive_seed(seed, stream_tag("knn-reference")), b);

    const auto got = knn2_match(target, reference);
    const auto want = testkit::naive_knn2(target, reference);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i] == want[i]);
    }
  }
}

TEST_CASE("equal distances resolve to the lower reference index") {
  Rng rng(7);
  const BinaryDescriptor d = random_descriptor(rng);

  FeatureSet target;
  target.image_width = target.image_height = 10.0;
  target.keypoints = {{1.0, 1.0}};
  target.descriptors = {d};

  FeatureSet reference;
  reference.image_width = reference.image_height = 10.0;
  reference.keypoints = {{1.0, 1.0}, {2.0, 2.0}, {3.0, 3.0}};
  reference.descriptors = {d.complement(), d, d};

  const auto out = knn2_match(target, reference);
  REQUIRE(out.size() == 1);
  CHECK(out[0].train_idx == 1);
  CHECK(out[0].d1 == 0);
  // the second distance comes from the other exact copy, not index 1 again
  REQUIRE(out[0].d2.has_value());
  CHECK(*out[0].d2 == 0);
}

TEST_CASE("reference edge cases") {
  const FeatureSet target = testkit::random_features(3, 4);

  const FeatureSet empty;
  CHECK_THROWS_AS(knn2_match(target, empty), std::invalid_argument);

  const FeatureSet single = testkit::random_features(4, 1);
  const auto out = knn2_match(target, single);
  REQUIRE(out.size() == target.size());
  for (const auto& c : out) {
    CHECK(c.train_idx == 0);
    CHECK_FALSE(c.d2.has_value());
  }

  FeatureSet no_queries;
  no_queries.image_width = no_queries.image_height = 1.0;
  CHECK(knn2_match(no_queries, single).empty());
}

TEST_CASE("output is in target order with d1 <= d2") {
  const FeatureSet target = testkit::random_features(11, 120);
  const FeatureSet reference = testkit::random_features(12, 90);
  const auto out = knn2_match(target, reference);
  REQUIRE(out.size() == 120);
  for (std::size_t i = 0; i < out.size(); ++i) {
    CHECK(out[i].query_idx == i);
    CHECK(out[i].train_idx < reference.size());
    REQUIRE(out[i].d2.has_value());
    CHECK(out[i].d1 <= *out[i].d2);
  }
}

TEST_CASE("result is independent of the worker count") {
  const FeatureSet target = testkit::random_features(21, 257);
  const FeatureSet reference = testkit::random_features(22, 100);

  setenv("MATCHKIT_THREADS", "1", 1);
  const auto serial = knn2_match(target, reference);
  setenv("MATCHKIT_THREADS", "7", 1);
  const auto threaded = knn2_match(target, reference);
  unsetenv("MATCHKIT_THREADS");

  CHECK(serial == threaded);
}

TEST_CASE("hex round trip preserves every descriptor") {
  Rng rng(40);
  for (int it = 0; it < 50; ++it) {
    const BinaryDescriptor d = random_descriptor(rng);
    const std::string hex = d.to_hex();
    REQUIRE(hex.size() == 64);
    CHECK(BinaryDescriptor::from_hex(hex) == d);
  }
  CHECK_THROWS_AS(BinaryDescriptor::from_hex("00ff"), std::runtime_error);
  CHECK_THROWS_AS(BinaryDescriptor::from_hex(std::string(64, 'g')),
                  std::runtime_error);
  // parsing accepts uppercase even though emission is lowercase
  const BinaryDescriptor upper = BinaryDescriptor::from_hex(std::string(64, 'A'));
  CHECK(upper.bytes[0] == 0xAA);
}
