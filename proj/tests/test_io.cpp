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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "helpers.hpp"
#include "matchkit/feature_io.hpp"
#include "matchkit/synth.hpp"

using namespace matchkit;

namespace {

std::filesystem::path scratch_dir() {
  const std::filesystem::path dir = "io_scratch";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string scratch(const std::string& name) {
  return (scratch_dir() / name).string();
}

void write_text(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out.good());
  out << body;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/** Throws-check that also inspects the message. */
template <typename F>
std::string capture_error(F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    return e.what();
  }
  FAIL("expected an exception");
  return {};
}

}  // namespace

TEST_CASE("feature files round-trip bit-exactly") {
  SynthConfig cfg;
  cfg.n_inliers = 40;
  cfg.n_outliers = 20;
  cfg.seed = 51;
  const ScenePair scene = generate_scene(cfg);

  const std::string path = scratch("roundtrip.json");
  save_features(path, scene.target);
  const FeatureSet loaded = load_features(path);

  CHECK(loaded.image_width == scene.target.image_width);
  CHECK(loaded.image_height == scene.target.image_height);
  REQUIRE(loaded.size() == scene.target.size());
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    CHECK(loaded.keypoints[i] == scene.target.keypoints[i]);
    CHECK(loaded.descriptors[i] == scene.target.descriptors[i]);
  }

  // a second save of the loaded set reproduces the same bytes
  const std::string again = scratch("roundtrip2.json");
  save_features(again, loaded);
  CHECK(slurp(path) == slurp(again));
}

TEST_CASE("an empty feature set is a valid file") {
  FeatureSet fs;
  fs.image_width = 64.0;
  fs.image_height = 48.0;
  const std::string path = scratch("empty.json");
  save_features(path, fs);
  const FeatureSet loaded = load_features(path);
  CHECK(loaded.size() == 0);
  CHECK(loaded.image_width == 64.0);
}

TEST_CASE("feature file errors name the file and the record") {
  const std::string hex0 = BinaryDescriptor().to_hex();

  const std::string bad_hex = scratch("bad_hex.json");
  write_text(bad_hex, R"({"image_size":[10,10],
    "keypoints":[[1,1],[2,2]],
    "descriptors":[")" + hex0 + R"(","00ff"]})");
  const std::string msg = capture_error([&] { load_features(bad_hex); });
  CHECK(msg.find(bad_hex) != std::string::npos);
  CHECK(msg.find("descriptor 1") != std::string::npos);

  const std::string mismatch = scratch("mismatch.json");
  write_text(mismatch, R"({"image_size":[10,10],
    "keypoints":[[1,1],[2,2]],
    "descriptors":[")" + hex0 + R"("]})");
  CHECK(capture_error([&] { load_features(mismatch); })
            .find("count mismatch (2 vs 1)") != std::string::npos);

  const std::string missing = scratch("missing.json");
  write_text(missing, R"({"image_size":[10,10],"keypoints":[]})");
  CHECK(capture_error([&] { load_features(missing); })
            .find("missing field \"descriptors\"") != std::string::npos);

  const std::string bad_kp = scratch("bad_kp.json");
  write_text(bad_kp, R"({"image_size":[10,10],
    "keypoints":[[1,1],[2]],
    "descriptors":[")" + hex0 + R"(",")" + hex0 + R"("]})");
  CHECK(capture_error([&] { load_features(bad_kp); })
            .find("keypoint 1") != std::string::npos);

  const std::string bad_size = scratch("bad_size.json");
  write_text(bad_size, R"({"image_size":[0,10],"keypoints":[],"descriptors":[]})");
  CHECK_THROWS_AS(load_features(bad_size), std::runtime_error);

  const std::string not_json = scratch("not_json.json");
  write_text(not_json, "not json at all");
  CHECK_THROWS_AS(load_features(not_json), std::runtime_error);

  CHECK_THROWS_AS(load_features(scratch("does_not_exist.json")),
                  std::runtime_error);
}

TEST_CASE("homography files round-trip to full precision") {
  Rng rng(61);
  for (int it = 0; it < 20; ++it) {
    const Homography h = random_bounded_homography(rng, 0.25, 640.0, 480.0);
    const std::string path = scratch("h.txt");
    save_homography(path, h);
    const Homography loaded = load_homography(path);
    CHECK(frobenius_gap(loaded, h) < 1e-12);
  }
}

TEST_CASE("homography parsing is scale invariant and whitespace lenient") {
  const std::string ident = scratch("ident.txt");
  write_text(ident, "1 0 0\n0 1 0\n0 0 1\n");
  CHECK(frobenius_gap(load_homography(ident), Homography::identity()) == 0.0);

  const std::string scaled = scratch("scaled.txt");
  write_text(scaled, "  5 0 0 0   5 0\n\n0 0\t5 ");
  CHECK(frobenius_gap(load_homography(scaled), Homography::identity()) < 1e-15);
}

TEST_CASE("homography file errors") {
  const std::string short_file = scratch("short.txt");
  write_text(short_file, "1 0 0 0 1 0 0 0");
  CHECK(capture_error([&] { load_homography(short_file); })
            .find("expected 9 numeric values, found 8") != std::string::npos);

  const std::string junk = scratch("junk.txt");
  write_text(junk, "1 0 0 0 x 0 0 0 1");
  CHECK(capture_error([&] { load_homography(junk); })
            .find("non-numeric token \"x\"") != std::string::npos);

  const std::string zero = scratch("zero.txt");
  write_text(zero, "0 0 0 0 0 0 0 0 0");
  CHECK_THROWS_AS(load_homography(zero), std::runtime_error);

  CHECK_THROWS_AS(load_homography(scratch("missing_h.txt")), std::runtime_error);
}

TEST_CASE("ground-truth pair files carry a header and one row per pair") {
  const std::string path = scratch("pairs.csv");
  save_gt_pairs_csv(path, {{3, 9}, {0, 2}});
  const std::string body = slurp(path);
  CHECK(body == "query_idx,train_idx\n3,9\n0,2\n");
}
