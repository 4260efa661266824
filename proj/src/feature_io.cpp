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

#include "matchkit/feature_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace matchkit {

BinaryDescriptor BinaryDescriptor::from_hex(std::string_view hex) {
  if (hex.size() != kBytes * 2) {
    throw std::runtime_error("descriptor hex must be 64 characters");
  }
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  BinaryDescriptor out;
  for (std::size_t i = 0; i < kBytes; ++i) {
    const int hi = nibble(hex[2 * i]);
    const int lo = nibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) {
      throw std::runtime_error("invalid hex character in descriptor");
    }
    out.bytes[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return out;
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw std::runtime_error(path + ": " + what);
}

double finite_number(const nlohmann::json& v, const std::string& path,
                     const std::string& where) {
  if (!v.is_number()) {
    fail(path, where + ": expected a number");
  }
  const double d = v.get<double>();
  if (!std::isfinite(d)) {
    fail(path, where + ": non-finite value");
  }
  return d;
}

}  // namespace

FeatureSet load_features(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(path, "cannot open file");
  }

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail(path, e.what());
  }
  if (!doc.is_object()) {
    fail(path, "top-level value must be an object");
  }
  for (const char* field : {"image_size", "keypoints", "descriptors"}) {
    if (!doc.contains(field)) {
      fail(path, std::string("missing field \"") + field + "\"");
    }
  }

  FeatureSet fs;
  const auto& size = doc["image_size"];
  if (!size.is_array() || size.size() != 2) {
    fail(path, "image_size: expected [width, height]");
  }
  fs.image_width = finite_number(size[0], path, "image_size width");
  fs.image_height = finite_number(size[1], path, "image_size height");
  if (!(fs.image_width > 0.0) || !(fs.image_height > 0.0)) {
    fail(path, "image_size: dimensions must be positive");
  }

  const auto& kps = doc["keypoints"];
  const auto& descs = doc["descriptors"];
  if (!kps.is_array() || !descs.is_array()) {
    fail(path, "keypoints and descriptors must be arrays");
  }
  if (kps.size() != descs.size()) {
    std::ostringstream msg;
    msg << "keypoint/descriptor count mismatch (" << kps.size() << " vs "
        << descs.size() << ")";
    fail(path, msg.str());
  }

  fs.keypoints.reserve(kps.size());
  fs.descriptors.reserve(descs.size());
  for (std::size_t i = 0; i < kps.size(); ++i) {
    const auto& kp = kps[i];
    const std::string where = "keypoint " + std::to_string(i);
    if (!kp.is_array() || kp.size() != 2) {
      fail(path, where + ": expected [x, y]");
    }
    fs.keypoints.push_back(Keypoint{finite_number(kp[0], path, where + " x"),
                                    finite_number(kp[1], path, where + " y")});
  }
  for (std::size_t i = 0; i < descs.size(); ++i) {
    if (!descs[i].is_string()) {
      fail(path, "descriptor " + std::to_string(i) + ": expected a hex string");
    }
    try {
      fs.descriptors.push_back(
          BinaryDescriptor::from_hex(descs[i].get<std::string>()));
    } catch (const std::runtime_error& e) {
      fail(path, "descriptor " + std::to_string(i) + ": " + e.what());
    }
  }
  return fs;
}

void save_features(const std::string& path, const FeatureSet& features) {
  nlohmann::ordered_json doc;
  doc["image_size"] = {features.image_width, features.image_height};
  auto& kps = doc["keypoints"] = nlohmann::ordered_json::array();
  for (const Keypoint& kp : features.keypoints) {
    kps.push_back({kp.x, kp.y});
  }
  auto& descs = doc["descriptors"] = nlohmann::ordered_json::array();
  for (const BinaryDescriptor& d : features.descriptors) {
    descs.push_back(d.to_hex());
  }

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    fail(path, "cannot write file");
  }
  out << doc.dump(2) << '\n';
  if (!out) {
    fail(path, "write failed");
  }
}

Homography load_homography(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(path, "cannot open file");
  }
  std::vector<double> values;
  std::string token;
  while (in >> token) {
    try {
      std::size_t used = 0;
      const double v = std::stod(token, &used);
      if (used != token.size()) {
        fail(path, "non-numeric token \"" + token + "\"");
      }
      values.push_back(v);
    } catch (const std::invalid_argument&) {
      fail(path, "non-numeric token \"" + token + "\"");
    } catch (const std::out_of_range&) {
      fail(path, "value out of range \"" + token + "\"");
    }
  }
  if (values.size() != 9) {
    std::ostringstream msg;
    msg << "expected 9 numeric values, found " << values.size();
    fail(path, msg.str());
  }
  Eigen::Matrix3d m;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      m(r, c) = values[static_cast<std::size_t>(3 * r + c)];
    }
  }
  try {
    return Homography::from_matrix(m);
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

void save_homography(const std::string& path, const Homography& h) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    fail(path, "cannot write file");
  }
  char buf[64];
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", h.m(r, c));
      out << buf << (c == 2 ? '\n' : ' ');
    }
  }
  if (!out) {
    fail(path, "write failed");
  }
}

void save_gt_pairs_csv(const std::string& path,
                       const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    fail(path, "cannot write file");
  }
  out << "query_idx,train_idx\n";
  for (const auto& [q, t] : pairs) {
    out << q << ',' << t << '\n';
  }
  if (!out) {
    fail(path, "write failed");
  }
}

}  // namespace matchkit
