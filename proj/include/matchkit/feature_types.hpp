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

/** \file feature_types.hpp
 *  \brief Core feature data model: keypoints, 256-bit binary descriptors,
 *         feature sets, and 2-NN correspondences.
 *
 *  All types are plain values, immutable by convention after construction,
 *  and safe to share read-only across threads.
 */

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace matchkit {

/** Image point in pixel coordinates. Coordinates are expected finite. */
struct Keypoint {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Keypoint&, const Keypoint&) = default;
};

/** Fixed 256-bit binary feature signature, compared by Hamming distance.
 *
 *  Bit/byte convention (stable under serialization): bit 0 is the most
 *  significant bit of bytes[0]; the hex form is the 32 bytes in order,
 *  two lowercase hex digits per byte (64 characters).
 */
class BinaryDescriptor {
 public:
  static constexpr std::size_t kBits = 256;
  static constexpr std::size_t kBytes = kBits / 8;

  std::array<std::uint8_t, kBytes> bytes{};

  [[nodiscard]] bool test(std::size_t bit) const {
    return (bytes[bit >> 3] >> (7 - (bit & 7))) & 1u;
  }

  void set(std::size_t bit, bool value = true) {
    const std::uint8_t mask = static_cast<std::uint8_t>(1u << (7 - (bit & 7)));
    if (value)
      bytes[bit >> 3] |= mask;
    else
      bytes[bit >> 3] &= static_cast<std::uint8_t>(~mask);
  }

  void flip(std::size_t bit) {
    bytes[bit >> 3] ^= static_cast<std::uint8_t>(1u << (7 - (bit & 7)));
  }

  [[nodiscard]] BinaryDescriptor complement() const {
    BinaryDescriptor out;
    for (std::size_t i = 0; i < kBytes; ++i)
      out.bytes[i] = static_cast<std::uint8_t>(~bytes[i]);
    return out;
  }

  [[nodiscard]] std::string to_hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(kBytes * 2, '0');
    for (std::size_t i = 0; i < kBytes; ++i) {
      out[2 * i] = digits[bytes[i] >> 4];
      out[2 * i + 1] = digits[bytes[i] & 0x0f];
    }
    return out;
  }

  /** Parse a 64-character hex string (case-insensitive; emitted lowercase).
   *  Throws std::runtime_error on wrong length or non-hex characters. */
  static BinaryDescriptor from_hex(std::string_view hex);

  friend bool operator==(const BinaryDescriptor&, const BinaryDescriptor&) = default;
};

/** Number of differing bits between two descriptors. Range [0, 256]. */
inline int hamming_distance(const BinaryDescriptor& a, const BinaryDescriptor& b) noexcept {
  int d = 0;
  for (std::size_t i = 0; i < BinaryDescriptor::kBytes; i += 8) {
    std::uint64_t wa, wb;
    std::memcpy(&wa, a.bytes.data() + i, 8);
    std::memcpy(&wb, b.bytes.data() + i, 8);
    d += std::popcount(wa ^ wb);
  }
  return d;
}

/** Keypoints plus descriptors detected in one image.
 *  Invariant: keypoints.size() == descriptors.size(). */
struct FeatureSet {
  std::vector<Keypoint> keypoints;
  std::vector<BinaryDescriptor> descriptors;
  double image_width = 0.0;
  double image_height = 0.0;

  [[nodiscard]] std::size_t size() const { return keypoints.size(); }

  /** Keypoints outside [0, width) x [0, height). Out-of-bounds points are
   *  tolerated (warn-level), never fatal. */
  [[nodiscard]] std::size_t count_out_of_bounds() const {
    std::size_t n = 0;
    for (const auto& kp : keypoints)
      if (kp.x < 0.0 || kp.y < 0.0 || kp.x >= image_width || kp.y >= image_height) ++n;
    return n;
  }
};

/** One query feature paired with its nearest reference feature.
 *
 *  d1 is the Hamming distance to the nearest reference descriptor, d2 the
 *  distance to the second nearest at a *different* reference index. d2 is
 *  absent when the reference set has a single element. Invariant: d1 <= d2.
 */
struct Correspondence {
  std::uint32_t query_idx = 0;
  std::uint32_t train_idx = 0;
  int d1 = 0;
  std::optional<int> d2;

  friend bool operator==(const Correspondence&, const Correspondence&) = default;
};

}  // namespace matchkit
