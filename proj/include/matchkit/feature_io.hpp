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

/** \file feature_io.hpp
 *  \brief File formats: feature-set JSON, 3x3 homography text files, and
 *         the ground-truth pair CSV.
 *
 *  Feature JSON layout (one object per file):
 *    {
 *      "image_size":  [width, height],
 *      "keypoints":   [[x, y], ...],
 *      "descriptors": ["<64 lowercase hex chars>", ...]
 *    }
 *  Hex convention: two digits per byte in byte order; bit 0 of the
 *  descriptor is the most significant bit of the first byte.
 *
 *  Homography text layout: 9 whitespace-separated reals, written as 3
 *  rows of 3; parsed leniently from any whitespace arrangement and
 *  normalized on load.
 */

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "matchkit/feature_types.hpp"
#include "matchkit/homography.hpp"

namespace matchkit {

/** Parse a feature JSON file. Throws std::runtime_error naming the file
 *  and the offending record on malformed JSON, missing fields, keypoint /
 *  descriptor count mismatch, non-finite coordinates, or bad hex. */
FeatureSet load_features(const std::string& path);

/** Write a feature JSON file; load_features round-trips it bit-exactly.
 *  Throws std::runtime_error when the file cannot be written. */
void save_features(const std::string& path, const FeatureSet& features);

/** Parse a 9-value homography text file into normalized form. Throws
 *  std::runtime_error on wrong token count, non-numeric tokens, or a
 *  degenerate (zero / non-finite) matrix. */
Homography load_homography(const std::string& path);

/** Write a homography as 3 rows of 3 with round-trip precision. */
void save_homography(const std::string& path, const Homography& h);

/** Write ground-truth pairs as CSV with a "query_idx,train_idx" header. */
void save_gt_pairs_csv(const std::string& path,
                       const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs);

}  // namespace matchkit
