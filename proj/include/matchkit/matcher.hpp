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

/** \file matcher.hpp
 *  \brief Exact 2-nearest-neighbor search in Hamming space.
 */

#include <vector>

#include "matchkit/feature_types.hpp"

namespace matchkit {

/** Exact 2-NN match of every target descriptor against the reference set.
 *
 *  Brute-force scan over all target x reference pairs. Returns exactly one
 *  Correspondence per target feature, in target order; (train_idx, d1) is
 *  the global minimum Hamming distance, d2 the second smallest over a
 *  different reference index. Equal distances resolve to the lower
 *  reference index, so repeated calls are byte-identical. May parallelize
 *  internally over target features (see MATCHKIT_THREADS); the output is
 *  independent of the thread count.
 *
 *  Throws std::invalid_argument("empty reference") when the reference set
 *  is empty. A single-element reference yields correspondences with d2
 *  absent; the downstream ratio filter rejects those.
 */
std::vector<Correspondence> knn2_match(const FeatureSet& target,
                                       const FeatureSet& reference);

}  // namespace matchkit
