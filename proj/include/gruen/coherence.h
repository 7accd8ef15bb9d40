// Copyright 2026 The GRUEN Metric Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GRUEN_COHERENCE_H_
#define GRUEN_COHERENCE_H_

#include <cstddef>
#include <string>
#include <vector>

#include "gruen/backend.h"
#include "gruen/config.h"
#include "gruen/segmentation.h"

namespace gruen {

struct SegmentSplit {
  // Sentences [0, index) joined by single spaces.
  std::string prefix;
  // Sentences [index, n) joined by single spaces.
  std::string suffix;
  std::size_t index = 0;
};

// The n - 1 consecutive prefix/suffix splits in index order.
std::vector<SegmentSplit> EnumerateSplits(const Document& doc);

// Mean logistic loss over every split, counting the ordered pair as a
// positive and the swapped pair as a negative. Probabilities are clamped to
// [epsilon, 1 - epsilon]; a positive at or above 1 - epsilon and a negative
// at or below epsilon contribute exactly zero. Throws Error(kNotApplicable)
// for fewer than two sentences.
double SopLoss(const Document& doc, const Backend& backend,
               const CoherenceConfig& config, bool* truncated = nullptr);

struct CoherenceResult {
  // -weight * loss; 0 when fewer than two sentences.
  double score = 0.0;
  double loss = 0.0;
  bool applicable = false;
  std::vector<std::string> warnings;
};

CoherenceResult CoherenceScore(const Document& doc, const Backend& backend,
                               const CoherenceConfig& config);

}  // namespace gruen

#endif  // GRUEN_COHERENCE_H_
