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

#ifndef GRUEN_FOCUS_H_
#define GRUEN_FOCUS_H_

#include <cstddef>
#include <string>
#include <vector>

#include "gruen/config.h"
#include "gruen/embeddings.h"
#include "gruen/segmentation.h"

namespace gruen {

// Normalized bag of words over a sentence's embeddable tokens.
struct Nbow {
  // Distinct words in first-occurrence order.
  std::vector<std::string> words;
  // Vectors parallel to words; each has the table dimension.
  std::vector<const float*> vectors;
  // Token frequencies divided by the number of embeddable tokens.
  std::vector<double> weights;

  bool empty() const { return words.empty(); }
};

// Tokens are looked up lowercased first, then in their surface form. Listed
// stopwords are removed before counting. Under OovPolicy::kMeanVector words
// without a vector use the table mean; under kSkip they are dropped.
Nbow BuildNbow(const Sentence& sentence, const EmbeddingTable& table,
               const FocusConfig& config);

// Exact earth mover's distance between two distributions under Euclidean
// ground cost. Throws Error(kUnembeddable) if either side is empty.
double WordMoverDistance(const Nbow& a, const Nbow& b, std::size_t dimension);
double WordMoverDistance(const Sentence& a, const Sentence& b,
                         const EmbeddingTable& table, const FocusConfig& config);

// Maps a distance in [0, inf) to a similarity in (0, 1].
double WordMoverSimilarity(double distance, SimilarityTransform transform);

struct FocusPair {
  // The pair is (index, index + 1).
  std::size_t index = 0;
  bool skipped = false;
  double distance = 0.0;
  double similarity = 0.0;
  bool penalized = false;
};

struct FocusResult {
  // -penalty per adjacent pair whose similarity is below the threshold.
  double score = 0.0;
  std::vector<FocusPair> pairs;
  std::vector<std::string> warnings;
};

FocusResult FocusScore(const Document& doc, const EmbeddingTable& table,
                       const FocusConfig& config);

}  // namespace gruen

#endif  // GRUEN_FOCUS_H_
