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

#ifndef GRUEN_GRAMMATICALITY_H_
#define GRUEN_GRAMMATICALITY_H_

#include <cstddef>
#include <string>
#include <vector>

#include "gruen/backend.h"
#include "gruen/config.h"
#include "gruen/segmentation.h"

namespace gruen {

// Geometric-mean masked probability of the sentence's words,
// exp(sum_j log p(w_j | rest) / k). Throws Error(kInvalidArgument) when the
// sentence has no words.
double SentenceLikelihood(const Backend& backend, const Sentence& sentence,
                          bool* truncated = nullptr);

// Forwards the acceptability classifier.
double SentenceAcceptance(const Backend& backend, const Sentence& sentence,
                          bool* truncated = nullptr);

struct SentenceGrammarScore {
  std::size_t index = 0;
  double likelihood = 0.0;
  double acceptance = 0.0;
  // likelihood_weight * likelihood + acceptance_weight * acceptance.
  double combined = 0.0;
};

struct GrammarResult {
  // Mean combined score over scored sentences; 0 for an empty document.
  double score = 0.0;
  std::vector<SentenceGrammarScore> sentences;
  std::vector<std::string> warnings;
};

// Sentences without words (pure punctuation) cannot be scored by the masked
// model; they are left out of the mean with a warning.
GrammarResult GrammaticalityScore(const Document& doc, const Backend& backend,
                                  const GrammarConfig& config);

}  // namespace gruen

#endif  // GRUEN_GRAMMATICALITY_H_
