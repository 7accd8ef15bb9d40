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

#include "gruen/grammaticality.h"

#include <cmath>

#include "gruen/error.h"

namespace gruen {

double SentenceLikelihood(const Backend& backend, const Sentence& sentence,
                          bool* truncated) {
  const auto& words = sentence.words();
  if (words.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "sentence has no words to score");
  }
  double sum = 0.0;
  for (double lp : backend.MaskedTokenLogProbs(words, truncated)) sum += lp;
  return std::exp(sum / static_cast<double>(words.size()));
}

double SentenceAcceptance(const Backend& backend, const Sentence& sentence,
                          bool* truncated) {
  return backend.AcceptabilityProb(sentence.text(), truncated);
}

GrammarResult GrammaticalityScore(const Document& doc, const Backend& backend,
                                  const GrammarConfig& config) {
  GrammarResult result;
  if (doc.empty()) {
    result.warnings.push_back("empty output");
    return result;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const Sentence& s = doc.sentences()[i];
    const std::string label = "sentence " + std::to_string(i + 1);
    if (s.words().empty()) {
      result.warnings.push_back("grammar: " + label +
                                " has no words; left out of the mean");
      continue;
    }
    bool lm_truncated = false;
    bool cls_truncated = false;
    SentenceGrammarScore g;
    g.index = i;
    g.likelihood = SentenceLikelihood(backend, s, &lm_truncated);
    g.acceptance = SentenceAcceptance(backend, s, &cls_truncated);
    g.combined = config.likelihood_weight * g.likelihood +
                 config.acceptance_weight * g.acceptance;
    if (lm_truncated) {
      result.warnings.push_back("grammar: " + label +
                                " truncated to the masked model window");
    }
    if (cls_truncated) {
      result.warnings.push_back("grammar: " + label +
                                " truncated for the acceptability model");
    }
    sum += g.combined;
    result.sentences.push_back(g);
  }
  if (result.sentences.empty()) {
    result.warnings.push_back("grammar: no sentence has words; score set to 0");
    return result;
  }
  result.score = sum / static_cast<double>(result.sentences.size());
  return result;
}

}  // namespace gruen
