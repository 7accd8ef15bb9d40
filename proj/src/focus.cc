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

#include "gruen/focus.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "gruen/error.h"
#include "gruen/transport.h"

namespace gruen {
namespace {

// A similarity within this distance of the threshold counts as reaching it.
constexpr double kThresholdTolerance = 1e-12;

double Euclidean(const float* a, const float* b, std::size_t dim) {
  double sum = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    const double d = static_cast<double>(a[k]) - static_cast<double>(b[k]);
    sum += d * d;
  }
  return std::sqrt(sum);
}

}  // namespace

Nbow BuildNbow(const Sentence& sentence, const EmbeddingTable& table,
               const FocusConfig& config) {
  Nbow nbow;
  std::unordered_map<std::string, std::size_t> slot;
  std::vector<double> counts;
  double total = 0.0;
  const auto& tokens = sentence.tokens();
  const auto& words = sentence.words();
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    const std::string& token = tokens[t];
    if (std::find(config.stopwords.begin(), config.stopwords.end(), token) !=
        config.stopwords.end()) {
      continue;
    }
    const float* vec = table.Find(token);
    if (vec == nullptr && t < words.size()) vec = table.Find(words[t]);
    if (vec == nullptr) {
      if (config.oov_policy == OovPolicy::kSkip || table.empty()) continue;
      vec = table.mean_vector().data();
    }
    auto [it, inserted] = slot.emplace(token, nbow.words.size());
    if (inserted) {
      nbow.words.push_back(token);
      nbow.vectors.push_back(vec);
      counts.push_back(0.0);
    }
    counts[it->second] += 1.0;
    total += 1.0;
  }
  nbow.weights.reserve(counts.size());
  for (double c : counts) nbow.weights.push_back(c / total);
  return nbow;
}

double WordMoverDistance(const Nbow& a, const Nbow& b, std::size_t dimension) {
  if (a.empty() || b.empty()) {
    throw Error(ErrorCode::kUnembeddable, "sentence has no embeddable words");
  }
  std::vector<double> cost(a.words.size() * b.words.size());
  for (std::size_t i = 0; i < a.words.size(); ++i) {
    for (std::size_t j = 0; j < b.words.size(); ++j) {
      cost[i * b.words.size() + j] = Euclidean(a.vectors[i], b.vectors[j], dimension);
    }
  }
  return SolveTransport(a.weights, b.weights, cost).cost;
}

double WordMoverDistance(const Sentence& a, const Sentence& b,
                         const EmbeddingTable& table, const FocusConfig& config) {
  return WordMoverDistance(BuildNbow(a, table, config), BuildNbow(b, table, config),
                           table.dimension());
}

double WordMoverSimilarity(double distance, SimilarityTransform transform) {
  if (!(distance >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "distance must be >= 0");
  }
  return transform == SimilarityTransform::kReciprocal ? 1.0 / (1.0 + distance)
                                                       : std::exp(-distance);
}

FocusResult FocusScore(const Document& doc, const EmbeddingTable& table,
                       const FocusConfig& config) {
  FocusResult result;
  const auto& s = doc.sentences();
  if (s.size() < 2) return result;
  std::vector<Nbow> nbows;
  nbows.reserve(s.size());
  for (const auto& sentence : s) nbows.push_back(BuildNbow(sentence, table, config));
  int penalized = 0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    FocusPair pair;
    pair.index = i;
    if (nbows[i].empty() || nbows[i + 1].empty()) {
      pair.skipped = true;
      const std::size_t which = nbows[i].empty() ? i : i + 1;
      result.warnings.push_back("focus: sentence " + std::to_string(which + 1) +
                                " has no embeddable words; pair " +
                                std::to_string(i + 1) + "-" + std::to_string(i + 2) +
                                " skipped");
    } else {
      pair.distance = WordMoverDistance(nbows[i], nbows[i + 1], table.dimension());
      pair.similarity = WordMoverSimilarity(pair.distance, config.similarity);
      pair.penalized =
          pair.similarity < config.similarity_threshold - kThresholdTolerance;
      penalized += pair.penalized;
    }
    result.pairs.push_back(pair);
  }
  result.score = penalized == 0 ? 0.0 : -config.penalty * penalized;
  return result;
}

}  // namespace gruen
