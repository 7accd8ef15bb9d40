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

#ifndef GRUEN_CONFIG_H_
#define GRUEN_CONFIG_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace gruen {

struct GrammarConfig {
  double likelihood_weight = 0.5;
  double acceptance_weight = 0.5;
};

struct RedundancyConfig {
  // Overlap features fire at or above these fractions of the shorter
  // sentence; edit distance fires at or below its fraction of the longer.
  double substring_threshold = 0.8;
  double word_sequence_threshold = 0.8;
  double edit_distance_threshold = 0.6;
  double common_words_threshold = 0.8;
  // Subtracted once per fired feature per sentence pair.
  double penalty = 0.1;
};

enum class SimilarityTransform {
  kReciprocal,   // 1 / (1 + d)
  kExponential,  // exp(-d)
};

enum class OovPolicy {
  kSkip,        // drop words without a vector
  kMeanVector,  // map them to the mean of all vectors
};

struct FocusConfig {
  double similarity_threshold = 0.05;
  double penalty = 0.1;
  SimilarityTransform similarity = SimilarityTransform::kReciprocal;
  OovPolicy oov_policy = OovPolicy::kSkip;
  // Lowercased words removed before building word distributions. Empty keeps
  // every word.
  std::vector<std::string> stopwords;
};

struct CoherenceConfig {
  double weight = 0.1;
  // Probabilities are clamped to [epsilon, 1 - epsilon].
  double epsilon = 1e-6;
};

struct CombineConfig {
  double min = 0.0;
  double max = 1.0;
};

struct SegmentationConfig {
  // Empty uses the built-in abbreviation list.
  std::string abbreviations_path;
};

// Constant outputs of the stub backend selected on the command line.
struct StubSettings {
  double masked_token_prob = 0.5;
  double acceptability = 0.5;
  double sop = 0.5;
};

struct MetricConfig {
  GrammarConfig grammar;
  RedundancyConfig redundancy;
  FocusConfig focus;
  CoherenceConfig coherence;
  CombineConfig combine;
  SegmentationConfig segmentation;
  StubSettings stub_backend;

  // Throws Error(kInvalidArgument) describing the first violated constraint.
  void Validate() const;

  // Missing keys keep their defaults; unknown keys and wrongly typed values
  // raise Error(kParse). The result is validated.
  static MetricConfig FromJson(std::string_view json_text);
  static MetricConfig FromFile(const std::filesystem::path& path);
  // Every field, with a stable key order.
  std::string ToJson() const;
};

const char* SimilarityTransformName(SimilarityTransform t);
const char* OovPolicyName(OovPolicy p);

}  // namespace gruen

#endif  // GRUEN_CONFIG_H_
