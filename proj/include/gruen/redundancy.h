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

#ifndef GRUEN_REDUNDANCY_H_
#define GRUEN_REDUNDANCY_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "gruen/config.h"
#include "gruen/segmentation.h"

namespace gruen {

// Longest run of code points present in both strings, ignoring case.
std::size_t LongestCommonSubstringLength(std::string_view a, std::string_view b);

// Longest run of consecutive tokens present in both sequences.
std::size_t LongestCommonWordSequenceLength(const std::vector<std::string>& a,
                                            const std::vector<std::string>& b);

// Levenshtein distance over code points with unit costs, ignoring case.
std::size_t EditDistance(std::string_view a, std::string_view b);

// Size of the multiset intersection of the two token lists.
std::size_t CommonWordCount(const std::vector<std::string>& a,
                            const std::vector<std::string>& b);

// Features of one sentence pair that exceed the redundancy thresholds.
struct PairPenalty {
  std::size_t i = 0;
  std::size_t j = 0;
  bool substring = false;      // A
  bool word_sequence = false;  // B
  bool edit_distance = false;  // C
  bool common_words = false;   // D

  int count() const {
    return substring + word_sequence + edit_distance + common_words;
  }
  // Fired features as letters in order, e.g. "ABD".
  std::string labels() const;
};

PairPenalty ComputePairPenalty(const Sentence& a, const Sentence& b,
                               const RedundancyConfig& config);

struct RedundancyResult {
  // -penalty * total fired features; <= 0.
  double score = 0.0;
  // Every unordered pair (i < j) in index order.
  std::vector<PairPenalty> pairs;
};

RedundancyResult NonRedundancyScore(const Document& doc,
                                    const RedundancyConfig& config);

}  // namespace gruen

#endif  // GRUEN_REDUNDANCY_H_
