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

#include "gruen/redundancy.h"

#include <algorithm>
#include <unordered_map>

#include "gruen/text.h"

namespace gruen {
namespace {

// Absorbs rounding in threshold * length products.
constexpr double kTolerance = 1e-9;

template <typename Seq>
std::size_t LongestCommonRun(const Seq& a, const Seq& b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  std::size_t best = 0;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : 0;
      best = std::max(best, cur[j]);
    }
    std::swap(prev, cur);
  }
  return best;
}

}  // namespace

std::size_t LongestCommonSubstringLength(std::string_view a, std::string_view b) {
  return LongestCommonRun(ToLower(DecodeUtf8(a)), ToLower(DecodeUtf8(b)));
}

std::size_t LongestCommonWordSequenceLength(const std::vector<std::string>& a,
                                            const std::vector<std::string>& b) {
  return LongestCommonRun(a, b);
}

std::size_t EditDistance(std::string_view a_text, std::string_view b_text) {
  const std::u32string a = ToLower(DecodeUtf8(a_text));
  const std::u32string b = ToLower(DecodeUtf8(b_text));
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t substitute = prev[j - 1] + (a[i - 1] != b[j - 1]);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, substitute});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::size_t CommonWordCount(const std::vector<std::string>& a,
                            const std::vector<std::string>& b) {
  std::unordered_map<std::string_view, std::size_t> counts;
  for (const auto& w : a) ++counts[w];
  std::size_t common = 0;
  for (const auto& w : b) {
    auto it = counts.find(w);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++common;
    }
  }
  return common;
}

std::string PairPenalty::labels() const {
  std::string out;
  if (substring) out += 'A';
  if (word_sequence) out += 'B';
  if (edit_distance) out += 'C';
  if (common_words) out += 'D';
  return out;
}

PairPenalty ComputePairPenalty(const Sentence& a, const Sentence& b,
                               const RedundancyConfig& config) {
  PairPenalty p;
  const double min_chars =
      static_cast<double>(std::min(a.char_len(), b.char_len()));
  const double max_chars =
      static_cast<double>(std::max(a.char_len(), b.char_len()));
  const double min_words =
      static_cast<double>(std::min(a.word_count(), b.word_count()));
  if (min_chars > 0) {
    p.substring = static_cast<double>(LongestCommonSubstringLength(a.text(), b.text())) >=
                  config.substring_threshold * min_chars - kTolerance;
  }
  if (min_words > 0) {
    p.word_sequence =
        static_cast<double>(LongestCommonWordSequenceLength(a.tokens(), b.tokens())) >=
        config.word_sequence_threshold * min_words - kTolerance;
    p.common_words = static_cast<double>(CommonWordCount(a.tokens(), b.tokens())) >=
                     config.common_words_threshold * min_words - kTolerance;
  }
  p.edit_distance = static_cast<double>(EditDistance(a.text(), b.text())) <=
                    config.edit_distance_threshold * max_chars + kTolerance;
  return p;
}

RedundancyResult NonRedundancyScore(const Document& doc,
                                    const RedundancyConfig& config) {
  RedundancyResult result;
  const auto& s = doc.sentences();
  int fired = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      PairPenalty p = ComputePairPenalty(s[i], s[j], config);
      p.i = i;
      p.j = j;
      fired += p.count();
      result.pairs.push_back(p);
    }
  }
  result.score = fired == 0 ? 0.0 : -config.penalty * fired;
  return result;
}

}  // namespace gruen
