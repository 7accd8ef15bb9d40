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

#include "gruen/coherence.h"

#include <algorithm>
#include <cmath>

#include "gruen/error.h"

namespace gruen {
namespace {

std::string Join(const std::vector<Sentence>& s, std::size_t begin,
                 std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (i > begin) out += ' ';
    out += s[i].text();
  }
  return out;
}

double PositiveTerm(double p, double eps) {
  if (p >= 1.0 - eps) return 0.0;
  return -std::log(std::max(p, eps));
}

double NegativeTerm(double p, double eps) {
  if (p <= eps) return 0.0;
  return -std::log(1.0 - std::min(p, 1.0 - eps));
}

}  // namespace

std::vector<SegmentSplit> EnumerateSplits(const Document& doc) {
  std::vector<SegmentSplit> out;
  const auto& s = doc.sentences();
  for (std::size_t i = 1; i < s.size(); ++i) {
    out.push_back({Join(s, 0, i), Join(s, i, s.size()), i});
  }
  return out;
}

double SopLoss(const Document& doc, const Backend& backend,
               const CoherenceConfig& config, bool* truncated) {
  if (doc.size() < 2) {
    throw Error(ErrorCode::kNotApplicable,
                "sentence-order loss needs at least two sentences");
  }
  double sum = 0.0;
  const auto splits = EnumerateSplits(doc);
  for (const auto& split : splits) {
    sum += PositiveTerm(backend.SopProb(split.prefix, split.suffix, truncated),
                        config.epsilon);
    sum += NegativeTerm(backend.SopProb(split.suffix, split.prefix, truncated),
                        config.epsilon);
  }
  return sum / static_cast<double>(2 * splits.size());
}

CoherenceResult CoherenceScore(const Document& doc, const Backend& backend,
                               const CoherenceConfig& config) {
  CoherenceResult result;
  if (doc.size() < 2) return result;
  bool truncated = false;
  result.applicable = true;
  result.loss = SopLoss(doc, backend, config, &truncated);
  result.score = result.loss == 0.0 ? 0.0 : -config.weight * result.loss;
  if (truncated) {
    result.warnings.push_back(
        "coherence: segments truncated to the sentence-order model window");
  }
  return result;
}

}  // namespace gruen
