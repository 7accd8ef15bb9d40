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

#ifndef GRUEN_PIPELINE_H_
#define GRUEN_PIPELINE_H_

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "gruen/backend.h"
#include "gruen/config.h"
#include "gruen/embeddings.h"
#include "gruen/error.h"
#include "gruen/segmentation.h"

namespace gruen {

struct GruenScore {
  double grammaticality = 0.0;  // y_g
  double redundancy = 0.0;      // y_r
  double focus = 0.0;           // y_f
  double coherence = 0.0;       // y_c
  // clamp(y_g + y_r + y_f + y_c, min, max).
  double total = 0.0;
  std::vector<std::string> warnings;
};

// Sums the four sub-scores left to right and clamps to the configured range.
double Combine(double grammaticality, double redundancy, double focus,
               double coherence, const CombineConfig& config = {});

// Scores single documents. Immutable after construction and safe to share
// across threads.
class Scorer {
 public:
  // Throws Error(kInvalidArgument) for null inputs or an invalid config, and
  // Error(kIo) if the configured abbreviation file cannot be read.
  Scorer(std::shared_ptr<const Backend> backend,
         std::shared_ptr<const EmbeddingTable> embeddings, MetricConfig config);

  GruenScore Score(std::string_view text) const;
  GruenScore ScoreDocument(const Document& doc) const;

  const MetricConfig& config() const { return config_; }
  const Backend& backend() const { return *backend_; }
  const EmbeddingTable& embeddings() const { return *embeddings_; }

 private:
  std::shared_ptr<const Backend> backend_;
  std::shared_ptr<const EmbeddingTable> embeddings_;
  MetricConfig config_;
  SentenceSplitter splitter_;
};

struct CorpusItem {
  std::string id;
  std::string text;
};

struct CorpusRecord {
  std::string id;
  bool ok = true;
  GruenScore score;
  // Set when ok is false.
  ErrorCode error_code = ErrorCode::kInference;
  std::string error;
};

// Throws Error(kDuplicateId) naming the repeated id and both positions.
void CheckUniqueIds(const std::vector<CorpusItem>& items);

// Scores every item on up to `threads` workers and hands records to `sink`
// in input order, on the calling thread. A failing document yields an error
// record and scoring continues.
void ScoreCorpus(const std::vector<CorpusItem>& items, const Scorer& scorer,
                 int threads, const std::function<void(CorpusRecord)>& sink);
std::vector<CorpusRecord> ScoreCorpus(const std::vector<CorpusItem>& items,
                                      const Scorer& scorer, int threads);

// One JSON object without a trailing newline:
//   {"id", "y_g", "y_r", "y_f", "y_c", "gruen", "warnings"}
// or, for failures, {"id", "error": {"code", "message"}}.
std::string RecordToJson(const CorpusRecord& record);

}  // namespace gruen

#endif  // GRUEN_PIPELINE_H_
