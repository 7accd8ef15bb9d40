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

#include "gruen/pipeline.h"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <unordered_map>

#include "gruen/coherence.h"
#include "gruen/focus.h"
#include "gruen/grammaticality.h"
#include "gruen/redundancy.h"
#include "json.hpp"

namespace gruen {
namespace {

SentenceSplitter MakeSplitter(const SegmentationConfig& config) {
  if (config.abbreviations_path.empty()) return SentenceSplitter();
  return SentenceSplitter::FromFile(config.abbreviations_path);
}

void Append(std::vector<std::string>* out, const std::vector<std::string>& in) {
  out->insert(out->end(), in.begin(), in.end());
}

CorpusRecord ScoreItem(const CorpusItem& item, const Scorer& scorer) {
  CorpusRecord record;
  record.id = item.id;
  try {
    record.score = scorer.Score(item.text);
  } catch (const Error& e) {
    record.ok = false;
    record.error_code = e.code();
    record.error = "document '" + item.id + "': " + e.what();
  } catch (const std::exception& e) {
    record.ok = false;
    record.error_code = ErrorCode::kInference;
    record.error = "document '" + item.id + "': " + e.what();
  }
  return record;
}

}  // namespace

double Combine(double grammaticality, double redundancy, double focus,
               double coherence, const CombineConfig& config) {
  const double sum = grammaticality + redundancy + focus + coherence;
  return std::clamp(sum, config.min, config.max);
}

Scorer::Scorer(std::shared_ptr<const Backend> backend,
               std::shared_ptr<const EmbeddingTable> embeddings,
               MetricConfig config)
    : backend_(std::move(backend)),
      embeddings_(std::move(embeddings)),
      config_(std::move(config)),
      splitter_(MakeSplitter(config_.segmentation)) {
  if (backend_ == nullptr) {
    throw Error(ErrorCode::kInvalidArgument, "scorer needs a backend");
  }
  if (embeddings_ == nullptr) {
    throw Error(ErrorCode::kInvalidArgument, "scorer needs an embedding table");
  }
  config_.Validate();
}

GruenScore Scorer::Score(std::string_view text) const {
  return ScoreDocument(Document(std::string(text), splitter_));
}

GruenScore Scorer::ScoreDocument(const Document& doc) const {
  GruenScore out;
  const GrammarResult g = GrammaticalityScore(doc, *backend_, config_.grammar);
  out.grammaticality = g.score;
  Append(&out.warnings, g.warnings);
  if (!doc.empty()) {
    out.redundancy = NonRedundancyScore(doc, config_.redundancy).score;
    const FocusResult f = FocusScore(doc, *embeddings_, config_.focus);
    out.focus = f.score;
    Append(&out.warnings, f.warnings);
    const CoherenceResult c = CoherenceScore(doc, *backend_, config_.coherence);
    out.coherence = c.score;
    Append(&out.warnings, c.warnings);
  }
  out.total = Combine(out.grammaticality, out.redundancy, out.focus,
                      out.coherence, config_.combine);
  return out;
}

void CheckUniqueIds(const std::vector<CorpusItem>& items) {
  std::unordered_map<std::string_view, std::size_t> seen;
  for (std::size_t i = 0; i < items.size(); ++i) {
    auto [it, inserted] = seen.emplace(items[i].id, i);
    if (!inserted) {
      throw Error(ErrorCode::kDuplicateId,
                  "duplicate id '" + items[i].id + "' at items " +
                      std::to_string(it->second + 1) + " and " +
                      std::to_string(i + 1));
    }
  }
}

void ScoreCorpus(const std::vector<CorpusItem>& items, const Scorer& scorer,
                 int threads, const std::function<void(CorpusRecord)>& sink) {
  CheckUniqueIds(items);
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)),
                            items.size());
  if (workers <= 1) {
    for (const auto& item : items) sink(ScoreItem(item, scorer));
    return;
  }
  std::vector<std::optional<CorpusRecord>> done(items.size());
  std::mutex mu;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < items.size(); i = next++) {
        CorpusRecord record = ScoreItem(items[i], scorer);
        {
          std::lock_guard<std::mutex> lock(mu);
          done[i] = std::move(record);
        }
        ready.notify_all();
      }
    });
  }
  std::exception_ptr sink_error;
  for (std::size_t i = 0; i < items.size() && !sink_error; ++i) {
    CorpusRecord record;
    {
      std::unique_lock<std::mutex> lock(mu);
      ready.wait(lock, [&] { return done[i].has_value(); });
      record = std::move(*done[i]);
      done[i].reset();
    }
    try {
      sink(std::move(record));
    } catch (...) {
      // Stop handing out work, then rethrow once the workers are joined.
      sink_error = std::current_exception();
      next = items.size();
    }
  }
  for (auto& t : pool) t.join();
  if (sink_error) std::rethrow_exception(sink_error);
}

std::vector<CorpusRecord> ScoreCorpus(const std::vector<CorpusItem>& items,
                                      const Scorer& scorer, int threads) {
  std::vector<CorpusRecord> out;
  out.reserve(items.size());
  ScoreCorpus(items, scorer, threads,
              [&](CorpusRecord r) { out.push_back(std::move(r)); });
  return out;
}

std::string RecordToJson(const CorpusRecord& record) {
  nlohmann::ordered_json j;
  j["id"] = record.id;
  if (!record.ok) {
    j["error"]["code"] = ErrorCodeName(record.error_code);
    j["error"]["message"] = record.error;
    return j.dump();
  }
  j["y_g"] = record.score.grammaticality;
  j["y_r"] = record.score.redundancy;
  j["y_f"] = record.score.focus;
  j["y_c"] = record.score.coherence;
  j["gruen"] = record.score.total;
  j["warnings"] = record.score.warnings;
  return j.dump();
}

}  // namespace gruen
