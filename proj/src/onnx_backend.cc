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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "gruen/backend.h"
#include "gruen/error.h"
#include "gruen/hash.h"
#include "gruen/onnx/model.h"
#include "gruen/tokenizer.h"
#include "json.hpp"

namespace gruen {
namespace {

using nlohmann::json;

constexpr std::size_t kMaxBatchRows = 16;

struct Graph {
  onnx::Model model;
  std::shared_ptr<const SubwordTokenizer> tokenizer;
  int64_t max_length = kDefaultMaxSequenceLength;
  int64_t positive_class = 0;
  bool token_types = false;
  bool attention_mask = false;
};

// First index of the window of `width` units that keeps [begin, end) and
// centers it where possible.
std::size_t WindowStart(std::size_t total, std::size_t begin, std::size_t end,
                        std::size_t width) {
  if (total <= width) return 0;
  const int64_t center = static_cast<int64_t>(begin + (end - begin) / 2);
  const int64_t start = center - static_cast<int64_t>(width / 2);
  return static_cast<std::size_t>(
      std::clamp<int64_t>(start, 0, static_cast<int64_t>(total - width)));
}

std::vector<onnx::Tensor> RunGraph(const Graph& g,
                                   const std::vector<int64_t>& ids,
                                   const std::vector<int64_t>& types,
                                   int64_t rows, int64_t cols) {
  std::vector<std::pair<std::string, onnx::Tensor>> feeds;
  feeds.emplace_back("input_ids", onnx::Tensor::FromInts({rows, cols}, ids));
  if (g.attention_mask) {
    feeds.emplace_back("attention_mask",
                       onnx::Tensor::FromInts({rows, cols},
                                              std::vector<int64_t>(ids.size(), 1)));
  }
  if (g.token_types) {
    feeds.emplace_back("token_type_ids",
                       onnx::Tensor::FromInts({rows, cols}, types));
  }
  return g.model.Run(feeds);
}

double PositiveProbability(const Graph& g, const onnx::Tensor& logits) {
  const bool single_row =
      logits.rank() == 1 || (logits.rank() == 2 && logits.shape()[0] == 1);
  if (!single_row || logits.size() < 2) {
    throw Error(ErrorCode::kInference,
                "classifier output has shape " + onnx::ShapeString(logits.shape()));
  }
  const int64_t classes = logits.shape().back();
  if (g.positive_class >= classes) {
    throw Error(ErrorCode::kInference, "positive_class exceeds classifier width");
  }
  double mx = -INFINITY;
  for (int64_t i = 0; i < classes; ++i) mx = std::max(mx, logits.AsDouble(i));
  double sum = 0.0;
  for (int64_t i = 0; i < classes; ++i) sum += std::exp(logits.AsDouble(i) - mx);
  return std::exp(logits.AsDouble(g.positive_class) - mx) / sum;
}

class OnnxBackend : public Backend {
 public:
  OnnxBackend(Graph mlm, Graph acceptability, Graph sop, std::string fingerprint)
      : mlm_(std::move(mlm)),
        acceptability_(std::move(acceptability)),
        sop_(std::move(sop)),
        fingerprint_(std::move(fingerprint)) {}

  std::string Fingerprint() const override { return fingerprint_; }

 protected:
  std::vector<double> ScoreMasked(const std::vector<std::string>& tokens,
                                  const std::vector<std::size_t>& positions,
                                  bool* truncated) const override {
    const SubwordTokenizer& tok = *mlm_.tokenizer;
    std::vector<int64_t> ids;
    std::vector<std::pair<std::size_t, std::size_t>> spans;
    for (const std::string& word : tokens) {
      std::vector<int64_t> pieces = tok.Encode(word);
      if (pieces.empty()) pieces.push_back(tok.unk_id());
      spans.emplace_back(ids.size(), ids.size() + pieces.size());
      ids.insert(ids.end(), pieces.begin(), pieces.end());
    }
    const std::size_t width = static_cast<std::size_t>(mlm_.max_length - 2);
    if (ids.size() > width && truncated) *truncated = true;
    const std::size_t cols = std::min(ids.size(), width) + 2;

    std::vector<double> out(positions.size(), 0.0);
    for (std::size_t first = 0; first < positions.size(); first += kMaxBatchRows) {
      const std::size_t rows = std::min(kMaxBatchRows, positions.size() - first);
      std::vector<int64_t> batch;
      batch.reserve(rows * cols);
      std::vector<std::size_t> starts(rows);
      for (std::size_t r = 0; r < rows; ++r) {
        const auto [begin, end] = spans[positions[first + r]];
        if (end - begin > width) {
          throw Error(ErrorCode::kInvalidArgument,
                      "word longer than the model window: " +
                          tokens[positions[first + r]]);
        }
        const std::size_t start = WindowStart(ids.size(), begin, end, width);
        starts[r] = start;
        batch.push_back(tok.cls_id());
        for (std::size_t k = start; k < start + cols - 2; ++k) {
          batch.push_back(k >= begin && k < end ? tok.mask_id() : ids[k]);
        }
        batch.push_back(tok.sep_id());
      }
      const auto result =
          RunGraph(mlm_, batch, std::vector<int64_t>(batch.size(), 0),
                   static_cast<int64_t>(rows), static_cast<int64_t>(cols));
      const onnx::Tensor& logits = result.at(0);
      if (logits.rank() != 3 || logits.shape()[0] != static_cast<int64_t>(rows) ||
          logits.shape()[1] != static_cast<int64_t>(cols)) {
        throw Error(ErrorCode::kInference, "masked LM output has shape " +
                                               onnx::ShapeString(logits.shape()));
      }
      const int64_t vocab = logits.shape()[2];
      for (std::size_t r = 0; r < rows; ++r) {
        const auto [begin, end] = spans[positions[first + r]];
        double total = 0.0;
        for (std::size_t k = begin; k < end; ++k) {
          const std::size_t col = k - starts[r] + 1;
          const float* row = logits.floats().data() + (r * cols + col) * vocab;
          double mx = -INFINITY;
          for (int64_t v = 0; v < vocab; ++v) mx = std::max<double>(mx, row[v]);
          double sum = 0.0;
          for (int64_t v = 0; v < vocab; ++v) sum += std::exp(row[v] - mx);
          if (ids[k] >= vocab) {
            throw Error(ErrorCode::kInference, "token id beyond LM vocabulary");
          }
          total += row[ids[k]] - mx - std::log(sum);
        }
        out[first + r] = total;
      }
    }
    return out;
  }

  double ScoreAcceptability(std::string_view sentence,
                            bool* truncated) const override {
    const SubwordTokenizer& tok = *acceptability_.tokenizer;
    std::vector<int64_t> pieces = tok.Encode(sentence);
    const std::size_t width =
        static_cast<std::size_t>(acceptability_.max_length - 2);
    if (pieces.size() > width) {
      pieces.resize(width);
      if (truncated) *truncated = true;
    }
    std::vector<int64_t> ids = {tok.cls_id()};
    ids.insert(ids.end(), pieces.begin(), pieces.end());
    ids.push_back(tok.sep_id());
    const int64_t n = static_cast<int64_t>(ids.size());
    const auto out = RunGraph(acceptability_, ids,
                              std::vector<int64_t>(ids.size(), 0), 1, n);
    return PositiveProbability(acceptability_, out.at(0));
  }

  double ScoreSop(std::string_view segment_a, std::string_view segment_b,
                  bool* truncated) const override {
    const SubwordTokenizer& tok = *sop_.tokenizer;
    std::vector<int64_t> a = tok.Encode(segment_a);
    std::vector<int64_t> b = tok.Encode(segment_b);
    const std::size_t budget = static_cast<std::size_t>(sop_.max_length - 3);
    if (a.size() + b.size() > budget) {
      if (truncated) *truncated = true;
      // Keep the units nearest the split: the tail of a, the head of b.
      const std::size_t half = budget / 2;
      std::size_t keep_a = half;
      if (a.size() <= half) {
        keep_a = a.size();
      } else if (b.size() <= budget - half) {
        keep_a = budget - b.size();
      }
      a.erase(a.begin(), a.end() - static_cast<std::ptrdiff_t>(keep_a));
      b.resize(budget - keep_a);
    }
    std::vector<int64_t> ids = {tok.cls_id()};
    ids.insert(ids.end(), a.begin(), a.end());
    ids.push_back(tok.sep_id());
    std::vector<int64_t> types(ids.size(), 0);
    ids.insert(ids.end(), b.begin(), b.end());
    ids.push_back(tok.sep_id());
    types.resize(ids.size(), 1);
    const int64_t n = static_cast<int64_t>(ids.size());
    const auto out = RunGraph(sop_, ids, types, 1, n);
    return PositiveProbability(sop_, out.at(0));
  }

 private:
  Graph mlm_;
  Graph acceptability_;
  Graph sop_;
  std::string fingerprint_;
};

std::string ReadAll(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kMissingFile, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

class BundleReader {
 public:
  explicit BundleReader(std::filesystem::path dir) : dir_(std::move(dir)) {
    const std::string text = ReadAll(dir_ / "manifest.json");
    fingerprint_ = Sha256Hex(text);
    try {
      manifest_ = json::parse(text);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParse, "manifest.json: " + std::string(e.what()));
    }
    if (!manifest_.is_object()) {
      throw Error(ErrorCode::kParse, "manifest.json is not an object");
    }
  }

  const json& Entry(const std::string& component) const {
    auto it = manifest_.find(component);
    if (it == manifest_.end()) {
      throw Error(ErrorCode::kMissingComponent,
                  "bundle manifest lacks component '" + component + "'");
    }
    if (!it->is_object()) {
      throw Error(ErrorCode::kParse, "manifest entry '" + component +
                                         "' is not an object");
    }
    return *it;
  }

  // Validates the entry and returns the verified file path.
  std::filesystem::path Verify(const std::string& component) const {
    const json& e = Entry(component);
    const auto field = [&](const char* name) -> const json& {
      auto it = e.find(name);
      if (it == e.end()) {
        throw Error(ErrorCode::kParse, "manifest entry '" + component +
                                           "' lacks '" + name + "'");
      }
      return *it;
    };
    const json& version = field("format_version");
    if (!version.is_number_integer() || version.get<int>() != kBundleFormatVersion) {
      throw Error(ErrorCode::kUnsupportedVersion,
                  "component '" + component + "' has format_version " +
                      version.dump() + "; supported: " +
                      std::to_string(kBundleFormatVersion));
    }
    const json& file = field("file");
    const json& sha = field("sha256");
    if (!file.is_string() || !sha.is_string()) {
      throw Error(ErrorCode::kParse, "manifest entry '" + component +
                                         "' has non-string file or sha256");
    }
    const std::filesystem::path path = dir_ / file.get<std::string>();
    if (!std::filesystem::is_regular_file(path)) {
      throw Error(ErrorCode::kMissingFile, "component '" + component +
                                               "' file not found: " + path.string());
    }
    const std::string actual = Sha256File(path);
    std::string expected = sha.get<std::string>();
    std::transform(expected.begin(), expected.end(), expected.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (actual != expected) {
      throw Error(ErrorCode::kIntegrity, "component '" + component +
                                             "' hash mismatch: expected " +
                                             expected + ", file has " + actual);
    }
    return path;
  }

  template <typename T>
  T Optional(const std::string& component, const char* name, T fallback) const {
    const json& e = Entry(component);
    auto it = e.find(name);
    if (it == e.end()) return fallback;
    try {
      return it->get<T>();
    } catch (const json::exception&) {
      throw Error(ErrorCode::kParse, "manifest entry '" + component +
                                         "' has a malformed '" + name + "'");
    }
  }

  const std::string& fingerprint() const { return fingerprint_; }

 private:
  std::filesystem::path dir_;
  json manifest_;
  std::string fingerprint_;
};

}  // namespace

std::shared_ptr<const Backend> LoadBundle(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::kMissingFile, "bundle directory not found: " + dir.string());
  }
  BundleReader reader(dir);
  // Presence of every component is checked before any file is touched.
  for (const char* c :
       {kMaskedLm, kAcceptabilityClassifier, kSopClassifier, kTokenizerVocab}) {
    reader.Entry(c);
  }

  std::map<std::string, std::shared_ptr<const SubwordTokenizer>> vocabularies;
  auto vocabulary = [&](const std::string& component) {
    auto it = vocabularies.find(component);
    if (it != vocabularies.end()) return it->second;
    const auto path = reader.Verify(component);
    SubwordTokenizer::Options options;
    options.lowercase = reader.Optional<bool>(component, "do_lower_case", false);
    auto tok = std::make_shared<const SubwordTokenizer>(
        SubwordTokenizer::FromFile(path, options));
    vocabularies.emplace(component, tok);
    return tok;
  };

  auto graph = [&](const std::string& component, int64_t positive_class) {
    const auto path = reader.Verify(component);
    Graph g{onnx::Model::LoadFile(path), nullptr};
    if (!g.model.HasInput("input_ids")) {
      throw Error(ErrorCode::kUnsupportedVersion,
                  "component '" + component + "' has no input_ids input");
    }
    g.attention_mask = g.model.HasInput("attention_mask");
    g.token_types = g.model.HasInput("token_type_ids");
    g.max_length = reader.Optional<int64_t>(component, "max_sequence_length",
                                            kDefaultMaxSequenceLength);
    if (g.max_length < 4) {
      throw Error(ErrorCode::kParse, "component '" + component +
                                         "' max_sequence_length below 4");
    }
    g.positive_class =
        reader.Optional<int64_t>(component, "positive_class", positive_class);
    if (g.positive_class < 0) {
      throw Error(ErrorCode::kParse, "negative positive_class");
    }
    g.tokenizer = vocabulary(reader.Optional<std::string>(component, "vocab",
                                                          kTokenizerVocab));
    return g;
  };

  vocabulary(kTokenizerVocab);
  Graph mlm = graph(kMaskedLm, 0);
  Graph acceptability = graph(kAcceptabilityClassifier, 1);
  Graph sop = graph(kSopClassifier, 0);
  return std::make_shared<OnnxBackend>(std::move(mlm), std::move(acceptability),
                                       std::move(sop), "bundle:" + reader.fingerprint());
}

}  // namespace gruen
