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

#include "gruen/embeddings.h"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gruen/error.h"

namespace gruen {
namespace {

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool ParseCount(std::string_view s, std::size_t* out) {
  if (s.empty() || s.size() > 18) return false;
  std::size_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    v = v * 10 + static_cast<std::size_t>(c - '0');
  }
  *out = v;
  return true;
}

bool ParseFloat(std::string_view s, float* out) {
  const std::string buf(s);
  char* end = nullptr;
  errno = 0;
  const float v = std::strtof(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || errno == ERANGE || !std::isfinite(v)) {
    return false;
  }
  *out = v;
  return true;
}

[[noreturn]] void LineError(std::size_t line_no, const std::string& message) {
  throw Error(ErrorCode::kParse,
              "embeddings line " + std::to_string(line_no) + ": " + message);
}

}  // namespace

EmbeddingTable EmbeddingTable::Load(const std::filesystem::path& path,
                                    const std::unordered_set<std::string>* filter) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kMissingFile, "cannot open embeddings " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return Parse(buf.str(), filter);
}

EmbeddingTable EmbeddingTable::Parse(std::string_view content,
                                     const std::unordered_set<std::string>* filter) {
  EmbeddingTable table;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool seen_row = false;
  std::vector<float> vec;
  // The mean covers every distinct word in the file, filtered or not, so a
  // filtered table maps out-of-vocabulary words exactly like a full one.
  std::vector<double> sum;
  std::size_t distinct = 0;
  std::unordered_set<std::string> skipped;
  while (pos < content.size()) {
    std::size_t end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = content.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto fields = SplitFields(line);
    if (fields.empty()) continue;
    std::size_t count = 0;
    std::size_t dim = 0;
    if (!seen_row && fields.size() == 2 && ParseCount(fields[0], &count) &&
        ParseCount(fields[1], &dim)) {
      if (dim == 0) LineError(line_no, "header declares dimension 0");
      table.dimension_ = dim;
      seen_row = true;
      continue;
    }
    seen_row = true;
    if (fields.size() < 2) LineError(line_no, "expected a word and a vector");
    if (table.dimension_ == 0) table.dimension_ = fields.size() - 1;
    if (fields.size() - 1 != table.dimension_) {
      LineError(line_no, "expected " + std::to_string(table.dimension_) +
                             " values, found " + std::to_string(fields.size() - 1));
    }
    vec.resize(table.dimension_);
    for (std::size_t k = 0; k < table.dimension_; ++k) {
      if (!ParseFloat(fields[k + 1], &vec[k])) {
        LineError(line_no, "bad number '" + std::string(fields[k + 1]) + "'");
      }
    }
    std::string word(fields[0]);
    if (table.index_.count(word) != 0 || skipped.count(word) != 0) continue;
    sum.resize(table.dimension_, 0.0);
    for (std::size_t k = 0; k < table.dimension_; ++k) sum[k] += vec[k];
    ++distinct;
    if (filter != nullptr && filter->count(word) == 0) {
      skipped.insert(std::move(word));
      continue;
    }
    table.Add(std::move(word), vec);
  }
  if (table.dimension_ == 0) {
    throw Error(ErrorCode::kParse, "embeddings file contains no vectors");
  }
  table.mean_.assign(table.dimension_, 0.0f);
  for (std::size_t k = 0; k < table.dimension_ && distinct > 0; ++k) {
    table.mean_[k] = static_cast<float>(sum[k] / static_cast<double>(distinct));
  }
  return table;
}

EmbeddingTable EmbeddingTable::FromVectors(
    const std::vector<std::pair<std::string, std::vector<float>>>& rows) {
  EmbeddingTable table;
  for (const auto& [word, v] : rows) {
    if (table.dimension_ == 0) table.dimension_ = v.size();
    if (v.empty() || v.size() != table.dimension_) {
      throw Error(ErrorCode::kInvalidArgument,
                  "embedding for '" + word + "' has the wrong dimension");
    }
    if (table.index_.count(word) == 0) table.Add(word, v);
  }
  table.Finish();
  return table;
}

void EmbeddingTable::Add(std::string word, const std::vector<float>& v) {
  index_.emplace(word, words_.size());
  words_.push_back(std::move(word));
  data_.insert(data_.end(), v.begin(), v.end());
}

void EmbeddingTable::Finish() {
  mean_.assign(dimension_, 0.0f);
  if (words_.empty()) return;
  std::vector<double> sum(dimension_, 0.0);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    for (std::size_t k = 0; k < dimension_; ++k) sum[k] += data_[w * dimension_ + k];
  }
  for (std::size_t k = 0; k < dimension_; ++k) {
    mean_[k] = static_cast<float>(sum[k] / static_cast<double>(words_.size()));
  }
}

const float* EmbeddingTable::Find(std::string_view word) const {
  auto it = index_.find(std::string(word));
  return it == index_.end() ? nullptr : data_.data() + it->second * dimension_;
}

}  // namespace gruen
