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

#ifndef GRUEN_EMBEDDINGS_H_
#define GRUEN_EMBEDDINGS_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace gruen {

// Immutable word -> vector map read from the word2vec text format.
class EmbeddingTable {
 public:
  // Reads "word f1 ... fd" lines. A leading "<count> <dim>" line is detected
  // and skipped. The dimension is taken from the header when present and
  // otherwise from the first row. When `filter` is non-null only listed words
  // are kept. The first occurrence of a repeated word wins.
  // Errors: kMissingFile if unreadable; kParse naming the line for a wrong
  // arity or a bad number, and for a file without vectors.
  static EmbeddingTable Load(const std::filesystem::path& path,
                             const std::unordered_set<std::string>* filter = nullptr);
  static EmbeddingTable Parse(std::string_view content,
                              const std::unordered_set<std::string>* filter = nullptr);

  // All vectors must have the same non-zero dimension (kInvalidArgument).
  static EmbeddingTable FromVectors(
      const std::vector<std::pair<std::string, std::vector<float>>>& rows);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }

  // Pointer to dimension() floats, or nullptr when the word has no vector.
  const float* Find(std::string_view word) const;
  // Component-wise mean of every distinct word's vector in the source,
  // including words dropped by a load filter.
  const std::vector<float>& mean_vector() const { return mean_; }
  const std::vector<std::string>& words() const { return words_; }

 private:
  void Add(std::string word, const std::vector<float>& v);
  void Finish();

  std::size_t dimension_ = 0;
  std::vector<std::string> words_;
  std::vector<float> data_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<float> mean_;
};

}  // namespace gruen

#endif  // GRUEN_EMBEDDINGS_H_
