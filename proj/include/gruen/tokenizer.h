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

#ifndef GRUEN_TOKENIZER_H_
#define GRUEN_TOKENIZER_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gruen {

// Subword tokenizer over a one-piece-per-line vocabulary.
//
// Two vocabulary styles are recognized. WordPiece vocabularies (BERT) mark
// word-internal pieces with a "##" prefix; text is cleaned, split on
// whitespace and punctuation, and each word is matched greedily
// longest-prefix-first. Vocabularies whose pieces carry the U+2581 word
// boundary marker (exported SentencePiece models) are matched the same greedy
// way on "▁word" after a whitespace split. A word that cannot be covered
// becomes the unknown token.
class SubwordTokenizer {
 public:
  struct Options {
    // Lowercase and strip Latin diacritics before matching (uncased models).
    bool lowercase = false;
  };

  // Throws Error(kIo) if unreadable, Error(kParse) if a required special
  // token ([CLS], [SEP], [MASK], [UNK] or <unk>) is missing.
  static SubwordTokenizer FromFile(const std::filesystem::path& path,
                                   Options options);
  static SubwordTokenizer FromPieces(std::vector<std::string> pieces,
                                     Options options);

  std::vector<std::string> Tokenize(std::string_view text) const;
  std::vector<int64_t> Encode(std::string_view text) const;
  std::vector<int64_t> ToIds(const std::vector<std::string>& pieces) const;

  // -1 when absent.
  int64_t IdOf(std::string_view piece) const;

  int64_t cls_id() const { return cls_id_; }
  int64_t sep_id() const { return sep_id_; }
  int64_t mask_id() const { return mask_id_; }
  int64_t pad_id() const { return pad_id_; }
  int64_t unk_id() const { return unk_id_; }
  bool sentencepiece_style() const { return sentencepiece_style_; }
  std::size_t size() const { return pieces_.size(); }

 private:
  SubwordTokenizer() = default;

  std::vector<std::u32string> PreTokenize(std::string_view text) const;
  void MatchWord(const std::u32string& word,
                 std::vector<std::string>* out) const;

  Options options_;
  std::vector<std::string> pieces_;
  std::unordered_map<std::string, int64_t> ids_;
  bool sentencepiece_style_ = false;
  int64_t cls_id_ = -1;
  int64_t sep_id_ = -1;
  int64_t mask_id_ = -1;
  int64_t pad_id_ = 0;
  int64_t unk_id_ = -1;
  std::string unk_piece_;
};

}  // namespace gruen

#endif  // GRUEN_TOKENIZER_H_
