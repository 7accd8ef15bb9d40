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

#ifndef GRUEN_SEGMENTATION_H_
#define GRUEN_SEGMENTATION_H_

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace gruen {

// Splits on whitespace, strips punctuation from both ends of every piece and
// lowercases the result. Pieces that are pure punctuation are dropped.
std::vector<std::string> TokenizeWords(std::string_view sentence_text);

// Same as TokenizeWords but keeps the original casing. These are the word
// forms handed to case-sensitive language models.
std::vector<std::string> SurfaceWords(std::string_view sentence_text);

class Sentence {
 public:
  explicit Sentence(std::string text);

  const std::string& text() const { return text_; }
  // Lowercased word tokens used by all feature comparisons.
  const std::vector<std::string>& tokens() const { return tokens_; }
  // Case-preserving word forms, parallel to tokens().
  const std::vector<std::string>& words() const { return words_; }
  // Length of text() in code points.
  std::size_t char_len() const { return char_len_; }
  std::size_t word_count() const { return tokens_.size(); }

 private:
  std::string text_;
  std::vector<std::string> tokens_;
  std::vector<std::string> words_;
  std::size_t char_len_;
};

// Rule-based sentence splitter. A boundary is placed after a run of
// sentence-final punctuation (. ! ? …), plus any closing quotes or brackets,
// when it is followed by whitespace and then an uppercase letter or digit
// (optionally behind opening quotes or brackets). A single period does not
// end a sentence when the word it terminates is a known abbreviation or a
// single capital letter.
class SentenceSplitter {
 public:
  // Uses the built-in English abbreviation list.
  SentenceSplitter();
  explicit SentenceSplitter(std::set<std::string> abbreviations);

  // Reads one abbreviation per line ("Mr.", "e.g."). Blank lines and lines
  // starting with '#' are ignored. Throws Error(kIo) if unreadable.
  static SentenceSplitter FromFile(const std::filesystem::path& path);

  static const std::set<std::string>& DefaultAbbreviations();

  std::vector<Sentence> Split(std::string_view text) const;
  std::vector<std::string> SplitText(std::string_view text) const;

  const std::set<std::string>& abbreviations() const { return abbreviations_; }

 private:
  bool IsAbbreviation(std::u32string_view word_with_period) const;

  // Lowercased entries, each ending in '.'.
  std::set<std::string> abbreviations_;
};

std::vector<Sentence> SplitSentences(std::string_view text);

class Document {
 public:
  Document(std::string raw_text, const SentenceSplitter& splitter);
  explicit Document(std::string raw_text);

  // Builds a document from already segmented sentences.
  static Document FromSentences(const std::vector<std::string>& sentences);

  const std::string& raw_text() const { return raw_text_; }
  const std::vector<Sentence>& sentences() const { return sentences_; }
  std::size_t size() const { return sentences_.size(); }
  bool empty() const { return sentences_.empty(); }

 private:
  Document() = default;

  std::string raw_text_;
  std::vector<Sentence> sentences_;
};

}  // namespace gruen

#endif  // GRUEN_SEGMENTATION_H_
