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

#include "gruen/segmentation.h"

#include <fstream>
#include <utility>

#include "gruen/error.h"
#include "gruen/text.h"

namespace gruen {
namespace {

bool IsTerminal(char32_t c) {
  return c == U'.' || c == U'!' || c == U'?' || c == U'…';
}

bool IsClosing(char32_t c) {
  switch (c) {
    case U'"':
    case U'\'':
    case U')':
    case U']':
    case U'}':
    case U'”':
    case U'’':
    case U'»':
      return true;
    default:
      return false;
  }
}

bool IsOpening(char32_t c) {
  switch (c) {
    case U'"':
    case U'\'':
    case U'(':
    case U'[':
    case U'{':
    case U'“':
    case U'‘':
    case U'«':
      return true;
    default:
      return false;
  }
}

std::vector<std::string> SplitWords(std::string_view sentence_text,
                                    bool lowercase) {
  std::vector<std::string> out;
  const std::u32string text = DecodeUtf8(sentence_text);
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    while (i < n && IsSpace(text[i])) ++i;
    std::size_t j = i;
    while (j < n && !IsSpace(text[j])) ++j;
    std::size_t b = i;
    std::size_t e = j;
    while (b < e && IsPunctuation(text[b])) ++b;
    while (e > b && IsPunctuation(text[e - 1])) --e;
    if (b < e) {
      std::u32string_view piece(text.data() + b, e - b);
      out.push_back(lowercase ? EncodeUtf8(ToLower(piece)) : EncodeUtf8(piece));
    }
    i = j;
  }
  return out;
}

const char* const kDefaultAbbreviations[] = {
    "Mr.",   "Mrs.",  "Ms.",   "Dr.",   "Prof.", "St.",   "vs.",   "etc.",
    "e.g.",  "i.e.",  "Inc.",  "Ltd.",  "Co.",   "Corp.", "Jr.",   "Sr.",
    "Jan.",  "Feb.",  "Mar.",  "Apr.",  "Jun.",  "Jul.",  "Aug.",  "Sep.",
    "Sept.", "Oct.",  "Nov.",  "Dec.",  "Gen.",  "Gov.",  "Sen.",  "Rep.",
    "Rev.",  "Lt.",   "Col.",  "Capt.", "Sgt.",  "Mt.",   "Ave.",  "Fig.",
    "U.S.",  "U.K.",  "U.N.",  "a.m.",  "p.m.",  "approx.", "Dept.", "Univ.",
};

}  // namespace

std::vector<std::string> TokenizeWords(std::string_view sentence_text) {
  return SplitWords(sentence_text, /*lowercase=*/true);
}

std::vector<std::string> SurfaceWords(std::string_view sentence_text) {
  return SplitWords(sentence_text, /*lowercase=*/false);
}

Sentence::Sentence(std::string text)
    : text_(std::move(text)),
      tokens_(TokenizeWords(text_)),
      words_(SurfaceWords(text_)),
      char_len_(Utf8Length(text_)) {}

SentenceSplitter::SentenceSplitter() : abbreviations_(DefaultAbbreviations()) {}

SentenceSplitter::SentenceSplitter(std::set<std::string> abbreviations) {
  for (const std::string& a : abbreviations) {
    std::string entry = ToLowerUtf8(Trim(a));
    if (entry.empty()) continue;
    if (entry.back() != '.') entry.push_back('.');
    abbreviations_.insert(std::move(entry));
  }
}

SentenceSplitter SentenceSplitter::FromFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIo,
                "cannot read abbreviation list " + path.string());
  }
  std::set<std::string> entries;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    entries.emplace(trimmed);
  }
  return SentenceSplitter(std::move(entries));
}

const std::set<std::string>& SentenceSplitter::DefaultAbbreviations() {
  static const std::set<std::string> kSet = [] {
    std::set<std::string> s;
    for (const char* a : kDefaultAbbreviations) s.insert(ToLowerUtf8(a));
    return s;
  }();
  return kSet;
}

bool SentenceSplitter::IsAbbreviation(std::u32string_view word) const {
  // word includes its final period.
  if (word.size() == 2 && IsUpper(word[0])) return true;  // initial: "J."
  return abbreviations_.count(EncodeUtf8(ToLower(word))) > 0;
}

std::vector<std::string> SentenceSplitter::SplitText(
    std::string_view text) const {
  std::vector<std::string> out;
  const std::u32string s = DecodeUtf8(text);
  const std::size_t n = s.size();

  auto emit = [&](std::size_t begin, std::size_t end) {
    while (begin < end && IsSpace(s[begin])) ++begin;
    while (end > begin && IsSpace(s[end - 1])) --end;
    if (begin < end) {
      out.push_back(EncodeUtf8(std::u32string_view(s.data() + begin, end - begin)));
    }
  };

  std::size_t start = 0;
  std::size_t i = 0;
  while (i < n) {
    if (!IsTerminal(s[i])) {
      ++i;
      continue;
    }
    std::size_t last = i;
    while (last + 1 < n && IsTerminal(s[last + 1])) ++last;
    std::size_t close = last + 1;
    while (close < n && IsClosing(s[close])) ++close;
    if (close >= n || !IsSpace(s[close])) {
      i = close;
      continue;
    }
    std::size_t next = close;
    while (next < n && IsSpace(s[next])) ++next;
    std::size_t probe = next;
    while (probe < n && IsOpening(s[probe])) ++probe;
    const bool starts_sentence =
        probe < n && (IsUpper(s[probe]) || IsDigit(s[probe]));
    bool boundary = starts_sentence;
    if (boundary && last == i && s[i] == U'.') {
      std::size_t word_begin = i;
      while (word_begin > start && !IsSpace(s[word_begin - 1])) --word_begin;
      while (word_begin < i && IsOpening(s[word_begin])) ++word_begin;
      if (IsAbbreviation(std::u32string_view(s.data() + word_begin,
                                             i + 1 - word_begin))) {
        boundary = false;
      }
    }
    if (boundary) {
      emit(start, close);
      start = next;
      i = next;
    } else {
      i = close;
    }
  }
  emit(start, n);
  return out;
}

std::vector<Sentence> SentenceSplitter::Split(std::string_view text) const {
  std::vector<Sentence> out;
  for (std::string& piece : SplitText(text)) out.emplace_back(std::move(piece));
  return out;
}

std::vector<Sentence> SplitSentences(std::string_view text) {
  static const SentenceSplitter kSplitter;
  return kSplitter.Split(text);
}

Document::Document(std::string raw_text, const SentenceSplitter& splitter)
    : raw_text_(std::move(raw_text)), sentences_(splitter.Split(raw_text_)) {}

Document::Document(std::string raw_text)
    : raw_text_(std::move(raw_text)), sentences_(SplitSentences(raw_text_)) {}

Document Document::FromSentences(const std::vector<std::string>& sentences) {
  Document doc;
  for (const std::string& s : sentences) {
    std::string_view trimmed = Trim(s);
    if (trimmed.empty()) continue;
    if (!doc.raw_text_.empty()) doc.raw_text_.push_back(' ');
    doc.raw_text_.append(trimmed);
    doc.sentences_.emplace_back(std::string(trimmed));
  }
  return doc;
}

}  // namespace gruen
