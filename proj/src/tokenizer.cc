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

#include "gruen/tokenizer.h"

#include <fstream>

#include "gruen/error.h"
#include "gruen/text.h"

namespace gruen {
namespace {

constexpr char32_t kBoundary = 0x2581;  // ▁
constexpr std::size_t kMaxWordChars = 100;

// Base letters for U+00C0..U+017F; '.' keeps the character as is.
constexpr std::string_view kFoldLatin1 =
    "AAAAAA.CEEEEIIII.NOOOOO..UUUUY..aaaaaa.ceeeeiiii.nooooo..uuuuy.y";
constexpr std::string_view kFoldExtendedA =
    "AaAaAaCcCcCcCcDd..EeEeEeEeEeGgGgGgGgHh..IiIiIiIiI...JjKk.LlLlLl....NnNnNn"
    "...OoOoOo..RrRrRrSsSsSsSsTtTt..UuUuUuUuUuUuWwYyYZzZzZz.";

char32_t StripAccent(char32_t c) {
  if (c >= 0xC0 && c < 0x100) {
    const char base = kFoldLatin1[c - 0xC0];
    return base == '.' ? c : static_cast<char32_t>(base);
  }
  if (c >= 0x100 && c < 0x180) {
    const char base = kFoldExtendedA[c - 0x100];
    return base == '.' ? c : static_cast<char32_t>(base);
  }
  return c;
}

bool IsCombiningMark(char32_t c) { return c >= 0x300 && c <= 0x36F; }

bool IsControl(char32_t c) {
  if (c == U'\t' || c == U'\n' || c == U'\r') return false;
  if (c < 0x20 || (c >= 0x7F && c <= 0x9F)) return true;
  // Format characters that BERT's cleaner drops.
  return c == 0xAD || (c >= 0x200B && c <= 0x200F) ||
         (c >= 0x202A && c <= 0x202E) || (c >= 0x2060 && c <= 0x2064) ||
         c == 0xFEFF;
}

bool IsCjk(char32_t c) {
  return (c >= 0x4E00 && c <= 0x9FFF) || (c >= 0x3400 && c <= 0x4DBF) ||
         (c >= 0x20000 && c <= 0x2A6DF) || (c >= 0x2A700 && c <= 0x2B73F) ||
         (c >= 0x2B740 && c <= 0x2B81F) || (c >= 0x2B820 && c <= 0x2CEAF) ||
         (c >= 0xF900 && c <= 0xFAFF) || (c >= 0x2F800 && c <= 0x2FA1F);
}

}  // namespace

SubwordTokenizer SubwordTokenizer::FromFile(const std::filesystem::path& path,
                                            Options options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read vocabulary " + path.string());
  std::vector<std::string> pieces;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    pieces.push_back(line);
  }
  return FromPieces(std::move(pieces), options);
}

SubwordTokenizer SubwordTokenizer::FromPieces(std::vector<std::string> pieces,
                                              Options options) {
  SubwordTokenizer t;
  t.options_ = options;
  t.pieces_ = std::move(pieces);
  const std::string boundary = EncodeUtf8(std::u32string(1, kBoundary));
  std::size_t marked = 0;
  for (std::size_t i = 0; i < t.pieces_.size(); ++i) {
    const std::string& p = t.pieces_[i];
    // The first occurrence wins, as in the reference tokenizers.
    t.ids_.emplace(p, static_cast<int64_t>(i));
    if (p.rfind(boundary, 0) == 0) ++marked;
  }
  t.sentencepiece_style_ = marked * 4 >= t.pieces_.size() && marked > 0;
  auto find = [&t](std::initializer_list<const char*> names) -> int64_t {
    for (const char* n : names) {
      const int64_t id = t.IdOf(n);
      if (id >= 0) return id;
    }
    return -1;
  };
  t.cls_id_ = find({"[CLS]"});
  t.sep_id_ = find({"[SEP]"});
  t.mask_id_ = find({"[MASK]"});
  t.unk_id_ = find({"[UNK]", "<unk>"});
  const int64_t pad = find({"[PAD]", "<pad>"});
  t.pad_id_ = pad >= 0 ? pad : 0;
  if (t.cls_id_ < 0 || t.sep_id_ < 0 || t.mask_id_ < 0 || t.unk_id_ < 0) {
    throw Error(ErrorCode::kParse,
                "vocabulary lacks one of [CLS], [SEP], [MASK], [UNK]");
  }
  t.unk_piece_ = t.pieces_[t.unk_id_];
  return t;
}

int64_t SubwordTokenizer::IdOf(std::string_view piece) const {
  auto it = ids_.find(std::string(piece));
  return it == ids_.end() ? -1 : it->second;
}

std::vector<std::u32string> SubwordTokenizer::PreTokenize(
    std::string_view text) const {
  std::vector<std::u32string> words;
  std::u32string current;
  auto flush = [&] {
    if (!current.empty()) words.push_back(std::move(current));
    current.clear();
  };
  for (char32_t c : DecodeUtf8(text)) {
    if (c == 0 || c == 0xFFFD || IsControl(c)) continue;
    if (IsSpace(c)) {
      flush();
      continue;
    }
    if (options_.lowercase) {
      c = ToLower(StripAccent(c));
      if (IsCombiningMark(c)) continue;
    }
    if (!sentencepiece_style_ && (IsPunctuation(c) || IsCjk(c))) {
      flush();
      words.push_back(std::u32string(1, c));
      continue;
    }
    current.push_back(c);
  }
  flush();
  return words;
}

void SubwordTokenizer::MatchWord(const std::u32string& raw,
                                 std::vector<std::string>* out) const {
  if (raw.size() > kMaxWordChars) {
    out->push_back(unk_piece_);
    return;
  }
  std::u32string word = raw;
  if (sentencepiece_style_) word.insert(word.begin(), kBoundary);
  const std::size_t mark = out->size();
  std::size_t start = 0;
  while (start < word.size()) {
    std::size_t end = word.size();
    std::string found;
    while (end > start) {
      std::string candidate = EncodeUtf8(word.substr(start, end - start));
      if (start > 0 && !sentencepiece_style_) candidate = "##" + candidate;
      if (ids_.count(candidate)) {
        found = std::move(candidate);
        break;
      }
      --end;
    }
    if (found.empty()) {
      out->resize(mark);
      out->push_back(unk_piece_);
      return;
    }
    out->push_back(std::move(found));
    start = end;
  }
}

std::vector<std::string> SubwordTokenizer::Tokenize(std::string_view text) const {
  std::vector<std::string> pieces;
  for (const std::u32string& word : PreTokenize(text)) MatchWord(word, &pieces);
  return pieces;
}

std::vector<int64_t> SubwordTokenizer::ToIds(
    const std::vector<std::string>& pieces) const {
  std::vector<int64_t> ids;
  ids.reserve(pieces.size());
  for (const std::string& p : pieces) {
    const int64_t id = IdOf(p);
    ids.push_back(id >= 0 ? id : unk_id_);
  }
  return ids;
}

std::vector<int64_t> SubwordTokenizer::Encode(std::string_view text) const {
  return ToIds(Tokenize(text));
}

}  // namespace gruen
