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

#include <cmath>
#include <thread>

#include "doctest.h"
#include "gruen/backend.h"
#include "gruen/error.h"
#include "gruen/hash.h"
#include "gruen/tokenizer.h"
#include "test_util.h"

namespace gruen {
namespace {

using testing::FixturePath;
using testing::ReadJson;
using testing::TempDir;

constexpr double kParityTolerance = 1e-3;

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::kInvalidArgument;
}

TEST_CASE("stub backend contract") {
  StubBackend stub;
  const std::vector<std::string> tokens = {"the", "cat", "sat"};
  CHECK(stub.MaskedTokenLogProb(tokens, 1) == doctest::Approx(std::log(0.5)));
  CHECK(stub.MaskedTokenLogProb(tokens, 1) == std::log(0.5));
  CHECK(CodeOf([&] { stub.MaskedTokenLogProb(tokens, 3); }) ==
        ErrorCode::kInvalidArgument);
  CHECK(CodeOf([&] { stub.AcceptabilityProb(""); }) ==
        ErrorCode::kInvalidArgument);
  CHECK(CodeOf([&] { stub.SopProb("a", "  "); }) == ErrorCode::kInvalidArgument);

  StubConfig config;
  config.acceptability = 0.9;
  config.sop = 1.0;
  config.masked_token_prob = 1.0;
  StubBackend tuned(config);
  CHECK(tuned.AcceptabilityProb("Anything.") == 0.9);
  CHECK(tuned.SopProb("a", "b") == 1.0);
  CHECK(tuned.MaskedTokenLogProbs(tokens) == std::vector<double>(3, 0.0));

  config.sop = 1.5;
  CHECK_THROWS_AS(StubBackend{config}, Error);
}

TEST_CASE("stub hooks are validated like real outputs") {
  StubConfig config;
  config.acceptability_hook = [](std::string_view) { return 1.25; };
  StubBackend stub(config);
  CHECK(CodeOf([&] { stub.AcceptabilityProb("x"); }) == ErrorCode::kInference);
}

TEST_CASE("sha256 of known strings") {
  CHECK(Sha256Hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(Sha256Hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("wordpiece tokenization matches the reference tokenizer") {
  const auto tok = SubwordTokenizer::FromFile(
      FixturePath("tiny_bundle/vocab.txt"), SubwordTokenizer::Options{});
  CHECK_FALSE(tok.sentencepiece_style());
  const auto parity = ReadJson(FixturePath("tiny_bundle/parity.json"));
  for (const auto& c : parity["tokenize"]) {
    const std::string text = c["text"];
    CAPTURE(text);
    CHECK(tok.Tokenize(text) == c["pieces"].get<std::vector<std::string>>());
    CHECK(tok.Encode(text) == c["ids"].get<std::vector<int64_t>>());
  }
}

TEST_CASE("lowercasing tokenizer folds case and diacritics") {
  const auto tok = SubwordTokenizer::FromPieces(
      {"[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]", "cafe", "naive", "!"},
      SubwordTokenizer::Options{true});
  CHECK(tok.Tokenize("CAFÉ Naïve!") ==
        std::vector<std::string>{"cafe", "naive", "!"});
  // Combining acute accent after a plain letter.
  CHECK(tok.Tokenize("cafe\xCC\x81") == std::vector<std::string>{"cafe"});
}

TEST_CASE("sentencepiece-style vocabularies match on word-boundary pieces") {
  const std::string b = "\xE2\x96\x81";  // ▁
  const auto tok = SubwordTokenizer::FromPieces(
      {"<pad>", "<unk>", "[CLS]", "[SEP]", "[MASK]", b + "the", b + "cat",
       b + "un", "believ", "able", b, "."},
      SubwordTokenizer::Options{true});
  CHECK(tok.sentencepiece_style());
  CHECK(tok.pad_id() == 0);
  CHECK(tok.unk_id() == 1);
  CHECK(tok.Tokenize("The unbelievable cat.") ==
        std::vector<std::string>{b + "the", b + "un", "believ", "able",
                                 b + "cat", "."});
  CHECK(tok.Tokenize("zebra") == std::vector<std::string>{"<unk>"});
}

TEST_CASE("vocabulary without special tokens is rejected") {
  CHECK(CodeOf([] {
          SubwordTokenizer::FromPieces({"a", "b"}, SubwordTokenizer::Options{});
        }) == ErrorCode::kParse);
}

class TinyBundle {
 public:
  TinyBundle() : backend_(LoadBundle(FixturePath("tiny_bundle"))) {}
  const Backend& backend() const { return *backend_; }

 private:
  std::shared_ptr<const Backend> backend_;
};

TEST_CASE("masked log-probabilities match the exporting framework") {
  TinyBundle bundle;
  const auto parity = ReadJson(FixturePath("tiny_bundle/parity.json"));
  for (const auto& c : parity["masked"]) {
    const auto words = c["words"].get<std::vector<std::string>>();
    const auto want = c["logprobs"].get<std::vector<double>>();
    CAPTURE(c["words"].dump());
    bool truncated = false;
    const auto got = bundle.backend().MaskedTokenLogProbs(words, &truncated);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(std::fabs(got[i] - want[i]) <= kParityTolerance);
      CHECK(got[i] <= 0.0);
    }
    CHECK(truncated == c["truncated"].get<bool>());
    // The single-position entry point agrees with the batched one up to
    // float reassociation in the batched matmul.
    CHECK(bundle.backend().MaskedTokenLogProb(words, words.size() - 1) ==
          doctest::Approx(got.back()).epsilon(1e-5));
  }
}

TEST_CASE("classifier probabilities match the exporting framework") {
  TinyBundle bundle;
  const auto parity = ReadJson(FixturePath("tiny_bundle/parity.json"));
  for (const auto& c : parity["acceptability"]) {
    CAPTURE(c["text"].get<std::string>());
    bool truncated = false;
    const double p = bundle.backend().AcceptabilityProb(
        c["text"].get<std::string>(), &truncated);
    CHECK(std::fabs(p - c["prob"].get<double>()) <= kParityTolerance);
    CHECK(truncated == c["truncated"].get<bool>());
  }
  for (const auto& c : parity["sop"]) {
    CAPTURE(c["a"].get<std::string>());
    bool truncated = false;
    const double p = bundle.backend().SopProb(c["a"].get<std::string>(),
                                              c["b"].get<std::string>(),
                                              &truncated);
    CHECK(std::fabs(p - c["prob"].get<double>()) <= kParityTolerance);
    CHECK(truncated == c["truncated"].get<bool>());
  }
}

TEST_CASE("bundle scoring is deterministic and thread-safe") {
  TinyBundle bundle;
  const std::vector<std::string> words = {"The", "cat", "sat", "on", "the", "mat"};
  const auto reference = bundle.backend().MaskedTokenLogProbs(words);
  const double accept = bundle.backend().AcceptabilityProb("The cat sat.");
  std::vector<std::thread> threads;
  std::atomic<int> mismatches{0};
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&] {
      for (int i = 0; i < 5; ++i) {
        if (bundle.backend().MaskedTokenLogProbs(words) != reference) ++mismatches;
        if (bundle.backend().AcceptabilityProb("The cat sat.") != accept) {
          ++mismatches;
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  CHECK(mismatches == 0);
}

// Copies the fixture bundle so that tests can damage it.
class BundleCopy {
 public:
  BundleCopy() {
    for (const auto& e :
         std::filesystem::directory_iterator(FixturePath("tiny_bundle"))) {
      std::filesystem::copy(e.path(), dir_.path() / e.path().filename());
    }
    manifest_ = ReadJson(dir_ / "manifest.json");
  }
  nlohmann::json& manifest() { return manifest_; }
  void Save() { testing::WriteFile(dir_ / "manifest.json", manifest_.dump(2)); }
  const std::filesystem::path& path() const { return dir_.path(); }

 private:
  TempDir dir_;
  nlohmann::json manifest_;
};

TEST_CASE("bundle load errors are distinct") {
  SUBCASE("intact copy loads") {
    BundleCopy copy;
    CHECK(LoadBundle(copy.path())->Fingerprint().rfind("bundle:", 0) == 0);
  }
  SUBCASE("missing directory") {
    CHECK(CodeOf([] { LoadBundle("/nonexistent/bundle"); }) ==
          ErrorCode::kMissingFile);
  }
  SUBCASE("missing component names it") {
    BundleCopy copy;
    copy.manifest().erase("sop_classifier");
    copy.Save();
    try {
      LoadBundle(copy.path());
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kMissingComponent);
      CHECK(std::string(e.what()).find("sop_classifier") != std::string::npos);
    }
  }
  SUBCASE("tampered file") {
    BundleCopy copy;
    testing::WriteFile(copy.path() / "vocab.txt",
                       testing::ReadFile(copy.path() / "vocab.txt") + "extra\n");
    CHECK(CodeOf([&] { LoadBundle(copy.path()); }) == ErrorCode::kIntegrity);
  }
  SUBCASE("missing file") {
    BundleCopy copy;
    std::filesystem::remove(copy.path() / "sop.onnx");
    CHECK(CodeOf([&] { LoadBundle(copy.path()); }) == ErrorCode::kMissingFile);
  }
  SUBCASE("unsupported format version") {
    BundleCopy copy;
    copy.manifest()["masked_lm"]["format_version"] = 2;
    copy.Save();
    CHECK(CodeOf([&] { LoadBundle(copy.path()); }) ==
          ErrorCode::kUnsupportedVersion);
  }
  SUBCASE("malformed manifest") {
    BundleCopy copy;
    testing::WriteFile(copy.path() / "manifest.json", "{not json");
    CHECK(CodeOf([&] { LoadBundle(copy.path()); }) == ErrorCode::kParse);
  }
  SUBCASE("vocabulary override must exist") {
    BundleCopy copy;
    copy.manifest()["sop_classifier"]["vocab"] = "sop_vocab";
    copy.Save();
    CHECK(CodeOf([&] { LoadBundle(copy.path()); }) ==
          ErrorCode::kMissingComponent);
    copy.manifest()["sop_vocab"] = copy.manifest()["tokenizer_vocab"];
    copy.Save();
    CHECK(LoadBundle(copy.path()) != nullptr);
  }
}

}  // namespace
}  // namespace gruen
