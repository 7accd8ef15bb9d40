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
#include <map>

#include "doctest.h"
#include "gruen/coherence.h"
#include "gruen/error.h"
#include "gruen/grammaticality.h"
#include "test_util.h"

namespace gruen {
namespace {

StubBackend Stub(double masked, double accept, double sop) {
  StubConfig c;
  c.masked_token_prob = masked;
  c.acceptability = accept;
  c.sop = sop;
  return StubBackend(c);
}

TEST_CASE("sentence likelihood under the constant stub") {
  CHECK(SentenceLikelihood(Stub(0.5, 0.5, 0.5), Sentence("The cat sat down.")) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(SentenceLikelihood(Stub(1.0, 0.5, 0.5), Sentence("The cat sat down.")) ==
        1.0);
  CHECK_THROWS_AS(SentenceLikelihood(Stub(0.5, 0.5, 0.5), Sentence("?!")), Error);
  CHECK(SentenceAcceptance(Stub(0.5, 0.9, 0.5), Sentence("Fine.")) == 0.9);
}

TEST_CASE("likelihood is the geometric mean of word probabilities") {
  StubConfig c;
  c.masked_hook = [](const std::vector<std::string>& words, std::size_t i) {
    return words[i] == "cat" ? 0.25 : 1.0;
  };
  // exp((ln 0.25 + 0 + 0 + 0) / 4) = 0.25^(1/4).
  CHECK(SentenceLikelihood(StubBackend(c), Sentence("The cat sat down.")) ==
        doctest::Approx(std::pow(0.25, 0.25)).epsilon(1e-14));
  // Surface forms reach the model with their case.
  std::vector<std::string> seen;
  c.masked_hook = [&](const std::vector<std::string>& words, std::size_t) {
    seen = words;
    return 1.0;
  };
  SentenceLikelihood(StubBackend(c), Sentence("\"The Cat,\" she said."));
  CHECK(seen == std::vector<std::string>{"The", "Cat", "she", "said"});
}

TEST_CASE("grammaticality score") {
  const GrammarConfig equal;
  SUBCASE("identity") {
    CHECK(GrammaticalityScore(Document("One. Two here."), Stub(1.0, 1.0, 0.5), equal)
              .score == 1.0);
  }
  SUBCASE("constant arithmetic") {
    for (const char* text : {"Short.", "A longer one. And another one here. Third."}) {
      CHECK(GrammaticalityScore(Document(text), Stub(0.4, 0.8, 0.5), equal).score ==
            doctest::Approx(0.6).epsilon(1e-14));
    }
  }
  SUBCASE("averaging over sentences") {
    StubConfig c;
    c.masked_hook = [](const std::vector<std::string>& w, std::size_t) {
      return w[0] == "Good" ? 1.0 : 1e-300;
    };
    c.acceptability_hook = [](std::string_view s) {
      return s.substr(0, 4) == "Good" ? 1.0 : 0.0;
    };
    const auto r = GrammaticalityScore(Document("Good one. Bad one."),
                                       StubBackend(c), equal);
    CHECK(r.score == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.sentences.size() == 2);
  }
  SUBCASE("permutation invariance and monotonicity") {
    std::map<std::string, double> accept = {{"A b.", 0.2}, {"C d.", 0.9}, {"E f.", 0.5}};
    StubConfig c;
    c.acceptability_hook = [&](std::string_view s) { return accept.at(std::string(s)); };
    const StubBackend stub(c);
    const double base =
        GrammaticalityScore(Document::FromSentences({"A b.", "C d.", "E f."}), stub, equal)
            .score;
    CHECK(GrammaticalityScore(Document::FromSentences({"E f.", "A b.", "C d."}), stub,
                              equal)
              .score == doctest::Approx(base).epsilon(1e-15));
    accept["A b."] = 0.3;
    CHECK(GrammaticalityScore(Document::FromSentences({"A b.", "C d.", "E f."}), stub,
                              equal)
              .score > base);
  }
  SUBCASE("empty document") {
    const auto r = GrammaticalityScore(Document(""), Stub(1.0, 1.0, 0.5), equal);
    CHECK(r.score == 0.0);
    CHECK(r.warnings == std::vector<std::string>{"empty output"});
  }
  SUBCASE("wordless sentences are excluded with a warning") {
    const auto r = GrammaticalityScore(Document::FromSentences({"...", "Fine words."}),
                                       Stub(0.4, 0.8, 0.5), equal);
    CHECK(r.score == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(r.warnings.size() == 1);
  }
}

TEST_CASE("split enumeration") {
  const auto splits = EnumerateSplits(Document::FromSentences({"A.", "B.", "C."}));
  REQUIRE(splits.size() == 2);
  CHECK(splits[0].prefix == "A.");
  CHECK(splits[0].suffix == "B. C.");
  CHECK(splits[1].prefix == "A. B.");
  CHECK(splits[1].suffix == "C.");
  CHECK(EnumerateSplits(Document("Only one.")).empty());
  CHECK(EnumerateSplits(Document("One. Two.")).size() == 1);
}

TEST_CASE("sentence-order loss") {
  const CoherenceConfig config;
  const Document doc("First part. Second part. Third part.");
  SUBCASE("constant one half gives ln 2") {
    CHECK(SopLoss(doc, Stub(0.5, 0.5, 0.5), config) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-15));
  }
  SUBCASE("perfect classifier gives zero") {
    StubConfig c;
    c.sop_hook = [](std::string_view a, std::string_view) {
      return a.substr(0, 5) == "First" ? 1.0 : 0.0;
    };
    CHECK(SopLoss(doc, StubBackend(c), config) == 0.0);
    CHECK(CoherenceScore(doc, StubBackend(c), config).score == 0.0);
  }
  SUBCASE("clamping keeps the loss finite") {
    const double loss = SopLoss(doc, Stub(0.5, 0.5, 0.0), config);
    CHECK(std::isfinite(loss));
    // Positives at 0 clamp to epsilon; negatives at 0 contribute nothing.
    CHECK(loss == doctest::Approx(-std::log(1e-6) / 2).epsilon(1e-12));
  }
  SUBCASE("mean of per-split losses") {
    StubConfig c;
    c.sop_hook = [](std::string_view a, std::string_view b) {
      return 0.1 + 0.8 * static_cast<double>(a.size()) /
                       static_cast<double>(a.size() + b.size());
    };
    const StubBackend stub(c);
    double sum = 0.0;
    for (const auto& s : EnumerateSplits(doc)) {
      const double pos = stub.SopProb(s.prefix, s.suffix);
      const double neg = stub.SopProb(s.suffix, s.prefix);
      sum += -std::log(pos) - std::log(1.0 - neg);
    }
    CHECK(SopLoss(doc, stub, config) == doctest::Approx(sum / 4).epsilon(1e-14));
  }
  SUBCASE("symmetric stub ignores sentence order") {
    const auto stub = Stub(0.5, 0.5, 0.3);
    CHECK(SopLoss(Document::FromSentences({"C c.", "B b.", "A a."}), stub, config) ==
          SopLoss(Document::FromSentences({"A a.", "B b.", "C c."}), stub, config));
  }
  SUBCASE("fewer than two sentences") {
    try {
      SopLoss(Document("Alone."), Stub(0.5, 0.5, 0.5), config);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kNotApplicable);
    }
    const auto r = CoherenceScore(Document("Alone."), Stub(0.5, 0.5, 0.5), config);
    CHECK(r.score == 0.0);
    CHECK_FALSE(r.applicable);
  }
  SUBCASE("score is the weighted negative loss") {
    const auto r = CoherenceScore(doc, Stub(0.5, 0.5, 0.5), config);
    CHECK(r.score == doctest::Approx(-0.1 * std::log(2.0)).epsilon(1e-15));
    CHECK(r.score <= 0.0);
  }
}

TEST_CASE("sub-scores from an exported bundle are well formed") {
  const auto backend = LoadBundle(testing::FixturePath("tiny_bundle"));
  const Document doc("The cat sat on the mat. The dog ran in the park.");
  const auto g = GrammaticalityScore(doc, *backend, GrammarConfig{});
  CHECK(g.score > 0.0);
  CHECK(g.score <= 1.0);
  for (const auto& s : g.sentences) {
    CHECK(s.likelihood > 0.0);
    CHECK(s.likelihood <= 1.0);
  }
  const auto c = CoherenceScore(doc, *backend, CoherenceConfig{});
  CHECK(c.applicable);
  CHECK(std::isfinite(c.score));
  CHECK(c.score <= 0.0);
}

}  // namespace
}  // namespace gruen
