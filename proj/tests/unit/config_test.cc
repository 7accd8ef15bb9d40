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

#include "doctest.h"
#include "gruen/config.h"
#include "gruen/error.h"
#include "test_util.h"

namespace gruen {
namespace {

ErrorCode CodeOf(std::string_view json_text) {
  try {
    MetricConfig::FromJson(json_text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::kInvalidArgument;
}

TEST_CASE("defaults") {
  const MetricConfig c;
  CHECK(c.grammar.likelihood_weight == 0.5);
  CHECK(c.redundancy.substring_threshold == 0.8);
  CHECK(c.redundancy.edit_distance_threshold == 0.6);
  CHECK(c.redundancy.penalty == 0.1);
  CHECK(c.focus.similarity_threshold == 0.05);
  CHECK(c.focus.similarity == SimilarityTransform::kReciprocal);
  CHECK(c.focus.stopwords.empty());
  CHECK(c.coherence.weight == 0.1);
  CHECK_NOTHROW(c.Validate());
}

TEST_CASE("json round trip") {
  MetricConfig c;
  c.focus.similarity = SimilarityTransform::kExponential;
  c.focus.oov_policy = OovPolicy::kMeanVector;
  c.focus.stopwords = {"the", "a"};
  c.redundancy.penalty = 0.25;
  c.segmentation.abbreviations_path = "/tmp/abbr.txt";
  const std::string text = c.ToJson();
  CHECK(MetricConfig::FromJson(text).ToJson() == text);
  CHECK(MetricConfig::FromJson("{}").ToJson() == MetricConfig{}.ToJson());
  const MetricConfig partial =
      MetricConfig::FromJson(R"({"coherence": {"weight": 0.3}})");
  CHECK(partial.coherence.weight == 0.3);
  CHECK(partial.coherence.epsilon == 1e-6);
}

TEST_CASE("malformed configs are rejected") {
  CHECK(CodeOf("{not json") == ErrorCode::kParse);
  CHECK(CodeOf("[]") == ErrorCode::kParse);
  CHECK(CodeOf(R"({"extra": {}})") == ErrorCode::kParse);
  CHECK(CodeOf(R"({"focus": {"treshold": 0.1}})") == ErrorCode::kParse);
  CHECK(CodeOf(R"({"focus": 3})") == ErrorCode::kParse);
  CHECK(CodeOf(R"({"focus": {"penalty": "high"}})") == ErrorCode::kParse);
  CHECK(CodeOf(R"({"focus": {"similarity": "cosine"}})") == ErrorCode::kParse);
  CHECK(CodeOf(R"({"focus": {"stopwords": [1]}})") == ErrorCode::kParse);
}

TEST_CASE("out of range values are rejected") {
  CHECK(CodeOf(R"({"grammar": {"likelihood_weight": 0.7}})") ==
        ErrorCode::kInvalidArgument);
  CHECK(CodeOf(R"({"redundancy": {"substring_threshold": 1.0}})") ==
        ErrorCode::kInvalidArgument);
  CHECK(CodeOf(R"({"redundancy": {"penalty": -0.1}})") == ErrorCode::kInvalidArgument);
  CHECK(CodeOf(R"({"coherence": {"epsilon": 0}})") == ErrorCode::kInvalidArgument);
  CHECK(CodeOf(R"({"combine": {"min": 1, "max": 1}})") == ErrorCode::kInvalidArgument);
  CHECK(CodeOf(R"({"stub_backend": {"sop": 1.5}})") == ErrorCode::kInvalidArgument);
}

TEST_CASE("file loading") {
  testing::TempDir dir;
  testing::WriteFile(dir / "c.json", R"({"focus": {"penalty": 0.2}})");
  CHECK(MetricConfig::FromFile(dir / "c.json").focus.penalty == 0.2);
  try {
    MetricConfig::FromFile(dir / "nope.json");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMissingFile);
  }
}

}  // namespace
}  // namespace gruen
