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

#include "gruen/config.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gruen/error.h"
#include "json.hpp"

namespace gruen {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void Invalid(const std::string& message) {
  throw Error(ErrorCode::kInvalidArgument, "config: " + message);
}

void RequireFraction(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) Invalid(std::string(name) + " must lie in (0,1)");
}

void RequireNonNegative(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    Invalid(std::string(name) + " must be a finite value >= 0");
  }
}

// Reads the keys of one section, rejecting anything unexpected.
class Section {
 public:
  Section(const json& root, const char* name) : name_(name) {
    auto it = root.find(name);
    if (it == root.end()) return;
    if (!it->is_object()) {
      throw Error(ErrorCode::kParse, std::string("config section '") + name +
                                         "' must be an object");
    }
    node_ = &*it;
  }

  template <typename T>
  void Read(const char* key, T* out) {
    known_.push_back(key);
    if (node_ == nullptr) return;
    auto it = node_->find(key);
    if (it == node_->end()) return;
    if constexpr (std::is_same_v<T, double>) {
      if (!it->is_number()) Wrong(key, "a number");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!it->is_string()) Wrong(key, "a string");
    } else if constexpr (std::is_same_v<T, std::vector<std::string>>) {
      if (!it->is_array()) Wrong(key, "an array of strings");
      for (const auto& v : *it) {
        if (!v.is_string()) Wrong(key, "an array of strings");
      }
    }
    *out = it->get<T>();
  }

  void Finish() const {
    if (node_ == nullptr) return;
    for (const auto& [key, value] : node_->items()) {
      if (std::find(known_.begin(), known_.end(), key) == known_.end()) {
        throw Error(ErrorCode::kParse,
                    "unknown config key '" + std::string(name_) + "." + key + "'");
      }
    }
  }

 private:
  [[noreturn]] void Wrong(const char* key, const char* what) const {
    throw Error(ErrorCode::kParse, std::string("config key '") + name_ + "." +
                                       key + "' must be " + what);
  }

  const char* name_;
  const json* node_ = nullptr;
  std::vector<std::string> known_;
};

}  // namespace

const char* SimilarityTransformName(SimilarityTransform t) {
  return t == SimilarityTransform::kReciprocal ? "reciprocal" : "exponential";
}

const char* OovPolicyName(OovPolicy p) {
  return p == OovPolicy::kSkip ? "skip" : "mean_vector";
}

void MetricConfig::Validate() const {
  RequireNonNegative(grammar.likelihood_weight, "grammar.likelihood_weight");
  RequireNonNegative(grammar.acceptance_weight, "grammar.acceptance_weight");
  if (std::fabs(grammar.likelihood_weight + grammar.acceptance_weight - 1.0) >
      1e-9) {
    Invalid("grammar weights must sum to 1");
  }
  RequireFraction(redundancy.substring_threshold, "redundancy.substring_threshold");
  RequireFraction(redundancy.word_sequence_threshold,
                  "redundancy.word_sequence_threshold");
  RequireFraction(redundancy.edit_distance_threshold,
                  "redundancy.edit_distance_threshold");
  RequireFraction(redundancy.common_words_threshold,
                  "redundancy.common_words_threshold");
  RequireNonNegative(redundancy.penalty, "redundancy.penalty");
  RequireFraction(focus.similarity_threshold, "focus.similarity_threshold");
  RequireNonNegative(focus.penalty, "focus.penalty");
  RequireNonNegative(coherence.weight, "coherence.weight");
  if (!(coherence.epsilon > 0.0 && coherence.epsilon < 0.5)) {
    Invalid("coherence.epsilon must lie in (0,0.5)");
  }
  if (!(std::isfinite(combine.min) && std::isfinite(combine.max) &&
        combine.min < combine.max)) {
    Invalid("combine.min must be below combine.max");
  }
  if (!(stub_backend.masked_token_prob > 0.0 &&
        stub_backend.masked_token_prob <= 1.0)) {
    Invalid("stub_backend.masked_token_prob must lie in (0,1]");
  }
  for (double p : {stub_backend.acceptability, stub_backend.sop}) {
    if (!(p >= 0.0 && p <= 1.0)) Invalid("stub_backend probabilities must lie in [0,1]");
  }
}

MetricConfig MetricConfig::FromJson(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("config: ") + e.what());
  }
  if (!root.is_object()) throw Error(ErrorCode::kParse, "config must be an object");
  static const char* kSections[] = {"grammar",  "redundancy", "focus",
                                    "coherence", "combine",   "segmentation",
                                    "stub_backend"};
  for (const auto& [key, value] : root.items()) {
    if (std::find(std::begin(kSections), std::end(kSections), key) ==
        std::end(kSections)) {
      throw Error(ErrorCode::kParse, "unknown config section '" + key + "'");
    }
  }

  MetricConfig c;
  Section grammar(root, "grammar");
  grammar.Read("likelihood_weight", &c.grammar.likelihood_weight);
  grammar.Read("acceptance_weight", &c.grammar.acceptance_weight);
  grammar.Finish();

  Section red(root, "redundancy");
  red.Read("substring_threshold", &c.redundancy.substring_threshold);
  red.Read("word_sequence_threshold", &c.redundancy.word_sequence_threshold);
  red.Read("edit_distance_threshold", &c.redundancy.edit_distance_threshold);
  red.Read("common_words_threshold", &c.redundancy.common_words_threshold);
  red.Read("penalty", &c.redundancy.penalty);
  red.Finish();

  Section focus(root, "focus");
  focus.Read("similarity_threshold", &c.focus.similarity_threshold);
  focus.Read("penalty", &c.focus.penalty);
  std::string similarity = SimilarityTransformName(c.focus.similarity);
  focus.Read("similarity", &similarity);
  if (similarity == "reciprocal") {
    c.focus.similarity = SimilarityTransform::kReciprocal;
  } else if (similarity == "exponential") {
    c.focus.similarity = SimilarityTransform::kExponential;
  } else {
    throw Error(ErrorCode::kParse,
                "focus.similarity must be 'reciprocal' or 'exponential'");
  }
  std::string oov = OovPolicyName(c.focus.oov_policy);
  focus.Read("oov_policy", &oov);
  if (oov == "skip") {
    c.focus.oov_policy = OovPolicy::kSkip;
  } else if (oov == "mean_vector") {
    c.focus.oov_policy = OovPolicy::kMeanVector;
  } else {
    throw Error(ErrorCode::kParse, "focus.oov_policy must be 'skip' or 'mean_vector'");
  }
  focus.Read("stopwords", &c.focus.stopwords);
  focus.Finish();

  Section coh(root, "coherence");
  coh.Read("weight", &c.coherence.weight);
  coh.Read("epsilon", &c.coherence.epsilon);
  coh.Finish();

  Section comb(root, "combine");
  comb.Read("min", &c.combine.min);
  comb.Read("max", &c.combine.max);
  comb.Finish();

  Section seg(root, "segmentation");
  seg.Read("abbreviations_path", &c.segmentation.abbreviations_path);
  seg.Finish();

  Section stub(root, "stub_backend");
  stub.Read("masked_token_prob", &c.stub_backend.masked_token_prob);
  stub.Read("acceptability", &c.stub_backend.acceptability);
  stub.Read("sop", &c.stub_backend.sop);
  stub.Finish();

  c.Validate();
  return c;
}

MetricConfig MetricConfig::FromFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kMissingFile, "cannot open config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return FromJson(buf.str());
}

std::string MetricConfig::ToJson() const {
  ordered_json j;
  j["grammar"]["likelihood_weight"] = grammar.likelihood_weight;
  j["grammar"]["acceptance_weight"] = grammar.acceptance_weight;
  j["redundancy"]["substring_threshold"] = redundancy.substring_threshold;
  j["redundancy"]["word_sequence_threshold"] = redundancy.word_sequence_threshold;
  j["redundancy"]["edit_distance_threshold"] = redundancy.edit_distance_threshold;
  j["redundancy"]["common_words_threshold"] = redundancy.common_words_threshold;
  j["redundancy"]["penalty"] = redundancy.penalty;
  j["focus"]["similarity_threshold"] = focus.similarity_threshold;
  j["focus"]["penalty"] = focus.penalty;
  j["focus"]["similarity"] = SimilarityTransformName(focus.similarity);
  j["focus"]["oov_policy"] = OovPolicyName(focus.oov_policy);
  j["focus"]["stopwords"] = focus.stopwords;
  j["coherence"]["weight"] = coherence.weight;
  j["coherence"]["epsilon"] = coherence.epsilon;
  j["combine"]["min"] = combine.min;
  j["combine"]["max"] = combine.max;
  j["segmentation"]["abbreviations_path"] = segmentation.abbreviations_path;
  j["stub_backend"]["masked_token_prob"] = stub_backend.masked_token_prob;
  j["stub_backend"]["acceptability"] = stub_backend.acceptability;
  j["stub_backend"]["sop"] = stub_backend.sop;
  return j.dump(2) + "\n";
}

}  // namespace gruen
