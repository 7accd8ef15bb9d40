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

#include "gruen/backend.h"

#include <cmath>
#include <cstdio>

#include "gruen/error.h"
#include "gruen/text.h"

namespace gruen {
namespace {

void RequireText(std::string_view text, const char* what) {
  if (Trim(text).empty()) {
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + " is empty");
  }
}

double CheckProbability(double p, const char* what) {
  if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
    throw Error(ErrorCode::kInference,
                std::string(what) + " outside [0,1]: " + std::to_string(p));
  }
  return p;
}

double CheckLogProb(double lp) {
  if (!std::isfinite(lp)) {
    throw Error(ErrorCode::kInference, "non-finite masked log-probability");
  }
  // Rounding in the log-softmax can leave a tiny positive residue.
  return std::min(lp, 0.0);
}

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

double Backend::MaskedTokenLogProb(const std::vector<std::string>& tokens,
                                   std::size_t mask_index,
                                   bool* truncated) const {
  if (mask_index >= tokens.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "mask index " + std::to_string(mask_index) +
                    " out of range for " + std::to_string(tokens.size()) +
                    " tokens");
  }
  return CheckLogProb(ScoreMasked(tokens, {mask_index}, truncated).at(0));
}

std::vector<double> Backend::MaskedTokenLogProbs(
    const std::vector<std::string>& tokens, bool* truncated) const {
  if (tokens.empty()) return {};
  std::vector<std::size_t> positions(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) positions[i] = i;
  std::vector<double> out = ScoreMasked(tokens, positions, truncated);
  if (out.size() != tokens.size()) {
    throw Error(ErrorCode::kInference, "backend returned a short batch");
  }
  for (double& lp : out) lp = CheckLogProb(lp);
  return out;
}

double Backend::AcceptabilityProb(std::string_view sentence,
                                  bool* truncated) const {
  RequireText(sentence, "sentence");
  return CheckProbability(ScoreAcceptability(sentence, truncated),
                          "acceptability probability");
}

double Backend::SopProb(std::string_view segment_a, std::string_view segment_b,
                        bool* truncated) const {
  RequireText(segment_a, "first segment");
  RequireText(segment_b, "second segment");
  return CheckProbability(ScoreSop(segment_a, segment_b, truncated),
                          "sentence-order probability");
}

StubBackend::StubBackend(StubConfig config) : config_(std::move(config)) {
  if (!(config_.masked_token_prob > 0.0 && config_.masked_token_prob <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "stub masked_token_prob must lie in (0,1]");
  }
  for (double p : {config_.acceptability, config_.sop}) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "stub probabilities must lie in [0,1]");
    }
  }
}

std::string StubBackend::Fingerprint() const {
  std::string f = "stub:" + Num(config_.masked_token_prob) + ":" +
                  Num(config_.acceptability) + ":" + Num(config_.sop);
  if (config_.masked_hook || config_.acceptability_hook || config_.sop_hook) {
    f += ":hooks";
  }
  return f;
}

std::vector<double> StubBackend::ScoreMasked(
    const std::vector<std::string>& tokens,
    const std::vector<std::size_t>& positions, bool*) const {
  std::vector<double> out;
  out.reserve(positions.size());
  for (std::size_t i : positions) {
    const double p = config_.masked_hook ? config_.masked_hook(tokens, i)
                                         : config_.masked_token_prob;
    out.push_back(std::log(p));
  }
  return out;
}

double StubBackend::ScoreAcceptability(std::string_view sentence, bool*) const {
  return config_.acceptability_hook ? config_.acceptability_hook(sentence)
                                    : config_.acceptability;
}

double StubBackend::ScoreSop(std::string_view segment_a,
                             std::string_view segment_b, bool*) const {
  return config_.sop_hook ? config_.sop_hook(segment_a, segment_b)
                          : config_.sop;
}

}  // namespace gruen
