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

#ifndef GRUEN_BACKEND_H_
#define GRUEN_BACKEND_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace gruen {

// Neural scorers behind one interface. The public methods validate
// preconditions and outputs; implementations override the protected hooks.
// Every method is const and safe to call concurrently.
//
// `truncated`, when non-null, is set to true if the input had to be cut to
// the model's maximum sequence length (it is never reset to false).
class Backend {
 public:
  virtual ~Backend() = default;

  // log p(tokens[mask_index] | other tokens) in nats. Throws
  // Error(kInvalidArgument) if mask_index is out of range.
  double MaskedTokenLogProb(const std::vector<std::string>& tokens,
                            std::size_t mask_index,
                            bool* truncated = nullptr) const;
  // The same for every position, batched where the backend can.
  std::vector<double> MaskedTokenLogProbs(const std::vector<std::string>& tokens,
                                          bool* truncated = nullptr) const;
  // Probability that the sentence is acceptable. Throws
  // Error(kInvalidArgument) on empty input.
  double AcceptabilityProb(std::string_view sentence,
                           bool* truncated = nullptr) const;
  // Probability that segment_a correctly precedes segment_b.
  double SopProb(std::string_view segment_a, std::string_view segment_b,
                 bool* truncated = nullptr) const;

  // Stable identifier of the model state, recorded in run manifests.
  virtual std::string Fingerprint() const = 0;

 protected:
  virtual std::vector<double> ScoreMasked(
      const std::vector<std::string>& tokens,
      const std::vector<std::size_t>& positions, bool* truncated) const = 0;
  virtual double ScoreAcceptability(std::string_view sentence,
                                    bool* truncated) const = 0;
  virtual double ScoreSop(std::string_view segment_a,
                          std::string_view segment_b,
                          bool* truncated) const = 0;
};

// Deterministic backend whose outputs are fixed by configuration. Hooks, when
// set, take precedence over the constants.
struct StubConfig {
  double masked_token_prob = 0.5;
  double acceptability = 0.5;
  double sop = 0.5;
  std::function<double(const std::vector<std::string>&, std::size_t)>
      masked_hook;
  std::function<double(std::string_view)> acceptability_hook;
  std::function<double(std::string_view, std::string_view)> sop_hook;
};

class StubBackend : public Backend {
 public:
  explicit StubBackend(StubConfig config = {});

  std::string Fingerprint() const override;
  const StubConfig& config() const { return config_; }

 protected:
  std::vector<double> ScoreMasked(const std::vector<std::string>& tokens,
                                  const std::vector<std::size_t>& positions,
                                  bool* truncated) const override;
  double ScoreAcceptability(std::string_view sentence,
                            bool* truncated) const override;
  double ScoreSop(std::string_view segment_a, std::string_view segment_b,
                  bool* truncated) const override;

 private:
  StubConfig config_;
};

// Component names in manifest.json.
inline constexpr char kMaskedLm[] = "masked_lm";
inline constexpr char kAcceptabilityClassifier[] = "acceptability_classifier";
inline constexpr char kSopClassifier[] = "sop_classifier";
inline constexpr char kTokenizerVocab[] = "tokenizer_vocab";

// Manifest entry format understood by this build.
inline constexpr int kBundleFormatVersion = 1;
inline constexpr int64_t kDefaultMaxSequenceLength = 512;

// Loads an exported model bundle:
//
//   manifest.json  {component: {file, sha256, format_version, ...}}
//   *.onnx         masked_lm, acceptability_classifier, sop_classifier
//   vocab.txt      tokenizer_vocab
//
// Optional entry fields: max_sequence_length (graphs), positive_class
// (classifiers; defaults 1 for acceptability and 0 for sentence order),
// vocab (graphs; names another manifest component holding the vocabulary the
// graph was trained with), do_lower_case (vocabularies).
//
// Errors: Error(kMissingFile) for absent files, kParse for a malformed
// manifest, kMissingComponent naming the missing entry, kIntegrity on a
// hash mismatch, kUnsupportedVersion for unknown format versions and graphs
// the runtime cannot execute.
std::shared_ptr<const Backend> LoadBundle(const std::filesystem::path& dir);

}  // namespace gruen

#endif  // GRUEN_BACKEND_H_
