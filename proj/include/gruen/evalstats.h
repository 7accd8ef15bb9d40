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

#ifndef GRUEN_EVALSTATS_H_
#define GRUEN_EVALSTATS_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gruen/backend.h"
#include "gruen/config.h"
#include "gruen/embeddings.h"

namespace gruen {

// All coefficients throw Error(kInvalidArgument) for mismatched lengths or
// fewer than two points, and Error(kUndefinedCorrelation) when either input
// is constant.
double Pearson(const std::vector<double>& x, const std::vector<double>& y);
// Pearson over mid-ranks.
double Spearman(const std::vector<double>& x, const std::vector<double>& y);
// Tau-b in O(n log n) by merge-sort inversion counting.
double KendallTauB(const std::vector<double>& x, const std::vector<double>& y);
// Tau-b by counting all pairs; the reference for the fast version.
double KendallTauBPairwise(const std::vector<double>& x,
                           const std::vector<double>& y);
// 1-based ranks; tied values share the mean of their positions.
std::vector<double> MidRanks(const std::vector<double>& x);

struct WilliamsResult {
  double t = 0.0;
  double p = 0.0;
  int degrees_of_freedom = 0;
};

// Tests whether variable 1 correlates more with variable 2 than with
// variable 3, given the correlation r23 between 2 and 3. The p-value is
// P(T > t) with n - 3 degrees of freedom, or P(|T| > |t|) when two-sided.
// When r12 == r13 the statistic is 0 with p = 0.5 (1 two-sided) whatever
// r23 is. Errors: kInvalidArgument for n < 4, correlations outside (-1, 1),
// or an inadmissible triple.
WilliamsResult WilliamsTest(double r12, double r13, double r23, int n,
                            bool two_sided = false);

struct JudgmentRecord {
  std::string instance_id;
  std::optional<std::string> system_id;
  // Absent keys are missing values.
  std::map<std::string, double> human;
  std::map<std::string, double> metrics;
  // 1-based line in the source file; 0 when not read from a file.
  std::size_t line = 0;

  bool operator==(const JudgmentRecord& o) const {
    return instance_id == o.instance_id && system_id == o.system_id &&
           human == o.human && metrics == o.metrics;
  }
};

enum class JudgmentFormat { kAuto, kCsv, kJsonl };

// Columns: instance_id, optional system_id, human:<dimension>...,
// metric:<name>... (at least one of each). Empty cells and JSON nulls are
// missing values. kAuto picks JSONL for ".jsonl"/".json" and CSV otherwise.
// Errors: kMissingFile; kParse naming the line for malformed rows,
// non-finite or unparseable numbers and missing columns; kDuplicateId naming
// both lines.
std::vector<JudgmentRecord> LoadJudgments(const std::filesystem::path& path,
                                          JudgmentFormat format = JudgmentFormat::kAuto);
std::vector<JudgmentRecord> ParseJudgments(std::string_view content,
                                           JudgmentFormat format);

enum class CorrelationLevel { kInstance, kSystem };
const char* CorrelationLevelName(CorrelationLevel level);

struct CorrelationCell {
  std::string metric;
  std::string dimension;
  // Records carrying both values.
  std::size_t n = 0;
  double spearman = 0.0;
  double kendall = 0.0;
  double pearson = 0.0;
  // Set when the coefficients are undefined (constant input, n < 2); the
  // coefficients are then NaN.
  std::string note;
};

struct CorrelationReport {
  CorrelationLevel level = CorrelationLevel::kInstance;
  std::vector<CorrelationCell> cells;
};

// One record per system holding the mean of each metric and dimension over
// that system's records. Errors: kInvalidArgument if any record lacks a
// system id or there are fewer than two systems.
std::vector<JudgmentRecord> SystemMeans(const std::vector<JudgmentRecord>& records);

// Correlates every requested metric with every requested dimension; empty
// lists select all columns present. Missing values drop the record for that
// cell only. Errors: kInvalidArgument naming an unknown column.
CorrelationReport Correlate(const std::vector<JudgmentRecord>& records,
                            CorrelationLevel level,
                            const std::vector<std::string>& dimensions = {},
                            const std::vector<std::string>& metrics = {});

std::string ReportToJson(const CorrelationReport& report);
CorrelationReport ReportFromJson(std::string_view json_text);
// Aligned columns with three decimals.
std::string FormatReport(const CorrelationReport& report);

enum class CoefficientKind { kPearson, kSpearman };

struct WilliamsComparison {
  double r12 = 0.0;  // human vs metric a
  double r13 = 0.0;  // human vs metric b
  double r23 = 0.0;  // metric a vs metric b
  std::size_t n = 0;
  WilliamsResult result;
};

// Runs the Williams test on records carrying all three values. Spearman
// mode ranks each column first and applies Pearson to the ranks.
WilliamsComparison CompareMetrics(const std::vector<JudgmentRecord>& records,
                                  const std::string& metric_a,
                                  const std::string& metric_b,
                                  const std::string& dimension,
                                  CoefficientKind kind, bool two_sided = false);

// One axis of a configuration grid, addressed as "section.key".
struct GridAxis {
  std::string key;
  std::vector<double> values;
};

struct TuneResult {
  MetricConfig best;
  double rho = 0.0;
  // Position of the best point in grid order.
  std::size_t index = 0;
  // Another grid point reached the same correlation.
  bool tie = false;
  std::vector<double> rhos;
};

// Scores every text under each grid point (first axis varies slowest) and
// keeps the point whose scores have the highest Spearman correlation with
// `dimension`; the earliest wins ties. Errors: kInvalidArgument for an empty
// grid or no usable records, kParse for unknown keys.
TuneResult TuneConfig(const std::vector<JudgmentRecord>& records,
                      const std::unordered_map<std::string, std::string>& texts,
                      const std::string& dimension,
                      const std::vector<GridAxis>& grid, const MetricConfig& base,
                      std::shared_ptr<const Backend> backend,
                      std::shared_ptr<const EmbeddingTable> embeddings,
                      int threads = 1);

}  // namespace gruen

#endif  // GRUEN_EVALSTATS_H_
