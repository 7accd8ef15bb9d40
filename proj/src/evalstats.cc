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

#include "gruen/evalstats.h"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include <boost/math/distributions/students_t.hpp>

#include "gruen/error.h"
#include "gruen/pipeline.h"
#include "gruen/text.h"
#include "json.hpp"

namespace gruen {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr char kHumanPrefix[] = "human:";
constexpr char kMetricPrefix[] = "metric:";

void CheckPair(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "correlation inputs differ in length (" + std::to_string(x.size()) +
                    " vs " + std::to_string(y.size()) + ")");
  }
  if (x.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "correlation needs at least 2 points");
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
      throw Error(ErrorCode::kInvalidArgument, "correlation input is not finite");
    }
  }
}

[[noreturn]] void Constant() {
  throw Error(ErrorCode::kUndefinedCorrelation,
              "undefined correlation: constant input");
}

// Merge sort of v[lo, hi) counting strictly decreasing pairs.
std::int64_t SortCountingSwaps(std::vector<double>& v, std::vector<double>& buf,
                               std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t swaps = SortCountingSwaps(v, buf, lo, mid) + SortCountingSwaps(v, buf, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      swaps += static_cast<std::int64_t>(mid - i);
      buf[k++] = v[j++];
    } else {
      buf[k++] = v[i++];
    }
  }
  while (i < mid) buf[k++] = v[i++];
  while (j < hi) buf[k++] = v[j++];
  std::copy(buf.begin() + lo, buf.begin() + hi, v.begin() + lo);
  return swaps;
}

// Sum over runs of equal adjacent values of run * (run - 1) / 2.
template <typename Eq>
std::int64_t TiedPairs(std::size_t n, Eq equal) {
  std::int64_t total = 0;
  std::int64_t run = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    if (i < n && equal(i - 1, i)) {
      ++run;
    } else {
      total += run * (run - 1) / 2;
      run = 1;
    }
  }
  return total;
}

double TauB(std::int64_t numerator, std::int64_t untied_x, std::int64_t untied_y) {
  if (untied_x == 0 || untied_y == 0) Constant();
  return static_cast<double>(numerator) /
         std::sqrt(static_cast<double>(untied_x) * static_cast<double>(untied_y));
}

double ParseNumber(std::string_view text, std::size_t line, const std::string& column) {
  const std::string s(Trim(text));
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE ||
      !std::isfinite(v)) {
    throw Error(ErrorCode::kParse, "judgments line " + std::to_string(line) +
                                       ": bad value '" + s + "' in column " + column);
  }
  return v;
}

struct CsvRow {
  std::vector<std::string> fields;
  std::size_t line = 0;
};

std::vector<CsvRow> ParseCsv(std::string_view content) {
  std::vector<CsvRow> rows;
  std::size_t line = 1;
  std::size_t i = 0;
  const std::size_t n = content.size();
  while (i < n) {
    CsvRow row;
    row.line = line;
    std::string field;
    bool row_done = false;
    while (!row_done) {
      field.clear();
      if (i < n && content[i] == '"') {
        const std::size_t open_line = line;
        ++i;
        while (true) {
          if (i >= n) {
            throw Error(ErrorCode::kParse, "judgments line " + std::to_string(open_line) +
                                               ": unterminated quoted field");
          }
          if (content[i] == '"') {
            if (i + 1 < n && content[i + 1] == '"') {
              field += '"';
              i += 2;
              continue;
            }
            ++i;
            break;
          }
          if (content[i] == '\n') ++line;
          field += content[i++];
        }
        if (i < n && content[i] != ',' && content[i] != '\n' && content[i] != '\r') {
          throw Error(ErrorCode::kParse, "judgments line " + std::to_string(line) +
                                             ": text after closing quote");
        }
      } else {
        while (i < n && content[i] != ',' && content[i] != '\n' && content[i] != '\r') {
          if (content[i] == '"') {
            throw Error(ErrorCode::kParse, "judgments line " + std::to_string(line) +
                                               ": stray quote in unquoted field");
          }
          field += content[i++];
        }
      }
      row.fields.push_back(field);
      if (i < n && content[i] == ',') {
        ++i;
        continue;
      }
      if (i < n && content[i] == '\r') ++i;
      if (i < n && content[i] == '\n') ++i;
      ++line;
      row_done = true;
    }
    const bool blank = row.fields.size() == 1 && row.fields[0].empty();
    if (!blank) rows.push_back(std::move(row));
  }
  return rows;
}

bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

void RequireColumns(bool has_id, bool has_human, bool has_metric) {
  if (!has_id) throw Error(ErrorCode::kParse, "judgments lack an instance_id column");
  if (!has_human) throw Error(ErrorCode::kParse, "judgments lack a human:<dimension> column");
  if (!has_metric) throw Error(ErrorCode::kParse, "judgments lack a metric:<name> column");
}

std::vector<JudgmentRecord> FromCsv(std::string_view content) {
  const auto rows = ParseCsv(content);
  if (rows.empty()) throw Error(ErrorCode::kParse, "judgments file is empty");
  const auto& header = rows[0].fields;
  bool has_id = false, has_human = false, has_metric = false;
  for (const auto& h : header) {
    has_id |= h == "instance_id";
    has_human |= StartsWith(h, kHumanPrefix) && h.size() > 6;
    has_metric |= StartsWith(h, kMetricPrefix) && h.size() > 7;
  }
  RequireColumns(has_id, has_human, has_metric);
  std::vector<JudgmentRecord> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.fields.size() != header.size()) {
      throw Error(ErrorCode::kParse, "judgments line " + std::to_string(row.line) +
                                         ": expected " + std::to_string(header.size()) +
                                         " fields, found " +
                                         std::to_string(row.fields.size()));
    }
    JudgmentRecord rec;
    rec.line = row.line;
    for (std::size_t c = 0; c < header.size(); ++c) {
      const std::string& h = header[c];
      const std::string& v = row.fields[c];
      if (h == "instance_id") {
        rec.instance_id = v;
      } else if (h == "system_id") {
        if (!v.empty()) rec.system_id = v;
      } else if (StartsWith(h, kHumanPrefix)) {
        if (!Trim(v).empty()) rec.human[h.substr(6)] = ParseNumber(v, row.line, h);
      } else if (StartsWith(h, kMetricPrefix)) {
        if (!Trim(v).empty()) rec.metrics[h.substr(7)] = ParseNumber(v, row.line, h);
      }
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<JudgmentRecord> FromJsonl(std::string_view content) {
  std::vector<JudgmentRecord> out;
  bool has_human = false, has_metric = false;
  std::size_t line = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    const std::string_view text = Trim(content.substr(pos, end - pos));
    pos = end + 1;
    ++line;
    if (text.empty()) continue;
    const std::string where = "judgments line " + std::to_string(line);
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParse, where + ": " + e.what());
    }
    if (!j.is_object()) throw Error(ErrorCode::kParse, where + ": expected an object");
    JudgmentRecord rec;
    rec.line = line;
    auto id = j.find("instance_id");
    if (id == j.end()) RequireColumns(false, true, true);
    if (!id->is_string()) throw Error(ErrorCode::kParse, where + ": instance_id must be a string");
    rec.instance_id = id->get<std::string>();
    for (const auto& [key, value] : j.items()) {
      if (key == "system_id") {
        if (value.is_null()) continue;
        if (!value.is_string()) {
          throw Error(ErrorCode::kParse, where + ": system_id must be a string");
        }
        rec.system_id = value.get<std::string>();
        continue;
      }
      const bool human = StartsWith(key, kHumanPrefix) && key.size() > 6;
      const bool metric = StartsWith(key, kMetricPrefix) && key.size() > 7;
      if (!human && !metric) continue;
      has_human |= human;
      has_metric |= metric;
      if (value.is_null()) continue;
      if (!value.is_number() || !std::isfinite(value.get<double>())) {
        throw Error(ErrorCode::kParse, where + ": bad value in column " + key);
      }
      if (human) {
        rec.human[key.substr(6)] = value.get<double>();
      } else {
        rec.metrics[key.substr(7)] = value.get<double>();
      }
    }
    out.push_back(std::move(rec));
  }
  if (out.empty()) throw Error(ErrorCode::kParse, "judgments file is empty");
  RequireColumns(true, has_human, has_metric);
  return out;
}

void CheckUniqueInstances(const std::vector<JudgmentRecord>& records) {
  std::unordered_map<std::string_view, std::size_t> seen;
  for (const auto& r : records) {
    auto [it, inserted] = seen.emplace(r.instance_id, r.line);
    if (!inserted) {
      throw Error(ErrorCode::kDuplicateId,
                  "duplicate instance_id '" + r.instance_id + "' on lines " +
                      std::to_string(it->second) + " and " + std::to_string(r.line));
    }
  }
}

std::set<std::string> Columns(const std::vector<JudgmentRecord>& records, bool human) {
  std::set<std::string> out;
  for (const auto& r : records) {
    for (const auto& [k, v] : human ? r.human : r.metrics) out.insert(k);
  }
  return out;
}

std::vector<std::string> Select(const std::set<std::string>& present,
                                const std::vector<std::string>& requested,
                                const char* what) {
  if (requested.empty()) return {present.begin(), present.end()};
  for (const auto& r : requested) {
    if (present.count(r) == 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string("unknown ") + what + " column '" + r + "'");
    }
  }
  return requested;
}

std::string Format3(double v) {
  if (std::isnan(v)) return "-";
  std::ostringstream out;
  out << std::fixed << std::setprecision(3) << v;
  return out.str();
}

// Applies one "section.key" override through the JSON form of the config so
// that the usual parsing and validation apply.
void SetConfigValue(json* root, const std::string& key, double value) {
  const std::size_t dot = key.find('.');
  if (dot == std::string::npos || !root->contains(key.substr(0, dot)) ||
      !(*root)[key.substr(0, dot)].contains(key.substr(dot + 1)) ||
      !(*root)[key.substr(0, dot)][key.substr(dot + 1)].is_number()) {
    throw Error(ErrorCode::kParse, "unknown numeric config key '" + key + "'");
  }
  (*root)[key.substr(0, dot)][key.substr(dot + 1)] = value;
}

}  // namespace

double Pearson(const std::vector<double>& x, const std::vector<double>& y) {
  CheckPair(x, y);
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) Constant();
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> MidRanks(const std::vector<double>& x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(x.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double Spearman(const std::vector<double>& x, const std::vector<double>& y) {
  CheckPair(x, y);
  return Pearson(MidRanks(x), MidRanks(y));
}

double KendallTauB(const std::vector<double>& x, const std::vector<double>& y) {
  CheckPair(x, y);
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x[a] < x[b] || (x[a] == x[b] && y[a] < y[b]);
  });
  const auto n0 = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 1) / 2;
  const std::int64_t tied_x = TiedPairs(n, [&](std::size_t a, std::size_t b) {
    return x[order[a]] == x[order[b]];
  });
  const std::int64_t tied_xy = TiedPairs(n, [&](std::size_t a, std::size_t b) {
    return x[order[a]] == x[order[b]] && y[order[a]] == y[order[b]];
  });
  std::vector<double> ys(n);
  for (std::size_t i = 0; i < n; ++i) ys[i] = y[order[i]];
  std::vector<double> buf(n);
  // Within tied x runs y is ascending, so swaps count only discordant pairs.
  const std::int64_t swaps = SortCountingSwaps(ys, buf, 0, n);
  const std::int64_t tied_y =
      TiedPairs(n, [&](std::size_t a, std::size_t b) { return ys[a] == ys[b]; });
  const std::int64_t numerator = n0 - tied_x - tied_y + tied_xy - 2 * swaps;
  return TauB(numerator, n0 - tied_x, n0 - tied_y);
}

double KendallTauBPairwise(const std::vector<double>& x, const std::vector<double>& y) {
  CheckPair(x, y);
  std::int64_t concordant = 0, discordant = 0, only_x = 0, only_y = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      if (dx == 0.0 && dy == 0.0) continue;
      if (dx == 0.0) {
        ++only_x;
      } else if (dy == 0.0) {
        ++only_y;
      } else if ((dx > 0.0) == (dy > 0.0)) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  return TauB(concordant - discordant, concordant + discordant + only_y,
              concordant + discordant + only_x);
}

WilliamsResult WilliamsTest(double r12, double r13, double r23, int n, bool two_sided) {
  if (n < 4) {
    throw Error(ErrorCode::kInvalidArgument,
                "williams test needs n >= 4, got " + std::to_string(n));
  }
  WilliamsResult out;
  out.degrees_of_freedom = n - 3;
  for (double r : {r12, r13, r23}) {
    if (!(r >= -1.0 && r <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "correlation outside [-1, 1]");
    }
  }
  if (r12 == r13) {
    out.t = 0.0;
    out.p = two_sided ? 1.0 : 0.5;
    return out;
  }
  for (double r : {r12, r13, r23}) {
    if (!(r > -1.0 && r < 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "correlation outside (-1, 1)");
    }
  }
  const double k = 1.0 - r12 * r12 - r13 * r13 - r23 * r23 + 2.0 * r12 * r13 * r23;
  if (!(k > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "inadmissible correlation triple");
  }
  const double nn = static_cast<double>(n);
  const double rbar = (r12 + r13) / 2.0;
  const double one_minus = 1.0 - r23;
  out.t = (r12 - r13) * std::sqrt((nn - 1.0) * (1.0 + r23)) /
          std::sqrt(2.0 * k * (nn - 1.0) / (nn - 3.0) +
                    rbar * rbar * one_minus * one_minus * one_minus);
  const boost::math::students_t dist(nn - 3.0);
  if (two_sided) {
    out.p = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(out.t))));
  } else {
    out.p = boost::math::cdf(boost::math::complement(dist, out.t));
  }
  return out;
}

std::vector<JudgmentRecord> ParseJudgments(std::string_view content, JudgmentFormat format) {
  if (format == JudgmentFormat::kAuto) {
    throw Error(ErrorCode::kInvalidArgument, "judgment format must be explicit");
  }
  auto records = format == JudgmentFormat::kCsv ? FromCsv(content) : FromJsonl(content);
  CheckUniqueInstances(records);
  return records;
}

std::vector<JudgmentRecord> LoadJudgments(const std::filesystem::path& path,
                                          JudgmentFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kMissingFile, "cannot open judgments " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (format == JudgmentFormat::kAuto) {
    const std::string ext = path.extension().string();
    format = ext == ".jsonl" || ext == ".json" ? JudgmentFormat::kJsonl
                                               : JudgmentFormat::kCsv;
  }
  return ParseJudgments(buf.str(), format);
}

const char* CorrelationLevelName(CorrelationLevel level) {
  return level == CorrelationLevel::kInstance ? "instance" : "system";
}

std::vector<JudgmentRecord> SystemMeans(const std::vector<JudgmentRecord>& records) {
  struct Acc {
    std::map<std::string, std::pair<double, int>> human, metrics;
  };
  std::map<std::string, Acc> by_system;
  for (const auto& r : records) {
    if (!r.system_id) {
      throw Error(ErrorCode::kInvalidArgument,
                  "record '" + r.instance_id + "' has no system_id");
    }
    Acc& acc = by_system[*r.system_id];
    for (const auto& [k, v] : r.human) {
      acc.human[k].first += v;
      ++acc.human[k].second;
    }
    for (const auto& [k, v] : r.metrics) {
      acc.metrics[k].first += v;
      ++acc.metrics[k].second;
    }
  }
  if (by_system.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "system-level correlation needs at least 2 systems");
  }
  std::vector<JudgmentRecord> out;
  for (const auto& [system, acc] : by_system) {
    JudgmentRecord rec;
    rec.instance_id = system;
    rec.system_id = system;
    for (const auto& [k, s] : acc.human) rec.human[k] = s.first / s.second;
    for (const auto& [k, s] : acc.metrics) rec.metrics[k] = s.first / s.second;
    out.push_back(std::move(rec));
  }
  return out;
}

CorrelationReport Correlate(const std::vector<JudgmentRecord>& input,
                            CorrelationLevel level,
                            const std::vector<std::string>& dimensions,
                            const std::vector<std::string>& metrics) {
  const std::vector<JudgmentRecord> system_records =
      level == CorrelationLevel::kSystem ? SystemMeans(input)
                                         : std::vector<JudgmentRecord>{};
  const auto& records = level == CorrelationLevel::kSystem ? system_records : input;
  CorrelationReport report;
  report.level = level;
  const auto dims = Select(Columns(records, true), dimensions, "human");
  const auto mets = Select(Columns(records, false), metrics, "metric");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& m : mets) {
    for (const auto& d : dims) {
      CorrelationCell cell;
      cell.metric = m;
      cell.dimension = d;
      std::vector<double> x, y;
      for (const auto& r : records) {
        auto mi = r.metrics.find(m);
        auto hi = r.human.find(d);
        if (mi == r.metrics.end() || hi == r.human.end()) continue;
        x.push_back(mi->second);
        y.push_back(hi->second);
      }
      cell.n = x.size();
      try {
        cell.spearman = Spearman(x, y);
        cell.kendall = KendallTauB(x, y);
        cell.pearson = Pearson(x, y);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kUndefinedCorrelation &&
            e.code() != ErrorCode::kInvalidArgument) {
          throw;
        }
        cell.spearman = cell.kendall = cell.pearson = nan;
        cell.note = e.what();
      }
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

std::string ReportToJson(const CorrelationReport& report) {
  ordered_json j;
  j["level"] = CorrelationLevelName(report.level);
  j["cells"] = ordered_json::array();
  for (const auto& c : report.cells) {
    ordered_json cell;
    cell["metric"] = c.metric;
    cell["dimension"] = c.dimension;
    cell["n"] = c.n;
    for (const auto& [name, v] : {std::pair<const char*, double>{"spearman", c.spearman},
                                  {"kendall", c.kendall},
                                  {"pearson", c.pearson}}) {
      if (std::isnan(v)) {
        cell[name] = nullptr;
      } else {
        cell[name] = v;
      }
    }
    if (!c.note.empty()) cell["note"] = c.note;
    j["cells"].push_back(cell);
  }
  return j.dump(2) + "\n";
}

CorrelationReport ReportFromJson(std::string_view json_text) {
  CorrelationReport report;
  try {
    const json j = json::parse(json_text);
    const std::string level = j.at("level").get<std::string>();
    if (level == "instance") {
      report.level = CorrelationLevel::kInstance;
    } else if (level == "system") {
      report.level = CorrelationLevel::kSystem;
    } else {
      throw Error(ErrorCode::kParse, "unknown report level '" + level + "'");
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& c : j.at("cells")) {
      CorrelationCell cell;
      cell.metric = c.at("metric").get<std::string>();
      cell.dimension = c.at("dimension").get<std::string>();
      cell.n = c.at("n").get<std::size_t>();
      cell.spearman = c.at("spearman").is_null() ? nan : c["spearman"].get<double>();
      cell.kendall = c.at("kendall").is_null() ? nan : c["kendall"].get<double>();
      cell.pearson = c.at("pearson").is_null() ? nan : c["pearson"].get<double>();
      if (c.contains("note")) cell.note = c["note"].get<std::string>();
      report.cells.push_back(std::move(cell));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("correlation report: ") + e.what());
  }
  return report;
}

std::string FormatReport(const CorrelationReport& report) {
  std::vector<std::vector<std::string>> rows = {
      {"metric", "dimension", "n", "spearman", "kendall", "pearson"}};
  for (const auto& c : report.cells) {
    rows.push_back({c.metric, c.dimension, std::to_string(c.n), Format3(c.spearman),
                    Format3(c.kendall), Format3(c.pearson)});
  }
  std::vector<std::size_t> width(rows[0].size(), 0);
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      width[k] = std::max(width[k], Utf8Length(row[k]));
    }
  }
  std::ostringstream out;
  out << "level: " << CorrelationLevelName(report.level) << "\n";
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      const std::string pad(width[k] - Utf8Length(row[k]), ' ');
      // Text columns align left, numbers right.
      out << (k < 2 ? row[k] + pad : pad + row[k]) << (k + 1 < row.size() ? "  " : "");
    }
    out << "\n";
  }
  for (const auto& c : report.cells) {
    if (!c.note.empty()) out << "note: " << c.metric << "/" << c.dimension << ": " << c.note << "\n";
  }
  return out.str();
}

WilliamsComparison CompareMetrics(const std::vector<JudgmentRecord>& records,
                                  const std::string& metric_a,
                                  const std::string& metric_b,
                                  const std::string& dimension, CoefficientKind kind,
                                  bool two_sided) {
  Select(Columns(records, false), {metric_a, metric_b}, "metric");
  Select(Columns(records, true), {dimension}, "human");
  std::vector<double> h, a, b;
  for (const auto& r : records) {
    auto hi = r.human.find(dimension);
    auto ai = r.metrics.find(metric_a);
    auto bi = r.metrics.find(metric_b);
    if (hi == r.human.end() || ai == r.metrics.end() || bi == r.metrics.end()) continue;
    h.push_back(hi->second);
    a.push_back(ai->second);
    b.push_back(bi->second);
  }
  WilliamsComparison out;
  out.n = h.size();
  if (out.n < 4) {
    throw Error(ErrorCode::kInvalidArgument,
                "williams test needs n >= 4, got " + std::to_string(out.n));
  }
  if (kind == CoefficientKind::kSpearman) {
    h = MidRanks(h);
    a = MidRanks(a);
    b = MidRanks(b);
  }
  out.r12 = Pearson(h, a);
  out.r13 = Pearson(h, b);
  out.r23 = Pearson(a, b);
  out.result = WilliamsTest(out.r12, out.r13, out.r23, static_cast<int>(out.n), two_sided);
  return out;
}

TuneResult TuneConfig(const std::vector<JudgmentRecord>& records,
                      const std::unordered_map<std::string, std::string>& texts,
                      const std::string& dimension, const std::vector<GridAxis>& grid,
                      const MetricConfig& base, std::shared_ptr<const Backend> backend,
                      std::shared_ptr<const EmbeddingTable> embeddings, int threads) {
  std::size_t points = grid.empty() ? 0 : 1;
  for (const auto& axis : grid) points *= axis.values.size();
  if (points == 0) throw Error(ErrorCode::kInvalidArgument, "empty search space");

  std::vector<CorpusItem> items;
  std::vector<double> human;
  for (const auto& r : records) {
    auto hi = r.human.find(dimension);
    if (hi == r.human.end()) continue;
    auto ti = texts.find(r.instance_id);
    if (ti == texts.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "no text for instance '" + r.instance_id + "'");
    }
    items.push_back({r.instance_id, ti->second});
    human.push_back(hi->second);
  }
  if (items.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "tuning needs at least 2 records with human:" + dimension);
  }

  TuneResult result;
  bool have_best = false;
  const json base_json = json::parse(base.ToJson());
  for (std::size_t p = 0; p < points; ++p) {
    json point = base_json;
    std::size_t rest = p;
    for (std::size_t a = grid.size(); a-- > 0;) {
      const auto& values = grid[a].values;
      SetConfigValue(&point, grid[a].key, values[rest % values.size()]);
      rest /= values.size();
    }
    const MetricConfig config = MetricConfig::FromJson(point.dump());
    const Scorer scorer(backend, embeddings, config);
    std::vector<double> x, y;
    std::size_t k = 0;
    ScoreCorpus(items, scorer, threads, [&](CorpusRecord rec) {
      if (rec.ok) {
        x.push_back(rec.score.total);
        y.push_back(human[k]);
      }
      ++k;
    });
    double rho = std::numeric_limits<double>::quiet_NaN();
    try {
      rho = Spearman(x, y);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kUndefinedCorrelation &&
          e.code() != ErrorCode::kInvalidArgument) {
        throw;
      }
    }
    result.rhos.push_back(rho);
    if (std::isnan(rho)) continue;
    if (!have_best || rho > result.rho) {
      result.best = config;
      result.rho = rho;
      result.index = p;
      result.tie = false;
      have_best = true;
    } else if (rho == result.rho) {
      result.tie = true;
    }
  }
  if (!have_best) {
    throw Error(ErrorCode::kUndefinedCorrelation,
                "no grid point yields a defined correlation");
  }
  return result;
}

}  // namespace gruen
