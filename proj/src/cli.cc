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

#include "gruen/cli.h"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "CLI11.hpp"
#include "gruen/backend.h"
#include "gruen/config.h"
#include "gruen/embeddings.h"
#include "gruen/error.h"
#include "gruen/evalstats.h"
#include "gruen/hash.h"
#include "gruen/pipeline.h"
#include "gruen/segmentation.h"
#include "gruen/text.h"
#include "json.hpp"

#ifndef GRUEN_VERSION
#define GRUEN_VERSION "unknown"
#endif

namespace gruen {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr char kBundleEnv[] = "GRUEN_BUNDLE";
constexpr char kEmbeddingsEnv[] = "GRUEN_EMBEDDINGS";

std::string ReadAll(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kMissingFile, std::string("cannot open ") + what + " " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string UtcNow() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string Number(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string FromEnv(const std::string& flag, const char* env) {
  if (!flag.empty()) return flag;
  const char* v = std::getenv(env);
  return v == nullptr ? std::string() : std::string(v);
}

std::vector<CorpusItem> ReadCorpus(const std::string& path) {
  const std::string content = ReadAll(path, "input");
  std::vector<CorpusItem> items;
  std::istringstream in(content);
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const std::string where = "input line " + std::to_string(line_no);
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParse, where + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("id") || !j.contains("text") ||
        !j["id"].is_string() || !j["text"].is_string()) {
      throw Error(ErrorCode::kParse, where + ": expected {\"id\": string, \"text\": string}");
    }
    items.push_back({j["id"].get<std::string>(), j["text"].get<std::string>()});
  }
  return items;
}

class Command {
 public:
  Command(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}
  virtual ~Command() = default;
  virtual int Run() = 0;

 protected:
  void Warn(const std::string& message) { err_ << "gruen:warning: " << message << "\n"; }

  std::ostream& out_;
  std::ostream& err_;
};

class ScoreCommand : public Command {
 public:
  ScoreCommand(CLI::App* app, std::ostream& out, std::ostream& err) : Command(out, err) {
    app->add_option("--input", input_, "JSONL documents {\"id\", \"text\"}")->required();
    app->add_option("--output", output_, "JSONL scores; '-' for standard output")
        ->required();
    app->add_option("--bundle", bundle_, "Model bundle directory (default $GRUEN_BUNDLE)");
    app->add_flag("--stub", stub_, "Use the constant stub backend from the config");
    app->add_option("--embeddings", embeddings_,
                    "word2vec text embeddings (default $GRUEN_EMBEDDINGS)");
    app->add_option("--config", config_path_, "Metric config JSON");
    app->add_option("--threads", threads_, "Worker threads")->check(CLI::Range(1, 256));
  }

  int Run() override {
    const std::string started = UtcNow();
    const MetricConfig config =
        config_path_.empty() ? MetricConfig{} : MetricConfig::FromFile(config_path_);
    const auto items = ReadCorpus(input_);
    CheckUniqueIds(items);

    std::shared_ptr<const Backend> backend;
    if (stub_) {
      StubConfig stub;
      stub.masked_token_prob = config.stub_backend.masked_token_prob;
      stub.acceptability = config.stub_backend.acceptability;
      stub.sop = config.stub_backend.sop;
      backend = std::make_shared<const StubBackend>(stub);
    } else {
      const std::string dir = FromEnv(bundle_, kBundleEnv);
      if (dir.empty()) {
        throw Error(ErrorCode::kMissingFile,
                    "no model bundle: pass --bundle, set GRUEN_BUNDLE or use --stub");
      }
      backend = LoadBundle(dir);
    }

    const std::string vec_path = FromEnv(embeddings_, kEmbeddingsEnv);
    if (vec_path.empty()) {
      throw Error(ErrorCode::kMissingFile,
                  "no embeddings: pass --embeddings or set GRUEN_EMBEDDINGS");
    }
    // Only the corpus vocabulary is kept in memory.
    std::unordered_set<std::string> vocab;
    for (const auto& item : items) {
      for (auto& w : TokenizeWords(item.text)) vocab.insert(std::move(w));
      for (auto& w : SurfaceWords(item.text)) vocab.insert(std::move(w));
    }
    auto table = std::make_shared<const EmbeddingTable>(EmbeddingTable::Load(vec_path, &vocab));
    const Scorer scorer(backend, table, config);

    std::ofstream file;
    if (output_ != "-") {
      file.open(output_, std::ios::binary | std::ios::trunc);
      if (!file) throw Error(ErrorCode::kIo, "cannot write " + output_);
    }
    std::ostream& sink = output_ == "-" ? out_ : file;
    std::size_t failures = 0;
    ScoreCorpus(items, scorer, threads_, [&](CorpusRecord record) {
      if (!record.ok) {
        ++failures;
        err_ << "gruen:error:" << ErrorCodeName(record.error_code) << ": " << record.error
             << "\n";
      }
      sink << RecordToJson(record) << "\n";
    });
    sink.flush();
    if (!sink) throw Error(ErrorCode::kIo, "failed writing scores");

    if (output_ != "-") {
      ordered_json m;
      m["tool_version"] = GRUEN_VERSION;
      m["config_sha256"] = Sha256Hex(config.ToJson());
      m["backend"] = backend->Fingerprint();
      m["embeddings_sha256"] = Sha256File(vec_path);
      m["input_sha256"] = Sha256File(input_);
      m["documents"] = items.size();
      m["failures"] = failures;
      m["started_at"] = started;
      m["finished_at"] = UtcNow();
      std::ofstream mf(output_ + ".manifest.json", std::ios::binary | std::ios::trunc);
      mf << m.dump(2) << "\n";
      if (!mf) throw Error(ErrorCode::kIo, "cannot write run manifest");
    }
    return failures == 0 ? kExitOk : kExitPartial;
  }

 private:
  std::string input_, output_, bundle_, embeddings_, config_path_;
  bool stub_ = false;
  int threads_ = 1;
};

JudgmentFormat ParseFormat(const std::string& f) {
  if (f == "csv") return JudgmentFormat::kCsv;
  if (f == "jsonl") return JudgmentFormat::kJsonl;
  return JudgmentFormat::kAuto;
}

class CorrCommand : public Command {
 public:
  CorrCommand(CLI::App* app, std::ostream& out, std::ostream& err) : Command(out, err) {
    app->add_option("--judgments", judgments_, "CSV or JSONL judgments")->required();
    app->add_option("--format", format_, "csv, jsonl or auto")
        ->check(CLI::IsMember({"auto", "csv", "jsonl"}));
    app->add_option("--level", level_, "instance or system")
        ->check(CLI::IsMember({"instance", "system"}));
    app->add_option("--dimensions", dimensions_, "Human dimensions (default all)")
        ->delimiter(',');
    app->add_option("--metrics", metrics_, "Metric columns (default all)")->delimiter(',');
    app->add_flag("--json", json_, "Print the report as JSON");
  }

  int Run() override {
    const auto records = LoadJudgments(judgments_, ParseFormat(format_));
    const auto report =
        Correlate(records,
                  level_ == "system" ? CorrelationLevel::kSystem : CorrelationLevel::kInstance,
                  dimensions_, metrics_);
    out_ << (json_ ? ReportToJson(report) : FormatReport(report));
    return kExitOk;
  }

 private:
  std::string judgments_, format_ = "auto", level_ = "instance";
  std::vector<std::string> dimensions_, metrics_;
  bool json_ = false;
};

class WilliamsCommand : public Command {
 public:
  WilliamsCommand(CLI::App* app, std::ostream& out, std::ostream& err) : Command(out, err) {
    app->add_option("--judgments", judgments_, "CSV or JSONL judgments")->required();
    app->add_option("--format", format_, "csv, jsonl or auto")
        ->check(CLI::IsMember({"auto", "csv", "jsonl"}));
    app->add_option("--metric-a", metric_a_, "Metric expected to correlate more")->required();
    app->add_option("--metric-b", metric_b_, "Competing metric")->required();
    app->add_option("--dimension", dimension_, "Human dimension")->required();
    app->add_option("--coef", coef_, "pearson or spearman")
        ->check(CLI::IsMember({"pearson", "spearman"}));
    app->add_flag("--two-sided", two_sided_, "Report a two-sided p-value");
  }

  int Run() override {
    const auto records = LoadJudgments(judgments_, ParseFormat(format_));
    const auto c = CompareMetrics(
        records, metric_a_, metric_b_, dimension_,
        coef_ == "spearman" ? CoefficientKind::kSpearman : CoefficientKind::kPearson,
        two_sided_);
    out_ << "r12 " << Number(c.r12) << "\n"
         << "r13 " << Number(c.r13) << "\n"
         << "r23 " << Number(c.r23) << "\n"
         << "n " << c.n << "\n"
         << "t " << Number(c.result.t) << "\n"
         << "p " << Number(c.result.p) << "\n";
    return kExitOk;
  }

 private:
  std::string judgments_, format_ = "auto", metric_a_, metric_b_, dimension_,
      coef_ = "pearson";
  bool two_sided_ = false;
};

class PlotDataCommand : public Command {
 public:
  PlotDataCommand(CLI::App* app, std::ostream& out, std::ostream& err) : Command(out, err) {
    app->add_option("--scores", scores_, "JSONL scores written by 'score'")->required();
    app->add_option("--judgments", judgments_, "CSV or JSONL judgments")->required();
    app->add_option("--format", format_, "csv, jsonl or auto")
        ->check(CLI::IsMember({"auto", "csv", "jsonl"}));
    app->add_option("--dimension", dimension_, "Human dimension (default: the only one)");
    app->add_option("--field", field_, "Score field to plot")
        ->check(CLI::IsMember({"gruen", "y_g", "y_r", "y_f", "y_c"}));
    app->add_option("--bins", bins_, "Equal-width bins over the human range")
        ->check(CLI::Range(1, 1000));
    app->add_option("--out", out_path_, "Data CSV; bins go to <out>.bins.csv")->required();
  }

  int Run() override {
    const auto records = LoadJudgments(judgments_, ParseFormat(format_));
    std::string dim = dimension_;
    if (dim.empty()) {
      std::set<std::string> dims;
      for (const auto& r : records) {
        for (const auto& [k, v] : r.human) dims.insert(k);
      }
      if (dims.size() != 1) {
        throw Error(ErrorCode::kInvalidArgument,
                    "judgments have several dimensions; pass --dimension");
      }
      dim = *dims.begin();
    }

    std::map<std::string, double> scores;
    std::vector<std::string> unmatched;
    {
      std::istringstream in(ReadAll(scores_, "scores"));
      std::size_t line_no = 0;
      for (std::string line; std::getline(in, line);) {
        ++line_no;
        if (Trim(line).empty()) continue;
        json j;
        try {
          j = json::parse(line);
        } catch (const json::exception& e) {
          throw Error(ErrorCode::kParse,
                      "scores line " + std::to_string(line_no) + ": " + e.what());
        }
        if (!j.is_object() || !j.contains("id") || !j["id"].is_string()) {
          throw Error(ErrorCode::kParse,
                      "scores line " + std::to_string(line_no) + ": missing id");
        }
        const std::string id = j["id"];
        if (!j.contains(field_) || !j[field_].is_number()) {
          unmatched.push_back("score record '" + id + "' has no " + field_ + " value");
          continue;
        }
        scores[id] = j[field_].get<double>();
      }
    }

    struct Point {
      std::string id;
      double human;
      double metric;
    };
    std::vector<Point> points;
    std::unordered_set<std::string> joined;
    for (const auto& r : records) {
      auto h = r.human.find(dim);
      auto s = scores.find(r.instance_id);
      if (h == r.human.end()) continue;
      if (s == scores.end()) {
        unmatched.push_back("judgment '" + r.instance_id + "' has no score");
        continue;
      }
      points.push_back({r.instance_id, h->second, s->second});
      joined.insert(r.instance_id);
    }
    for (const auto& [id, v] : scores) {
      if (joined.count(id) == 0) unmatched.push_back("score '" + id + "' has no judgment");
    }

    std::ofstream data(out_path_, std::ios::binary | std::ios::trunc);
    data << "instance_id,human,metric\n";
    for (const auto& p : points) {
      data << CsvField(p.id) << "," << Number(p.human) << "," << Number(p.metric) << "\n";
    }
    std::ofstream summary(out_path_ + ".bins.csv", std::ios::binary | std::ios::trunc);
    summary << "bin,lower,upper,count,mean_metric\n";
    if (!points.empty()) {
      double lo = points[0].human, hi = points[0].human;
      for (const auto& p : points) {
        lo = std::min(lo, p.human);
        hi = std::max(hi, p.human);
      }
      const double width = hi > lo ? (hi - lo) / bins_ : 1.0;
      std::vector<double> sum(bins_, 0.0);
      std::vector<std::size_t> count(bins_, 0);
      for (const auto& p : points) {
        const int b = std::min(bins_ - 1, static_cast<int>((p.human - lo) / width));
        sum[b] += p.metric;
        ++count[b];
      }
      for (int b = 0; b < bins_; ++b) {
        if (count[b] == 0) continue;
        summary << b << "," << Number(lo + b * width) << "," << Number(lo + (b + 1) * width)
                << "," << count[b] << "," << Number(sum[b] / count[b]) << "\n";
      }
    }
    if (!data || !summary) throw Error(ErrorCode::kIo, "cannot write " + out_path_);
    for (const auto& u : unmatched) Warn("unmatched: " + u);
    out_ << points.size() << " joined rows, " << unmatched.size() << " unmatched\n";
    return unmatched.empty() ? kExitOk : kExitPartial;
  }

 private:
  std::string scores_, judgments_, format_ = "auto", dimension_, field_ = "gruen", out_path_;
  int bins_ = 10;
};

class ConfigInitCommand : public Command {
 public:
  ConfigInitCommand(CLI::App* app, std::ostream& out, std::ostream& err) : Command(out, err) {
    app->add_option("--output", output_, "Destination; standard output if omitted");
    app->add_flag("--force", force_, "Overwrite an existing file");
  }

  int Run() override {
    const std::string text = MetricConfig{}.ToJson();
    if (output_.empty()) {
      out_ << text;
      return kExitOk;
    }
    if (!force_ && std::filesystem::exists(output_)) {
      throw Error(ErrorCode::kIo, output_ + " exists; pass --force to overwrite");
    }
    std::ofstream f(output_, std::ios::binary | std::ios::trunc);
    f << text;
    if (!f) throw Error(ErrorCode::kIo, "cannot write " + output_);
    return kExitOk;
  }

 private:
  std::string output_;
  bool force_ = false;
};

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reference-less linguistic quality scoring", "gruen"};
  app.set_version_flag("--version", GRUEN_VERSION);
  app.require_subcommand(1);

  std::vector<std::pair<CLI::App*, std::unique_ptr<Command>>> commands;
  auto add = [&](CLI::App* sub, std::unique_ptr<Command> cmd) {
    commands.emplace_back(sub, std::move(cmd));
  };
  {
    auto* s = app.add_subcommand("score", "Score JSONL documents");
    add(s, std::make_unique<ScoreCommand>(s, out, err));
    auto* c = app.add_subcommand("corr", "Correlate metrics with human judgments");
    add(c, std::make_unique<CorrCommand>(c, out, err));
    auto* w = app.add_subcommand("williams", "Williams test between two metrics");
    add(w, std::make_unique<WilliamsCommand>(w, out, err));
    auto* p = app.add_subcommand("plotdata", "Write human-vs-metric data for plotting");
    add(p, std::make_unique<PlotDataCommand>(p, out, err));
    auto* config = app.add_subcommand("config", "Configuration helpers");
    config->require_subcommand(1);
    auto* init = config->add_subcommand("init", "Write the default metric config");
    add(init, std::make_unique<ConfigInitCommand>(init, out, err));
  }

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    // --help and --version.
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    std::string message = e.what();
    for (char& c : message) {
      if (c == '\n') c = ' ';
    }
    err << "gruen:error:usage: " << message << "\n";
    return kExitFatal;
  }

  for (auto& [sub, cmd] : commands) {
    if (!sub->parsed()) continue;
    try {
      return cmd->Run();
    } catch (const Error& e) {
      err << "gruen:error:" << ErrorCodeName(e.code()) << ": " << e.what() << "\n";
    } catch (const std::exception& e) {
      err << "gruen:error:internal: " << e.what() << "\n";
    }
    return kExitFatal;
  }
  return kExitFatal;
}

}  // namespace gruen
