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
#include <random>

#include "doctest.h"
#include "gruen/error.h"
#include "gruen/evalstats.h"
#include "test_util.h"

namespace gruen {
namespace {

using testing::FixturePath;
using testing::ReadJson;

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::kInvalidArgument;
}

// Rank of x[i] counted directly: values below plus half the ties, 1-based.
std::vector<double> RankOracle(const std::vector<double>& x) {
  std::vector<double> out;
  for (double v : x) {
    double below = 0.0, equal = 0.0;
    for (double w : x) {
      below += w < v;
      equal += w == v;
    }
    out.push_back(below + (equal + 1.0) / 2.0);
  }
  return out;
}

std::vector<double> RandomTiedSample(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> v(0, 6);
  std::vector<double> out(n);
  for (double& x : out) x = v(rng) * 0.5;
  return out;
}

TEST_CASE("pearson") {
  const std::vector<double> x = {1, 2, 3, 4, 5};
  std::vector<double> y2, neg;
  for (double v : x) {
    y2.push_back(2 * v + 1);
    neg.push_back(-v);
  }
  CHECK(Pearson(x, y2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(Pearson(x, neg) == doctest::Approx(-1.0).epsilon(1e-15));
  const auto o = ReadJson(FixturePath("stats/oracles.json"))["pearson"];
  CHECK(std::fabs(Pearson(o["x"], o["y"]) - o["r"].get<double>()) <= 1e-10);
  CHECK(CodeOf([] { Pearson({1, 2}, {1, 2, 3}); }) == ErrorCode::kInvalidArgument);
  CHECK(CodeOf([] { Pearson({1}, {1}); }) == ErrorCode::kInvalidArgument);
  CHECK(CodeOf([] { Pearson({1, 1, 1}, {1, 2, 3}); }) ==
        ErrorCode::kUndefinedCorrelation);
}

TEST_CASE("spearman and kendall worked examples") {
  const auto o = ReadJson(FixturePath("stats/oracles.json"));
  CHECK(Spearman(o["spearman"]["x"], o["spearman"]["y"]) ==
        doctest::Approx(o["spearman"]["rho"].get<double>()).epsilon(1e-12));
  CHECK(MidRanks({1, 1, 2}) == std::vector<double>{1.5, 1.5, 3.0});
  CHECK(std::fabs(KendallTauB(o["kendall"]["x"], o["kendall"]["y"]) -
                  o["kendall"]["tau_b"].get<double>()) <= 1e-12);
  CHECK(Spearman({1, 2, 3, 4}, {2, 5, 7, 100}) == doctest::Approx(1.0));
  CHECK(Spearman({1, 2, 3, 4}, {9, 5, 2, 1}) == doctest::Approx(-1.0));
  CHECK(KendallTauB({1, 2, 3, 4}, {2, 5, 7, 100}) == 1.0);
  CHECK(KendallTauB({1, 2, 3, 4}, {9, 5, 2, 1}) == -1.0);
  CHECK(CodeOf([] { KendallTauB({2, 2, 2}, {1, 2, 3}); }) ==
        ErrorCode::kUndefinedCorrelation);
}

TEST_CASE("spearman equals pearson over independently computed ranks") {
  std::mt19937 rng(500);
  std::uniform_int_distribution<std::size_t> size(2, 40);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = size(rng);
    const auto x = RandomTiedSample(rng, n);
    const auto y = RandomTiedSample(rng, n);
    double expected;
    try {
      expected = Pearson(RankOracle(x), RankOracle(y));
    } catch (const Error&) {
      CHECK_THROWS_AS(Spearman(x, y), Error);
      continue;
    }
    CHECK(Spearman(x, y) == expected);
  }
}

TEST_CASE("fast kendall equals the pairwise definition") {
  std::mt19937 rng(8);
  std::uniform_int_distribution<std::size_t> size(2, 200);
  int compared = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = trial < 200 ? 2 + trial % 7 : size(rng);
    const auto x = RandomTiedSample(rng, n);
    const auto y = RandomTiedSample(rng, n);
    try {
      const double slow = KendallTauBPairwise(x, y);
      CHECK(KendallTauB(x, y) == slow);
      ++compared;
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kUndefinedCorrelation);
      CHECK_THROWS_AS(KendallTauB(x, y), Error);
    }
  }
  CHECK(compared > 400);
}

TEST_CASE("coefficients are invariant under increasing transforms") {
  std::mt19937 rng(3);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x(30), y(30), fx, ax;
    for (std::size_t i = 0; i < 30; ++i) {
      x[i] = g(rng);
      y[i] = x[i] + g(rng);
      fx.push_back(std::exp(x[i]));
      ax.push_back(3.0 * x[i] + 7.0);
    }
    CHECK(Spearman(fx, y) == doctest::Approx(Spearman(x, y)).epsilon(1e-12));
    CHECK(KendallTauB(fx, y) == KendallTauB(x, y));
    CHECK(Pearson(ax, y) == doctest::Approx(Pearson(x, y)).epsilon(1e-12));
  }
}

TEST_CASE("williams test matches the high-precision oracle") {
  const auto cases = ReadJson(FixturePath("stats/oracles.json"))["williams"];
  REQUIRE(cases.size() == 50);
  for (const auto& c : cases) {
    const auto w = WilliamsTest(c["r12"], c["r13"], c["r23"], c["n"]);
    CHECK(std::fabs(w.t - c["t"].get<double>()) <= 1e-8);
    CHECK(std::fabs(w.p - c["p"].get<double>()) <= 1e-8);
  }
}

TEST_CASE("williams test properties") {
  const auto same = WilliamsTest(0.5, 0.5, 0.3, 50);
  CHECK(same.t == 0.0);
  CHECK(same.p == 0.5);
  CHECK(WilliamsTest(0.5, 0.5, 1.0, 50).p == 0.5);
  CHECK(WilliamsTest(0.5, 0.5, 0.3, 50, true).p == 1.0);
  const auto ab = WilliamsTest(0.7, 0.4, 0.5, 80);
  const auto ba = WilliamsTest(0.4, 0.7, 0.5, 80);
  CHECK(ab.t == doctest::Approx(-ba.t).epsilon(1e-15));
  CHECK(ab.p + ba.p == doctest::Approx(1.0));
  CHECK(WilliamsTest(0.7, 0.4, 0.5, 80, true).p == doctest::Approx(2 * ab.p));
  CHECK(ab.degrees_of_freedom == 77);
  CHECK(CodeOf([] { WilliamsTest(0.6, 0.4, 0.5, 3); }) == ErrorCode::kInvalidArgument);
  CHECK(CodeOf([] { WilliamsTest(0.99, -0.99, 0.99, 30); }) ==
        ErrorCode::kInvalidArgument);
  CHECK(CodeOf([] { WilliamsTest(1.0, 0.4, 0.5, 30); }) == ErrorCode::kInvalidArgument);
}

constexpr char kCsv[] =
    "instance_id,system_id,human:grammar,metric:gruen,metric:bleu\n"
    "a,s1,3,0.9,0.2\n"
    "\"b, quoted\",s1,2,0.5,\n"
    "c,s2,1,0.1,0.4\n";

constexpr char kJsonl[] =
    R"({"instance_id":"a","system_id":"s1","human:grammar":3,"metric:gruen":0.9,"metric:bleu":0.2})"
    "\n"
    R"({"instance_id":"b, quoted","system_id":"s1","human:grammar":2,"metric:gruen":0.5,"metric:bleu":null})"
    "\n"
    R"({"instance_id":"c","system_id":"s2","human:grammar":1,"metric:gruen":0.1,"metric:bleu":0.4})"
    "\n";

TEST_CASE("judgment loading") {
  const auto csv = ParseJudgments(kCsv, JudgmentFormat::kCsv);
  REQUIRE(csv.size() == 3);
  CHECK(csv[1].instance_id == "b, quoted");
  CHECK(csv[1].metrics.count("bleu") == 0);
  CHECK(csv[2].human.at("grammar") == 1.0);
  CHECK(ParseJudgments(kJsonl, JudgmentFormat::kJsonl) == csv);

  testing::TempDir dir;
  testing::WriteFile(dir / "j.jsonl", kJsonl);
  CHECK(LoadJudgments(dir / "j.jsonl") == csv);
  CHECK(CodeOf([] { LoadJudgments("/nonexistent.csv"); }) == ErrorCode::kMissingFile);

  SUBCASE("duplicate ids name both lines") {
    try {
      ParseJudgments("instance_id,human:g,metric:m\nx,1,2\ny,1,2\nx,3,4\n",
                     JudgmentFormat::kCsv);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kDuplicateId);
      CHECK(std::string(e.what()).find("lines 2 and 4") != std::string::npos);
    }
  }
  SUBCASE("bad numbers name the line") {
    try {
      ParseJudgments("instance_id,human:g,metric:m\nx,1,2\ny,one,2\n",
                     JudgmentFormat::kCsv);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kParse);
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK(CodeOf([] {
            ParseJudgments("instance_id,human:g,metric:m\nx,1,inf\n", JudgmentFormat::kCsv);
          }) == ErrorCode::kParse);
  }
  SUBCASE("mandatory columns") {
    CHECK(CodeOf([] {
            ParseJudgments("id,human:g,metric:m\nx,1,2\n", JudgmentFormat::kCsv);
          }) == ErrorCode::kParse);
    CHECK(CodeOf([] {
            ParseJudgments("instance_id,metric:m\nx,2\n", JudgmentFormat::kCsv);
          }) == ErrorCode::kParse);
    CHECK(CodeOf([] {
            ParseJudgments(R"({"instance_id":"x","human:g":1})", JudgmentFormat::kJsonl);
          }) == ErrorCode::kParse);
  }
  SUBCASE("quoted newlines and escaped quotes") {
    const auto r = ParseJudgments(
        "instance_id,human:g,metric:m\n\"multi\nline \"\"id\"\"\",1,2\r\nz,2,3\n",
        JudgmentFormat::kCsv);
    REQUIRE(r.size() == 2);
    CHECK(r[0].instance_id == "multi\nline \"id\"");
    CHECK(r[1].line == 4);
  }
}

TEST_CASE("correlation reports") {
  const auto records = ParseJudgments(kCsv, JudgmentFormat::kCsv);
  const auto report = Correlate(records, CorrelationLevel::kInstance);
  REQUIRE(report.cells.size() == 2);
  CHECK(report.cells[0].metric == "bleu");
  CHECK(report.cells[0].n == 2);
  CHECK(report.cells[1].metric == "gruen");
  CHECK(report.cells[1].n == 3);
  CHECK(report.cells[1].spearman == doctest::Approx(1.0));
  CHECK(FormatReport(report).find("1.000") != std::string::npos);

  const auto back = ReportFromJson(ReportToJson(report));
  CHECK(back.level == report.level);
  REQUIRE(back.cells.size() == 2);
  CHECK(back.cells[1].pearson == report.cells[1].pearson);
  CHECK(ReportToJson(back) == ReportToJson(report));

  CHECK(CodeOf([&] { Correlate(records, CorrelationLevel::kInstance, {"fluency"}); }) ==
        ErrorCode::kInvalidArgument);
  const auto constant = Correlate(
      ParseJudgments("instance_id,human:g,metric:m\na,1,5\nb,2,5\n", JudgmentFormat::kCsv),
      CorrelationLevel::kInstance);
  CHECK(std::isnan(constant.cells[0].spearman));
  CHECK_FALSE(constant.cells[0].note.empty());
  CHECK(ReportFromJson(ReportToJson(constant)).cells[0].note == constant.cells[0].note);
}

TEST_CASE("system-level correlation") {
  const auto records = ParseJudgments(kCsv, JudgmentFormat::kCsv);
  const auto means = SystemMeans(records);
  REQUIRE(means.size() == 2);
  CHECK(means[0].human.at("grammar") == 2.5);
  CHECK(means[0].metrics.at("gruen") == doctest::Approx(0.7));
  CHECK(means[0].metrics.at("bleu") == 0.2);
  const auto report = Correlate(records, CorrelationLevel::kSystem, {}, {"gruen"});
  CHECK(report.cells[0].spearman == 1.0);
  CHECK(CodeOf([] {
          SystemMeans(ParseJudgments("instance_id,human:g,metric:m\na,1,2\nb,2,3\n",
                                     JudgmentFormat::kCsv));
        }) == ErrorCode::kInvalidArgument);
  CHECK(CodeOf([] {
          SystemMeans(ParseJudgments(
              "instance_id,system_id,human:g,metric:m\na,s,1,2\nb,s,2,3\n",
              JudgmentFormat::kCsv));
        }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("system-level aggregation agrees with direct recomputation") {
  std::mt19937 rng(51);
  std::normal_distribution<double> g;
  std::vector<JudgmentRecord> records;
  std::vector<double> sys_metric(51, 0.0), sys_human(51, 0.0);
  for (int s = 0; s < 51; ++s) {
    const double quality = g(rng);
    for (int k = 0; k < 4; ++k) {
      JudgmentRecord r;
      r.instance_id = std::to_string(s) + "-" + std::to_string(k);
      r.system_id = "sys" + std::to_string(s);
      r.human["overall"] = quality + g(rng);
      r.metrics["m"] = quality + 2.0 * g(rng);
      sys_metric[s] += r.metrics["m"] / 4.0;
      sys_human[s] += r.human["overall"] / 4.0;
      records.push_back(r);
    }
  }
  const auto system = Correlate(records, CorrelationLevel::kSystem);
  const auto instance = Correlate(records, CorrelationLevel::kInstance);
  CHECK(system.cells[0].n == 51);
  CHECK(instance.cells[0].n == 204);
  CHECK(system.cells[0].pearson ==
        doctest::Approx(Pearson(sys_metric, sys_human)).epsilon(1e-12));
  CHECK(system.cells[0].pearson > instance.cells[0].pearson);
}

TEST_CASE("metric comparison") {
  std::vector<JudgmentRecord> records;
  std::mt19937 rng(12);
  std::normal_distribution<double> g;
  for (int i = 0; i < 200; ++i) {
    JudgmentRecord r;
    r.instance_id = std::to_string(i);
    r.human["overall"] = g(rng);
    r.metrics["good"] = r.human["overall"] + 0.3 * g(rng);
    r.metrics["weak"] = r.human["overall"] + 3.0 * g(rng);
    r.metrics["copy"] = r.metrics["good"];
    records.push_back(r);
  }
  const auto strong = CompareMetrics(records, "good", "weak", "overall",
                                     CoefficientKind::kPearson);
  CHECK(strong.n == 200);
  CHECK(strong.result.p < 0.01);
  const auto tied = CompareMetrics(records, "good", "copy", "overall",
                                   CoefficientKind::kSpearman);
  CHECK(tied.result.t == 0.0);
  CHECK(tied.result.p == 0.5);
  records.resize(3);
  CHECK(CodeOf([&] {
          CompareMetrics(records, "good", "weak", "overall", CoefficientKind::kPearson);
        }) == ErrorCode::kInvalidArgument);
  CHECK(CodeOf([&] {
          CompareMetrics(records, "good", "nope", "overall", CoefficientKind::kPearson);
        }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("configuration grid search") {
  // Two documents differ only in redundancy. Humans prefer the non-redundant
  // one, so a non-zero redundancy penalty ranks them correctly.
  const std::unordered_map<std::string, std::string> texts = {
      {"rep", "The cat sat on the mat. The cat sat on the mat."},
      {"ok", "The cat sat on the mat. Boats sail down the river."},
      {"mid", "The cat sat on the mat. The cat sat on a mat today."},
  };
  std::vector<JudgmentRecord> records(3);
  records[0].instance_id = "rep";
  records[0].human["overall"] = 1;
  records[1].instance_id = "ok";
  records[1].human["overall"] = 3;
  records[2].instance_id = "mid";
  records[2].human["overall"] = 2;
  auto backend = std::make_shared<const StubBackend>();
  auto table = std::make_shared<const EmbeddingTable>(
      EmbeddingTable::Load(FixturePath("corpus/toy.vec")));
  MetricConfig base;
  base.coherence.weight = 0.0;
  base.focus.penalty = 0.0;

  const auto dominant = TuneConfig(records, texts, "overall",
                                   {{"redundancy.penalty", {0.0, 0.1}}}, base, backend,
                                   table);
  CHECK(dominant.index == 1);
  CHECK(dominant.best.redundancy.penalty == 0.1);
  CHECK(dominant.rho == doctest::Approx(1.0));
  CHECK(std::isnan(dominant.rhos[0]));

  const auto single = TuneConfig(records, texts, "overall",
                                 {{"redundancy.penalty", {0.05}}}, base, backend, table);
  CHECK(single.index == 0);
  CHECK(single.best.redundancy.penalty == 0.05);

  const auto tie = TuneConfig(records, texts, "overall",
                              {{"redundancy.penalty", {0.1, 0.2}}}, base, backend, table);
  CHECK(tie.index == 0);
  CHECK(tie.tie);

  CHECK(CodeOf([&] {
          TuneConfig(records, texts, "overall", {}, base, backend, table);
        }) == ErrorCode::kInvalidArgument);
  CHECK(CodeOf([&] {
          TuneConfig(records, texts, "overall", {{"redundancy.nope", {1.0}}}, base,
                     backend, table);
        }) == ErrorCode::kParse);
}

}  // namespace
}  // namespace gruen
