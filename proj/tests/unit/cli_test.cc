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

#include <sstream>

#include "doctest.h"
#include "gruen/cli.h"
#include "json.hpp"
#include "test_util.h"

namespace gruen {
namespace {

using testing::FixturePath;
using testing::ReadFile;
using testing::TempDir;
using testing::WriteFile;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run Gruen(std::vector<std::string> args) {
  args.insert(args.begin(), "gruen");
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<nlohmann::json> Lines(const std::string& text) {
  std::vector<nlohmann::json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(nlohmann::json::parse(line));
  return out;
}

const std::string kToyVec = FixturePath("corpus/toy.vec").string();

TEST_CASE("score with the stub backend") {
  TempDir dir;
  WriteFile(dir / "in.jsonl",
            "{\"id\":\"a\",\"text\":\"The cat sat on the mat.\"}\n"
            "{\"id\":\"b\",\"text\":\"\"}\n"
            "{\"id\":\"c\",\"text\":\"Boats sail.\\nThe river flows.\"}\n");
  const std::string out = (dir / "out.jsonl").string();
  const Run r = Gruen({"score", "--stub", "--input", (dir / "in.jsonl").string(),
                       "--embeddings", kToyVec, "--output", out});
  CHECK(r.code == 0);
  CHECK(r.err.empty());
  const auto lines = Lines(ReadFile(out));
  REQUIRE(lines.size() == 3);
  CHECK(lines[0]["id"] == "a");
  CHECK(lines[1]["gruen"] == 0.0);
  CHECK(lines[1]["warnings"][0] == "empty output");
  for (const char* key : {"y_g", "y_r", "y_f", "y_c", "gruen", "warnings"}) {
    CHECK(lines[2].contains(key));
  }
  const auto manifest = nlohmann::json::parse(ReadFile(out + ".manifest.json"));
  CHECK(manifest["documents"] == 3);
  CHECK(manifest["backend"].get<std::string>().rfind("stub:", 0) == 0);
  CHECK(manifest["embeddings_sha256"].get<std::string>().size() == 64);

  SUBCASE("threads do not change the output") {
    const std::string out4 = (dir / "out4.jsonl").string();
    CHECK(Gruen({"score", "--stub", "--input", (dir / "in.jsonl").string(),
                 "--embeddings", kToyVec, "--output", out4, "--threads", "4"})
              .code == 0);
    CHECK(ReadFile(out4) == ReadFile(out));
  }
  SUBCASE("config values reach the stub") {
    WriteFile(dir / "cfg.json", "{\"stub_backend\": {\"acceptability\": 1.0}}");
    const std::string out2 = (dir / "out2.jsonl").string();
    CHECK(Gruen({"score", "--stub", "--config", (dir / "cfg.json").string(), "--input",
                 (dir / "in.jsonl").string(), "--embeddings", kToyVec, "--output", out2})
              .code == 0);
    CHECK(Lines(ReadFile(out2))[0]["y_g"] == 0.75);
  }
}

TEST_CASE("score with the exported bundle") {
  TempDir dir;
  WriteFile(dir / "in.jsonl", "{\"id\":\"x\",\"text\":\"The cat sat. The dog ran.\"}\n");
  const Run r = Gruen({"score", "--bundle", FixturePath("tiny_bundle").string(), "--input",
                       (dir / "in.jsonl").string(), "--embeddings", kToyVec, "--output",
                       "-"});
  CHECK(r.code == 0);
  const auto lines = Lines(r.out);
  REQUIRE(lines.size() == 1);
  CHECK(lines[0]["gruen"].get<double>() >= 0.0);
}

TEST_CASE("score failures") {
  TempDir dir;
  WriteFile(dir / "in.jsonl", "{\"id\":\"a\",\"text\":\"Fine.\"}\n");
  SUBCASE("missing bundle is fatal") {
    const Run r = Gruen({"score", "--bundle", "/nonexistent/bundle", "--input",
                         (dir / "in.jsonl").string(), "--embeddings", kToyVec, "--output",
                         (dir / "o.jsonl").string()});
    CHECK(r.code == 1);
    CHECK(r.err.rfind("gruen:error:missing_file:", 0) == 0);
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
  }
  SUBCASE("duplicate ids are fatal") {
    WriteFile(dir / "dup.jsonl",
              "{\"id\":\"a\",\"text\":\"x\"}\n{\"id\":\"a\",\"text\":\"y\"}\n");
    const Run r = Gruen({"score", "--stub", "--input", (dir / "dup.jsonl").string(),
                         "--embeddings", kToyVec, "--output", "-"});
    CHECK(r.code == 1);
    CHECK(r.err.rfind("gruen:error:duplicate_id:", 0) == 0);
  }
  SUBCASE("malformed input line") {
    WriteFile(dir / "bad.jsonl", "{\"id\":\"a\"}\n");
    const Run r = Gruen({"score", "--stub", "--input", (dir / "bad.jsonl").string(),
                         "--embeddings", kToyVec, "--output", "-"});
    CHECK(r.code == 1);
    CHECK(r.err.find("line 1") != std::string::npos);
  }
  SUBCASE("per-document failure gives exit 2") {
    // Thirty "a"/"##a" pieces overflow the tiny bundle's window.
    WriteFile(dir / "long.jsonl", "{\"id\":\"ok\",\"text\":\"The cat sat.\"}\n"
                                  "{\"id\":\"bad\",\"text\":\"" +
                                      std::string(30, 'a') + " sat.\"}\n");
    const Run r = Gruen({"score", "--bundle", FixturePath("tiny_bundle").string(),
                         "--input", (dir / "long.jsonl").string(), "--embeddings", kToyVec,
                         "--output", "-"});
    CHECK(r.code == 2);
    const auto lines = Lines(r.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0].contains("gruen"));
    CHECK(lines[1].contains("error"));
    CHECK(r.err.rfind("gruen:error:", 0) == 0);
  }
  SUBCASE("usage errors") {
    const Run r = Gruen({"score", "--stub"});
    CHECK(r.code == 1);
    CHECK(r.err.rfind("gruen:error:usage:", 0) == 0);
    CHECK(Gruen({}).code == 1);
  }
}

constexpr char kJudgments[] =
    "instance_id,system_id,human:grammar,metric:a,metric:b,metric:same\n"
    "1,s1,1,0.1,0.3,0.1\n"
    "2,s1,2,0.3,0.1,0.3\n"
    "3,s2,3,0.2,0.5,0.2\n"
    "4,s2,4,0.4,0.2,0.4\n"
    "5,s3,5,0.5,0.4,0.5\n"
    "6,s3,6,0.6,0.6,0.6\n";

TEST_CASE("corr command") {
  TempDir dir;
  WriteFile(dir / "j.csv", kJudgments);
  const Run table = Gruen({"corr", "--judgments", (dir / "j.csv").string(), "--metrics", "a"});
  CHECK(table.code == 0);
  CHECK(table.out.find("0.943") != std::string::npos);

  const Run js = Gruen({"corr", "--judgments", (dir / "j.csv").string(), "--json",
                        "--level", "system"});
  CHECK(js.code == 0);
  const auto report = nlohmann::json::parse(js.out);
  CHECK(report["level"] == "system");
  CHECK(report["cells"].size() == 3);

  WriteFile(dir / "nosys.csv", "instance_id,human:g,metric:m\n1,1,2\n2,2,3\n");
  const Run nosys = Gruen({"corr", "--judgments", (dir / "nosys.csv").string(), "--level",
                           "system"});
  CHECK(nosys.code == 1);
  CHECK(nosys.err.rfind("gruen:error:invalid_argument:", 0) == 0);
}

TEST_CASE("williams command") {
  TempDir dir;
  WriteFile(dir / "j.csv", kJudgments);
  const Run same = Gruen({"williams", "--judgments", (dir / "j.csv").string(), "--metric-a",
                          "a", "--metric-b", "same", "--dimension", "grammar"});
  CHECK(same.code == 0);
  CHECK(same.out.find("t 0\n") != std::string::npos);
  CHECK(same.out.find("p 0.5\n") != std::string::npos);

  const Run dominant = Gruen({"williams", "--judgments", (dir / "j.csv").string(),
                              "--metric-a", "a", "--metric-b", "b", "--dimension",
                              "grammar", "--coef", "spearman"});
  CHECK(dominant.code == 0);
  CHECK(dominant.out.find("n 6\n") != std::string::npos);
  CHECK(dominant.out.find("r12 0.942857") != std::string::npos);

  WriteFile(dir / "three.csv",
            "instance_id,human:g,metric:a,metric:b\n1,1,1,2\n2,2,3,1\n3,3,2,3\n");
  const Run small = Gruen({"williams", "--judgments", (dir / "three.csv").string(),
                           "--metric-a", "a", "--metric-b", "b", "--dimension", "g"});
  CHECK(small.code == 1);
  CHECK(small.err.find("n >= 4") != std::string::npos);

  const Run missing = Gruen({"williams", "--judgments", (dir / "j.csv").string(),
                             "--metric-a", "a", "--metric-b", "zzz", "--dimension",
                             "grammar"});
  CHECK(missing.code == 1);
}

TEST_CASE("plotdata command") {
  TempDir dir;
  WriteFile(dir / "j.csv", "instance_id,human:overall,metric:x\nd1,1,0\nd2,2,0\nd3,5,0\n");
  WriteFile(dir / "s.jsonl",
            "{\"id\":\"d1\",\"gruen\":0.2}\n{\"id\":\"d2\",\"gruen\":0.4}\n"
            "{\"id\":\"d3\",\"gruen\":0.9}\n");
  const std::string out = (dir / "plot.csv").string();
  const Run r = Gruen({"plotdata", "--scores", (dir / "s.jsonl").string(), "--judgments",
                       (dir / "j.csv").string(), "--out", out, "--bins", "4"});
  CHECK(r.code == 0);
  CHECK(ReadFile(out) == "instance_id,human,metric\nd1,1,0.2\nd2,2,0.4\nd3,5,0.9\n");
  // Four bins of width 1 over [1, 5]; bin 2 is empty and omitted.
  CHECK(ReadFile(out + ".bins.csv") ==
        "bin,lower,upper,count,mean_metric\n0,1,2,1,0.2\n1,2,3,1,0.4\n3,4,5,1,0.9\n");

  WriteFile(dir / "other.jsonl", "{\"id\":\"zz\",\"gruen\":0.2}\n");
  const Run disjoint = Gruen({"plotdata", "--scores", (dir / "other.jsonl").string(),
                              "--judgments", (dir / "j.csv").string(), "--out", out});
  CHECK(disjoint.code == 2);
  CHECK(ReadFile(out) == "instance_id,human,metric\n");
  CHECK(disjoint.err.find("gruen:warning: unmatched") != std::string::npos);
}

TEST_CASE("config init") {
  TempDir dir;
  const Run r = Gruen({"config", "init"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["redundancy"]["penalty"] == 0.1);
  const std::string path = (dir / "c.json").string();
  CHECK(Gruen({"config", "init", "--output", path}).code == 0);
  CHECK(ReadFile(path) == r.out);
  CHECK(Gruen({"config", "init", "--output", path}).code == 1);
  CHECK(Gruen({"config", "init", "--output", path, "--force"}).code == 0);
  CHECK(Gruen({"--version"}).code == 0);
}

}  // namespace
}  // namespace gruen
