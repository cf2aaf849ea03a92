// Copyright 2026 The SoftModes Authors.
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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "softmodes/cli.hpp"
#include "softmodes/dataset.hpp"

using namespace softmodes;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "softmodes");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t line_count(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) ++n;
  return n;
}

}  // namespace

TEST_CASE("cli end to end") {
  const auto dir = std::filesystem::temp_directory_path() / "softmodes_cli_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const std::string data = (dir / "ccm.csv").string();

  auto gen = run({"generate", "ccm", "--n", "300", "--d", "40", "--k", "3", "--eps", "0.1",
                  "--seed", "4", data});
  REQUIRE(gen.code == 0);
  const CategoricalDataset ds = load_csv(data, {.label_column = "label"});
  CHECK(ds.n() == 300);
  CHECK(ds.d() == 40);

  const std::string assignments = (dir / "assign.txt").string();
  const std::string trace = (dir / "trace.csv").string();
  auto cl = run({"cluster", data, "--k", "3", "--rounding", "soft", "--t", "2", "--label-col",
                 "label", "--epochs", "2", "--assignments", assignments, "--trace", trace});
  REQUIRE(cl.code == 0);
  CHECK(cl.out.find("epoch 0") != std::string::npos);
  CHECK(cl.out.find("accuracy mean=") != std::string::npos);
  CHECK(line_count(assignments) == 300);
  std::ifstream tin(trace);
  std::string header;
  std::getline(tin, header);
  CHECK(header == "epoch,iteration,objective,accuracy");

  auto ev = run({"evaluate", "--pred", assignments, "--truth", data, "--truth-col", "label"});
  REQUIRE(ev.code == 0);
  CHECK(ev.out.rfind("accuracy,", 0) == 0);
  CHECK(ev.out.find("pred,truth0") != std::string::npos);

  auto lloyd = run({"cluster", data, "--k", "3", "--algorithm", "lloyd", "--label-col", "label"});
  CHECK(lloyd.code == 0);

  auto bbm = run({"generate", "bbm", "--n", "40", "--d", "20", "--p", "0.4", "--q", "0.1",
                  (dir / "bbm.csv").string()});
  CHECK(bbm.code == 0);
  CHECK(line_count(dir / "bbm.csv") == 41);
}

TEST_CASE("cli field") {
  auto f = run({"field", "--rounding", "soft", "--t", "2", "--resolution", "4"});
  REQUIRE(f.code == 0);
  CHECK(f.out.rfind("x1,x2,x3,dx1,dx2,dx3\n", 0) == 0);
  auto bad = run({"field", "--rounding", "soft", "--t", "0.5"});
  CHECK(bad.code == 1);
  CHECK(bad.err.rfind("error:", 0) == 0);
}

TEST_CASE("cli experiment") {
  const auto dir = std::filesystem::temp_directory_path() / "softmodes_cli_experiment";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto config = dir / "sweep.json";
  std::ofstream(config) << R"({"data": {"model": "bbm", "n": 100, "d": 100, "p": 0.4,
    "q": 0.05}, "algorithms": [{"name": "kmodes"}], "axis": "q", "values": [0.05, 0.1],
    "epochs": 2, "seed": 1})";
  auto ex = run({"experiment", "--config", config.string(), "--out", (dir / "out").string()});
  REQUIRE(ex.code == 0);
  CHECK(std::filesystem::exists(dir / "out" / "results.csv"));
  CHECK(line_count(dir / "out" / "results.csv") == 5);
}

TEST_CASE("cli errors") {
  CHECK(run({"cluster", "/nonexistent.csv"}).code == 1);
  CHECK(run({"bogus"}).code != 0);
  const auto path = std::filesystem::temp_directory_path() / "softmodes_cli_small.csv";
  std::ofstream(path) << "a,b\nx,y\nz,w\n";
  auto big_k = run({"cluster", path.string(), "--k", "5"});
  CHECK(big_k.code == 1);
  CHECK(big_k.err.find("error:") != std::string::npos);
}
