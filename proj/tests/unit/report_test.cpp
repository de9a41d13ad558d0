// Copyright 2026 The moralsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "json.hpp"
#include "moralsim/commands.hpp"
#include "moralsim/config.hpp"
#include "moralsim/errors.hpp"
#include "moralsim/report.hpp"
#include "support/temp_dir.hpp"

namespace moralsim {
namespace {

namespace fs = std::filesystem;
using testing::Slurp;
using testing::Spit;
using testing::TempDir;

constexpr const char* kConfig = R"({
  "game": "IPD",
  "horizon": 300,
  "master_seed": 11,
  "seeds": 3,
  "reward_defaults": {"beta": 0.5},
  "agents": {
    "mixed": {"type": "learner", "reward": {"kind": "virtue_mixed"}},
    "tft": {"type": "scripted", "policy": "TFT"}
  },
  "pairings": [{"id": "mix,tft", "M": "mixed", "O": "tft"},
               {"M": "mixed", "O": "mixed"}]
})";

std::size_t CountLines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

TEST_CASE("fixed formatting") {
  CHECK(FormatFixed(0.0) == "0.000000");
  CHECK(FormatFixed(-0.0) == "0.000000");
  CHECK(FormatFixed(-1e-9) == "0.000000");
  CHECK(FormatFixed(1.0 / 3.0) == "0.333333");
  CHECK(FormatFixed(-2.5) == "-2.500000");
  CHECK(FormatFixed(600) == "600.000000");
}

TEST_CASE("digest is 64-bit FNV-1a") {
  CHECK(Digest("") == "cbf29ce484222325");
  CHECK(Digest("a") == "af63dc4c8601ec8c");
  CHECK(Digest("foobar") == "85944171f73967e8");
}

TEST_CASE("summary rows follow the versioned schema") {
  const LoadedConfig c = ParseConfig(kConfig);
  const ExperimentResult r = RunExperiment(c.experiment);
  std::ostringstream out;
  WriteSummaryCsv(out, c.experiment, r);
  const std::string csv = out.str();
  CHECK(csv.rfind(
            "pairing_id,seed,game,agent_M_kind,agent_O_kind,G_collective,G_gini,G_min,"
            "coop_M_full,coop_O_full,coop_M_final,coop_O_final,strategy_M,strategy_O,"
            "deadlocks\n",
            0) == 0);
  CHECK(CountLines(csv) == 1 + 2 * 3);
  CHECK(csv.find("\"mix,tft\",0,IPD,learner:virtue_mixed,scripted:TFT,") != std::string::npos);
  CHECK(csv.find("mixed_vs_mixed,2,IPD,") != std::string::npos);
}

TEST_CASE("traces round-trip and reproduce the online metrics") {
  const LoadedConfig c = ParseConfig(kConfig);
  const ExperimentResult r = RunExperiment(c.experiment);
  std::stringstream io;
  WriteTracesCsv(io, r);
  CHECK(CountLines(io.str()) == 1 + 6 * 300);
  const std::vector<TraceRecord> back = ReadTracesCsv(io);
  REQUIRE(back.size() == r.cells.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].pairing_id == r.cells[i].pairing_id);
    CHECK(back[i].seed == r.cells[i].seed);
    const OutcomeSummary online = r.cells[i].summary;
    const OutcomeSummary offline = Summarize(back[i].trace, c.experiment.window_fraction);
    CHECK(std::abs(online.collective - offline.collective) <= 1e-12);
    CHECK(std::abs(online.gini - offline.gini) <= 1e-12);
    CHECK(std::abs(online.min - offline.min) <= 1e-12);
    CHECK(online.final_cooperation_m == offline.final_cooperation_m);
    CHECK(online.deadlocks == offline.deadlocks);
  }
}

TEST_CASE("trace reader rejects schema drift") {
  std::istringstream empty("");
  CHECK_THROWS_AS(ReadTracesCsv(empty), Error);
  std::istringstream header("pairing_id,seed\n");
  CHECK_THROWS_AS(ReadTracesCsv(header), Error);
  std::ostringstream good;
  WriteTracesCsv(good, ExperimentResult{});
  std::istringstream bad(good.str() + "p,0,0,init,C,X,3,3,3,3,1,1,0,0\n");
  CHECK_THROWS_AS(ReadTracesCsv(bad), Error);
}

TEST_CASE("run writes every artifact and refuses to overwrite") {
  TempDir tmp;
  Spit(tmp / "c.json", kConfig);
  std::ostringstream out, err;
  RunOptions options;
  options.out_dir = tmp / "run";
  REQUIRE(CmdRun(tmp / "c.json", options, out, err) == kExitOk);
  for (const char* f : {"config.effective.json", "summary.csv", "traces.csv", "run.jsonl"}) {
    CHECK(fs::exists(tmp / "run" / f));
  }
  const std::string first = Slurp(tmp / "run" / "summary.csv");

  std::ostringstream err2;
  CHECK(CmdRun(tmp / "c.json", options, out, err2) == kExitRefused);
  CHECK(err2.str().find("--force") != std::string::npos);
  CHECK(Slurp(tmp / "run" / "summary.csv") == first);

  options.force = true;
  options.workers = 3;
  CHECK(CmdRun(tmp / "c.json", options, out, err) == kExitOk);
  CHECK(Slurp(tmp / "run" / "summary.csv") == first);

  // The logged effective config reproduces the run.
  RunOptions replay;
  replay.out_dir = tmp / "replay";
  CHECK(CmdRun(tmp / "run" / "config.effective.json", replay, out, err) == kExitOk);
  CHECK(Slurp(tmp / "replay" / "summary.csv") == first);
  CHECK(Slurp(tmp / "replay" / "config.effective.json") ==
        Slurp(tmp / "run" / "config.effective.json"));
}

TEST_CASE("run log events") {
  TempDir tmp;
  Spit(tmp / "c.json", kConfig);
  std::ostringstream out, err;
  RunOptions options;
  options.out_dir = tmp / "run";
  REQUIRE(CmdRun(tmp / "c.json", options, out, err) == kExitOk);
  std::istringstream log(Slurp(tmp / "run" / "run.jsonl"));
  std::vector<nlohmann::json> events;
  for (std::string line; std::getline(log, line);) events.push_back(nlohmann::json::parse(line));
  REQUIRE(events.size() == 1 + 3 + 6 + 1);
  CHECK(events.front()["event"] == "run_start");
  CHECK(events.front()["seeds"] == nlohmann::json::array({0, 1, 2}));
  CHECK(events.front()["config_digest"] ==
        "fnv1a64:" + Digest(Slurp(tmp / "run" / "config.effective.json")));
  CHECK(events[1]["event"] == "epsilon_schedule");
  CHECK(events[1]["decay_steps"] == 240);
  CHECK(events[4]["event"] == "cell");
  CHECK(events[4].contains("q_M"));
  CHECK_FALSE(events[4].contains("q_O"));
  CHECK(events.back()["event"] == "run_end");
}

TEST_CASE("run reports invalid configs") {
  TempDir tmp;
  Spit(tmp / "bad.json", R"({"agents": {}, "pairings": []})");
  std::ostringstream out, err;
  RunOptions options;
  options.out_dir = tmp / "run";
  CHECK(CmdRun(tmp / "bad.json", options, out, err) == kExitFailure);
  CHECK(err.str().find("error: /agents") != std::string::npos);
  CHECK_FALSE(fs::exists(tmp / "run"));
}

std::string GameConfig(const std::string& game) {
  return R"({"game": )" + game +
         R"(, "agents": {"a": {"type": "scripted", "policy": "AllC"}},
              "pairings": [{"M": "a", "O": "a"}]})";
}

TEST_CASE("validate prints the dilemma traits") {
  TempDir tmp;
  const std::pair<std::string, std::string> cases[] = {
      {"\"IPD\"", "greed=true fear=true"},
      {"\"IVD\"", "greed=true fear=false"},
      {"\"ISH\"", "greed=false fear=true"}};
  for (const auto& [game, expected] : cases) {
    Spit(tmp / "g.json", GameConfig(game));
    std::ostringstream out, err;
    CHECK(CmdValidate(tmp / "g.json", out, err) == kExitOk);
    CHECK(out.str().find(expected) != std::string::npos);
    CHECK(err.str().empty());
  }
  Spit(tmp / "h.json",
       GameConfig(R"({"name": "Harmony", "payoffs":
                      {"CC": [4, 4], "CD": [3, 2], "DC": [2, 3], "DD": [1, 1]}})"));
  std::ostringstream out, err;
  CHECK(CmdValidate(tmp / "h.json", out, err) == kExitOk);
  CHECK(err.str().find("warning") != std::string::npos);

  Spit(tmp / "x.json", GameConfig("\"Chicken\""));
  std::ostringstream out2, err2;
  CHECK(CmdValidate(tmp / "x.json", out2, err2) == kExitFailure);
  CHECK(err2.str().find("/game") != std::string::npos);
}

TEST_CASE("sweep writes one reproducible sub-run per value") {
  TempDir tmp;
  Spit(tmp / "c.json", kConfig);
  std::ostringstream out, err;
  RunOptions options;
  options.out_dir = tmp / "sweep";
  REQUIRE(CmdSweep(tmp / "c.json", "reward_defaults.beta", {0, 0.5, 1}, options, out, err) ==
          kExitOk);
  std::vector<std::string> dirs;
  for (const auto& e : fs::directory_iterator(tmp / "sweep")) {
    dirs.push_back(e.path().filename().string());
  }
  std::sort(dirs.begin(), dirs.end());
  CHECK(dirs == std::vector<std::string>{"reward_defaults.beta=0", "reward_defaults.beta=0.5",
                                         "reward_defaults.beta=1"});
  const LoadedConfig zero = LoadConfig(tmp / "sweep" / dirs[0] / "config.effective.json");
  CHECK(zero.experiment.pairings[0].agent_m.learner().reward.params().beta == 0);

  RunOptions replay;
  replay.out_dir = tmp / "replay";
  CHECK(CmdRun(tmp / "sweep" / dirs[2] / "config.effective.json", replay, out, err) == kExitOk);
  CHECK(Slurp(tmp / "replay" / "summary.csv") == Slurp(tmp / "sweep" / dirs[2] / "summary.csv"));
}

TEST_CASE("sweep errors") {
  TempDir tmp;
  Spit(tmp / "c.json", kConfig);
  RunOptions options;
  options.out_dir = tmp / "sweep";
  std::ostringstream out, err;
  CHECK(CmdSweep(tmp / "c.json", "reward_defaults.beta", {}, options, out, err) == kExitFailure);
  std::ostringstream err2;
  CHECK(CmdSweep(tmp / "c.json", "game", {1}, options, out, err2) == kExitFailure);
  CHECK(err2.str().find("not a numeric") != std::string::npos);
  CHECK_FALSE(fs::exists(tmp / "sweep"));
}

}  // namespace
}  // namespace moralsim
