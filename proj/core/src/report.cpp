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

#include "moralsim/report.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

#include "json.hpp"
#include "moralsim/errors.hpp"

#ifndef MORALSIM_VERSION
#define MORALSIM_VERSION "unknown"
#endif

namespace moralsim {

namespace {

std::string Quote(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  return fields;
}

template <std::size_t N>
std::string Header(const std::array<std::string_view, N>& columns) {
  std::string out;
  for (std::size_t i = 0; i < N; ++i) {
    if (i) out += ',';
    out += columns[i];
  }
  return out;
}

[[noreturn]] void BadRow(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::kInvalidInput,
              "traces.csv line " + std::to_string(line) + ": " + what);
}

double ParseDouble(const std::string& s, std::size_t line) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) BadRow(line, "bad number '" + s + "'");
  return v;
}

Action ParseActionField(const std::string& s, std::size_t line) {
  auto a = ParseAction(s);
  if (!a) BadRow(line, "bad action '" + s + "'");
  return *a;
}

bool ParseFlag(const std::string& s, std::size_t line) {
  if (s == "0") return false;
  if (s == "1") return true;
  BadRow(line, "bad flag '" + s + "'");
}

nlohmann::json TableToJson(const QTable& q) {
  nlohmann::json j = nlohmann::json::object();
  for (GameState s : GameState::All()) {
    j[s.ToString()] = {q.Get(s, Action::kCooperate), q.Get(s, Action::kDefect)};
  }
  return j;
}

}  // namespace

std::string FormatFixed(double v) {
  if (v == 0.0) v = 0.0;  // no "-0.000000"
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  std::string out = buf;
  if (out == "-0.000000") out = "0.000000";
  return out;
}

void WriteSummaryCsv(std::ostream& out, const ExperimentConfig& config,
                     const ExperimentResult& result) {
  out << Header(kSummaryColumns) << '\n';
  for (const CellResult& c : result.cells) {
    const Pairing& p = config.pairings[c.pairing_index];
    const OutcomeSummary& s = c.summary;
    out << Quote(c.pairing_id) << ',' << c.seed << ',' << Quote(config.game.name()) << ','
        << Quote(p.agent_m.KindLabel()) << ',' << Quote(p.agent_o.KindLabel()) << ','
        << FormatFixed(s.collective) << ',' << FormatFixed(s.gini) << ','
        << FormatFixed(s.min) << ',' << FormatFixed(s.cooperation_m) << ','
        << FormatFixed(s.cooperation_o) << ',' << FormatFixed(s.final_cooperation_m) << ','
        << FormatFixed(s.final_cooperation_o) << ',' << Quote(c.strategy_m) << ','
        << Quote(c.strategy_o) << ',' << s.deadlocks << '\n';
  }
}

void WriteTracesCsv(std::ostream& out, const ExperimentResult& result) {
  out << Header(kTraceColumns) << '\n';
  for (const CellResult& c : result.cells) {
    const std::string prefix = Quote(c.pairing_id) + ',' + std::to_string(c.seed) + ',';
    const auto& rows = c.match.trace.rows;
    for (std::size_t t = 0; t < rows.size(); ++t) {
      const TraceRow& r = rows[t];
      out << prefix << t << ',' << r.state_m.ToString() << ',' << ActionChar(r.action_m)
          << ',' << ActionChar(r.action_o) << ',' << FormatFixed(r.extrinsic_m) << ','
          << FormatFixed(r.extrinsic_o) << ',' << FormatFixed(r.intrinsic_m) << ','
          << FormatFixed(r.intrinsic_o) << ',' << FormatFixed(r.epsilon_m) << ','
          << FormatFixed(r.epsilon_o) << ',' << (r.deadlock_m ? 1 : 0) << ','
          << (r.deadlock_o ? 1 : 0) << '\n';
    }
  }
}

std::vector<TraceRecord> ReadTracesCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::kInvalidInput, "traces.csv is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != Header(kTraceColumns)) {
    throw Error(ErrorKind::kInvalidInput, "traces.csv header does not match the schema");
  }
  std::vector<TraceRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = SplitCsvLine(line);
    if (f.size() != kTraceColumns.size()) {
      BadRow(line_no, "expected " + std::to_string(kTraceColumns.size()) + " fields");
    }
    const std::uint64_t seed = std::strtoull(f[1].c_str(), nullptr, 10);
    const auto t = static_cast<std::size_t>(std::strtoull(f[2].c_str(), nullptr, 10));
    if (t == 0 || records.empty() || records.back().pairing_id != f[0] ||
        records.back().seed != seed) {
      if (t != 0) BadRow(line_no, "match does not start at t=0");
      records.push_back({f[0], seed, {}});
    }
    MatchTrace& trace = records.back().trace;
    if (t != trace.size()) BadRow(line_no, "steps out of order");
    auto state = GameState::Parse(f[3]);
    if (!state) BadRow(line_no, "bad state '" + f[3] + "'");
    TraceRow r;
    r.state_m = *state;
    r.action_m = ParseActionField(f[4], line_no);
    r.action_o = ParseActionField(f[5], line_no);
    r.extrinsic_m = ParseDouble(f[6], line_no);
    r.extrinsic_o = ParseDouble(f[7], line_no);
    r.intrinsic_m = ParseDouble(f[8], line_no);
    r.intrinsic_o = ParseDouble(f[9], line_no);
    r.epsilon_m = ParseDouble(f[10], line_no);
    r.epsilon_o = ParseDouble(f[11], line_no);
    r.deadlock_m = ParseFlag(f[12], line_no);
    r.deadlock_o = ParseFlag(f[13], line_no);
    trace.rows.push_back(r);
  }
  return records;
}

std::string Digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return buf;
}

void WriteRunLog(std::ostream& out, const ExperimentConfig& config,
                 const std::string& effective_json, const ExperimentResult& result,
                 int workers) {
  using nlohmann::json;
  out << json{{"event", "run_start"},
              {"version", MORALSIM_VERSION},
              {"summary_schema", kSummarySchemaVersion},
              {"config_digest", "fnv1a64:" + Digest(effective_json)},
              {"game", config.game.name()},
              {"horizon", config.horizon},
              {"master_seed", config.master_seed},
              {"seeds", config.seeds},
              {"pairings", config.pairings.size()},
              {"cells", result.cells.size()},
              {"exploring_start_prob", config.match_options.exploring_start_prob},
              {"workers", workers}}
             .dump()
      << '\n';
  for (const Pairing& p : config.pairings) {
    for (const AgentSpec* a : {&p.agent_m, &p.agent_o}) {
      if (!a->IsLearner()) continue;
      const LearnerConfig& c = a->learner().config;
      const auto decay_steps = static_cast<long long>(
          std::max(1.0, c.decay_fraction * static_cast<double>(config.horizon)));
      out << json{{"event", "epsilon_schedule"},
                  {"pairing_id", p.id},
                  {"agent", a->id},
                  {"decay", std::string(EpsilonDecayName(c.decay))},
                  {"epsilon_start", c.epsilon_start},
                  {"epsilon_end", c.epsilon_end},
                  {"decay_steps", decay_steps},
                  {"total_steps", config.horizon},
                  {"scope", "per_match"}}
                 .dump()
          << '\n';
    }
  }
  for (const CellResult& c : result.cells) {
    json cell = {{"event", "cell"},
                 {"pairing_id", c.pairing_id},
                 {"seed", c.seed},
                 {"strategy_M", c.strategy_m},
                 {"strategy_O", c.strategy_o},
                 {"deadlocks", c.summary.deadlocks}};
    if (c.match.q_m) cell["q_M"] = TableToJson(*c.match.q_m);
    if (c.match.q_o) cell["q_O"] = TableToJson(*c.match.q_o);
    out << cell.dump() << '\n';
  }
  out << json{{"event", "run_end"}, {"summary_rows", result.cells.size()}}.dump() << '\n';
}

}  // namespace moralsim
