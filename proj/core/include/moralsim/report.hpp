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

#ifndef MORALSIM_REPORT_HPP_
#define MORALSIM_REPORT_HPP_

// Result files. All numbers are printed in fixed 6-decimal notation so the
// bytes do not depend on the platform.
//
//   summary.csv  one row per (pairing, seed); columns kSummaryColumns
//   traces.csv   one row per step per match; columns kTraceColumns
//   run.jsonl    metadata events, one JSON object per line

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "moralsim/simulation.hpp"

namespace moralsim {

inline constexpr std::string_view kSummarySchemaVersion = "1";

inline constexpr std::array<std::string_view, 15> kSummaryColumns = {
    "pairing_id",  "seed",        "game",         "agent_M_kind", "agent_O_kind",
    "G_collective", "G_gini",     "G_min",        "coop_M_full",  "coop_O_full",
    "coop_M_final", "coop_O_final", "strategy_M", "strategy_O",   "deadlocks"};

inline constexpr std::array<std::string_view, 14> kTraceColumns = {
    "pairing_id", "seed",     "t",        "state_M",  "a_M",      "a_O",        "r_M_extr",
    "r_O_extr",   "r_M_intr", "r_O_intr", "eps_M",    "eps_O",    "deadlock_M", "deadlock_O"};

std::string FormatFixed(double v);

void WriteSummaryCsv(std::ostream& out, const ExperimentConfig& config,
                     const ExperimentResult& result);
void WriteTracesCsv(std::ostream& out, const ExperimentResult& result);

struct TraceRecord {
  std::string pairing_id;
  std::uint64_t seed = 0;
  MatchTrace trace;
};

// Parses traces.csv back into traces, in file order. Throws InvalidInput on a
// header or row that does not match the schema.
std::vector<TraceRecord> ReadTracesCsv(std::istream& in);

// FNV-1a 64-bit, as 16 lowercase hex digits.
std::string Digest(std::string_view bytes);

// JSON-lines metadata for one experiment run.
void WriteRunLog(std::ostream& out, const ExperimentConfig& config,
                 const std::string& effective_json, const ExperimentResult& result,
                 int workers);

}  // namespace moralsim

#endif  // MORALSIM_REPORT_HPP_
