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

#ifndef MORALSIM_TRACE_HPP_
#define MORALSIM_TRACE_HPP_

#include <vector>

#include "moralsim/games.hpp"

namespace moralsim {

// One simultaneous move. `state_m` is what M observed before acting; O
// observed its mirror.
struct TraceRow {
  GameState state_m;
  Action action_m = Action::kCooperate;
  Action action_o = Action::kCooperate;
  double extrinsic_m = 0.0;
  double extrinsic_o = 0.0;
  double intrinsic_m = 0.0;
  double intrinsic_o = 0.0;
  double epsilon_m = 0.0;
  double epsilon_o = 0.0;
  bool deadlock_m = false;
  bool deadlock_o = false;

  friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

struct MatchTrace {
  std::vector<TraceRow> rows;

  std::size_t size() const { return rows.size(); }
  bool empty() const { return rows.empty(); }
  friend bool operator==(const MatchTrace&, const MatchTrace&) = default;
};

enum class Player { kM, kO };

}  // namespace moralsim

#endif  // MORALSIM_TRACE_HPP_
