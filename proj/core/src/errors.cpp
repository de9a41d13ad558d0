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

#include "moralsim/errors.hpp"

namespace moralsim {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNotFound:
      return "NotFound";
    case ErrorKind::kEpisodeDone:
      return "EpisodeDone";
    case ErrorKind::kDegenerateInput:
      return "DegenerateInput";
    case ErrorKind::kInvalidSpec:
      return "InvalidSpec";
    case ErrorKind::kInvalidInput:
      return "InvalidInput";
    case ErrorKind::kUnsupported:
      return "Unsupported";
    case ErrorKind::kInvalidConfig:
      return "InvalidConfig";
    case ErrorKind::kIo:
      return "Io";
  }
  return "Unknown";
}

}  // namespace moralsim
