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

#include "moralsim/commands.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "moralsim/errors.hpp"
#include "moralsim/games.hpp"
#include "moralsim/report.hpp"

namespace moralsim {

namespace fs = std::filesystem;

namespace {

void PrintIssues(const ConfigError& e, std::ostream& err) {
  for (const ConfigIssue& issue : e.issues()) {
    err << "error: " << (issue.path.empty() ? "<document>" : issue.path) << ": "
        << issue.message << '\n';
  }
}

void WriteFile(const fs::path& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary);
  f << bytes;
  f.close();
  if (!f) throw Error(ErrorKind::kIo, "cannot write " + path.string());
}

template <typename Fn>
void WriteStream(const fs::path& path, Fn&& fn) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  fn(f);
  f.close();
  if (!f) throw Error(ErrorKind::kIo, "cannot write " + path.string());
}

fs::path ResolveOutDir(const RunOptions& options, const LoadedConfig& config) {
  if (!options.out_dir.empty()) return options.out_dir;
  if (!config.output_dir.empty()) return config.output_dir;
  throw Error(ErrorKind::kInvalidInput, "no output directory: set output_dir or pass --out");
}

// Returns false when the directory exists, is not empty and --force is off.
bool PrepareDir(const fs::path& dir, bool force, std::ostream& err) {
  if (fs::exists(dir)) {
    if (!fs::is_directory(dir)) {
      err << "error: " << dir.string() << " exists and is not a directory\n";
      return false;
    }
    if (!fs::is_empty(dir) && !force) {
      err << "error: output directory " << dir.string()
          << " is not empty; pass --force to overwrite\n";
      return false;
    }
  }
  fs::create_directories(dir);
  return true;
}

std::string FormatValue(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  // Prefer the shortest form that reads back exactly.
  for (int precision = 1; precision < 17; ++precision) {
    char shorter[32];
    std::snprintf(shorter, sizeof(shorter), "%.*g", precision, v);
    if (std::strtod(shorter, nullptr) == v) return shorter;
  }
  return buf;
}

std::string SweepDirName(const std::string& field_path, double value) {
  std::string name = field_path;
  if (!name.empty() && name.front() == '/') name.erase(0, 1);
  for (char& c : name) {
    if (c == '/') c = '.';
  }
  return name + "=" + FormatValue(value);
}

template <typename Fn>
int Guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    PrintIssues(e, err);
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace

void RunInto(const LoadedConfig& config, const fs::path& dir, int workers) {
  const ExperimentResult result = RunExperiment(config.experiment, workers);
  WriteFile(dir / "config.effective.json", config.effective_json);
  WriteStream(dir / "summary.csv",
              [&](std::ostream& f) { WriteSummaryCsv(f, config.experiment, result); });
  WriteStream(dir / "traces.csv", [&](std::ostream& f) { WriteTracesCsv(f, result); });
  WriteStream(dir / "run.jsonl", [&](std::ostream& f) {
    WriteRunLog(f, config.experiment, config.effective_json, result, workers);
  });
}

int CmdRun(const fs::path& config_path, const RunOptions& options, std::ostream& out,
           std::ostream& err) {
  return Guarded(err, [&] {
    const LoadedConfig config = LoadConfig(config_path);
    const fs::path dir = ResolveOutDir(options, config);
    if (!PrepareDir(dir, options.force, err)) return kExitRefused;
    RunInto(config, dir, options.workers);
    out << "wrote " << config.experiment.pairings.size() * config.experiment.seeds.size()
        << " cells to " << dir.string() << '\n';
    return kExitOk;
  });
}

int CmdValidate(const fs::path& config_path, std::ostream& out, std::ostream& err) {
  return Guarded(err, [&] {
    const LoadedConfig config = LoadConfig(config_path);
    const PayoffMatrix& game = config.experiment.game;
    const DilemmaTraits traits = ClassifyDilemma(game);
    out << "OK " << config_path.string() << '\n';
    out << "game=" << game.name() << " greed=" << (traits.greed ? "true" : "false")
        << " fear=" << (traits.fear ? "true" : "false") << '\n';
    if (!traits.IsDilemma()) {
      err << "warning: game " << game.name() << " has neither greed nor fear\n";
    }
    if (traits.asymmetric) {
      err << "warning: game " << game.name() << " is not symmetric\n";
    }
    return kExitOk;
  });
}

int CmdSweep(const fs::path& config_path, const std::string& field_path,
             const std::vector<double>& values, const RunOptions& options,
             std::ostream& out, std::ostream& err) {
  return Guarded(err, [&] {
    if (values.empty()) {
      err << "error: sweep needs at least one value\n";
      return kExitFailure;
    }
    const std::string text = ReadTextFile(config_path);
    const LoadedConfig base = ParseConfig(text);
    // Build every variant before running any, so a bad field fails fast.
    std::vector<std::pair<std::string, LoadedConfig>> variants;
    for (double v : values) {
      variants.emplace_back(SweepDirName(field_path, v),
                            ParseConfig(SetNumericField(text, field_path, v)));
    }
    const fs::path dir = ResolveOutDir(options, base);
    if (!PrepareDir(dir, options.force, err)) return kExitRefused;
    for (const auto& [name, config] : variants) {
      const fs::path sub = dir / name;
      fs::create_directories(sub);
      RunInto(config, sub, options.workers);
      out << "wrote " << sub.string() << '\n';
    }
    return kExitOk;
  });
}

}  // namespace moralsim
