// Copyright 2026 The pointcasimir Authors
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

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "casimir/model.hpp"

namespace casimir::cli {

enum class Command { Validate, Density, Energy, Force, Thermo, Scan2, Grid3, Grid4 };
const char* to_string(Command c);
Command command_from_string(const std::string& s);

enum class Units { Raw, Rescaled };

// lo:hi:n, n points including both ends
struct GridAxis {
  double lo = 0.0;
  double hi = 0.0;
  int n = 0;
  std::vector<double> points(bool log_spacing = false) const;
};
std::vector<GridAxis> parse_grid(const std::string& text);
std::vector<double> parse_list(const std::string& text);

struct RunManifest {
  Command command = Command::Validate;
  std::string config_path;
  std::string output_path;  // empty: stdout
  std::string json_path;    // optional full breakdown per point
  std::optional<double> tol;
  std::optional<int> J;
  std::optional<double> v0;
  std::vector<double> betas;
  std::vector<GridAxis> grid;
  bool log_grid = false;
  int workers = 0;  // 0: unset, treated as 1
  std::string route;  // energy: direct, born, identical, all (default)

  Units units = Units::Raw;
  double ell = 1.0;
  std::vector<Vec3> positions;
  std::vector<double> alphas;
  std::optional<double> a;  // grid3 separation
  std::optional<double> b;  // grid4 circumradius
};

// Fills the obstacle/run/grid fields from an INI or JSON file. Values already
// set on the manifest by flags win over the file.
void load_config(RunManifest& m, const std::string& path);
void load_config_text(RunManifest& m, const std::string& text, bool json);

// Raw configuration; rescaled input is converted with x = y / (4 pi alpha).
ObstacleConfiguration build_configuration(const RunManifest& m);

// Runs the command, writing CSV to `out` (and JSON when requested). Throws
// casimir::Error on failure.
void run(const RunManifest& m, std::ostream& out);

// Exit code for an exception escaping run(): 2 for configuration problems, 3 otherwise.
int exit_code_for(const std::exception& e);

inline constexpr const char* kVersion = "0.1.0";

}  // namespace casimir::cli
