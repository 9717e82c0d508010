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

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "casimir/errors.hpp"
#include "cli.hpp"

int main(int argc, char** argv) {
  using namespace casimir::cli;
  CLI::App app{"Casimir energies, forces and thermodynamics of point obstacles"};
  app.require_subcommand(1);
  app.fallthrough();

  RunManifest m;
  std::string grid, beta;
  std::optional<double> tol, v0, a, b;
  std::optional<int> J;
  app.add_option("--config", m.config_path, "INI or JSON configuration file");
  app.add_option("--out", m.output_path, "CSV output path (default stdout)");
  app.add_option("--json", m.json_path, "JSON output with the full breakdown per point");
  app.add_option("--tol", tol, "absolute energy tolerance");
  app.add_option("--J", J, "Born truncation order")->check(CLI::Range(0, 64));
  app.add_option("--v0", v0, "split frequency of the direct route");
  app.add_option("--beta", beta, "comma separated inverse temperatures");
  app.add_option("--grid", grid, "lo:hi:n[,lo:hi:n]");
  app.add_flag("--log", m.log_grid, "logarithmic grid spacing");
  app.add_option("--workers", m.workers, "worker threads")->check(CLI::Range(1, 1024));
  app.add_option("--route", m.route, "energy route: direct, born, identical or all");
  app.add_option("--a", a, "grid3 separation of the fixed pair (rescaled)");
  app.add_option("--b", b, "grid4 circumradius of the fixed triangle (rescaled)");

  const char* help[] = {"admissibility report",      "spectral density and Born partial sums",
                        "renormalized vacuum energy", "forces on every obstacle",
                        "free energy, internal energy, entropy", "two obstacles at varying distance",
                        "third obstacle around a fixed pair",   "fourth obstacle in the plane of a triangle"};
  const Command cmds[] = {Command::Validate, Command::Density, Command::Energy, Command::Force,
                          Command::Thermo,   Command::Scan2,   Command::Grid3,  Command::Grid4};
  for (int i = 0; i < 8; ++i) app.add_subcommand(to_string(cmds[i]), help[i]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    m.command = command_from_string(app.get_subcommands().front()->get_name());
    m.tol = tol;
    m.J = J;
    m.v0 = v0;
    m.a = a;
    m.b = b;
    if (!beta.empty()) m.betas = parse_list(beta);
    if (!grid.empty()) m.grid = parse_grid(grid);
    if (!m.config_path.empty()) load_config(m, m.config_path);
    std::ostringstream buf;
    run(m, buf);
    if (m.output_path.empty()) {
      std::cout << buf.str();
    } else {
      std::ofstream f(m.output_path);
      if (!f) throw casimir::Error(casimir::ErrorKind::Config, "cannot open output '" + m.output_path + "'");
      f << buf.str();
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return 0;
}
