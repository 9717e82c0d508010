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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <variant>

#include "casimir/errors.hpp"
#include "casimir/parallel.hpp"
#include "casimir/spectral.hpp"
#include "casimir/thermo.hpp"
#include "casimir/vacuum.hpp"
#include "cli.hpp"
#include "json.hpp"

namespace casimir::cli {

namespace {

constexpr double kPi = std::numbers::pi;
using json = nlohmann::json;
using Field = std::variant<std::monostate, double, long long, std::string>;
using Row = std::vector<Field>;

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, Command cmd, const std::string& units, const std::vector<std::string>& columns,
            const std::vector<std::string>& meaning)
      : out_(out), ncol_(columns.size()) {
    out_ << "# pointcasimir " << kVersion << " " << to_string(cmd) << "; " << units << "\n";
    for (std::size_t i = 0; i < meaning.size() && i < columns.size(); ++i)
      out_ << "# " << columns[i] << ": " << meaning[i] << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << quote(columns[i]);
    out_ << "\n";
  }

  void row(const Row& r) {
    if (r.size() != ncol_) throw Error(ErrorKind::Domain, "internal: CSV row width mismatch");
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out_ << ",";
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>)
              out_ << format_number(v);
            else if constexpr (std::is_same_v<T, long long>)
              out_ << v;
            else if constexpr (std::is_same_v<T, std::string>)
              out_ << quote(v);
          },
          r[i]);
    }
    out_ << "\n";
  }

 private:
  std::ostream& out_;
  std::size_t ncol_;
};

int workers_of(const RunManifest& m) { return m.workers > 0 ? m.workers : 1; }

json breakdown_json(const BornEnergyBreakdown& b) {
  json j;
  j["route"] = to_string(b.route);
  j["total"] = b.total;
  j["e0_ren"] = b.e0_ren;
  j["e1_ren"] = b.e1_ren;
  j["higher_terms"] = b.higher_terms;
  j["interaction"] = b.interaction();
  j["tail_bound"] = b.tail_bound;
  j["quadrature_error"] = b.quadrature_error;
  j["J_used"] = b.J_used;
  j["rho"] = b.rho;
  json comps = json::array();
  for (const auto& c : b.components) comps.push_back({{"name", c.name}, {"value", c.value}, {"error", c.error}});
  j["components"] = comps;
  return j;
}

void write_json(const RunManifest& m, const json& doc) {
  if (m.json_path.empty()) return;
  std::ofstream f(m.json_path);
  if (!f) throw Error(ErrorKind::Config, "cannot open JSON output '" + m.json_path + "'");
  f << doc.dump(2) << "\n";
}

double sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

void run_validate(const RunManifest& m, std::ostream& out) {
  const ObstacleConfiguration cfg = build_configuration(m);
  const AdmissibilityReport r = validate(cfg);
  CsvWriter w(out, m.command, "distances in input units",
              {"N", "rho", "admissible", "slow_convergence", "min_pair_distance", "violations"},
              {"number of obstacles", "sqrt(sum over pairs of 1/((4 pi alpha_m)^2 d^2))", "rho < 1",
               "rho >= 0.95", "smallest pair distance", "failed conditions"});
  std::string v;
  for (const auto& s : r.violations) v += (v.empty() ? "" : "; ") + s;
  w.row({static_cast<long long>(cfg.size()), r.rho, std::string(r.admissible ? "true" : "false"),
         std::string(r.slow_convergence ? "true" : "false"), r.min_pair_distance, v});
}

void run_density(const RunManifest& m, std::ostream& out) {
  const ObstacleConfiguration cfg = build_configuration(m);
  require_admissible(cfg);
  const int J = m.J.value_or(10);
  const double scale = 4.0 * kPi * cfg.max_alpha();
  std::vector<double> vs;
  if (m.grid.empty()) {
    vs = GridAxis{1e-2 * scale, 1e2 * scale, 40}.points(true);
  } else {
    if (m.grid.size() != 1) throw Error(ErrorKind::Config, "density takes one grid axis vmin:vmax:n");
    if (m.log_grid && !(m.grid[0].lo > 0.0)) throw Error(ErrorKind::Config, "log spacing needs vmin > 0");
    vs = m.grid[0].points(m.log_grid);
  }
  const double r = rho(cfg);
  std::vector<Row> rows(vs.size());
  parallel_for(vs.size(), workers_of(m), [&](std::size_t i) {
    const double v = vs[i];
    if (!(v > 0.0)) throw Error(ErrorKind::Config, "density grid needs v > 0");
    const double e = spectral_density(cfg, v);
    const double partial = sum(born_density_terms(cfg, J, v));
    const double q = std::sqrt(1.0 + (v / scale) * (v / scale));
    const double tail = born_term_bound(cfg, J + 1, v) / (1.0 - r / q);
    rows[i] = {v, e, partial, tail, std::abs(e - partial)};
  });
  CsvWriter w(out, m.command, "frequency and density in absolute units",
              {"v", "e", "born_partial", "tail_bound", "abs_remainder"},
              {"frequency", "spectral density Re phi(v) from the exact inverse",
               "sum of Born density terms j = 0..J", "geometric bound on sum_{j>J} |e_j(v)|",
               "|e - born_partial|"});
  for (const auto& row : rows) w.row(row);
}

void run_energy(const RunManifest& m, std::ostream& out) {
  const ObstacleConfiguration cfg = build_configuration(m);
  require_admissible(cfg);
  const std::string route = m.route.empty() ? "all" : m.route;
  if (route != "all" && route != "direct" && route != "born" && route != "identical")
    throw Error(ErrorKind::Config, "route must be direct, born, identical or all");
  bool identical = true;
  for (std::size_t n = 0; n < cfg.size(); ++n)
    identical = identical && std::abs(cfg.alpha(n) - cfg.alpha(0)) <= 1e-12 * cfg.alpha(0);

  struct Out {
    BornEnergyBreakdown b;
    std::string unit;
  };
  std::vector<Out> res;
  std::vector<std::string> skipped;
  // with route "all", a Born route that cannot certify the tolerance is skipped, not fatal
  auto attempt = [&](const char* name, auto&& compute) {
    if (route != "all") return compute();
    try {
      compute();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::TailBoundUnreachable && e.kind() != ErrorKind::PathBudgetExceeded) throw;
      skipped.push_back(std::string(name) + ": " + e.what());
    }
  };
  if (route == "all" || route == "direct") res.push_back({energy_direct(cfg, m.v0, m.tol), "absolute"});
  if (route == "all" || route == "born")
    attempt("GeneralBorn", [&] { res.push_back({energy_born(cfg, m.tol, m.J), "absolute"}); });
  if (route == "identical" || (route == "all" && identical)) {
    attempt("IdenticalXi", [&] {
      const RescaledConfiguration rc = rescale(cfg);
      int J = m.J.value_or(0);
      if (!m.J) {
        const double tol = m.tol.value_or(default_energy_tol(cfg)) / rc.energy_scale;
        const double r = rescaled_rho(rc);
        J = 2;
        while (J < 64 && born_tail_bound_rescaled(rc.size(), r, J + 1) > 0.5 * tol) ++J;
        if (born_tail_bound_rescaled(rc.size(), r, J + 1) > 0.5 * tol)
          throw Error(ErrorKind::TailBoundUnreachable, "tail bound above tolerance at J = 64");
      }
      res.push_back({energy_identical(rc, J), "4 pi alpha"});
    });
  }
  CsvWriter w(out, m.command, "energies in the unit named per row",
              {"route", "unit", "total", "e0_ren", "e1_ren", "higher_sum", "interaction", "tail_bound",
               "quadrature_error", "J_used", "rho"},
              {"evaluation route", "energy unit", "renormalized vacuum energy",
               "self energy 2 sum alpha (1 - log 8 pi alpha ell)", "first pair term",
               "sum of Born terms j = 2..J", "total - e0_ren", "bound on the Born tail beyond J",
               "declared quadrature error", "Born truncation order", "admissibility parameter"});
  json doc = json::array();
  for (const auto& o : res) {
    w.row({std::string(to_string(o.b.route)), o.unit, o.b.total, o.b.e0_ren, o.b.e1_ren, sum(o.b.higher_terms),
           o.b.interaction(), o.b.tail_bound, o.b.quadrature_error, static_cast<long long>(o.b.J_used), o.b.rho});
    json j = breakdown_json(o.b);
    j["unit"] = o.unit;
    doc.push_back(j);
  }
  for (const auto& note : skipped) {
    out << "# skipped " << note << "\n";
    doc.push_back({{"route", note.substr(0, note.find(':'))}, {"skipped", note}});
  }
  write_json(m, doc);
}

void run_force(const RunManifest& m, std::ostream& out) {
  const ObstacleConfiguration cfg = build_configuration(m);
  require_admissible(cfg);
  const int J = m.J.value_or(10);
  ForceResult fr;
  std::string unit;
  std::vector<Vec3> pos;
  if (m.units == Units::Rescaled) {
    const RescaledConfiguration rc = make_rescaled(m.positions, m.alphas.front(), m.ell);
    fr = forces(rc, J, workers_of(m));
    unit = "rescaled (y coordinates, energy in units of 4 pi alpha)";
    pos = rc.y_positions;
  } else {
    fr = forces(cfg, J, workers_of(m));
    unit = "absolute";
    pos = cfg.positions();
  }
  CsvWriter w(out, m.command, "forces " + unit,
              {"n", "x", "y", "z", "Fx", "Fy", "Fz", "norm"},
              {"obstacle index", "position x", "position y", "position z",
               "x component of minus the energy gradient", "y component", "z component", "force magnitude"});
  for (std::size_t n = 0; n < pos.size(); ++n) {
    const Vec3& f = fr.per_obstacle[n];
    w.row({static_cast<long long>(n), pos[n].x(), pos[n].y(), pos[n].z(), f.x(), f.y(), f.z(), f.norm()});
  }
  json doc;
  doc["unit"] = unit;
  doc["step"] = fr.step;
  doc["richardson_error"] = fr.richardson_error;
  doc["pairwise_residual"] = fr.pairwise_residual;
  json pairs = json::array();
  for (Eigen::Index a = 0; a < fr.pairwise_intensities.rows(); ++a)
    for (Eigen::Index b = a + 1; b < fr.pairwise_intensities.cols(); ++b)
      pairs.push_back({{"m", a}, {"n", b}, {"intensity", fr.pairwise_intensities(a, b)}});
  doc["pairwise"] = pairs;
  write_json(m, doc);
}

void run_thermo(const RunManifest& m, std::ostream& out) {
  const ObstacleConfiguration cfg = build_configuration(m);
  const ThermoContext ctx = make_thermo_context(cfg, m.tol.value_or(1e-12));
  const std::vector<double> betas = m.betas.empty() ? std::vector<double>{0.01, 0.1, 1.0, 10.0, 100.0} : m.betas;
  std::vector<Row> rows(betas.size());
  parallel_for(betas.size(), workers_of(m), [&](std::size_t i) {
    const ThermoPoint p = thermo_point(ctx, betas[i]);
    rows[i] = {p.beta,          p.log_eta,         p.dbeta_log_eta,   p.F_ren,           p.U_ren,
               p.S_ren,         p.lowT_model.F,    p.lowT_model.U,    p.lowT_model.S,    p.highT_model.F,
               p.highT_model.U, p.highT_model.S};
  });
  CsvWriter w(out, m.command, "absolute units; vacuum energy " + format_number(ctx.e_vac) + " via " +
                                  to_string(ctx.e_vac_route),
              {"beta", "log_eta", "dbeta_log_eta", "F_ren", "U_ren", "S_ren", "lowT_F", "lowT_U", "lowT_S",
               "highT_F", "highT_U", "highT_S"},
              {"inverse temperature", "integral of log(1 - exp(-beta v)) e(v)",
               "integral of v e(v) / (exp(beta v) - 1)", "E_vac + log_eta / beta", "E_vac + dbeta_log_eta",
               "beta dbeta_log_eta - log_eta", "low temperature expansion of F_ren, terms j <= 1",
               "low temperature expansion of U_ren", "low temperature expansion of S_ren",
               "c_total log(beta) / beta + c_log / beta", "c_total / beta", "c_entropy - c_total log(beta)"});
  for (const auto& r : rows) w.row(r);
}

struct GridPoint {
  std::vector<double> coords;
  std::vector<Vec3> y;
};

void run_rescaled_grid(const RunManifest& m, std::ostream& out, const std::vector<std::string>& coord_names,
                       const std::vector<GridPoint>& points, int default_J) {
  const int J = m.J.value_or(default_J);
  const double alpha = m.alphas.empty() ? 1.0 : m.alphas.front();
  std::vector<Row> rows(points.size());
  std::vector<json> details(points.size());
  parallel_for(points.size(), workers_of(m), [&](std::size_t i) {
    const GridPoint& p = points[i];
    const RescaledConfiguration rc = make_rescaled(p.y, alpha, m.ell);
    const double r = rescaled_rho(rc);
    Row row;
    for (double c : p.coords) row.push_back(c);
    row.push_back(r);
    if (!rho_admissible(r)) {
      row.push_back(std::string("false"));
      for (int k = 0; k < 3; ++k) row.push_back(std::monostate{});
      details[i] = {{"coords", p.coords}, {"admissible", false}};
    } else {
      const BornEnergyBreakdown b = energy_identical(rc, J);
      const RelativeErrorReport rep = relative_error(rc, J);
      row.push_back(std::string("true"));
      row.push_back(b.interaction());
      row.push_back(rep.estimate);
      row.push_back(b.tail_bound);
      details[i] = {{"coords", p.coords}, {"admissible", true}, {"breakdown", breakdown_json(b)},
                    {"relative_error", rep.estimate}, {"exact_tail", rep.exact_tail}};
    }
    rows[i] = row;
  });
  std::vector<std::string> cols = coord_names;
  std::vector<std::string> meaning(coord_names.size(), "rescaled coordinate y = 4 pi alpha x");
  for (const char* c : {"rho", "admissible", "interaction", "relative_error", "tail_bound"}) cols.push_back(c);
  for (const char* c : {"admissibility parameter", "rho < 1", "interaction energy E1 + sum_{j=2..J} E_j",
                        "sum_{j>J} |E_j| over |interaction|", "bound on sum_{j>J} |E_j|"})
    meaning.push_back(c);
  CsvWriter w(out, m.command, "energies in units of 4 pi alpha, J = " + std::to_string(J), cols, meaning);
  for (const auto& r : rows) w.row(r);
  write_json(m, json(details));
}

void run_scan2(const RunManifest& m, std::ostream& out) {
  if (m.grid.size() > 1) throw Error(ErrorKind::Config, "scan2 takes one grid axis d0:d1:n");
  const GridAxis axis = m.grid.empty() ? GridAxis{1.5, 8.0, 66} : m.grid[0];
  std::vector<GridPoint> pts;
  for (double d : axis.points(m.log_grid)) pts.push_back({{d}, {Vec3(0, 0, 0), Vec3(d, 0, 0)}});
  run_rescaled_grid(m, out, {"d12"}, pts, 15);
}

void run_grid3(const RunManifest& m, std::ostream& out) {
  if (!m.grid.empty() && m.grid.size() != 2) throw Error(ErrorKind::Config, "grid3 takes r0:r1:n,z0:z1:n");
  const double a = m.a.value_or(5.0);
  const GridAxis ra = m.grid.empty() ? GridAxis{0.0, 8.0, 20} : m.grid[0];
  const GridAxis za = m.grid.empty() ? GridAxis{-8.0, 8.0, 20} : m.grid[1];
  std::vector<GridPoint> pts;
  for (double r : ra.points())
    for (double z : za.points())
      pts.push_back({{r, z}, {Vec3(0, 0, -0.5 * a), Vec3(0, 0, 0.5 * a), Vec3(r, 0, z)}});
  run_rescaled_grid(m, out, {"r", "z"}, pts, 10);
}

void run_grid4(const RunManifest& m, std::ostream& out) {
  if (!m.grid.empty() && m.grid.size() != 2) throw Error(ErrorKind::Config, "grid4 takes x0:x1:n,y0:y1:n");
  const double b = m.b.value_or(5.0);
  const GridAxis xa = m.grid.empty() ? GridAxis{-8.0, 8.0, 20} : m.grid[0];
  const GridAxis ya = m.grid.empty() ? GridAxis{-8.0, 8.0, 20} : m.grid[1];
  std::vector<Vec3> tri;
  for (int k = 0; k < 3; ++k) {
    const double th = 0.5 * kPi + 2.0 * kPi * k / 3.0;
    tri.emplace_back(b * std::cos(th), b * std::sin(th), 0.0);
  }
  std::vector<GridPoint> pts;
  for (double x : xa.points())
    for (double y : ya.points()) pts.push_back({{x, y}, {tri[0], tri[1], tri[2], Vec3(x, y, 0.0)}});
  run_rescaled_grid(m, out, {"x", "y"}, pts, 10);
}

}  // namespace

const char* to_string(Command c) {
  switch (c) {
    case Command::Validate: return "validate";
    case Command::Density: return "density";
    case Command::Energy: return "energy";
    case Command::Force: return "force";
    case Command::Thermo: return "thermo";
    case Command::Scan2: return "scan2";
    case Command::Grid3: return "grid3";
    case Command::Grid4: return "grid4";
  }
  return "unknown";
}

Command command_from_string(const std::string& s) {
  for (Command c : {Command::Validate, Command::Density, Command::Energy, Command::Force, Command::Thermo,
                    Command::Scan2, Command::Grid3, Command::Grid4})
    if (s == to_string(c)) return c;
  throw Error(ErrorKind::Config, "unknown command '" + s + "'");
}

void run(const RunManifest& m, std::ostream& out) {
  switch (m.command) {
    case Command::Validate: return run_validate(m, out);
    case Command::Density: return run_density(m, out);
    case Command::Energy: return run_energy(m, out);
    case Command::Force: return run_force(m, out);
    case Command::Thermo: return run_thermo(m, out);
    case Command::Scan2: return run_scan2(m, out);
    case Command::Grid3: return run_grid3(m, out);
    case Command::Grid4: return run_grid4(m, out);
  }
}

int exit_code_for(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) return err->is_config_error() ? 2 : 3;
  return 3;
}

}  // namespace casimir::cli
