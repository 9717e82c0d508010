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

#include <boost/program_options.hpp>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "casimir/errors.hpp"
#include "cli.hpp"
#include "json.hpp"

namespace casimir::cli {

namespace po = boost::program_options;
using Entries = std::map<std::string, std::vector<std::string>>;

namespace {

const char* const kKnownKeys[] = {"obstacles.units", "obstacles.ell", "obstacles.alpha", "obstacles.obstacle",
                                  "run.tol",         "run.J",         "run.v0",          "run.beta",
                                  "run.workers",     "run.route",     "grid.range",      "grid.a",
                                  "grid.b",          "grid.spacing"};

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorKind::Config, msg); }

double to_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    config_error(what + ": not a number: '" + s + "'");
  }
  while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
  if (used != s.size() || !std::isfinite(v)) config_error(what + ": not a number: '" + s + "'");
  return v;
}

int to_int(const std::string& s, const std::string& what) {
  const double v = to_double(s, what);
  if (v != std::floor(v) || std::abs(v) > 1e9) config_error(what + ": not an integer: '" + s + "'");
  return static_cast<int>(v);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\"");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\"");
  return s.substr(b, e - b + 1);
}

const std::string* single(const Entries& e, const std::string& key) {
  auto it = e.find(key);
  if (it == e.end() || it->second.empty()) return nullptr;
  if (it->second.size() > 1) config_error("key '" + key + "' given more than once");
  return &it->second.front();
}

Entries read_ini(const std::string& text) {
  po::options_description desc;
  for (const char* k : kKnownKeys) {
    if (std::string(k) == "obstacles.obstacle")
      desc.add_options()(k, po::value<std::vector<std::string>>());
    else
      desc.add_options()(k, po::value<std::string>());
  }
  std::istringstream is(text);
  po::variables_map vm;
  try {
    po::store(po::parse_config_file(is, desc, false), vm);
  } catch (const po::error& e) {
    config_error(std::string("config file: ") + e.what());
  }
  Entries out;
  for (const auto& [k, v] : vm) {
    if (k == "obstacles.obstacle")
      out[k] = v.as<std::vector<std::string>>();
    else
      out[k] = {v.as<std::string>()};
  }
  return out;
}

std::string scalar_text(const nlohmann::json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number()) return j.dump();
  config_error("config JSON: expected a number or string, got " + j.dump());
}

Entries read_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    config_error(std::string("config JSON: ") + e.what());
  }
  if (!doc.is_object()) config_error("config JSON: top level must be an object");
  Entries out;
  for (const auto& [section, body] : doc.items()) {
    if (!body.is_object()) config_error("config JSON: section '" + section + "' must be an object");
    for (const auto& [key, val] : body.items()) {
      const std::string name = section + "." + key;
      if (name == "obstacles.list") {
        if (!val.is_array()) config_error("config JSON: obstacles.list must be an array");
        for (const auto& ob : val) {
          if (!ob.is_object() || !ob.contains("position") || !ob["position"].is_array() ||
              ob["position"].size() != 3)
            config_error("config JSON: every obstacle needs a 3-vector 'position'");
          std::string line;
          for (const auto& c : ob["position"]) line += scalar_text(c) + " ";
          if (ob.contains("alpha")) line += scalar_text(ob["alpha"]);
          out["obstacles.obstacle"].push_back(line);
        }
      } else if (name == "run.beta" && val.is_array()) {
        std::string list;
        for (const auto& b : val) list += (list.empty() ? "" : ",") + scalar_text(b);
        out[name] = {list};
      } else {
        bool known = false;
        for (const char* k : kKnownKeys) known = known || name == k;
        if (!known || name == "obstacles.obstacle") config_error("config JSON: unknown key '" + name + "'");
        out[name] = {scalar_text(val)};
      }
    }
  }
  return out;
}

void apply_entries(RunManifest& m, const Entries& e) {
  if (auto s = single(e, "obstacles.units")) {
    const std::string u = trim(*s);
    if (u == "raw")
      m.units = Units::Raw;
    else if (u == "rescaled")
      m.units = Units::Rescaled;
    else
      config_error("obstacles.units must be 'raw' or 'rescaled'");
  }
  if (auto s = single(e, "obstacles.ell")) m.ell = to_double(*s, "obstacles.ell");
  std::optional<double> alpha_default;
  if (auto s = single(e, "obstacles.alpha")) alpha_default = to_double(*s, "obstacles.alpha");
  if (auto it = e.find("obstacles.obstacle"); it != e.end()) {
    m.positions.clear();
    m.alphas.clear();
    for (const auto& line : it->second) {
      std::istringstream is(line);
      std::vector<std::string> tok;
      for (std::string t; is >> t;) tok.push_back(t);
      if (tok.size() != 3 && tok.size() != 4)
        config_error("obstacle entry needs 'x y z [alpha]', got '" + line + "'");
      const Vec3 x(to_double(tok[0], "obstacle x"), to_double(tok[1], "obstacle y"),
                   to_double(tok[2], "obstacle z"));
      double a = 0.0;
      if (tok.size() == 4)
        a = to_double(tok[3], "obstacle alpha");
      else if (alpha_default)
        a = *alpha_default;
      else
        config_error("obstacle '" + line + "' has no alpha and obstacles.alpha is unset");
      m.positions.push_back(x);
      m.alphas.push_back(a);
    }
  } else if (alpha_default) {
    m.alphas.assign(1, *alpha_default);
  }
  if (auto s = single(e, "run.tol"); s && !m.tol) m.tol = to_double(*s, "run.tol");
  if (auto s = single(e, "run.J"); s && !m.J) m.J = to_int(*s, "run.J");
  if (auto s = single(e, "run.v0"); s && !m.v0) m.v0 = to_double(*s, "run.v0");
  if (auto s = single(e, "run.beta"); s && m.betas.empty()) m.betas = parse_list(*s);
  if (auto s = single(e, "run.workers"); s && m.workers == 0) m.workers = to_int(*s, "run.workers");
  if (auto s = single(e, "run.route"); s && m.route.empty()) m.route = trim(*s);
  if (auto s = single(e, "grid.range"); s && m.grid.empty()) m.grid = parse_grid(trim(*s));
  if (auto s = single(e, "grid.a"); s && !m.a) m.a = to_double(*s, "grid.a");
  if (auto s = single(e, "grid.b"); s && !m.b) m.b = to_double(*s, "grid.b");
  if (auto s = single(e, "grid.spacing")) {
    const std::string sp = trim(*s);
    if (sp != "log" && sp != "linear") config_error("grid.spacing must be 'log' or 'linear'");
    m.log_grid = sp == "log";
  }
}

}  // namespace

std::vector<double> GridAxis::points(bool log_spacing) const {
  std::vector<double> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    p[static_cast<std::size_t>(i)] =
        log_spacing ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))) : lo + t * (hi - lo);
  }
  return p;
}

std::vector<GridAxis> parse_grid(const std::string& text) {
  std::vector<GridAxis> out;
  for (const auto& part : split(text, ',')) {
    const auto f = split(trim(part), ':');
    if (f.size() != 3) config_error("grid axis must be lo:hi:n, got '" + part + "'");
    GridAxis g{to_double(f[0], "grid lo"), to_double(f[1], "grid hi"), to_int(f[2], "grid n")};
    if (g.n < 1) config_error("grid axis needs n >= 1");
    if (g.n > 1 && !(g.hi > g.lo)) config_error("grid axis needs hi > lo");
    out.push_back(g);
  }
  if (out.empty()) config_error("empty grid specification");
  return out;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) {
    const std::string t = trim(part);
    if (!t.empty()) out.push_back(to_double(t, "list entry"));
  }
  if (out.empty()) config_error("empty list");
  return out;
}

void load_config_text(RunManifest& m, const std::string& text, bool json) {
  apply_entries(m, json ? read_json(text) : read_ini(text));
}

void load_config(RunManifest& m, const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  const bool json = (path.size() >= 5 && path.substr(path.size() - 5) == ".json") ||
                    (first != std::string::npos && text[first] == '{');
  load_config_text(m, text, json);
}

ObstacleConfiguration build_configuration(const RunManifest& m) {
  if (m.positions.empty()) config_error("no obstacles given");
  if (m.units == Units::Raw) return ObstacleConfiguration(m.positions, m.alphas, m.ell);
  const double a = m.alphas.front();
  for (double x : m.alphas)
    if (std::abs(x - a) > 1e-12 * std::abs(a))
      throw Error(ErrorKind::NonIdenticalStrengths, "rescaled units need identical strengths");
  return make_rescaled(m.positions, a, m.ell).to_configuration();
}

}  // namespace casimir::cli
