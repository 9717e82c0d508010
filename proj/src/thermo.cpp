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

#include "casimir/thermo.hpp"

#include <cmath>
#include <numbers>

#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/specfun.hpp"

namespace casimir {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTiny = 1e-300;
const cd kI(0.0, 1.0);
// small beta puts many density oscillations in one panel
constexpr int kThermalIntervals = 1 << 17;

void check_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw Error(ErrorKind::Domain, "beta must be positive");
}

// int_0^inf w(v) e(v) dv for a weight decaying like e^{-beta v}, split at 1/beta;
// the head uses v = u^2 / beta so a log singularity at 0 becomes bounded.
template <class W>
double thermal_integral(const ObstacleConfiguration& config, double beta, double rel_tol, W&& w,
                        const char* what) {
  const double v1 = 1.0 / beta;
  auto head = adaptive_integrate<double>(
      [&](double s) {
        const double v = v1 * s * s;
        return 2.0 * v1 * s * w(v) * spectral_density(config, v);
      },
      0.0, 1.0, kTiny, rel_tol, kThermalIntervals);
  TailModel tail;
  tail.exp_rate = beta;
  tail.panel_width = 4.0 * v1;
  auto rest = semi_infinite_integrate<double>(
      [&](double v) { return w(v) * spectral_density(config, v); }, v1, tail, kTiny, rel_tol, 80,
      kThermalIntervals);
  if (!head.converged || !rest.converged)
    throw Error(ErrorKind::MaxSubdivisions, std::string(what) + " integral did not converge");
  return head.value + rest.value;
}

}  // namespace

double log_eta(const ObstacleConfiguration& config, double beta, double rel_tol) {
  require_admissible(config);
  check_beta(beta);
  return thermal_integral(config, beta, rel_tol,
                          [beta](double v) { return std::log(-std::expm1(-beta * v)); }, "log eta");
}

double dbeta_log_eta(const ObstacleConfiguration& config, double beta, double rel_tol) {
  require_admissible(config);
  check_beta(beta);
  return thermal_integral(config, beta, rel_tol,
                          [beta](double v) { return v / std::expm1(beta * v); }, "d_beta log eta");
}

HighTConstants hight_constants(const ObstacleConfiguration& config, double rel_tol) {
  require_admissible(config);
  const double c = 4.0 * kPi * config.max_alpha();
  HighTConstants out;
  // [0, c], v = c s^2; components (1, log v, 1 - log v)
  auto head = adaptive_integrate<Eigen::VectorXd>(
      [&](double s) {
        const double v = c * s * s;
        const double w = 2.0 * c * s * spectral_density(config, v);
        const double lv = std::log(v);
        Eigen::VectorXd r(3);
        r << w, w * lv, w * (1.0 - lv);
        return r;
      },
      0.0, 1.0, kTiny, rel_tol);
  // [c, inf), free part, algebraic decay
  TailModel alg;
  alg.decay_order = 2.0;
  alg.panel_width = c;
  auto free = semi_infinite_integrate<Eigen::VectorXd>(
      [&](double v) {
        const double e0 = free_density(config, v);
        const double lv = std::log(v);
        Eigen::VectorXd r(3);
        r << e0, e0 * lv, e0 * (1.0 - lv);
        return r;
      },
      c, alg, kTiny, rel_tol);
  Eigen::VectorXd total = head.value + free.value;
  out.error = head.error_estimate + free.error_estimate;
  if (config.size() > 1) {
    // [c, inf), scattering part rotated to c + i t
    TailModel ex;
    ex.exp_rate = 2.0 * config.min_pair_distance();
    ex.panel_width = 1.0 / ex.exp_rate;
    auto sc = semi_infinite_integrate<Eigen::VectorXcd>(
        [&](double t) {
          const cd z(c, t);
          const cd g = kI * scattering_density(config, z);
          const cd lz = std::log(z);
          Eigen::VectorXcd r(3);
          r << g, g * lz, g * (1.0 - lz);
          return r;
        },
        0.0, ex, kTiny * 1e10, rel_tol);
    total += sc.value.real();
    out.error += sc.error_estimate;
  }
  out.c_total = total(0);
  out.c_log = total(1);
  out.c_entropy = total(2);
  return out;
}

ThermoModel low_temperature_model(double e_vac, const FCoefficients& f, double beta, int jmax) {
  ThermoModel m{e_vac, e_vac, 0.0};
  const double pi2 = kPi * kPi;
  for (int j = 0; j <= jmax && j < static_cast<int>(f.values.size()); ++j) {
    const double b = std::abs(bernoulli_even(j).value());
    const double fj = f.values[static_cast<std::size_t>(j)];
    const double common = std::pow(2.0 * kPi, 2 * j) * b * fj / std::pow(beta, 2 * j);
    m.F -= pi2 / (beta * beta) * common / ((j + 1.0) * (2.0 * j + 1.0));
    m.U += pi2 / (beta * beta) * common / (j + 1.0);
    m.S += 2.0 * pi2 / beta * common / (2.0 * j + 1.0);
  }
  return m;
}

ThermoModel high_temperature_model(const HighTConstants& c, double beta) {
  const double lb = std::log(beta);
  return {c.c_total * lb / beta + c.c_log / beta, c.c_total / beta, -c.c_total * lb + c.c_entropy};
}

ThermoContext make_thermo_context(const ObstacleConfiguration& config, double rel_tol) {
  require_admissible(config);
  ThermoContext ctx{config, 0.0, EnergyRoute::GeneralBorn, {}, {}, rel_tol};
  try {
    ctx.e_vac = energy_born(config).total;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::TailBoundUnreachable) throw;
    ctx.e_vac = energy_direct(config).total;
    ctx.e_vac_route = EnergyRoute::DirectQuadrature;
  }
  ctx.f = f_coefficients(config, 1);
  ctx.hight = hight_constants(config, rel_tol);
  return ctx;
}

ThermoPoint thermo_point(const ThermoContext& ctx, double beta) {
  check_beta(beta);
  ThermoPoint p;
  p.beta = beta;
  p.e_vac = ctx.e_vac;
  p.log_eta = log_eta(ctx.config, beta, ctx.rel_tol);
  p.dbeta_log_eta = dbeta_log_eta(ctx.config, beta, ctx.rel_tol);
  p.F_ren = ctx.e_vac + p.log_eta / beta;
  p.U_ren = ctx.e_vac + p.dbeta_log_eta;
  p.S_ren = beta * p.dbeta_log_eta - p.log_eta;
  p.lowT_model = low_temperature_model(ctx.e_vac, ctx.f, beta, 1);
  p.highT_model = high_temperature_model(ctx.hight, beta);
  return p;
}

ThermoPoint thermo_point(const ObstacleConfiguration& config, double beta, double rel_tol) {
  return thermo_point(make_thermo_context(config, rel_tol), beta);
}

}  // namespace casimir
