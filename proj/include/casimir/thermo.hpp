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

#include "casimir/model.hpp"
#include "casimir/spectral.hpp"
#include "casimir/vacuum.hpp"

namespace casimir {

// log eta(beta) = int_0^inf log(1 - e^{-beta v}) e(v) dv
double log_eta(const ObstacleConfiguration& config, double beta, double rel_tol = 1e-12);
// d/dbeta log eta = int_0^inf v e(v) / (e^{beta v} - 1) dv
double dbeta_log_eta(const ObstacleConfiguration& config, double beta, double rel_tol = 1e-12);

struct HighTConstants {
  double c_total = 0.0;    // int e
  double c_log = 0.0;      // int log(v) e
  double c_entropy = 0.0;  // int (1 - log v) e, integrated on its own
  double error = 0.0;
};
HighTConstants hight_constants(const ObstacleConfiguration& config, double rel_tol = 1e-12);

struct ThermoModel {
  double F = 0.0;
  double U = 0.0;
  double S = 0.0;
};

// Low temperature: terms j = 0..jmax of the Bernoulli-number expansion.
ThermoModel low_temperature_model(double e_vac, const FCoefficients& f, double beta, int jmax);
// High temperature: leading log(beta)/beta and 1/beta terms.
ThermoModel high_temperature_model(const HighTConstants& c, double beta);

// Quantities shared by every beta on a grid.
struct ThermoContext {
  ObstacleConfiguration config;
  double e_vac = 0.0;
  EnergyRoute e_vac_route = EnergyRoute::GeneralBorn;
  FCoefficients f;
  HighTConstants hight;
  double rel_tol = 1e-12;
};
ThermoContext make_thermo_context(const ObstacleConfiguration& config, double rel_tol = 1e-12);

struct ThermoPoint {
  double beta = 0.0;
  double log_eta = 0.0;
  double dbeta_log_eta = 0.0;
  double e_vac = 0.0;
  double F_ren = 0.0;
  double U_ren = 0.0;
  double S_ren = 0.0;  // beta d_beta log eta - log eta
  ThermoModel lowT_model;
  ThermoModel highT_model;
};

ThermoPoint thermo_point(const ThermoContext& ctx, double beta);
ThermoPoint thermo_point(const ObstacleConfiguration& config, double beta, double rel_tol = 1e-12);

}  // namespace casimir
