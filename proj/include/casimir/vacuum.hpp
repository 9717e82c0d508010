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

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "casimir/model.hpp"

namespace casimir {

enum class EnergyRoute { GeneralBorn, IdenticalXi, DirectQuadrature };
const char* to_string(EnergyRoute route);

struct EnergyComponent {
  std::string name;
  double value = 0.0;
  double error = 0.0;
};

// total = e0_ren + e1_ren + sum(higher_terms). For the direct route the
// position-independent part sits in e0_ren and everything else in e1_ren;
// the four quadrature groups are listed in `components`.
struct BornEnergyBreakdown {
  double e0_ren = 0.0;
  double e1_ren = 0.0;
  std::vector<double> higher_terms;  // E_2 .. E_J
  double tail_bound = 0.0;           // bound on sum_{j > J} |E_j|
  double quadrature_error = 0.0;
  double total = 0.0;
  int J_used = 0;
  double rho = 0.0;
  EnergyRoute route = EnergyRoute::GeneralBorn;
  std::vector<EnergyComponent> components;

  double interaction() const { return total - e0_ren; }
};

// 2 sum alpha_n [1 - log(8 pi alpha_n ell)]
double e0_ren(const ObstacleConfiguration& config);
// N [1 - log(8 pi alpha ell)] / (2 pi), in units of 4 pi alpha
double e0_ren_rescaled(const RescaledConfiguration& rc);

// sum_{j >= J} |E_j| bounds, J >= 2.
double born_tail_bound(const ObstacleConfiguration& config, int J);
double born_tail_bound_rescaled(std::size_t N, double rho, int J);

double default_energy_tol(const ObstacleConfiguration& config);

BornEnergyBreakdown energy_direct(const ObstacleConfiguration& config, std::optional<double> v0 = {},
                                  std::optional<double> tol = {});

// J chosen as the least J >= 2 whose tail bound is <= target_tol / 2 unless given.
BornEnergyBreakdown energy_born(const ObstacleConfiguration& config,
                                std::optional<double> target_tol = {}, std::optional<int> J = {});

inline constexpr double kPathBudget = 1e8;
// Identical obstacles through exponential integrals; energies in units of 4 pi alpha.
BornEnergyBreakdown energy_identical(const RescaledConfiguration& rc, int J);

// E_1^ren + sum_{j=2}^J E_j (absolute units), and the rescaled version.
double interaction_energy(const ObstacleConfiguration& config, int J, double tol = 0.0);
double interaction_energy(const RescaledConfiguration& rc, int J);

// sum_{j > J} E_j from the resolvent remainder on the imaginary axis. Each
// E_j (j >= 2) is negative there, so -value is sum_{j > J} |E_j|.
struct BornRemainder {
  double value = 0.0;
  double error = 0.0;
};
BornRemainder born_remainder(const ObstacleConfiguration& config, int J, double tol = 0.0);

struct RelativeErrorReport {
  double estimate = 0.0;     // (exact tail + its error) / |interaction|
  double exact_tail = 0.0;   // sum_{j > J} |E~_j|
  double bound_ratio = 0.0;  // tail bound at J + 1 over |interaction|
  double interaction = 0.0;
};
RelativeErrorReport relative_error(const RescaledConfiguration& rc, int J);
double relative_error_estimate(const RescaledConfiguration& rc, int J);

struct ForceResult {
  std::vector<Vec3> per_obstacle;
  Eigen::MatrixXd pairwise_intensities;  // F_mn, F_n = sum_m F_mn (x_m - x_n)/|x_m - x_n|
  double step = 0.0;
  double richardson_error = 0.0;  // max |D_rich - D(h/2)| over coordinates
  double pairwise_residual = 0.0;
};

// Central differences of the interaction energy with one Richardson step.
ForceResult forces(const ObstacleConfiguration& config, int J, int workers = 1);
ForceResult forces(const RescaledConfiguration& rc, int J, int workers = 1);

}  // namespace casimir
