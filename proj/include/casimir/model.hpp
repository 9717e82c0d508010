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

#include <cstddef>
#include <string>
#include <vector>

namespace casimir {

using Vec3 = Eigen::Vector3d;

// Point obstacles with strengths alpha_n and renormalization length ell.
// Immutable; pairwise distances are cached at construction.
class ObstacleConfiguration {
 public:
  ObstacleConfiguration(std::vector<Vec3> positions, std::vector<double> strengths,
                        double ell = 1.0);

  std::size_t size() const { return positions_.size(); }
  const std::vector<Vec3>& positions() const { return positions_; }
  const std::vector<double>& strengths() const { return strengths_; }
  const Vec3& position(std::size_t n) const { return positions_[n]; }
  double alpha(std::size_t n) const { return strengths_[n]; }
  double ell() const { return ell_; }
  double distance(std::size_t m, std::size_t n) const { return dist_(m, n); }
  const Eigen::MatrixXd& distances() const { return dist_; }

  double min_alpha() const;
  double max_alpha() const;
  double sum_alpha() const;
  double min_pair_distance() const;

  ObstacleConfiguration with_positions(std::vector<Vec3> positions) const;
  ObstacleConfiguration with_ell(double ell) const;

 private:
  std::vector<Vec3> positions_;
  std::vector<double> strengths_;
  double ell_;
  Eigen::MatrixXd dist_;
};

struct AdmissibilityReport {
  double rho = 0.0;
  bool admissible = false;
  bool slow_convergence = false;
  double min_pair_distance = 0.0;
  std::vector<std::string> violations;
};

// rho values this close to 1 are treated as 1 (the cutoff itself is excluded).
inline constexpr double kRhoTolerance = 1e-14;
inline bool rho_admissible(double rho) { return rho < 1.0 - kRhoTolerance; }

// rho = sqrt(sum_{m != n} (4 pi alpha_m)^-2 |x_m - x_n|^-2); +inf for coincident points.
double rho(const ObstacleConfiguration& config);

AdmissibilityReport validate(const ObstacleConfiguration& config);

// Throws Error(Inadmissible) listing the violations.
void require_admissible(const ObstacleConfiguration& config);

// Identical obstacles in the dimensionless coordinates y = 4 pi alpha x.
struct RescaledConfiguration {
  std::vector<Vec3> y_positions;
  double alpha = 0.0;
  double energy_scale = 0.0;
  double ell = 1.0;

  std::size_t size() const { return y_positions.size(); }
  ObstacleConfiguration to_configuration() const;
};

RescaledConfiguration rescale(const ObstacleConfiguration& config);
RescaledConfiguration make_rescaled(std::vector<Vec3> y, double alpha, double ell = 1.0);

// sqrt(sum_{m != n} |y_m - y_n|^-2); equals rho of the physical configuration.
double rescaled_rho(const RescaledConfiguration& rc);

}  // namespace casimir
