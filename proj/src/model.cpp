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

#include "casimir/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

constexpr double kPi = std::numbers::pi;

bool coincident(const std::vector<Vec3>& pos, std::size_t m, std::size_t n, double scale) {
  return (pos[m] - pos[n]).norm() < 1e-12 * scale;
}

double position_scale(const std::vector<Vec3>& pos) {
  double mx = 0.0;
  for (const auto& p : pos) mx = std::max(mx, p.cwiseAbs().maxCoeff());
  return 1.0 + mx;
}

}  // namespace

ObstacleConfiguration::ObstacleConfiguration(std::vector<Vec3> positions,
                                             std::vector<double> strengths, double ell)
    : positions_(std::move(positions)), strengths_(std::move(strengths)), ell_(ell) {
  if (positions_.empty()) throw Error(ErrorKind::Config, "configuration needs at least one obstacle");
  if (positions_.size() != strengths_.size()) {
    std::ostringstream os;
    os << positions_.size() << " positions but " << strengths_.size() << " strengths";
    throw Error(ErrorKind::Config, os.str());
  }
  if (!(ell_ > 0.0) || !std::isfinite(ell_))
    throw Error(ErrorKind::Config, "renormalization length ell must be positive and finite");
  for (std::size_t n = 0; n < positions_.size(); ++n) {
    if (!positions_[n].allFinite() || !std::isfinite(strengths_[n]))
      throw Error(ErrorKind::Config, "non-finite position or strength at obstacle " + std::to_string(n));
  }
  const std::size_t N = positions_.size();
  dist_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
  for (std::size_t m = 0; m < N; ++m)
    for (std::size_t n = m + 1; n < N; ++n) {
      const double d = (positions_[m] - positions_[n]).norm();
      dist_(m, n) = d;
      dist_(n, m) = d;
    }
}

double ObstacleConfiguration::min_alpha() const {
  return *std::min_element(strengths_.begin(), strengths_.end());
}
double ObstacleConfiguration::max_alpha() const {
  return *std::max_element(strengths_.begin(), strengths_.end());
}
double ObstacleConfiguration::sum_alpha() const {
  double s = 0.0;
  for (double a : strengths_) s += a;
  return s;
}

double ObstacleConfiguration::min_pair_distance() const {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < size(); ++m)
    for (std::size_t n = m + 1; n < size(); ++n) d = std::min(d, dist_(m, n));
  return d;
}

ObstacleConfiguration ObstacleConfiguration::with_positions(std::vector<Vec3> positions) const {
  return ObstacleConfiguration(std::move(positions), strengths_, ell_);
}

ObstacleConfiguration ObstacleConfiguration::with_ell(double ell) const {
  return ObstacleConfiguration(positions_, strengths_, ell);
}

double rho(const ObstacleConfiguration& config) {
  const std::size_t N = config.size();
  const double scale = position_scale(config.positions());
  double s = 0.0;
  for (std::size_t m = 0; m < N; ++m) {
    const double am = 4.0 * kPi * config.alpha(m);
    for (std::size_t n = 0; n < N; ++n) {
      if (m == n) continue;
      if (coincident(config.positions(), m, n, scale)) return std::numeric_limits<double>::infinity();
      const double d = config.distance(m, n);
      s += 1.0 / (am * am * d * d);
    }
  }
  return std::sqrt(s);
}

AdmissibilityReport validate(const ObstacleConfiguration& config) {
  AdmissibilityReport rep;
  const std::size_t N = config.size();
  rep.min_pair_distance = config.min_pair_distance();
  bool strengths_ok = true;
  for (std::size_t n = 0; n < N; ++n) {
    if (!(config.alpha(n) > 0.0)) {
      strengths_ok = false;
      rep.violations.push_back("strength alpha_" + std::to_string(n) + " = " +
                               std::to_string(config.alpha(n)) + " is not positive");
    }
  }
  bool distinct = true;
  const double scale = position_scale(config.positions());
  for (std::size_t m = 0; m < N; ++m)
    for (std::size_t n = m + 1; n < N; ++n)
      if (coincident(config.positions(), m, n, scale)) {
        distinct = false;
        rep.violations.push_back("obstacles " + std::to_string(m) + " and " + std::to_string(n) +
                                 " coincide");
      }
  rep.rho = (strengths_ok && distinct) ? rho(config) : std::numeric_limits<double>::infinity();
  if (strengths_ok && distinct && !rho_admissible(rep.rho)) {
    std::ostringstream os;
    os << "rho = " << rep.rho << " is not below 1";
    rep.violations.push_back(os.str());
  }
  rep.admissible = strengths_ok && distinct && rho_admissible(rep.rho);
  rep.slow_convergence = rep.admissible && rep.rho >= 0.95;
  return rep;
}

void require_admissible(const ObstacleConfiguration& config) {
  const AdmissibilityReport rep = validate(config);
  if (rep.admissible) return;
  std::string msg = "inadmissible configuration:";
  for (const auto& v : rep.violations) msg += " " + v + ";";
  throw Error(ErrorKind::Inadmissible, msg);
}

ObstacleConfiguration RescaledConfiguration::to_configuration() const {
  std::vector<Vec3> x;
  x.reserve(y_positions.size());
  for (const auto& y : y_positions) x.push_back(y / energy_scale);
  return ObstacleConfiguration(std::move(x), std::vector<double>(y_positions.size(), alpha), ell);
}

RescaledConfiguration rescale(const ObstacleConfiguration& config) {
  const double a0 = config.alpha(0);
  for (std::size_t n = 1; n < config.size(); ++n) {
    if (std::abs(config.alpha(n) - a0) > 1e-12 * std::abs(a0))
      throw Error(ErrorKind::NonIdenticalStrengths,
                  "rescaling needs identical strengths, got alpha_0 = " + std::to_string(a0) +
                      " and alpha_" + std::to_string(n) + " = " + std::to_string(config.alpha(n)));
  }
  std::vector<Vec3> y;
  y.reserve(config.size());
  const double scale = 4.0 * kPi * a0;
  for (const auto& x : config.positions()) y.push_back(scale * x);
  return make_rescaled(std::move(y), a0, config.ell());
}

RescaledConfiguration make_rescaled(std::vector<Vec3> y, double alpha, double ell) {
  if (y.empty()) throw Error(ErrorKind::Config, "configuration needs at least one obstacle");
  if (!(alpha > 0.0)) throw Error(ErrorKind::Config, "common strength must be positive");
  if (!(ell > 0.0)) throw Error(ErrorKind::Config, "renormalization length ell must be positive");
  RescaledConfiguration rc;
  rc.y_positions = std::move(y);
  rc.alpha = alpha;
  rc.energy_scale = 4.0 * kPi * alpha;
  rc.ell = ell;
  return rc;
}

double rescaled_rho(const RescaledConfiguration& rc) {
  double s = 0.0;
  for (std::size_t m = 0; m < rc.size(); ++m)
    for (std::size_t n = 0; n < rc.size(); ++n) {
      if (m == n) continue;
      const double d2 = (rc.y_positions[m] - rc.y_positions[n]).squaredNorm();
      if (d2 == 0.0) return std::numeric_limits<double>::infinity();
      s += 1.0 / d2;
    }
  return std::sqrt(s);
}

}  // namespace casimir
