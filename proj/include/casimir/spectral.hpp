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

#include <complex>
#include <functional>
#include <vector>

#include "casimir/model.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

using cd = std::complex<double>;

// V = diag(alpha_m - i z / 4pi), P_mn = e^{i z d_mn} / (4 pi d_mn), Gamma = V - P.
struct GammaSystem {
  cd frequency;
  Eigen::VectorXcd V;
  Eigen::MatrixXcd P;
  Eigen::MatrixXcd gamma_plus;
  Eigen::MatrixXcd inverse;
  double hs_norm_vinv_p = 0.0;  // ||V^-1 P||_HS
};

// Boundary value on the positive real axis; requires an admissible config.
GammaSystem gamma_system(const ObstacleConfiguration& config, double v);
// Any z in the closed upper half plane; no admissibility check.
GammaSystem gamma_system_at(const ObstacleConfiguration& config, cd z);

// phi(z) = (1/4pi^2) sum_mn Gamma(z)^-1_mn e^{i z d_mn}; e(v) = Re phi(v).
cd density_analytic(const ObstacleConfiguration& config, cd z);
// phi(z) - phi_0(z) with phi_0(z) = sum_n 1 / (pi (4 pi alpha_n - i z)).
cd scattering_density(const ObstacleConfiguration& config, cd z);
cd free_density_analytic(const ObstacleConfiguration& config, cd z);

double spectral_density(const ObstacleConfiguration& config, double v);
// e_0(v) = sum_n 4 alpha_n / ((4 pi alpha_n)^2 + v^2)
double free_density(const ObstacleConfiguration& config, double v);

double born_density_term(const ObstacleConfiguration& config, int j, double v);
// e_0(v) .. e_J(v) from one pass of incremental matrix powers.
std::vector<double> born_density_terms(const ObstacleConfiguration& config, int J, double v);
double born_term_bound(const ObstacleConfiguration& config, int j, double v);

// Neumann partial sum sum_{j<=J} (V^-1 P)^j V^-1 at real v.
Eigen::MatrixXcd neumann_inverse(const ObstacleConfiguration& config, int J, double v);

// On the imaginary axis z = i t every matrix is real. s_j(t) is
// sum_mn [(V^-1 P)^j V^-1]_mn e^{-t d_mn}; remainder is sum_{j>J} s_j(t),
// evaluated as (V^-1 P)^{J+1} Gamma^-1 without cancellation.
struct ImaginaryAxisSums {
  Eigen::VectorXd terms;  // j = 0..J
  double remainder = 0.0;
};
ImaginaryAxisSums born_sums_imaginary(const ObstacleConfiguration& config, double t, int J,
                                      bool with_remainder);

Eigen::MatrixXd gamma0(const ObstacleConfiguration& config);
double gamma0_inverse_sum(const ObstacleConfiguration& config);
// f_0 = (1/4pi^2) sum_mn [Gamma^0]^-1_mn = lim_{v -> 0} e(v)
double f0(const ObstacleConfiguration& config);

struct FCoefficients {
  std::vector<double> values;       // f_0 .. f_J
  std::vector<double> uncertainty;  // |fit(v_fit) - fit(v_fit / 2)|, 0 for f_0
  double v_fit = 0.0;
  double odd_coefficient = 0.0;  // v^1 coefficient from a fit that allows it
  double odd_noise = 0.0;
};
// f_0 closed form; f_1, f_2 from an even polynomial least-squares fit of e(v)
// on (0, v_fit], v_fit = 0.1 (4 pi min alpha), checked by halving v_fit.
FCoefficients f_coefficients(const ObstacleConfiguration& config, int J);

// Large-v data: e(v) ~ g0 / v^2 + sum_{m != n} h_mn cos(d_mn v) / v^2
struct UvTailData {
  double g0 = 0.0;  // 4 sum alpha
  struct Pair {
    double frequency;  // 2 |x_m - x_n|
    double amplitude;  // -1 / (pi |x_m - x_n|)
  };
  std::vector<Pair> pairs;  // ordered (m, n), m != n
  double leading(double v) const;
};
UvTailData uv_tail_data(const ObstacleConfiguration& config);

struct SpectralDensityProfile {
  std::function<double(double)> sampler;
  double f0 = 0.0;
  UvTailData tail;
};
SpectralDensityProfile spectral_profile(const ObstacleConfiguration& config);

struct ZetaResult {
  cd value;
  double error_estimate = 0.0;
};

// int_0^inf v^{-2s} e(v) dv for 0 < Re s < 1/2.
ZetaResult zeta_strip(const ObstacleConfiguration& config, cd s, double tol = 1e-11);

// Continuation: IR piece on [0, v0] minus f_0..f_{J_IR}, UV piece on
// [v0, inf) with g_0..g_{J_UV-1} subtracted for the free part and the
// oscillatory part rotated to v0 + i t. Valid for
// -J_UV - 1/2 < Re s < J_IR + 3/2 away from the poles.
ZetaResult zeta_continued(const ObstacleConfiguration& config, cd s, int J_IR, int J_UV, double v0,
                          double tol = 1e-11);
ZetaResult zeta_continued(const ObstacleConfiguration& config, cd s, int J_IR, int J_UV, double v0,
                          const FCoefficients& f, double tol);

}  // namespace casimir
