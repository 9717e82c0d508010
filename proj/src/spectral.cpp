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

#include "casimir/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInv4Pi2 = 1.0 / (4.0 * kPi * kPi);
const cd kI(0.0, 1.0);

Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

// E_mn = e^{i z d_mn}, diagonal 1.
Eigen::MatrixXcd phase_matrix(const ObstacleConfiguration& c, cd z) {
  const auto N = idx(c.size());
  Eigen::MatrixXcd E(N, N);
  for (Eigen::Index m = 0; m < N; ++m)
    for (Eigen::Index n = 0; n < N; ++n) E(m, n) = (m == n) ? cd(1.0) : std::exp(kI * z * c.distances()(m, n));
  return E;
}

std::string describe(const ObstacleConfiguration& c, cd z) {
  std::ostringstream os;
  os << "z = " << z << ", N = " << c.size() << ", rho = " << rho(c);
  return os.str();
}

cd cpow_neg2s(cd v, cd s) { return std::exp(-2.0 * s * std::log(v)); }

double min_pair(const ObstacleConfiguration& c) {
  return c.size() > 1 ? c.min_pair_distance() : 1.0;
}

}  // namespace

GammaSystem gamma_system_at(const ObstacleConfiguration& config, cd z) {
  const auto N = idx(config.size());
  GammaSystem g;
  g.frequency = z;
  g.V.resize(N);
  g.P = Eigen::MatrixXcd::Zero(N, N);
  for (Eigen::Index m = 0; m < N; ++m) g.V(m) = config.alpha(static_cast<std::size_t>(m)) - kI * z / (4.0 * kPi);
  double hs = 0.0;
  for (Eigen::Index m = 0; m < N; ++m)
    for (Eigen::Index n = 0; n < N; ++n) {
      if (m == n) continue;
      const double d = config.distances()(m, n);
      g.P(m, n) = std::exp(kI * z * d) / (4.0 * kPi * d);
      hs += std::norm(g.P(m, n) / g.V(m));
    }
  g.hs_norm_vinv_p = std::sqrt(hs);
  g.gamma_plus = -g.P;
  g.gamma_plus.diagonal() += g.V;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(g.gamma_plus);
  if (!(lu.rcond() > 1e-14))
    throw Error(ErrorKind::SingularMatrix, "Gamma matrix is numerically singular at " + describe(config, z));
  g.inverse = lu.inverse();
  return g;
}

GammaSystem gamma_system(const ObstacleConfiguration& config, double v) {
  require_admissible(config);
  if (!(v > 0.0)) throw Error(ErrorKind::Domain, "gamma_system needs v > 0");
  return gamma_system_at(config, cd(v, 0.0));
}

cd density_analytic(const ObstacleConfiguration& config, cd z) {
  const GammaSystem g = gamma_system_at(config, z);
  const Eigen::MatrixXcd E = phase_matrix(config, z);
  return kInv4Pi2 * g.inverse.cwiseProduct(E).sum();
}

cd free_density_analytic(const ObstacleConfiguration& config, cd z) {
  cd s = 0.0;
  for (double a : config.strengths()) s += 1.0 / (kPi * (4.0 * kPi * a - kI * z));
  return s;
}

cd scattering_density(const ObstacleConfiguration& config, cd z) {
  if (config.size() < 2) return 0.0;
  const GammaSystem g = gamma_system_at(config, z);
  const Eigen::MatrixXcd E = phase_matrix(config, z);
  const Eigen::MatrixXcd X = g.V.cwiseInverse().asDiagonal() * (g.P * g.inverse);
  return kInv4Pi2 * X.cwiseProduct(E).sum();
}

double spectral_density(const ObstacleConfiguration& config, double v) {
  require_admissible(config);
  if (!(v > 0.0)) throw Error(ErrorKind::Domain, "spectral_density needs v > 0");
  const double e = density_analytic(config, cd(v, 0.0)).real();
  if (!std::isfinite(e))
    throw Error(ErrorKind::InconsistentDensity, "non-finite spectral density at " + describe(config, v));
  return e;
}

double free_density(const ObstacleConfiguration& config, double v) {
  double s = 0.0;
  for (double a : config.strengths()) {
    const double b = 4.0 * kPi * a;
    s += 4.0 * a / (b * b + v * v);
  }
  return s;
}

std::vector<double> born_density_terms(const ObstacleConfiguration& config, int J, double v) {
  require_admissible(config);
  if (J < 0) throw Error(ErrorKind::Domain, "Born order must be nonnegative");
  if (!(v > 0.0)) throw Error(ErrorKind::Domain, "born_density_terms needs v > 0");
  const auto N = idx(config.size());
  const cd z(v, 0.0);
  Eigen::VectorXcd vinv(N);
  for (Eigen::Index m = 0; m < N; ++m) vinv(m) = 1.0 / (config.alpha(static_cast<std::size_t>(m)) - kI * z / (4.0 * kPi));
  Eigen::MatrixXcd K = Eigen::MatrixXcd::Zero(N, N);
  for (Eigen::Index m = 0; m < N; ++m)
    for (Eigen::Index n = 0; n < N; ++n)
      if (m != n) {
        const double d = config.distances()(m, n);
        K(m, n) = vinv(m) * std::exp(kI * z * d) / (4.0 * kPi * d);
      }
  const Eigen::MatrixXcd E = phase_matrix(config, z);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(J) + 1);
  Eigen::MatrixXcd X = vinv.asDiagonal();
  for (int j = 0; j <= J; ++j) {
    if (j > 0) X = K * X;
    out.push_back(kInv4Pi2 * X.cwiseProduct(E).sum().real());
  }
  return out;
}

double born_density_term(const ObstacleConfiguration& config, int j, double v) {
  return born_density_terms(config, j, v).back();
}

double born_term_bound(const ObstacleConfiguration& config, int j, double v) {
  const double r = rho(config);
  const double q = v / (4.0 * kPi * config.max_alpha());
  return static_cast<double>(config.size()) * kInv4Pi2 / config.min_alpha() * std::pow(r, j) *
         std::pow(1.0 + q * q, -0.5 * (j + 1));
}

Eigen::MatrixXcd neumann_inverse(const ObstacleConfiguration& config, int J, double v) {
  const GammaSystem g = gamma_system(config, v);
  const Eigen::MatrixXcd K = g.V.cwiseInverse().asDiagonal() * g.P;
  Eigen::MatrixXcd X = g.V.cwiseInverse().asDiagonal();
  Eigen::MatrixXcd S = X;
  for (int j = 1; j <= J; ++j) {
    X = K * X;
    S += X;
  }
  return S;
}

ImaginaryAxisSums born_sums_imaginary(const ObstacleConfiguration& config, double t, int J,
                                      bool with_remainder) {
  const auto N = idx(config.size());
  Eigen::VectorXd vd(N);
  for (Eigen::Index m = 0; m < N; ++m) vd(m) = config.alpha(static_cast<std::size_t>(m)) + t / (4.0 * kPi);
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(N, N);
  Eigen::MatrixXd W = Eigen::MatrixXd::Identity(N, N);
  for (Eigen::Index m = 0; m < N; ++m)
    for (Eigen::Index n = 0; n < N; ++n)
      if (m != n) {
        const double d = config.distances()(m, n);
        const double w = std::exp(-t * d);
        W(m, n) = w;
        P(m, n) = w / (4.0 * kPi * d);
      }
  const Eigen::VectorXd vinv = vd.cwiseInverse();
  const Eigen::MatrixXd K = vinv.asDiagonal() * P;
  ImaginaryAxisSums out;
  out.terms.resize(J + 1);
  Eigen::MatrixXd X = vinv.asDiagonal();
  for (int j = 0; j <= J; ++j) {
    if (j > 0) X = K * X;
    out.terms(j) = X.cwiseProduct(W).sum();
  }
  if (with_remainder) {
    Eigen::MatrixXd G = -P;
    G.diagonal() += vd;
    Eigen::MatrixXd Y = G.partialPivLu().inverse();
    for (int j = 0; j <= J; ++j) Y = K * Y;
    out.remainder = Y.cwiseProduct(W).sum();
  }
  return out;
}

Eigen::MatrixXd gamma0(const ObstacleConfiguration& config) {
  const auto N = idx(config.size());
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(N, N);
  for (Eigen::Index m = 0; m < N; ++m)
    for (Eigen::Index n = 0; n < N; ++n)
      G(m, n) = (m == n) ? config.alpha(static_cast<std::size_t>(m))
                         : -1.0 / (4.0 * kPi * config.distances()(m, n));
  return G;
}

double gamma0_inverse_sum(const ObstacleConfiguration& config) {
  require_admissible(config);
  const Eigen::MatrixXd G = gamma0(config);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(G.rows());
  return ones.dot(G.partialPivLu().solve(ones));
}

double f0(const ObstacleConfiguration& config) { return kInv4Pi2 * gamma0_inverse_sum(config); }

namespace {

// Least squares of (e(v) - f0) / v^2 = sum_k b_k w^k, w = (v / vf)^2; returns f_1.. f_K.
std::vector<double> fit_even(const ObstacleConfiguration& config, double f_0, double vf, int K) {
  const int M = 48;
  Eigen::MatrixXd A(M, K);
  Eigen::VectorXd y(M);
  for (int i = 0; i < M; ++i) {
    const double w = static_cast<double>(i + 1) / M;
    const double v = vf * std::sqrt(w);
    y(i) = (spectral_density(config, v) - f_0) / (v * v);
    double p = 1.0;
    for (int k = 0; k < K; ++k) {
      A(i, k) = p;
      p *= w;
    }
  }
  const Eigen::VectorXd b = A.colPivHouseholderQr().solve(y);
  std::vector<double> f(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) f[static_cast<std::size_t>(k)] = b(k) / std::pow(vf, 2 * k);
  return f;
}

// (c1, sigma(c1)) for e - f0 = c1 v + sum_k c_{2k} v^{2k} on (0, vf].
std::pair<double, double> fit_with_odd(const ObstacleConfiguration& config, double f_0, double vf, int K) {
  const int M = 48;
  Eigen::MatrixXd A(M, K + 1);
  Eigen::VectorXd y(M);
  for (int i = 0; i < M; ++i) {
    const double u = static_cast<double>(i + 1) / M;
    y(i) = spectral_density(config, vf * u) - f_0;
    A(i, 0) = u;
    double p = u * u;
    for (int k = 1; k <= K; ++k) {
      A(i, k) = p;
      p *= u * u;
    }
  }
  const Eigen::VectorXd c = A.colPivHouseholderQr().solve(y);
  const double sigma2 = (A * c - y).squaredNorm() / std::max(1, M - (K + 1));
  const Eigen::MatrixXd cov = (A.transpose() * A).inverse() * sigma2;
  return {c(0) / vf, std::sqrt(std::max(0.0, cov(0, 0))) / vf};
}

}  // namespace

FCoefficients f_coefficients(const ObstacleConfiguration& config, int J) {
  require_admissible(config);
  if (J < 0 || J > 2) throw Error(ErrorKind::Domain, "f_coefficients supports 0 <= J <= 2");
  FCoefficients out;
  const double f_0 = f0(config);
  out.values.push_back(f_0);
  out.uncertainty.push_back(0.0);
  out.v_fit = 0.1 * 4.0 * kPi * config.min_alpha();
  const int K = 6;
  const auto a = fit_even(config, f_0, out.v_fit, K);
  const auto b = fit_even(config, f_0, 0.5 * out.v_fit, K);
  for (int j = 1; j <= J; ++j) {
    out.values.push_back(a[static_cast<std::size_t>(j - 1)]);
    out.uncertainty.push_back(std::abs(a[static_cast<std::size_t>(j - 1)] - b[static_cast<std::size_t>(j - 1)]));
  }
  // Same data with an odd v term allowed; its scatter between v_fit and
  // v_fit / 2 measures how much the truncated even part leaks into it.
  const auto fa = fit_with_odd(config, f_0, out.v_fit, K);
  const auto fb = fit_with_odd(config, f_0, 0.5 * out.v_fit, K);
  out.odd_coefficient = fb.first;
  out.odd_noise = std::max(fa.second, fb.second) + std::abs(fa.first - fb.first);
  return out;
}

double UvTailData::leading(double v) const {
  double s = g0;
  for (const auto& p : pairs) s += p.amplitude * std::cos(p.frequency * v);
  return s / (v * v);
}

UvTailData uv_tail_data(const ObstacleConfiguration& config) {
  UvTailData t;
  t.g0 = 4.0 * config.sum_alpha();
  for (std::size_t m = 0; m < config.size(); ++m)
    for (std::size_t n = 0; n < config.size(); ++n)
      if (m != n) {
        const double d = config.distance(m, n);
        t.pairs.push_back({2.0 * d, -1.0 / (kPi * d)});
      }
  return t;
}

SpectralDensityProfile spectral_profile(const ObstacleConfiguration& config) {
  require_admissible(config);
  SpectralDensityProfile p;
  p.sampler = [config](double v) { return spectral_density(config, v); };
  p.f0 = f0(config);
  p.tail = uv_tail_data(config);
  return p;
}

namespace {

// 1/2 [G(s) + conj G(conj s)], G(s) = int_{v0}^inf v^{-2s} (phi - phi0)(v) dv
// rotated to v = v0 + i t.
ZetaResult scattering_mellin(const ObstacleConfiguration& config, cd s, double v0, double tol) {
  ZetaResult r{0.0, 0.0};
  if (config.size() < 2) return r;
  const double rate = 2.0 * min_pair(config);
  TailModel tail;
  tail.exp_rate = rate;
  tail.panel_width = 1.0 / rate;
  auto f = [&](double t) -> Eigen::Vector2cd {
    const cd z(v0, t);
    const cd sc = scattering_density(config, z);
    Eigen::Vector2cd out;
    out(0) = cpow_neg2s(z, s) * sc;
    out(1) = cpow_neg2s(z, std::conj(s)) * sc;
    return out;
  };
  auto q = semi_infinite_integrate<Eigen::VectorXcd>(
      [&](double t) { return Eigen::VectorXcd(f(t)); }, 0.0, tail, tol);
  const cd g1 = kI * q.value(0);
  const cd g2 = kI * q.value(1);
  r.value = 0.5 * (g1 + std::conj(g2));
  r.error_estimate = q.error_estimate;
  return r;
}

}  // namespace

ZetaResult zeta_strip(const ObstacleConfiguration& config, cd s, double tol) {
  require_admissible(config);
  if (!(s.real() > 0.0 && s.real() < 0.5))
    throw Error(ErrorKind::StripViolation, "zeta_strip needs 0 < Re s < 1/2");
  const double c = 4.0 * kPi * config.max_alpha();
  const double f_0 = f0(config);
  ZetaResult out{0.0, 0.0};
  // [0, c] with v = c u^2
  auto ir = adaptive_integrate<cd>(
      [&](double u) {
        const double v = c * u * u;
        return 2.0 * c * u * cpow_neg2s(cd(v), s) * (spectral_density(config, v) - f_0);
      },
      0.0, 1.0, tol / 4.0);
  out.value += ir.value + f_0 * std::exp((1.0 - 2.0 * s) * std::log(c)) / (1.0 - 2.0 * s);
  out.error_estimate += ir.error_estimate;
  TailModel tail;
  tail.decay_order = 2.0 + 2.0 * s.real();
  tail.panel_width = c;
  auto uv0 = semi_infinite_integrate<cd>(
      [&](double v) { return cpow_neg2s(cd(v), s) * free_density(config, v); }, c, tail, tol / 4.0);
  out.value += uv0.value;
  out.error_estimate += uv0.error_estimate;
  const ZetaResult sc = scattering_mellin(config, s, c, tol / 4.0);
  out.value += sc.value;
  out.error_estimate += sc.error_estimate;
  return out;
}

ZetaResult zeta_continued(const ObstacleConfiguration& config, cd s, int J_IR, int J_UV, double v0,
                          double tol) {
  const FCoefficients f = f_coefficients(config, std::clamp(J_IR, 0, 2));
  if (J_IR > 2)
    throw Error(ErrorKind::TruncationInsufficient, "only f_0, f_1, f_2 are available (J_IR <= 2)");
  return zeta_continued(config, s, J_IR, J_UV, v0, f, tol);
}

ZetaResult zeta_continued(const ObstacleConfiguration& config, cd s, int J_IR, int J_UV, double v0,
                          const FCoefficients& f, double tol) {
  require_admissible(config);
  if (!(v0 > 0.0)) throw Error(ErrorKind::Domain, "zeta_continued needs v0 > 0");
  if (J_IR >= static_cast<int>(f.values.size()))
    throw Error(ErrorKind::TruncationInsufficient, "not enough f_j coefficients for J_IR");
  if (J_UV < 0) throw Error(ErrorKind::Domain, "J_UV must be nonnegative");
  const double ir_limit = J_IR + 1.5;
  const double uv_limit = -J_UV - 0.5;
  if (!(s.real() < ir_limit) || !(s.real() > uv_limit)) {
    std::ostringstream os;
    os << "Re s = " << s.real() << " outside (" << uv_limit << ", " << ir_limit << ")";
    throw Error(ErrorKind::TruncationInsufficient, os.str());
  }
  for (int j = 0; j <= J_IR; ++j)
    if (std::abs(s - cd(j + 0.5)) < 1e-6) throw Error(ErrorKind::PoleProximity, "s too close to an infrared pole");
  for (int j = 0; j < J_UV; ++j)
    if (std::abs(s + cd(j + 0.5)) < 1e-6) throw Error(ErrorKind::PoleProximity, "s too close to an ultraviolet pole");

  ZetaResult out{0.0, 0.0};
  const double lv0 = std::log(v0);
  // infrared: [0, v0] with v = v0 u^2
  auto ir = adaptive_integrate<cd>(
      [&](double u) {
        const double v = v0 * u * u;
        double sub = 0.0;
        double p = 1.0;
        for (int j = 0; j <= J_IR; ++j) {
          sub += f.values[static_cast<std::size_t>(j)] * p;
          p *= v * v;
        }
        return 2.0 * v0 * u * cpow_neg2s(cd(v), s) * (spectral_density(config, v) - sub);
      },
      0.0, 1.0, tol / 4.0);
  out.value += ir.value;
  out.error_estimate += ir.error_estimate;
  for (int j = 0; j <= J_IR; ++j) {
    const cd k = 2.0 * j + 1.0 - 2.0 * s;
    out.value += f.values[static_cast<std::size_t>(j)] * std::exp(k * lv0) / k;
  }
  // ultraviolet, free part: exact remainder of the geometric expansion in a^2 / v^2
  std::vector<double> g(static_cast<std::size_t>(J_UV));
  for (int j = 0; j < J_UV; ++j) {
    double gj = 0.0;
    for (double a : config.strengths()) gj += 4.0 * a * std::pow(-std::pow(4.0 * kPi * a, 2), j);
    g[static_cast<std::size_t>(j)] = gj;
    const cd k = 2.0 * s + 2.0 * j + 1.0;
    out.value += gj * std::exp(-k * lv0) / k;
  }
  TailModel tail;
  tail.decay_order = 2.0 * J_UV + 2.0 + 2.0 * s.real();
  tail.panel_width = v0;
  auto uv0 = semi_infinite_integrate<cd>(
      [&](double v) {
        double rem = 0.0;
        for (double a : config.strengths()) {
          const double b2 = std::pow(4.0 * kPi * a, 2);
          rem += 4.0 * a * std::pow(-b2, J_UV) / (std::pow(v, 2 * J_UV) * (b2 + v * v));
        }
        return cpow_neg2s(cd(v), s) * rem;
      },
      v0, tail, tol / 4.0);
  out.value += uv0.value;
  out.error_estimate += uv0.error_estimate;
  const ZetaResult sc = scattering_mellin(config, s, v0, tol / 4.0);
  out.value += sc.value;
  out.error_estimate += sc.error_estimate;
  return out;
}

}  // namespace casimir
