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

#include "casimir/vacuum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "casimir/errors.hpp"
#include "casimir/parallel.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/specfun.hpp"
#include "casimir/spectral.hpp"

namespace casimir {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxJ = 64;
const cd kI(0.0, 1.0);

double tail_factor(double r, int J) {
  if (r <= 0.0) return 0.0;
  return std::pow(r, J - 2) * std::min(r / ((J - 1) * (1.0 - r)), std::abs(std::log1p(-r)));
}

struct BornTerms {
  double e1 = 0.0;
  double e1_err = 0.0;
  std::vector<double> ej;  // E_2 .. E_J
  double ej_err = 0.0;
  double remainder = 0.0;  // sum_{j > J} E_j
  double remainder_err = 0.0;
};

// E_1^ren = -(1/4pi) sum_{m != n} d^-2 Im int_0^inf A(v) e^{2 i v d} dv,
// A(v) = (a_m a_n + v^2) / ((a_m - i v)^2 (a_n - i v)^2).
void compute_e1(const ObstacleConfiguration& config, double tol, BornTerms& out) {
  const std::size_t N = config.size();
  const double npairs = 0.5 * static_cast<double>(N * (N - 1));
  for (std::size_t m = 0; m < N; ++m)
    for (std::size_t n = m + 1; n < N; ++n) {
      const double d = config.distance(m, n);
      const double am = 4.0 * kPi * config.alpha(m);
      const double an = 4.0 * kPi * config.alpha(n);
      OscillatoryKernel k;
      k.d = 2.0 * d;
      k.decay_order = 2;
      k.amplitude = [am, an](cd z) {
        const cd pm = am - kI * z;
        const cd pn = an - kI * z;
        return (am * an + z * z) / (pm * pm * pn * pn);
      };
      const double pair_tol = tol * 4.0 * kPi * d * d / (2.0 * npairs);
      const auto q = integrate_oscillatory(k, 0.0, pair_tol);
      if (!q.converged)
        throw Error(ErrorKind::MaxSubdivisions, "E1 pair integral (" + std::to_string(m) + "," +
                                                    std::to_string(n) + ") did not converge");
      const double w = -2.0 / (4.0 * kPi * d * d);
      out.e1 += w * q.value.imag();
      out.e1_err += std::abs(w) * q.error_estimate;
    }
}

// E_j = -(1/8pi^2) int_0^inf t s_j(t) dt on the imaginary axis, j = 2..J,
// and optionally the remainder sum_{j > J} E_j.
void compute_higher(const ObstacleConfiguration& config, int J, double tol, bool with_remainder,
                    BornTerms& out) {
  const int nterms = std::max(0, J - 1);
  const int dim = nterms + (with_remainder ? 1 : 0);
  if (dim == 0 || config.size() < 2) {
    out.ej.assign(static_cast<std::size_t>(nterms), 0.0);
    return;
  }
  const double dmin = config.min_pair_distance();
  TailModel tail;
  tail.exp_rate = 2.0 * dmin;
  tail.panel_width = std::min(1.0 / (2.0 * dmin), 4.0 * kPi * config.max_alpha());
  const double c = -1.0 / (8.0 * kPi * kPi);
  auto f = [&](double t) {
    const auto s = born_sums_imaginary(config, t, std::max(J, 1), with_remainder);
    Eigen::VectorXd v(dim);
    for (int j = 2; j <= J; ++j) v(j - 2) = c * t * s.terms(j);
    if (with_remainder) v(dim - 1) = c * t * s.remainder;
    return v;
  };
  const auto q = semi_infinite_integrate<Eigen::VectorXd>(f, 0.0, tail, tol);
  if (!q.converged) throw Error(ErrorKind::MaxSubdivisions, "Born term integrals E_j did not converge");
  out.ej.resize(static_cast<std::size_t>(nterms));
  for (int j = 0; j < nterms; ++j) out.ej[static_cast<std::size_t>(j)] = q.value(j);
  out.ej_err = q.error_estimate;
  if (with_remainder) {
    out.remainder = q.value(dim - 1);
    out.remainder_err = q.error_estimate;
  }
}

double energy_scale(const ObstacleConfiguration& config) { return 4.0 * kPi * config.max_alpha(); }

}  // namespace

const char* to_string(EnergyRoute route) {
  switch (route) {
    case EnergyRoute::GeneralBorn: return "GeneralBorn";
    case EnergyRoute::IdenticalXi: return "IdenticalXi";
    case EnergyRoute::DirectQuadrature: return "DirectQuadrature";
  }
  return "?";
}

double e0_ren(const ObstacleConfiguration& config) {
  double s = 0.0;
  for (double a : config.strengths()) s += 2.0 * a * (1.0 - std::log(8.0 * kPi * a * config.ell()));
  return s;
}

double e0_ren_rescaled(const RescaledConfiguration& rc) {
  return static_cast<double>(rc.size()) * (1.0 - std::log(8.0 * kPi * rc.alpha * rc.ell)) / (2.0 * kPi);
}

double born_tail_bound(const ObstacleConfiguration& config, int J) {
  if (J < 2) throw Error(ErrorKind::Domain, "tail bound needs J >= 2");
  const double r = rho(config);
  const double amax = config.max_alpha();
  return 4.0 * static_cast<double>(config.size()) * amax * amax / config.min_alpha() * tail_factor(r, J);
}

double born_tail_bound_rescaled(std::size_t N, double r, int J) {
  if (J < 2) throw Error(ErrorKind::Domain, "tail bound needs J >= 2");
  return static_cast<double>(N) / kPi * tail_factor(r, J);
}

double default_energy_tol(const ObstacleConfiguration& config) { return 1e-8 * energy_scale(config); }

BornEnergyBreakdown energy_born(const ObstacleConfiguration& config, std::optional<double> target_tol,
                                std::optional<int> J) {
  require_admissible(config);
  const double tol = target_tol.value_or(default_energy_tol(config));
  if (!(tol > 0.0)) throw Error(ErrorKind::Domain, "target tolerance must be positive");
  BornEnergyBreakdown out;
  out.route = EnergyRoute::GeneralBorn;
  out.rho = rho(config);
  if (!(out.rho < 1.0)) throw Error(ErrorKind::TailBoundUnreachable, "rho >= 1");
  int Ju = 0;
  if (J) {
    Ju = *J;
    if (Ju < 1 || Ju > kMaxJ) throw Error(ErrorKind::Domain, "J must lie in [1, 64]");
  } else {
    for (int j = 2; j <= kMaxJ; ++j)
      if (born_tail_bound(config, j + 1) <= 0.5 * tol) {
        Ju = j;
        break;
      }
    if (Ju == 0) {
      std::ostringstream os;
      os << "tail bound at J = 64 is " << born_tail_bound(config, kMaxJ + 1) << " > " << 0.5 * tol
         << " (rho = " << out.rho << ")";
      throw Error(ErrorKind::TailBoundUnreachable, os.str());
    }
  }
  out.J_used = Ju;
  out.e0_ren = e0_ren(config);
  BornTerms bt;
  const double comp_tol = 0.5 * tol / std::max(1, Ju);
  if (config.size() > 1) {
    compute_e1(config, comp_tol, bt);
    compute_higher(config, Ju, comp_tol, false, bt);
  } else {
    bt.ej.assign(static_cast<std::size_t>(std::max(0, Ju - 1)), 0.0);
  }
  out.e1_ren = bt.e1;
  out.higher_terms = bt.ej;
  out.tail_bound = Ju >= 1 ? born_tail_bound(config, Ju + 1) : 0.0;
  out.quadrature_error = bt.e1_err + bt.ej_err * static_cast<double>(bt.ej.size());
  out.total = out.e0_ren + out.e1_ren;
  for (double e : out.higher_terms) out.total += e;
  return out;
}

double interaction_energy(const ObstacleConfiguration& config, int J, double tol) {
  require_admissible(config);
  if (config.size() < 2) return 0.0;
  if (J < 1) throw Error(ErrorKind::Domain, "interaction energy needs J >= 1");
  const double t = tol > 0.0 ? tol : 1e-13 * energy_scale(config);
  BornTerms bt;
  compute_e1(config, t, bt);
  compute_higher(config, J, t, false, bt);
  double s = bt.e1;
  for (double e : bt.ej) s += e;
  return s;
}

BornRemainder born_remainder(const ObstacleConfiguration& config, int J, double tol) {
  require_admissible(config);
  BornRemainder r;
  if (config.size() < 2) return r;
  if (J < 1) throw Error(ErrorKind::Domain, "remainder needs J >= 1");
  const double t = tol > 0.0 ? tol : 1e-13 * energy_scale(config);
  const double dmin = config.min_pair_distance();
  TailModel tail;
  tail.exp_rate = 2.0 * dmin;
  tail.panel_width = std::min(1.0 / (2.0 * dmin), energy_scale(config));
  const double c = -1.0 / (8.0 * kPi * kPi);
  const auto q = semi_infinite_integrate<double>(
      [&](double x) { return c * x * born_sums_imaginary(config, x, J, true).remainder; }, 0.0, tail, t);
  r.value = q.value;
  r.error = q.error_estimate;
  return r;
}

BornEnergyBreakdown energy_direct(const ObstacleConfiguration& config, std::optional<double> v0_opt,
                                  std::optional<double> tol_opt) {
  require_admissible(config);
  const double v0 = v0_opt.value_or(4.0 * kPi * config.max_alpha());
  const double tol = tol_opt.value_or(default_energy_tol(config));
  if (!(v0 > 0.0)) throw Error(ErrorKind::Domain, "v0 must be positive");
  BornEnergyBreakdown out;
  out.route = EnergyRoute::DirectQuadrature;
  out.rho = rho(config);
  const std::size_t N = config.size();
  const double sum_alpha = config.sum_alpha();

  EnergyComponent log_term{"log_term", 2.0 * (1.0 - std::log(2.0 * config.ell() * v0)) * sum_alpha, 0.0};

  auto ir = adaptive_integrate<double>([&](double v) { return 0.5 * v * spectral_density(config, v); },
                                       0.0, v0, 0.25 * tol);
  if (!ir.converged) throw Error(ErrorKind::MaxSubdivisions, "infrared integral int_0^v0 v e(v) dv");
  EnergyComponent ir_term{"infrared_integral", ir.value, ir.error_estimate};

  EnergyComponent pair_term{"pair_sine_terms", 0.0, 0.0};
  const double npairs = 0.5 * static_cast<double>(N * (N - 1));
  for (std::size_t m = 0; m < N; ++m)
    for (std::size_t n = m + 1; n < N; ++n) {
      const double d = config.distance(m, n);
      OscillatoryKernel k;
      k.d = 2.0 * d;
      k.decay_order = 2;
      k.amplitude = [](cd z) { return 1.0 / (z * z); };
      const double w = 2.0 / (4.0 * kPi * d * d);
      const auto q = integrate_oscillatory(k, v0, 0.25 * tol / (npairs * w));
      if (!q.converged) throw Error(ErrorKind::MaxSubdivisions, "sine tail integral");
      pair_term.value += w * (std::sin(2.0 * v0 * d) / v0 - q.value.imag());
      pair_term.error += w * q.error_estimate;
    }

  // UV, free part: v (e_0 - 4 sum alpha / v^2) = -sum 4 alpha a^2 / (v (a^2 + v^2))
  auto uv_free = integrate_decaying_tail(
      [&](double v) {
        double s = 0.0;
        for (double a : config.strengths()) {
          const double b2 = std::pow(4.0 * kPi * a, 2);
          s -= 4.0 * a * b2 / (v * (b2 + v * v));
        }
        return 0.5 * s;
      },
      v0, 3, 0.125 * tol);
  if (!uv_free.converged) throw Error(ErrorKind::MaxSubdivisions, "ultraviolet integral, free part");

  // UV, scattering part: Re int_{v0}^inf g(v) dv with
  // g(z) = z (phi - phi0)(z) + sum_{m != n} e^{2 i z d} / (pi d z), rotated to v0 + i t.
  EnergyComponent uv_term{"ultraviolet_integral", uv_free.value, uv_free.error_estimate};
  if (N > 1) {
    const double dmin = config.min_pair_distance();
    TailModel tail;
    tail.exp_rate = 2.0 * dmin;
    tail.panel_width = 1.0 / (2.0 * dmin);
    auto g = [&](double t) {
      const cd z(v0, t);
      cd s = z * scattering_density(config, z);
      for (std::size_t m = 0; m < N; ++m)
        for (std::size_t n = 0; n < N; ++n)
          if (m != n) {
            const double d = config.distance(m, n);
            s += std::exp(2.0 * kI * z * d) / (kPi * d * z);
          }
      return 0.5 * s;
    };
    const auto q = semi_infinite_integrate<cd>(g, 0.0, tail, 0.125 * tol);
    if (!q.converged) throw Error(ErrorKind::MaxSubdivisions, "ultraviolet integral, scattering part");
    uv_term.value += (kI * q.value).real();
    uv_term.error += q.error_estimate;
  }

  out.components = {log_term, ir_term, pair_term, uv_term};
  out.total = 0.0;
  for (const auto& c : out.components) {
    out.total += c.value;
    out.quadrature_error += c.error;
  }
  out.e0_ren = e0_ren(config);
  out.e1_ren = out.total - out.e0_ren;
  out.J_used = 0;
  return out;
}

namespace {

struct PathSums {
  std::vector<double> terms;  // index j - 2
  double abs_sum = 0.0;
};

// Ordered index paths (m, p_1, ..., p_{j-1}, n), consecutive indices distinct,
// weight 1 / prod(hop lengths), evaluated at R = path length + |y_n - y_m|.
PathSums enumerate_paths(const RescaledConfiguration& rc, int J) {
  const std::size_t N = rc.size();
  PathSums ps;
  ps.terms.assign(static_cast<std::size_t>(std::max(0, J - 1)), 0.0);
  if (N < 2 || J < 2) return ps;
  double count = 0.0;
  for (int j = 2; j <= J; ++j) count += static_cast<double>(N) * std::pow(static_cast<double>(N - 1), j);
  if (count > kPathBudget) {
    std::ostringstream os;
    os << count << " index paths for N = " << N << ", J = " << J << " exceed the budget of " << kPathBudget;
    throw Error(ErrorKind::PathBudgetExceeded, os.str());
  }
  Eigen::MatrixXd D(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
  for (std::size_t m = 0; m < N; ++m)
    for (std::size_t n = 0; n < N; ++n)
      D(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n)) = (rc.y_positions[m] - rc.y_positions[n]).norm();
  struct Frame {
    std::size_t node;
    int depth;
    double weight;
    double length;
  };
  std::vector<Frame> stack;
  stack.reserve(static_cast<std::size_t>(J) * N);
  for (std::size_t m = 0; m < N; ++m) {
    stack.push_back({m, 0, 1.0, 0.0});
    while (!stack.empty()) {
      const Frame f = stack.back();
      stack.pop_back();
      if (f.depth >= 2) {
        const double R = f.length + D(static_cast<Eigen::Index>(f.node), static_cast<Eigen::Index>(m));
        const double c = f.weight * (xi(f.depth + 1, R) - xi(f.depth, R)) / (2.0 * kPi);
        ps.terms[static_cast<std::size_t>(f.depth - 2)] += c;
      }
      if (f.depth == J) continue;
      for (std::size_t p = N; p-- > 0;) {
        if (p == f.node) continue;
        const double d = D(static_cast<Eigen::Index>(f.node), static_cast<Eigen::Index>(p));
        stack.push_back({p, f.depth + 1, f.weight / d, f.length + d});
      }
    }
  }
  for (double t : ps.terms) ps.abs_sum += std::abs(t);
  return ps;
}

double e1_rescaled(const RescaledConfiguration& rc) {
  double s = 0.0;
  for (std::size_t m = 0; m < rc.size(); ++m)
    for (std::size_t n = 0; n < rc.size(); ++n) {
      if (m == n) continue;
      const double r = 2.0 * (rc.y_positions[m] - rc.y_positions[n]).norm();
      s += (xi(2, r) - 2.0 * xi(3, r)) / (r * r);
    }
  return s / kPi;
}

void require_admissible_rescaled(const RescaledConfiguration& rc) {
  const double r = rescaled_rho(rc);
  if (!rho_admissible(r)) {
    std::ostringstream os;
    os << "inadmissible rescaled configuration: rho = " << r;
    throw Error(ErrorKind::Inadmissible, os.str());
  }
}

}  // namespace

BornEnergyBreakdown energy_identical(const RescaledConfiguration& rc, int J) {
  require_admissible_rescaled(rc);
  if (J < 2 || J > kMaxJ) throw Error(ErrorKind::Domain, "J must lie in [2, 64]");
  BornEnergyBreakdown out;
  out.route = EnergyRoute::IdenticalXi;
  out.rho = rescaled_rho(rc);
  out.J_used = J;
  out.e0_ren = e0_ren_rescaled(rc);
  out.e1_ren = rc.size() > 1 ? e1_rescaled(rc) : 0.0;
  const PathSums ps = enumerate_paths(rc, J);
  out.higher_terms = ps.terms;
  out.tail_bound = born_tail_bound_rescaled(rc.size(), out.rho, J + 1);
  out.total = out.e0_ren + out.e1_ren;
  for (double e : out.higher_terms) out.total += e;
  // exponential integrals carry ~1e-15 relative error each
  out.quadrature_error = 1e-13 * (std::abs(out.e0_ren) + std::abs(out.e1_ren) + ps.abs_sum);
  return out;
}

double interaction_energy(const RescaledConfiguration& rc, int J) {
  require_admissible_rescaled(rc);
  if (rc.size() < 2) return 0.0;
  double s = e1_rescaled(rc);
  for (double e : enumerate_paths(rc, J).terms) s += e;
  return s;
}

RelativeErrorReport relative_error(const RescaledConfiguration& rc, int J) {
  RelativeErrorReport rep;
  rep.interaction = interaction_energy(rc, J);
  if (std::abs(rep.interaction) < 1e-300)
    throw Error(ErrorKind::ZeroInteraction, "interaction energy vanishes; relative error undefined");
  const ObstacleConfiguration cfg = rc.to_configuration();
  const BornRemainder rem = born_remainder(cfg, J, 1e-14 * rc.energy_scale * std::abs(rep.interaction));
  rep.exact_tail = -rem.value / rc.energy_scale;
  const double err = rem.error / rc.energy_scale;
  rep.estimate = (std::abs(rep.exact_tail) + err) / std::abs(rep.interaction);
  rep.bound_ratio = born_tail_bound_rescaled(rc.size(), rescaled_rho(rc), J + 1) / std::abs(rep.interaction);
  return rep;
}

double relative_error_estimate(const RescaledConfiguration& rc, int J) {
  return relative_error(rc, J).estimate;
}

namespace {

using EnergyOf = std::function<double(const std::vector<Vec3>&)>;
using AdmissibleOf = std::function<bool(const std::vector<Vec3>&)>;

ForceResult fd_forces(const std::vector<Vec3>& x, double dmin, const EnergyOf& energy,
                      const AdmissibleOf& admissible, int workers) {
  const std::size_t N = x.size();
  ForceResult fr;
  fr.per_obstacle.assign(N, Vec3::Zero());
  fr.pairwise_intensities = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
  if (N < 2) return fr;
  const double h = 1e-4 * dmin;
  fr.step = h;
  const double offsets[4] = {h, -h, 0.5 * h, -0.5 * h};
  const std::size_t ncoord = 3 * N;
  for (std::size_t c = 0; c < ncoord; ++c)
    for (double o : {h, -h}) {
      auto y = x;
      y[c / 3](static_cast<Eigen::Index>(c % 3)) += o;
      if (!admissible(y))
        throw Error(ErrorKind::StepWouldViolateAdmissibility,
                    "finite-difference step moves obstacle " + std::to_string(c / 3) + " out of the admissible set");
    }
  std::vector<double> E(4 * ncoord, 0.0);
  parallel_for(4 * ncoord, workers, [&](std::size_t i) {
    const std::size_t c = i / 4;
    auto y = x;
    y[c / 3](static_cast<Eigen::Index>(c % 3)) += offsets[i % 4];
    E[i] = energy(y);
  });
  for (std::size_t c = 0; c < ncoord; ++c) {
    const double d1 = (E[4 * c] - E[4 * c + 1]) / (2.0 * h);
    const double d2 = (E[4 * c + 2] - E[4 * c + 3]) / h;
    const double rich = (4.0 * d2 - d1) / 3.0;
    fr.richardson_error = std::max(fr.richardson_error, std::abs(rich - d2));
    fr.per_obstacle[c / 3](static_cast<Eigen::Index>(c % 3)) = -rich;
  }
  // F_n = sum_{m != n} F_mn u_mn, least squares over the pair intensities.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t m = 0; m < N; ++m)
    for (std::size_t n = m + 1; n < N; ++n) pairs.emplace_back(m, n);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(3 * N), static_cast<Eigen::Index>(pairs.size()));
  Eigen::VectorXd b(static_cast<Eigen::Index>(3 * N));
  for (std::size_t n = 0; n < N; ++n)
    for (int k = 0; k < 3; ++k) b(static_cast<Eigen::Index>(3 * n + k)) = fr.per_obstacle[n](k);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [m, n] = pairs[p];
    const Vec3 u = (x[m] - x[n]).normalized();  // from n toward m
    for (int k = 0; k < 3; ++k) {
      A(static_cast<Eigen::Index>(3 * n + k), static_cast<Eigen::Index>(p)) = u(k);
      A(static_cast<Eigen::Index>(3 * m + k), static_cast<Eigen::Index>(p)) = -u(k);
    }
  }
  const Eigen::VectorXd f = A.completeOrthogonalDecomposition().solve(b);
  fr.pairwise_residual = (A * f - b).norm();
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [m, n] = pairs[p];
    fr.pairwise_intensities(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n)) = f(static_cast<Eigen::Index>(p));
    fr.pairwise_intensities(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m)) = f(static_cast<Eigen::Index>(p));
  }
  return fr;
}

}  // namespace

ForceResult forces(const ObstacleConfiguration& config, int J, int workers) {
  require_admissible(config);
  if (config.size() < 2) return fd_forces(config.positions(), 1.0, nullptr, nullptr, workers);
  const double tol = 1e-14 * energy_scale(config);
  return fd_forces(
      config.positions(), config.min_pair_distance(),
      [&](const std::vector<Vec3>& y) { return interaction_energy(config.with_positions(y), J, tol); },
      [&](const std::vector<Vec3>& y) { return validate(config.with_positions(y)).admissible; }, workers);
}

ForceResult forces(const RescaledConfiguration& rc, int J, int workers) {
  require_admissible_rescaled(rc);
  if (rc.size() < 2) return fd_forces(rc.y_positions, 1.0, nullptr, nullptr, workers);
  double dmin = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < rc.size(); ++m)
    for (std::size_t n = m + 1; n < rc.size(); ++n)
      dmin = std::min(dmin, (rc.y_positions[m] - rc.y_positions[n]).norm());
  return fd_forces(
      rc.y_positions, dmin,
      [&](const std::vector<Vec3>& y) {
        auto r2 = rc;
        r2.y_positions = y;
        return interaction_energy(r2, J);
      },
      [&](const std::vector<Vec3>& y) {
        auto r2 = rc;
        r2.y_positions = y;
        return rho_admissible(rescaled_rho(r2));
      },
      workers);
}

}  // namespace casimir
