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
#include <numbers>
#include <random>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/spectral.hpp"
#include "casimir/thermo.hpp"
#include "doctest.h"

using namespace casimir;
constexpr double kPi = std::numbers::pi;

namespace {

ObstacleConfiguration single(double alpha = 1.0) { return ObstacleConfiguration({Vec3(0, 0, 0)}, {alpha}); }

// Two identical obstacles at rescaled distance d.
ObstacleConfiguration pair(double d, double alpha = 1.0) {
  return make_rescaled({Vec3(0, 0, 0), Vec3(d, 0, 0)}, alpha).to_configuration();
}

// N = 1 density is 4 alpha / ((4 pi alpha)^2 + v^2) / pi * pi; integrate it on its own.
double log_eta_single_oracle(double alpha, double beta) {
  const double a = 4.0 * kPi * alpha;
  auto f = [&](double v) { return std::log(-std::expm1(-beta * v)) * (a / kPi) / (a * a + v * v); };
  // log singularity at 0: split and map v = s^2 on the first piece
  const double v1 = 1.0 / beta;
  auto head = [&](double s) { return 2.0 * s * f(s * s); };
  const double h = integrate_finite(head, 0.0, std::sqrt(v1), 1e-14).value;
  const double t = integrate_decaying_tail(f, v1, 2, 1e-14).value;
  return h + t;
}

double log_slope(double x0, double y0, double x1, double y1) { return std::log(y1 / y0) / std::log(x1 / x0); }

}  // namespace

TEST_CASE("single obstacle density oracle is the closed form") {
  const auto c = single();
  for (double v : {0.1, 3.0, 50.0}) {
    const double a = 4.0 * kPi;
    CHECK(spectral_density(c, v) == doctest::Approx((a / kPi) / (a * a + v * v)).epsilon(1e-12));
  }
}

TEST_CASE("log eta for one obstacle at low temperature") {
  const double beta = 100.0;
  const double le = log_eta(single(), beta);
  CHECK(le == doctest::Approx(-1.0 / (24.0 * beta)).epsilon(0.05));
  CHECK(le == doctest::Approx(log_eta_single_oracle(1.0, beta)).epsilon(1e-9));
  const double f0 = f_coefficients(single(), 0).values[0];
  CHECK(le == doctest::Approx(-kPi * kPi * f0 / (6.0 * beta)).epsilon(0.05));
  for (double b : {0.01, 0.3, 7.0}) CHECK(log_eta(single(0.6), b) == doctest::Approx(log_eta_single_oracle(0.6, b)).epsilon(1e-9));
}

TEST_CASE("log eta vanishes as beta grows and increases monotonically") {
  const auto c = single(0.5);
  double prev = -1e300;
  for (double b : {0.1, 1.0, 10.0, 100.0, 1000.0, 1e4}) {
    const double le = log_eta(c, b);
    CHECK(le < 0.0);
    CHECK(le > prev);
    prev = le;
  }
  CHECK(std::abs(prev) < 1e-5);
  // N = 2 far apart: sampled density is positive
  const auto p = pair(6.0);
  bool positive = true;
  for (double v = 0.01; v < 500.0; v *= 1.3) positive = positive && spectral_density(p, v) >= 0.0;
  REQUIRE(positive);
  CHECK(log_eta(p, 0.5) < log_eta(p, 5.0));
  CHECK(log_eta(p, 5.0) < log_eta(p, 50.0));
  CHECK(log_eta(p, 50.0) < 0.0);
}

TEST_CASE("beta derivative matches central differences") {
  const auto p = pair(3.0);
  for (double b : {0.5, 5.0, 50.0}) {
    const double h = 1e-4 * b;
    const double fd = (log_eta(p, b + h, 1e-14) - log_eta(p, b - h, 1e-14)) / (2.0 * h);
    CHECK(dbeta_log_eta(p, b) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("derivative asymptotics") {
  const auto p = pair(3.0);
  const double f0 = f_coefficients(p, 0).values[0];
  const double b = 2000.0;
  CHECK(b * b * dbeta_log_eta(p, b) == doctest::Approx(kPi * kPi * f0 / 6.0).epsilon(1e-3));
  const auto h = hight_constants(p);
  for (double small : {1e-2, 1e-3}) CHECK(small * small * dbeta_log_eta(p, small) / small == doctest::Approx(h.c_total).epsilon(0.1));
}

TEST_CASE("high temperature constants") {
  std::mt19937 rng(53);
  std::uniform_real_distribution<double> u(-1.0, 1.0), a(0.5, 2.0);
  CHECK(hight_constants(single()).c_total == doctest::Approx(0.5).epsilon(1e-10));
  for (int t = 0; t < 3; ++t) {
    const std::size_t N = 2 + static_cast<std::size_t>(t);
    std::vector<Vec3> x;
    std::vector<double> al;
    for (std::size_t n = 0; n < N; ++n) {
      x.emplace_back(u(rng), u(rng), u(rng));
      al.push_back(a(rng));
    }
    const double lam = rho(ObstacleConfiguration(x, al)) / 0.5;
    for (auto& y : x) y *= lam;
    const ObstacleConfiguration c(x, al);
    const auto h = hight_constants(c);
    CHECK(h.c_total == doctest::Approx(0.5 * static_cast<double>(N)).epsilon(1e-9));
    CHECK(h.c_entropy == doctest::Approx(h.c_total - h.c_log).epsilon(1e-9));
  }
  // independent check of c_log for N = 1: int log(v) (a/pi)/(a^2+v^2) dv = log(a)/2
  CHECK(hight_constants(single(0.3)).c_log == doctest::Approx(0.5 * std::log(4.0 * kPi * 0.3)).epsilon(1e-10));
}

TEST_CASE("low temperature limits") {
  for (const auto& c : {single(), pair(3.0)}) {
    const auto ctx = make_thermo_context(c);
    double prev = 1e300;
    for (double b : {10.0, 100.0, 1000.0}) {
      const auto p = thermo_point(ctx, b);
      CHECK(p.S_ren > 0.0);
      CHECK(p.S_ren < prev);
      prev = p.S_ren;
    }
    CHECK(prev < 1e-3);
    const auto far = thermo_point(ctx, 1e4);
    CHECK(std::abs(far.F_ren - ctx.e_vac) < 1e-6 * std::max(1.0, std::abs(ctx.e_vac)));
    CHECK(std::abs(far.U_ren - ctx.e_vac) < 1e-6 * std::max(1.0, std::abs(ctx.e_vac)));
    const double lead = gamma0_inverse_sum(c) / 12.0;
    for (double b : {100.0, 1000.0}) CHECK(b * thermo_point(ctx, b).S_ren == doctest::Approx(lead).epsilon(0.05));
  }
}

TEST_CASE("thermodynamic identity") {
  const auto ctx = make_thermo_context(pair(2.5));
  for (double b : {1e-3, 0.1, 1.0, 10.0, 300.0}) {
    const auto p = thermo_point(ctx, b);
    const double scale = std::max({std::abs(p.S_ren), b * std::abs(p.U_ren), b * std::abs(p.F_ren)});
    CHECK(std::abs(p.S_ren - b * (p.U_ren - p.F_ren)) <= 1e-12 * scale);
    // recomputed from its own definition
    CHECK(std::abs(b * p.dbeta_log_eta - p.log_eta - p.S_ren) <= 1e-12 * scale);
    CHECK(p.F_ren == doctest::Approx(p.e_vac + p.log_eta / b).epsilon(1e-15));
  }
}

TEST_CASE("low temperature model residual decays like beta^-4") {
  const auto c = single();
  const auto ctx = make_thermo_context(c);
  auto residual = [&](double b) {
    const auto p = thermo_point(ctx, b);
    return std::abs(p.F_ren - low_temperature_model(ctx.e_vac, ctx.f, b, 0).F);
  };
  const double b0 = 50.0, b1 = 800.0;
  const double slope = -log_slope(b0, residual(b0), b1, residual(b1));
  CHECK(slope >= 3.5);
  CHECK(slope <= 4.5);
  // the j <= 1 model removes that term too
  CHECK(std::abs(thermo_point(ctx, 50.0).F_ren - low_temperature_model(ctx.e_vac, ctx.f, 50.0, 1).F) <
        0.1 * residual(50.0));
}

TEST_CASE("high temperature behaviour") {
  const auto c = pair(3.0);
  const auto ctx = make_thermo_context(c);
  for (double b : {1e-3, 1e-4}) CHECK(b * thermo_point(ctx, b).U_ren == doctest::Approx(ctx.hight.c_total).epsilon(0.1));
  // U - c_total / beta = O(log beta): the ratio to |log beta| stays bounded over two decades
  std::vector<double> ratio;
  for (double b : {1e-2, 1e-3, 1e-4}) {
    const double dev = std::abs(thermo_point(ctx, b).U_ren - ctx.hight.c_total / b);
    ratio.push_back(dev / std::abs(std::log(b)));
  }
  CHECK(ratio[2] <= 2.0 * ratio[0]);
  CHECK(ratio[1] <= 2.0 * ratio[0]);
  const auto p = thermo_point(ctx, 1e-3);
  CHECK(p.F_ren == doctest::Approx(p.highT_model.F).epsilon(0.05));
}

TEST_CASE("thermo errors") {
  CHECK_THROWS_AS(log_eta(single(), 0.0), Error);
  CHECK_THROWS_AS(thermo_point(single(), -1.0), Error);
  CHECK_THROWS_AS(log_eta(pair(1.0), 1.0), Error);
}
