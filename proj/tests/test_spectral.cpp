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

#include <Eigen/Geometry>
#include <cmath>
#include <numbers>
#include <random>

#include "casimir/errors.hpp"
#include "casimir/spectral.hpp"
#include "doctest.h"

using namespace casimir;
constexpr double kPi = std::numbers::pi;
const cd kI(0.0, 1.0);

namespace {

ObstacleConfiguration random_admissible(std::mt19937& rng, std::size_t N, double rho_max) {
  std::uniform_real_distribution<double> pos(-1.0, 1.0), str(0.5, 2.0);
  for (;;) {
    std::vector<Vec3> x;
    std::vector<double> a;
    for (std::size_t n = 0; n < N; ++n) {
      x.emplace_back(pos(rng), pos(rng), pos(rng));
      a.push_back(str(rng));
    }
    // scale positions so that rho lands in (0.2, rho_max)
    ObstacleConfiguration c(x, a);
    const double r = rho(c);
    std::uniform_real_distribution<double> target(0.2, rho_max);
    const double lam = r / target(rng);
    for (auto& p : x) p *= lam;
    ObstacleConfiguration s(x, a);
    if (validate(s).admissible) return s;
  }
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  return g;
}

// f_j from the Cauchy integral of E(z) = (phi(z) + conj phi(conj z)) / 2 on |z| = r
double f_by_contour(const ObstacleConfiguration& c, int j, double r) {
  const int M = 128;
  cd acc = 0.0;
  for (int k = 0; k < M; ++k) {
    const cd z = std::polar(r, 2.0 * kPi * (k + 0.5) / M);
    const cd E = 0.5 * (density_analytic(c, z) + std::conj(density_analytic(c, std::conj(z))));
    acc += E * std::pow(z, -2 * j);
  }
  return (acc / static_cast<double>(M)).real();
}

const ObstacleConfiguration& mixed3() {
  static const ObstacleConfiguration c({Vec3(0, 0, 0), Vec3(0.3, 0.1, 0.05), Vec3(0.05, 0.25, -0.1)},
                                       {1.0, 1.5, 0.8});
  return c;
}

}  // namespace

TEST_CASE("one obstacle Gamma system and density") {
  const double a = 0.7;
  const ObstacleConfiguration c({Vec3(1, 2, 3)}, {a});
  for (double v : {0.01, 1.0, 30.0}) {
    const auto g = gamma_system(c, v);
    CHECK(std::abs(g.gamma_plus(0, 0) - (a - kI * v / (4.0 * kPi))) < 1e-15);
    CHECK(std::abs(g.inverse(0, 0) - 1.0 / (a - kI * v / (4.0 * kPi))) < 1e-14);
    const double b = 4.0 * kPi * a;
    CHECK(spectral_density(c, v) == doctest::Approx(4.0 * a / (b * b + v * v)).epsilon(1e-13));
  }
  CHECK(f0(c) == doctest::Approx(1.0 / (4.0 * kPi * kPi * a)).epsilon(1e-14));
}

TEST_CASE("two obstacle inverse against the cofactor formula") {
  const ObstacleConfiguration c({Vec3(0, 0, 0), Vec3(0.2, 0.1, 0)}, {1.0, 1.0});
  for (double v : {0.5, 3.0, 40.0}) {
    const auto g = gamma_system(c, v);
    const cd det = g.gamma_plus(0, 0) * g.gamma_plus(1, 1) - g.gamma_plus(0, 1) * g.gamma_plus(1, 0);
    CHECK(std::abs(g.inverse(0, 0) - g.gamma_plus(1, 1) / det) < 1e-13);
    CHECK(std::abs(g.inverse(0, 1) + g.gamma_plus(0, 1) / det) < 1e-13);
    CHECK(std::abs(g.gamma_plus(0, 1) - g.gamma_plus(1, 0)) < 1e-15);
  }
}

TEST_CASE("inverse, Hilbert-Schmidt bound and Neumann rate") {
  std::mt19937 rng(3);
  for (int t = 0; t < 5; ++t) {
    const auto c = random_admissible(rng, 2 + static_cast<std::size_t>(t % 3), 0.9);
    const double r = rho(c);
    for (double v : log_grid(1e-2, 1e2, 9)) {
      const auto g = gamma_system(c, v);
      const auto Id = Eigen::MatrixXcd::Identity(g.inverse.rows(), g.inverse.cols());
      CHECK((g.inverse * g.gamma_plus - Id).cwiseAbs().maxCoeff() < 1e-12);
      const double q = v / (4.0 * kPi * c.max_alpha());
      const double rv = r / std::sqrt(1.0 + q * q);
      CHECK(g.hs_norm_vinv_p <= rv * (1.0 + 1e-12));
      const double vinv = g.V.cwiseInverse().cwiseAbs().maxCoeff();
      for (int J : {2, 5, 10}) {
        const double diff = (neumann_inverse(c, J, v) - g.inverse).cwiseAbs().maxCoeff();
        CHECK(diff <= 2.0 * std::pow(g.hs_norm_vinv_p, J + 1) / (1.0 - g.hs_norm_vinv_p) * vinv + 1e-14);
      }
    }
  }
}

TEST_CASE("density limits") {
  const auto& c = mixed3();
  CHECK(spectral_density(c, 1e-6) == doctest::Approx(f0(c)).epsilon(1e-8));
  CHECK(f0(c) > 0.0);
  const auto tail = uv_tail_data(c);
  CHECK(tail.g0 == doctest::Approx(4.0 * c.sum_alpha()));
  double prev_err = 1e300;
  for (double v : {200.0, 2000.0, 20000.0}) {
    double expect = 4.0 * c.sum_alpha();
    for (std::size_t m = 0; m < c.size(); ++m)
      for (std::size_t n = 0; n < c.size(); ++n)
        if (m != n) expect -= 4.0 * std::cos(2.0 * v * c.distance(m, n)) / (4.0 * kPi * c.distance(m, n));
    const double err = std::abs(v * v * spectral_density(c, v) - expect);
    CHECK(err * v < 200.0);
    CHECK(err < prev_err);
    prev_err = err;
    CHECK(tail.leading(v) * v * v == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("f_0 is positive on random admissible configurations") {
  std::mt19937 rng(5);
  for (int t = 0; t < 20; ++t) CHECK(f0(random_admissible(rng, 2 + static_cast<std::size_t>(t % 4), 0.95)) > 0.0);
}

TEST_CASE("Born terms j = 0, 1 against closed forms") {
  const auto& c = mixed3();
  for (double v : {0.1, 2.0, 25.0}) {
    const auto e = born_density_terms(c, 1, v);
    double e0 = 0.0;
    cd e1 = 0.0;
    for (std::size_t m = 0; m < c.size(); ++m) {
      const double am = 4.0 * kPi * c.alpha(m);
      e0 += 4.0 * c.alpha(m) / (am * am + v * v);
      for (std::size_t n = 0; n < c.size(); ++n) {
        if (m == n) continue;
        const double d = c.distance(m, n), an = 4.0 * kPi * c.alpha(n);
        e1 += std::exp(2.0 * kI * v * d) / (d * (am - kI * v) * (an - kI * v));
      }
    }
    CHECK(e[0] == doctest::Approx(e0).epsilon(1e-13));
    CHECK(e[1] == doctest::Approx(e1.real() / kPi).epsilon(1e-12));
    CHECK(born_density_term(c, 1, v) == e[1]);
  }
}

TEST_CASE("Born terms respect their bound and partial sums converge") {
  std::mt19937 rng(17);
  for (int t = 0; t < 5; ++t) {
    const auto c = random_admissible(rng, 2 + static_cast<std::size_t>(t % 3), 0.9);
    const double r = rho(c), s = 4.0 * kPi * c.max_alpha();
    for (double v : log_grid(1e-3 * s, 1e3 * s, 40)) {
      const auto e = born_density_terms(c, 12, v);
      for (int j = 0; j <= 12; ++j) CHECK(std::abs(e[static_cast<std::size_t>(j)]) <= born_term_bound(c, j, v));
      const double exact = spectral_density(c, v);
      const double q = std::sqrt(1.0 + (v / s) * (v / s));
      double partial = 0.0;
      for (int J = 0; J <= 12; ++J) {
        partial += e[static_cast<std::size_t>(J)];
        const double tail = born_term_bound(c, J + 1, v) / (1.0 - r / q);
        CHECK(std::abs(exact - partial) <= tail + 1e-13 * std::abs(exact));
      }
    }
  }
}

TEST_CASE("bound values") {
  const ObstacleConfiguration one({Vec3(0, 0, 0)}, {1.0});
  CHECK(born_term_bound(one, 0, 0.0) == doctest::Approx(1.0 / (4.0 * kPi * kPi)));
  const auto& c = mixed3();
  for (int j = 0; j < 5; ++j)
    for (double v : log_grid(0.01, 100.0, 20)) CHECK(born_term_bound(c, j, 1.1 * v) < born_term_bound(c, j, v));
  // sum_{j >= J} of the bound, integrated against v, equals the closed energy-tail integrand bound
  const double r = rho(c), s = 4.0 * kPi * c.max_alpha();
  const int J = 3;
  for (double v : {0.5, 5.0, 50.0}) {
    double acc = 0.0;
    for (int j = J; j < 400; ++j) acc += born_term_bound(c, j, v);
    const double q = std::sqrt(1.0 + (v / s) * (v / s));
    CHECK(acc == doctest::Approx(born_term_bound(c, J, v) / (1.0 - r / q)).epsilon(1e-12));
  }
}

TEST_CASE("density is smooth") {
  const auto& c = mixed3();
  for (double v : {0.5, 5.0, 50.0}) {
    double prev = 0.0;
    for (double h : {1e-2, 5e-3, 2.5e-3}) {
      const double d2 = (spectral_density(c, v + h) - 2.0 * spectral_density(c, v) + spectral_density(c, v - h)) / (h * h);
      if (prev != 0.0) CHECK(std::abs(d2 - prev) <= 1e-2 * std::abs(prev) + 1e-6);
      prev = d2;
    }
  }
}

TEST_CASE("density depends only on distances") {
  const auto& c = mixed3();
  const Eigen::Matrix3d R = Eigen::AngleAxisd(0.7, Vec3(1, 2, 3).normalized()).toRotationMatrix();
  std::vector<Vec3> x;
  for (const auto& p : c.positions()) x.push_back(R * p + Vec3(5, -1, 2));
  const auto moved = c.with_positions(x);
  for (double v : {0.1, 3.0, 70.0}) CHECK(spectral_density(moved, v) == doctest::Approx(spectral_density(c, v)).epsilon(1e-11));
}

TEST_CASE("imaginary-axis sums with remainder reproduce the exact inverse") {
  const auto& c = mixed3();
  for (double t : {0.1, 2.0, 20.0}) {
    const auto s = born_sums_imaginary(c, t, 6, true);
    const auto g = gamma_system_at(c, cd(0.0, t));
    double exact = 0.0;
    for (std::size_t m = 0; m < c.size(); ++m)
      for (std::size_t n = 0; n < c.size(); ++n)
        exact += g.inverse(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n)).real() *
                 std::exp(-t * c.distance(m, n));
    CHECK(s.terms.sum() + s.remainder == doctest::Approx(exact).epsilon(1e-12));
  }
}

TEST_CASE("f coefficients against a Cauchy contour oracle") {
  for (const auto& c : {ObstacleConfiguration({Vec3(0, 0, 0)}, {0.6}), mixed3(),
                        ObstacleConfiguration({Vec3(0, 0, 0), Vec3(0.5, 0, 0)}, {0.4, 0.4})}) {
    const auto f = f_coefficients(c, 2);
    REQUIRE(f.values.size() == 3);
    const double r = 0.2 * 4.0 * kPi * c.min_alpha() * (1.0 - rho(c));
    CHECK(f.values[0] == doctest::Approx(f_by_contour(c, 0, r)).epsilon(1e-12));
    for (int j = 1; j <= 2; ++j) {
      const double oracle = f_by_contour(c, j, r);
      CHECK(oracle == doctest::Approx(f_by_contour(c, j, 0.5 * r)).epsilon(1e-8));
      const double tol = std::max(3.0 * f.uncertainty[static_cast<std::size_t>(j)], 1e-6 * std::abs(oracle));
      CHECK(std::abs(f.values[static_cast<std::size_t>(j)] - oracle) <= tol);
    }
    CHECK(std::abs(f.odd_coefficient) <= f.odd_noise);
    CHECK(std::abs(f.odd_coefficient) * f.v_fit <= 1e-6 * f.values[0]);
  }
}

TEST_CASE("zeta in the strip") {
  const double a = 0.3;
  const ObstacleConfiguration one({Vec3(0, 0, 0)}, {a});
  for (double s : {0.1, 0.25, 0.4}) {
    const auto z = zeta_strip(one, s);
    const double exact = std::pow(4.0 * kPi * a, -2.0 * s) / (2.0 * std::cos(kPi * s));
    CHECK(z.value.real() == doctest::Approx(exact).epsilon(1e-10));
  }
  const auto& c = mixed3();
  const cd s(0.2, 0.7);
  const auto z1 = zeta_strip(c, s), z2 = zeta_strip(c, std::conj(s));
  CHECK(std::abs(z2.value - std::conj(z1.value)) < 1e-9);
  CHECK_THROWS_AS(zeta_strip(c, 0.5), Error);
  CHECK_THROWS_AS(zeta_strip(c, cd(-0.1, 0.0)), Error);
}

TEST_CASE("continued zeta agrees with the strip and has the expected residue") {
  std::mt19937 rng(23);
  for (int t = 0; t < 3; ++t) {
    const auto c = random_admissible(rng, 2, 0.8);
    const double v0 = 4.0 * kPi * c.max_alpha();
    const auto strip = zeta_strip(c, 0.25);
    const auto cont = zeta_continued(c, 0.25, 1, 2, v0);
    CHECK(std::abs(strip.value - cont.value) <= 1e-7 * std::max(1.0, std::abs(strip.value)));
  }
  const auto& c = mixed3();
  const double v0 = 4.0 * kPi * c.max_alpha();
  // (s + 1/2) zeta(s) at s = -1/2 + h, extrapolated linearly in h
  const double h1 = 1e-3, h2 = 2e-3;
  const double r1 = (h1 * zeta_continued(c, -0.5 + h1, 1, 2, v0).value).real();
  const double r2 = (h2 * zeta_continued(c, -0.5 + h2, 1, 2, v0).value).real();
  CHECK(2.0 * r1 - r2 == doctest::Approx(2.0 * c.sum_alpha()).epsilon(1e-3));
  // s = 0 is regular
  const auto zp = zeta_continued(c, 1e-4, 1, 2, v0), zm = zeta_continued(c, -1e-4, 1, 2, v0);
  CHECK(std::isfinite(zp.value.real()));
  CHECK(std::abs(zp.value - zm.value) < 1e-2 * std::max(1.0, std::abs(zp.value)));
  try {
    zeta_continued(c, -0.5, 1, 2, v0);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PoleProximity);
  }
  try {
    zeta_continued(c, -3.0, 1, 2, v0);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TruncationInsufficient);
  }
}

TEST_CASE("inadmissible configurations are refused") {
  const ObstacleConfiguration c({Vec3(0, 0, 0), Vec3(0.01, 0, 0)}, {1.0, 1.0});
  CHECK_THROWS_AS(spectral_density(c, 1.0), Error);
  CHECK_THROWS_AS(gamma_system(c, 1.0), Error);
}
