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

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numbers>

#include "casimir/errors.hpp"
#include "casimir/specfun.hpp"
#include "doctest.h"

using namespace casimir;
using boost::multiprecision::cpp_bin_float_50;

namespace {

// int_r^inf e^-t / t dt
double e1_oracle(double r) {
  boost::math::quadrature::exp_sinh<double> q;
  // t = r (1 + u) keeps the decay rate at r and the width at 1
  return std::exp(-r) * q.integrate([r](double u) { return std::exp(-r * u) / (1.0 + u); }, 0.0,
                                    std::numeric_limits<double>::infinity(), 1e-15);
}

// int_0^inf e^{-t r} (1+t)^-k dt
double xi_oracle(int k, double r) {
  boost::math::quadrature::exp_sinh<double> q;
  return q.integrate([=](double t) { return std::exp(-t * r) * std::pow(1.0 + t, -k); }, 0.0,
                     std::numeric_limits<double>::infinity());
}

// The bracketed finite-sum form with 50 digit arithmetic.
double xi_closed_form_50(int k, double r_in) {
  const cpp_bin_float_50 r = r_in;
  cpp_bin_float_50 s = 0;
  for (int h = 0; h <= k - 2; ++h)
    s += boost::math::factorial<cpp_bin_float_50>(static_cast<unsigned>(k - h - 2)) * pow(-r, h);
  s += pow(-r, k - 1) * exp(r) * boost::math::expint(1, r);
  return static_cast<double>(s / boost::math::factorial<cpp_bin_float_50>(static_cast<unsigned>(k - 1)));
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  return g;
}

}  // namespace

TEST_CASE("E1 against quadrature") {
  CHECK(exp_integral_e1(1.0) == doctest::Approx(0.219383934).epsilon(1e-8));
  CHECK(exp_integral_e1(10.0) == doctest::Approx(4.15697e-6).epsilon(1e-5));
  for (double r : log_grid(1e-8, 700.0, 41)) {
    const double ref = r < 1e-3 ? static_cast<double>(boost::math::expint(1, cpp_bin_float_50(r))) : e1_oracle(r);
    CHECK(std::abs(exp_integral_e1(r) - ref) <= 1e-13 * ref);
  }
  CHECK(exp_integral_e1(701.0) == 0.0);
}

TEST_CASE("E1 small argument limit") {
  const double r = 1e-8;
  CHECK(std::abs(exp_integral_e1(r) + std::log(r) + std::numbers::egamma) < 1e-7);
}

TEST_CASE("E1 rejects nonpositive arguments") {
  CHECK_THROWS_AS(exp_integral_e1(0.0), Error);
  CHECK_THROWS_AS(exp_integral_e1(-1.0), Error);
}

TEST_CASE("E_n against quadrature") {
  for (int n = 1; n <= 8; ++n)
    for (double r : {0.05, 0.5, 1.0, 3.0, 20.0}) {
      boost::math::quadrature::exp_sinh<double> q;
      const double ref = q.integrate([=](double u) { return std::exp(-r * (1.0 + u)) * std::pow(1.0 + u, -n); },
                                     0.0, std::numeric_limits<double>::infinity());
      CHECK(exp_integral_en(n, r) == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("Xi values and limits") {
  CHECK(xi(2, 1.0) == doctest::Approx(0.403653).epsilon(1e-5));
  CHECK(xi(2, 1.0) == doctest::Approx(xi_oracle(2, 1.0)).epsilon(1e-12));
  CHECK(xi(3, 1e-12) == doctest::Approx(0.5).epsilon(1e-9));
  for (int k = 3; k <= 12; ++k) {
    CHECK(xi(k, 50.0) > 0.0);
    CHECK(xi(k, 50.0) < xi(2, 50.0));
  }
  CHECK(xi(2, 50.0) < 1.0 / 50.0);
  CHECK_THROWS_AS(xi(1, 1.0), Error);
  CHECK_THROWS_AS(xi(2, 0.0), Error);
}

TEST_CASE("Xi against quadrature oracle") {
  for (int k = 2; k <= 12; ++k)
    for (double r : log_grid(0.01, 200.0, 25)) CHECK(xi(k, r) == doctest::Approx(xi_oracle(k, r)).epsilon(1e-10));
}

TEST_CASE("Xi against the closed finite sum in 50 digits") {
  for (int k = 2; k <= 12; ++k)
    for (double r : log_grid(0.1, 5.0, 15)) CHECK(std::abs(xi(k, r) - xi_closed_form_50(k, r)) <= 1e-9 * xi(k, r));
}

TEST_CASE("Xi is decreasing in r and k") {
  const auto g = log_grid(0.01, 100.0, 60);
  for (int k = 2; k <= 10; ++k)
    for (std::size_t i = 1; i < g.size(); ++i) {
      CHECK(xi(k, g[i]) < xi(k, g[i - 1]));
      CHECK(xi(k + 1, g[i]) < xi(k, g[i]));
    }
}

TEST_CASE("XiEvaluator matches xi") {
  XiEvaluator ev(14);
  for (double r : {0.3, 1.0, 7.0}) {
    const auto all = ev.all(r);
    REQUIRE(all.size() == 13);
    for (int k = 2; k <= 14; ++k) {
      CHECK(ev(k, r) == xi(k, r));
      CHECK(all[static_cast<std::size_t>(k - 2)] == doctest::Approx(xi(k, r)).epsilon(1e-13));
    }
  }
  CHECK_THROWS_AS(ev(15, 1.0), Error);
}

TEST_CASE("I_k values, recurrence and real part") {
  const auto i1 = i_k(1, 1.0);
  CHECK(i1.imag() == doctest::Approx(0.596347).epsilon(1e-6));
  CHECK(i1.real() == 0.0);
  for (int k = 2; k <= 10; ++k)
    for (double r : log_grid(0.05, 50.0, 20)) {
      const auto lhs = i_k(k, r);
      const auto rhs = std::complex<double>(0.0, 1.0 / (k - 1)) - r / (k - 1) * i_k(k - 1, r);
      CHECK(std::abs(lhs - rhs) <= 1e-9);
      CHECK(std::abs(lhs.real()) <= 1e-12 * std::abs(lhs.imag()));
    }
  CHECK(i_k(4, 2.0).imag() == doctest::Approx(xi_oracle(4, 2.0)).epsilon(1e-11));
  CHECK_THROWS_AS(i_k(0, 1.0), Error);
}

TEST_CASE("Bernoulli numbers") {
  CHECK(bernoulli_even(0) == Rational{1, 6});
  CHECK(bernoulli_even(1) == Rational{-1, 30});
  CHECK(bernoulli_even(2) == Rational{1, 42});
  CHECK(bernoulli_even(3) == Rational{-1, 30});
  CHECK(bernoulli_even(4) == Rational{5, 66});
  CHECK(bernoulli_even(5) == Rational{-691, 2730});
  CHECK(bernoulli_even(6) == Rational{7, 6});
  for (int j = 0; j <= 16; ++j)
    CHECK(bernoulli_even(j).value() == doctest::Approx(boost::math::bernoulli_b2n<double>(j + 1)).epsilon(1e-14));
  CHECK_THROWS_AS(bernoulli_even(17), Error);
  CHECK_THROWS_AS(bernoulli_even(-1), Error);
}

TEST_CASE("Pochhammer") {
  CHECK(pochhammer(1.0, 5) == doctest::Approx(120.0));
  CHECK(pochhammer(0.3, 0) == 1.0);
  CHECK(pochhammer(2.5, 3) == doctest::Approx(2.5 * 3.5 * 4.5));
  const std::complex<double> a(0.25, 0.5);
  CHECK(std::abs(pochhammer(a, 4) - a * (a + 1.0) * (a + 2.0) * (a + 3.0)) < 1e-14);
  CHECK(pochhammer(0.7, 6) == doctest::Approx(boost::math::tgamma(6.7) / boost::math::tgamma(0.7)).epsilon(1e-13));
}
