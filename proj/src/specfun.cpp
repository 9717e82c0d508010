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

#include "casimir/specfun.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

constexpr double kEuler = std::numbers::egamma;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIter = 20000;

void check_positive(double r, const char* what) {
  if (!(r > 0.0) || !std::isfinite(r))
    throw Error(ErrorKind::Domain, std::string(what) + " needs a positive finite argument, got " +
                                       std::to_string(r));
}

// Power series for E_n(x), x < 1.
double en_series(int n, double x) {
  const int nm1 = n - 1;
  double ans = (nm1 != 0) ? 1.0 / nm1 : -std::log(x) - kEuler;
  double fact = 1.0;
  for (int i = 1; i <= kMaxIter; ++i) {
    fact *= -x / i;
    double del;
    if (i != nm1) {
      del = -fact / (i - nm1);
    } else {
      double psi = -kEuler;
      for (int ii = 1; ii <= nm1; ++ii) psi += 1.0 / ii;
      del = fact * (-std::log(x) + psi);
    }
    ans += del;
    if (std::abs(del) < std::abs(ans) * kEps && i > nm1) return ans;
  }
  throw Error(ErrorKind::Domain, "E_n series failed to converge");
}

// Modified Lentz continued fraction for e^x E_n(x), x >= 1.
double scaled_en_cf(int n, double x) {
  const int nm1 = n - 1;
  const double tiny = 1e-300;
  double b = x + n;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double an = -static_cast<double>(i) * (nm1 + i);
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw Error(ErrorKind::Domain, "E_n continued fraction failed to converge");
}

}  // namespace

double exp_integral_e1(double r) {
  check_positive(r, "exp_integral_e1");
  if (r > 700.0) return 0.0;
  return r < 1.0 ? en_series(1, r) : scaled_en_cf(1, r) * std::exp(-r);
}

double exp_integral_en(int n, double r) {
  if (n < 1) throw Error(ErrorKind::Domain, "E_n needs n >= 1");
  check_positive(r, "exp_integral_en");
  if (r > 700.0) return 0.0;
  return r < 1.0 ? en_series(n, r) : scaled_en_cf(n, r) * std::exp(-r);
}

double scaled_exp_integral_en(int n, double r) {
  if (n < 1) throw Error(ErrorKind::Domain, "E_n needs n >= 1");
  check_positive(r, "scaled_exp_integral_en");
  return r < 1.0 ? std::exp(r) * en_series(n, r) : scaled_en_cf(n, r);
}

double xi(int k, double r) {
  if (k < 2) throw Error(ErrorKind::Domain, "Xi_k needs k >= 2, got " + std::to_string(k));
  check_positive(r, "xi");
  return scaled_exp_integral_en(k, r);
}

std::complex<double> i_k(int k, double r) {
  if (k < 1) throw Error(ErrorKind::Domain, "I_k needs k >= 1, got " + std::to_string(k));
  check_positive(r, "i_k");
  return {0.0, scaled_exp_integral_en(k, r)};
}

XiEvaluator::XiEvaluator(int max_order) : max_order_(max_order) {
  if (max_order < 2) throw Error(ErrorKind::Domain, "XiEvaluator needs max_order >= 2");
}

double XiEvaluator::operator()(int k, double r) const {
  if (k > max_order_)
    throw Error(ErrorKind::Domain, "Xi order " + std::to_string(k) + " above evaluator maximum");
  return xi(k, r);
}

std::vector<double> XiEvaluator::all(double r) const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(max_order_ - 1));
  for (int k = 2; k <= max_order_; ++k) out.push_back(xi(k, r));
  return out;
}

Rational bernoulli_even(int j) {
  if (j < 0 || j > 16)
    throw Error(ErrorKind::Domain, "Bernoulli table covers 0 <= j <= 16, got " + std::to_string(j));
  using boost::multiprecision::cpp_int;
  using boost::multiprecision::cpp_rational;
  const int p = 2 * j + 2;
  const int top = 2 * j + 3;
  cpp_rational b = 0;
  cpp_int binom = 1;  // C(top, k), built incrementally from k = 0
  for (int k = 1; k <= top; ++k) {
    binom = binom * (top - k + 1) / k;
    if (k < 2) continue;
    cpp_int power_sum = 0;
    for (int h = 1; h <= k - 1; ++h) power_sum += boost::multiprecision::pow(cpp_int(h), p);
    cpp_rational term(binom * power_sum, cpp_int(k));
    b += (k % 2 == 0) ? -term : term;
  }
  return {static_cast<std::int64_t>(numerator(b)), static_cast<std::int64_t>(denominator(b))};
}

double pochhammer(double a, int l) {
  double p = 1.0;
  for (int i = 0; i < l; ++i) p *= a + i;
  return p;
}

std::complex<double> pochhammer(std::complex<double> a, int l) {
  std::complex<double> p = 1.0;
  for (int i = 0; i < l; ++i) p *= a + static_cast<double>(i);
  return p;
}

}  // namespace casimir
