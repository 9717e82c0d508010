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

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <vector>

#include "casimir/errors.hpp"

namespace casimir {

template <class T>
struct QuadratureResult {
  T value{};
  double error_estimate = 0.0;
  long nodes_used = 0;
  bool converged = true;
};

// How an integrand decays at infinity. With exp_rate > 0 the tail past the
// last panel end T is estimated as 2 max|f near T| / exp_rate; otherwise
// |f| = O(v^-decay_order) is assumed.
struct TailModel {
  double exp_rate = 0.0;
  double decay_order = 0.0;
  double panel_width = 1.0;
};

// Rational-times-exponential integrand amplitude(v) e^{i v d} on [a, inf).
struct OscillatoryKernel {
  double d = 0.0;
  std::function<std::complex<double>(std::complex<double>)> amplitude;
  int decay_order = 2;
  bool analytic_upper = true;
};

namespace detail {

inline double qnorm(double x) { return std::abs(x); }
inline double qnorm(const std::complex<double>& z) { return std::abs(z); }
inline double qnorm(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }
inline double qnorm(const Eigen::VectorXcd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525634725, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <class T>
struct Panel {
  double a, b;
  T value;
  double err;
};

// 21-point Kronrod with embedded 10-point Gauss; error = |K - G|.
template <class T, class F>
Panel<T> gk21(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  T fc = f(c);
  T resk = fc * kWgk[10];
  T resg = fc * 0.0;
  for (int i = 0; i < 10; ++i) {
    const double dx = h * kXgk[i];
    T f1 = f(c - dx);
    T f2 = f(c + dx);
    T s = f1 + f2;
    resk = resk + s * kWgk[i];
    if (i % 2 == 1) resg = resg + s * kWg[i / 2];
  }
  T k = resk * h;
  T g = resg * h;
  return {a, b, k, qnorm(T(k - g))};
}

}  // namespace detail

// Adaptive bisection on [a, b] until the summed |K - G| estimates are below
// max(abs_tol, rel_tol |value|). Deterministic: the interval with the largest
// error is split (ties broken by position) and the final sum runs left to right.
template <class T, class F>
QuadratureResult<T> adaptive_integrate(F&& f, double a, double b, double abs_tol,
                                       double rel_tol = 0.0, int max_intervals = 4000) {
  QuadratureResult<T> res;
  if (!(a < b)) {
    if (a == b) {
      res.value = f(a) * 0.0;
      return res;
    }
    throw Error(ErrorKind::Domain, "integration interval needs a < b");
  }
  std::vector<detail::Panel<T>> panels;
  panels.push_back(detail::gk21<T>(f, a, b));
  res.nodes_used = 21;
  auto total = [&](double& err) {
    T v = panels.front().value;
    err = panels.front().err;
    for (std::size_t i = 1; i < panels.size(); ++i) {
      v = v + panels[i].value;
      err += panels[i].err;
    }
    return v;
  };
  double err_sum = 0.0;
  while (true) {
    res.value = total(err_sum);
    const double target = std::max(abs_tol, rel_tol * detail::qnorm(res.value));
    if (err_sum <= target) break;
    if (static_cast<int>(panels.size()) >= max_intervals) {
      res.converged = false;
      break;
    }
    std::size_t worst = 0;
    for (std::size_t i = 1; i < panels.size(); ++i)
      if (panels[i].err > panels[worst].err) worst = i;
    const auto p = panels[worst];
    const double mid = 0.5 * (p.a + p.b);
    if (!(mid > p.a && mid < p.b) || (p.b - p.a) < 64.0 * std::numeric_limits<double>::epsilon() *
                                                        std::max(std::abs(p.a), std::abs(p.b))) {
      res.converged = false;
      break;
    }
    panels[worst] = detail::gk21<T>(f, p.a, mid);
    panels.push_back(detail::gk21<T>(f, mid, p.b));
    res.nodes_used += 42;
  }
  std::sort(panels.begin(), panels.end(), [](const auto& p, const auto& q) { return p.a < q.a; });
  res.value = total(err_sum);
  res.error_estimate = err_sum;
  return res;
}

// Integral over [a, inf).
// Exponential decay: doubling panels [a, a+w], [a+w, a+3w], ... integrated
// adaptively until the modelled tail is below half the tolerance; the tail
// estimate is added to the error.
// Algebraic decay only: [a, a+w] directly and [a+w, inf) through v = b/u,
// which maps the tail onto (0, 1] with an integrand ~ u^{p-2}.
template <class T, class F>
QuadratureResult<T> semi_infinite_integrate(F&& f, double a, const TailModel& tail, double abs_tol,
                                            double rel_tol = 0.0, int max_panels = 80,
                                            int max_intervals = 4000) {
  if (!(tail.exp_rate > 0.0) && !(tail.decay_order > 1.0))
    throw Error(ErrorKind::Domain, "semi-infinite integration needs exponential decay or order > 1");
  QuadratureResult<T> res;
  double w = tail.panel_width > 0.0 ? tail.panel_width : 1.0;
  if (!(tail.exp_rate > 0.0)) {
    const double b = a + w;
    auto head = adaptive_integrate<T>(f, a, b, 0.5 * abs_tol, rel_tol, max_intervals);
    auto mapped = [&](double u) { return T(f(b / u) * (b / (u * u))); };
    auto rest = adaptive_integrate<T>(mapped, 0.0, 1.0, 0.5 * abs_tol, rel_tol, max_intervals);
    res.value = head.value + rest.value;
    res.error_estimate = head.error_estimate + rest.error_estimate;
    res.nodes_used = head.nodes_used + rest.nodes_used;
    res.converged = head.converged && rest.converged;
    return res;
  }
  double lo = a;
  bool first = true;
  double tail_est = std::numeric_limits<double>::infinity();
  for (int k = 0; k < max_panels; ++k) {
    const double hi = lo + w;
    const double scale = first ? 0.0 : detail::qnorm(res.value);
    const double panel_tol = std::max(abs_tol, rel_tol * scale) * std::ldexp(1.0, -(k + 2));
    auto pr = adaptive_integrate<T>(f, lo, hi, panel_tol, first ? 0.25 * rel_tol : 0.0, max_intervals);
    res.value = first ? pr.value : T(res.value + pr.value);
    first = false;
    res.error_estimate += pr.error_estimate;
    res.nodes_used += pr.nodes_used;
    res.converged = res.converged && pr.converged;
    double m = 0.0;
    for (double frac : {1.0, 0.875, 0.75, 0.5}) m = std::max(m, detail::qnorm(T(f(lo + frac * w))));
    res.nodes_used += 4;
    tail_est = 2.0 * m / tail.exp_rate;
    const double target = std::max(abs_tol, rel_tol * detail::qnorm(res.value));
    lo = hi;
    w *= 2.0;
    if (tail_est <= 0.5 * target) break;
  }
  const double target = std::max(abs_tol, rel_tol * detail::qnorm(res.value));
  res.error_estimate += tail_est;
  if (res.error_estimate > target) res.converged = false;
  return res;
}

QuadratureResult<double> integrate_finite(const std::function<double(double)>& f, double a, double b,
                                          double tol);

QuadratureResult<std::complex<double>> integrate_finite_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b, double tol);

// |f(v)| <= C v^-p on [a, inf), p = decay_order >= 2.
QuadratureResult<double> integrate_decaying_tail(const std::function<double(double)>& f, double a,
                                                 int decay_order, double tol);

// int_a^inf amplitude(v) e^{i v d} dv via v = a + i t.
QuadratureResult<std::complex<double>> integrate_oscillatory(const OscillatoryKernel& kernel,
                                                             double a, double tol);

// Same integral by summing half periods along the real axis and extrapolating
// the partial sums with Wynn's epsilon algorithm.
QuadratureResult<std::complex<double>> integrate_oscillatory_halfperiod(
    const OscillatoryKernel& kernel, double a, double tol);

// Wynn epsilon extrapolation of a sequence of partial sums; error is the
// distance between the last two extrapolants.
std::complex<double> wynn_epsilon(const std::vector<std::complex<double>>& partial_sums,
                                  double* error = nullptr);

}  // namespace casimir
