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

#include "casimir/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace casimir {

using cd = std::complex<double>;

QuadratureResult<double> integrate_finite(const std::function<double(double)>& f, double a, double b,
                                          double tol) {
  auto r = adaptive_integrate<double>(f, a, b, tol);
  return r;
}

QuadratureResult<cd> integrate_finite_complex(const std::function<cd(double)>& f, double a, double b,
                                              double tol) {
  return adaptive_integrate<cd>(f, a, b, tol);
}

QuadratureResult<double> integrate_decaying_tail(const std::function<double(double)>& f, double a,
                                                 int decay_order, double tol) {
  if (decay_order < 2) throw Error(ErrorKind::Domain, "decaying tail needs decay_order >= 2");
  TailModel tail;
  tail.decay_order = decay_order;
  tail.panel_width = std::max(std::abs(a), 1.0);
  return semi_infinite_integrate<double>(f, a, tail, tol);
}

QuadratureResult<cd> integrate_oscillatory(const OscillatoryKernel& kernel, double a, double tol) {
  if (!(kernel.d > 0.0))
    throw Error(ErrorKind::RotationInvalid, "oscillatory kernel needs a positive frequency");
  if (!kernel.analytic_upper) return integrate_oscillatory_halfperiod(kernel, a, tol);
  const double d = kernel.d;
  auto g = [&](double t) { return kernel.amplitude(cd(a, t)) * std::exp(-t * d); };
  TailModel tail;
  tail.exp_rate = d;
  tail.panel_width = 1.0 / d;
  auto r = semi_infinite_integrate<cd>(g, 0.0, tail, tol);
  r.value *= cd(0.0, 1.0) * std::polar(1.0, a * d);
  return r;
}

cd wynn_epsilon(const std::vector<cd>& s, double* error) {
  const std::size_t n = s.size();
  if (n == 0) return 0.0;
  if (n < 3) {
    if (error) *error = n == 2 ? std::abs(s[1] - s[0]) : std::numeric_limits<double>::infinity();
    return s.back();
  }
  std::vector<cd> prev(n, cd(0.0));  // column k-1
  std::vector<cd> cur(s);            // column k
  cd best = s.back();
  cd best_prev = s[n - 2];
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::vector<cd> next(cur.size() - 1);
    bool ok = true;
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      const cd diff = cur[i + 1] - cur[i];
      if (std::abs(diff) == 0.0) {
        ok = false;
        break;
      }
      next[i] = prev[i + 1] + 1.0 / diff;
    }
    if (!ok) break;
    prev = cur;
    cur = std::move(next);
    if (k % 2 == 1) {
      // even column: a new extrapolant; compare its last two entries
      best = cur.back();
      best_prev = cur.size() >= 2 ? cur[cur.size() - 2] : best_prev;
    }
  }
  if (error) *error = std::abs(best - best_prev);
  return best;
}

QuadratureResult<cd> integrate_oscillatory_halfperiod(const OscillatoryKernel& kernel, double a,
                                                      double tol) {
  if (!(kernel.d > 0.0))
    throw Error(ErrorKind::RotationInvalid, "oscillatory kernel needs a positive frequency");
  const double d = kernel.d;
  const double half = std::numbers::pi / d;
  auto f = [&](double v) { return kernel.amplitude(cd(v, 0.0)) * std::polar(1.0, v * d); };
  QuadratureResult<cd> res;
  std::vector<cd> sums;
  cd acc = 0.0;
  double lo = a;
  double hi = (std::floor(a / half) + 1.0) * half;
  cd last_est = 0.0;
  int stable = 0;
  const double piece_tol = 1e-3 * tol;
  for (int k = 0; k < 4000; ++k) {
    auto pr = adaptive_integrate<cd>(f, lo, hi, piece_tol);
    acc += pr.value;
    res.error_estimate += pr.error_estimate;
    res.nodes_used += pr.nodes_used;
    sums.push_back(acc);
    lo = hi;
    hi += half;
    if (sums.size() < 12) continue;
    std::vector<cd> window(sums.end() - std::min<std::ptrdiff_t>(40, static_cast<std::ptrdiff_t>(sums.size())),
                           sums.end());
    double werr = 0.0;
    const cd est = wynn_epsilon(window, &werr);
    const double change = std::abs(est - last_est);
    last_est = est;
    if (change <= 0.25 * tol && werr <= 0.5 * tol) {
      if (++stable >= 2) {
        res.value = est;
        res.error_estimate += std::max(change, werr);
        return res;
      }
    } else {
      stable = 0;
    }
  }
  res.value = last_est;
  res.converged = false;
  return res;
}

}  // namespace casimir
