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

#include <complex>
#include <cstdint>
#include <vector>

namespace casimir {

// E_1(r) = int_r^inf e^-t / t dt. Returns 0 beyond r = 700.
double exp_integral_e1(double r);

// E_n(r) = int_1^inf e^{-r u} u^-n du, n >= 1.
double exp_integral_en(int n, double r);

// e^r E_n(r) without overflow or cancellation, n >= 1.
double scaled_exp_integral_en(int n, double r);

// Xi_k(r) = int_0^inf e^{-t r} (1+t)^-k dt = e^r E_k(r), k >= 2.
double xi(int k, double r);

// I_k(r) = int_0^inf e^{i v r} (1 - i v)^-k dv, rotated to v = i t.
std::complex<double> i_k(int k, double r);

class XiEvaluator {
 public:
  explicit XiEvaluator(int max_order);
  int max_order() const { return max_order_; }
  double operator()(int k, double r) const;
  // Xi_2(r) .. Xi_kmax(r); index k-2.
  std::vector<double> all(double r) const;

 private:
  int max_order_;
};

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational&) const = default;
};

// B_{2j+2}, 0 <= j <= 16, exact.
Rational bernoulli_even(int j);

// Rising factorial (a)_l.
double pochhammer(double a, int l);
std::complex<double> pochhammer(std::complex<double> a, int l);

}  // namespace casimir
