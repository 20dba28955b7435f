// Copyright 2026 The sicsched Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

namespace sicsched {

/// Gaussian tail probability P(Z > x), via erfc.
double q_function(double x);

/// Two-exponential approximation (1/12) e^{-x^2/2} + (1/4) e^{-2x^2/3}.
double q_approx(double x);

/// Weights and exponents of q_approx: Q(x) ~ sum_i weight[i] e^{-rate[i] x^2}.
inline constexpr double kQApproxWeight[2] = {1.0 / 12.0, 1.0 / 4.0};
inline constexpr double kQApproxRate[2] = {1.0 / 2.0, 2.0 / 3.0};

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a), a > 0,
/// x >= 0. Power series below x < a + 1, Lentz continued fraction above.
double gamma_q(double a, double x);

/// Regularized lower incomplete gamma, 1 - gamma_q.
double gamma_p(double a, double x);

/// Tricomi confluent hypergeometric function
///   U(a, b, z) = 1/Gamma(a) int_0^inf e^{-zt} t^{a-1} (1+t)^{b-a-1} dt
/// for a > 0, z >= 0. z = 0 uses Gamma(1-b)/Gamma(a-b+1) and needs b < 1.
/// Throws ConfigError for a <= 0 or z < 0.
double tricomi_u(double a, double b, double z);

/// Generalized Laguerre polynomial at a negated argument,
///   L_p^(alpha)(-x) = sum_{q=0}^{p} C(p+alpha, p-q) x^q / q!.
/// alpha may be any real > -1; p < 0 returns 0 (empty sum).
double laguerre_poly_neg(double alpha, int p, double x);

/// Binomial coefficient with real upper argument.
double binomial(double n, int k);

}  // namespace sicsched
