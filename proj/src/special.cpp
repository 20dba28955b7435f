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

#include "sicsched/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sicsched/config.hpp"
#include "sicsched/quadrature.hpp"

namespace sicsched {

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double q_approx(double x) {
    const double x2 = x * x;
    return kQApproxWeight[0] * std::exp(-kQApproxRate[0] * x2) +
           kQApproxWeight[1] * std::exp(-kQApproxRate[1] * x2);
}

namespace {

constexpr int kMaxIter = 100000;
constexpr double kEps = 1e-16;

// P(a, x) by its power series; converges quickly for x < a + 1.
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < kMaxIter; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Q(a, x) by the Legendre continued fraction (modified Lentz).
double gamma_q_fraction(double a, double x) {
    constexpr double tiny = std::numeric_limits<double>::min() / kEps;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

void check_gamma_args(double a, double x) {
    if (!(a > 0.0)) throw ConfigError("incomplete gamma: a must be > 0");
    if (!(x >= 0.0)) throw ConfigError("incomplete gamma: x must be >= 0");
}

}  // namespace

double gamma_q(double a, double x) {
    check_gamma_args(a, x);
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_fraction(a, x);
}

double gamma_p(double a, double x) {
    check_gamma_args(a, x);
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_fraction(a, x);
}

double tricomi_u(double a, double b, double z) {
    if (!(a > 0.0)) throw ConfigError("tricomi_u: a must be > 0, got " + std::to_string(a));
    if (!(z >= 0.0)) throw ConfigError("tricomi_u: z must be >= 0, got " + std::to_string(z));
    if (z == 0.0) {
        if (!(b < 1.0)) throw ConfigError("tricomi_u: U(a, b, 0) is infinite for b >= 1");
        return std::tgamma(1.0 - b) / std::tgamma(a - b + 1.0);
    }
    const double c = b - a - 1.0;
    // [0, 1]: v = t^a absorbs the t^{a-1} factor.
    auto near = [&](double v) {
        const double t = std::pow(v, 1.0 / a);
        return std::exp(-z * t + c * std::log1p(t));
    };
    // [1, inf): t = 1/s^2.
    auto far = [&](double s) {
        if (s <= 0.0) return 0.0;
        const double s2 = s * s;
        const double expo = -z / s2;
        if (expo < -745.0) return 0.0;
        return 2.0 * std::exp(expo + (1.0 - 2.0 * b) * std::log(s) + c * std::log1p(s2));
    };
    quad::Options opt;
    opt.rel_tol = 1e-12;
    const double lower = quad::integrate_or_throw(near, 0.0, 1.0, opt) / a;
    const double upper = quad::integrate_or_throw(far, 0.0, 1.0, opt);
    return (lower + upper) / std::tgamma(a);
}

double binomial(double n, int k) {
    if (k < 0) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r *= (n - k + i) / i;
    return r;
}

double laguerre_poly_neg(double alpha, int p, double x) {
    if (p < 0) return 0.0;
    double sum = 0.0;
    double xq_over_qfact = 1.0;
    for (int q = 0; q <= p; ++q) {
        if (q > 0) xq_over_qfact *= x / q;
        sum += binomial(p + alpha, p - q) * xq_over_qfact;
    }
    return sum;
}

}  // namespace sicsched
