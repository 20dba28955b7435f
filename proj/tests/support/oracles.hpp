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

// Reference implementations for tests. Everything here is built on
// Boost.Math so that library results are never checked against their own
// code paths.

#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/laguerre.hpp>

#include <cmath>
#include <complex>
#include <functional>
#include <limits>

#include <Eigen/Dense>

namespace oracle {

inline double q(double x) { return 0.5 * boost::math::erfc(x / std::sqrt(2.0)); }

inline double gamma_q(double a, double x) { return boost::math::gamma_q(a, x); }

/// Associated Laguerre L_p^(alpha)(x), integer alpha.
inline double laguerre(unsigned p, unsigned alpha, double x) {
    return boost::math::laguerre(p, alpha, x);
}

/// Integral of f over [0, inf), split at `split` so that an integrable
/// singularity at 0 is handled by tanh-sinh. The densities used here have
/// underflowed long before `cutoff`; stopping there keeps exp-sinh away from
/// inf * 0.
inline double integrate_half_line(const std::function<double(double)>& f, double split = 1.0,
                                  double cutoff = 1e4) {
    boost::math::quadrature::tanh_sinh<double> ts;
    boost::math::quadrature::exp_sinh<double> es;
    const auto tail = [&](double x) { return x > cutoff ? 0.0 : f(x); };
    return ts.integrate(f, 0.0, split) + es.integrate(tail, split, std::numeric_limits<double>::infinity());
}

/// U(a, b, z) from its integral representation, a > 0.
inline double tricomi_u(double a, double b, double z) {
    const double integral = integrate_half_line(
        [=](double t) {
            return t == 0.0 ? 0.0 : std::exp(-z * t + (a - 1) * std::log(t) + (b - a - 1) * std::log1p(t));
        },
        1.0, std::numeric_limits<double>::infinity());
    return integral / boost::math::tgamma(a);
}

/// One 31-point Gauss-Kronrod panel, no subdivision; for short cells of a
/// smooth integrand.
inline double gk_panel(const std::function<double(double)>& f, double a, double b) {
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 0);
}

inline double inner_gk(const std::function<double(double)>& f, double a, double b) {
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, 1e-13);
}

/// P(S x / (lambda + noise) < beta) with x ~ Exp(1), lambda ~ pdf, by 2-D
/// quadrature (complex single-stream lower-bound SINR).
inline double complex_cdf_2d(double beta, double S, double noise,
                             const std::function<double(double)>& pdf) {
    auto outer = [&](double lambda) {
        const double upper = beta * (lambda + noise) / S;
        const double inner = inner_gk([](double x) { return std::exp(-x); }, 0.0, upper);
        return inner * pdf(lambda);
    };
    return integrate_half_line(outer);
}

/// P(S z^2 / (2 lambda + N0) < beta) with z ~ N(0,1): the widely linear
/// lower-bound SINR with noise N0/2 per real dimension.
inline double real_cdf_2d(double beta, double S, double N0, const std::function<double(double)>& pdf) {
    const double norm = 1.0 / std::sqrt(2.0 * boost::math::constants::pi<double>());
    auto outer = [&](double lambda) {
        const double a = std::sqrt(beta * (2.0 * lambda + N0) / S);
        const double inner = inner_gk([&](double z) { return norm * std::exp(-0.5 * z * z); }, -a, a);
        return inner * pdf(lambda);
    };
    return integrate_half_line(outer);
}

/// Covariance sum_i p_i v_i v_i^H + noise I built entry by entry.
inline Eigen::MatrixXcd naive_covariance(const std::vector<Eigen::VectorXcd>& vs,
                                         const std::vector<double>& powers, double noise) {
    const auto n = vs.empty() ? 0 : vs.front().size();
    Eigen::MatrixXcd R = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t k = 0; k < vs.size(); ++k)
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) R(i, j) += powers[k] * vs[k](i) * std::conj(vs[k](j));
    for (Eigen::Index i = 0; i < n; ++i) R(i, i) += noise;
    return R;
}

/// S h^H R^{-1} h through a full-pivot LU solve.
inline double quadratic_sinr(const Eigen::VectorXcd& h, const Eigen::MatrixXcd& R, double S) {
    const Eigen::VectorXcd x = R.fullPivLu().solve(h);
    return S * h.dot(x).real();
}

}  // namespace oracle
