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

// Globally adaptive Gauss-Kronrod (7/15) integration.

#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "sicsched/config.hpp"

namespace sicsched::quad {

struct Result {
    double value = 0.0;
    double error = 0.0;
    int intervals = 0;
    bool converged = false;
};

struct Options {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    int max_intervals = 4000;
};

namespace detail {

inline constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <typename F>
Segment gk15(F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kronrod = fc * kKronrod[7];
    double gauss = fc * kGauss[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kNodes[j];
        const double sum = f(c - dx) + f(c + dx);
        kronrod += kKronrod[j] * sum;
        if (j % 2 == 1) gauss += kGauss[j / 2] * sum;
    }
    return {a, b, kronrod * h, std::abs((kronrod - gauss) * h)};
}

}  // namespace detail

/// Integral of f over the finite interval [a, b]. Integrable endpoint
/// singularities are fine since nodes never touch the endpoints.
template <typename F>
Result integrate(F&& f, double a, double b, const Options& opt = {}) {
    std::priority_queue<detail::Segment> heap;
    auto first = detail::gk15(f, a, b);
    double total = first.value;
    double err = first.error;
    heap.push(first);
    int n = 1;
    auto done = [&] {
        return err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
    };
    while (!done() && n < opt.max_intervals) {
        auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            heap.push(worst);
            break;
        }
        auto left = detail::gk15(f, worst.a, mid);
        auto right = detail::gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        heap.push(left);
        heap.push(right);
        ++n;
        // Re-sum the error estimates to avoid drift from repeated subtraction.
        if (n % 64 == 0) {
            std::vector<detail::Segment> all;
            err = 0.0;
            total = 0.0;
            while (!heap.empty()) {
                all.push_back(heap.top());
                heap.pop();
            }
            for (auto& s : all) {
                err += s.error;
                total += s.value;
                heap.push(s);
            }
        } else {
            err += left.error + right.error - worst.error;
        }
    }
    return {total, err, n, done()};
}

/// Integral of f over [a, inf) through t = a + s / (1 - s).
template <typename F>
Result integrate_to_infinity(F&& f, double a, const Options& opt = {}) {
    auto mapped = [&](double s) {
        const double one_minus = 1.0 - s;
        const double t = a + s / one_minus;
        const double v = f(t);
        if (v == 0.0) return 0.0;
        return v / (one_minus * one_minus);
    };
    return integrate(mapped, 0.0, 1.0, opt);
}

/// Like integrate(), but throws SolverError when the tolerance is not met.
template <typename F>
double integrate_or_throw(F&& f, double a, double b, const Options& opt = {}) {
    auto r = integrate(f, a, b, opt);
    if (!r.converged && r.error > 1e3 * opt.rel_tol * std::abs(r.value) + opt.abs_tol)
        throw SolverError("quadrature did not converge");
    return r.value;
}

}  // namespace sicsched::quad
