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

#include <doctest.h>

#include <cmath>
#include <numeric>

#include "sicsched/config.hpp"
#include "sicsched/stats.hpp"

using namespace sicsched;

TEST_CASE("pairwise sum") {
    std::vector<double> v(1000);
    std::iota(v.begin(), v.end(), 1.0);
    CHECK(pairwise_sum(v) == 500500.0);
    CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
    // 1 + many tiny terms: naive left-to-right summation loses them.
    std::vector<double> w(1 << 16, 1e-16);
    w[0] = 1.0;
    CHECK(pairwise_sum(w) == doctest::Approx(1.0 + 65535e-16).epsilon(1e-15));
}

TEST_CASE("mean and stderr") {
    const std::vector<double> v = {1, 2, 3, 4};
    const auto e = mean_and_stderr(v);
    CHECK(e.mean == 2.5);
    CHECK(e.stderr_ == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
    const auto p = proportion(25, 100);
    CHECK(p.mean == 0.25);
    CHECK(p.stderr_ == doctest::Approx(std::sqrt(0.25 * 0.75 / 100)));
}

TEST_CASE("KS statistic") {
    const std::vector<double> u = {0.1, 0.3, 0.5, 0.7, 0.9};
    CHECK(ks_statistic(u, [](double x) { return x; }) == doctest::Approx(0.1));
    CHECK(ks_critical_1pct(10000) == doctest::Approx(0.016276));
}

TEST_CASE("line fit") {
    const std::vector<double> x = {1, 2, 3, 4, 5};
    std::vector<double> y;
    for (double xi : x) y.push_back(0.5 + 2.0 * xi);
    const auto f = fit_line(x, y);
    CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(f.intercept == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(f.ci_low <= f.slope);
    CHECK(f.ci_high >= f.slope);

    const std::vector<double> noisy = {2.4, 4.6, 6.3, 8.7, 10.4};
    const auto g = fit_line(x, noisy);
    CHECK(g.slope_stderr > 0.0);
    // t(0.975, 3) = 3.182446
    CHECK(g.ci_high - g.slope == doctest::Approx(3.182446 * g.slope_stderr).epsilon(1e-5));

    CHECK_THROWS_AS(fit_line(std::vector<double>{1, 2}, std::vector<double>{1, 2}), ConfigError);
    CHECK_THROWS_AS(fit_line(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}), ConfigError);
}
