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

#include "helpers.hpp"
#include "sicsched/channel.hpp"

using namespace sicsched;
using testing::make_cfg;

TEST_CASE("draw_channel shapes") {
    auto rng = make_rng(1, 1, 0);
    const auto s = draw_channel(make_cfg(3, 1, 2, 10), rng);
    CHECK(s.H.rows() == 2);
    CHECK(s.H.cols() == 1);
    REQUIRE(s.G.size() == 2);
    CHECK(s.G[0].rows() == 2);

    const auto m = draw_channel(make_cfg(4, 3, 2, 10), rng);
    CHECK(m.H.cols() == 3);
    CHECK(m.G.size() == 3);
    CHECK(m.G[2].cols() == 3);

    CHECK(draw_channel(make_cfg(1, 1, 2, 1), rng).G.empty());
}

TEST_CASE("same seed and indices give identical draws") {
    const auto cfg = make_cfg(3, 2, 2, 10);
    auto a = user_rng(7, 11, 3);
    auto b = user_rng(7, 11, 3);
    const auto sa = draw_channel(cfg, a);
    const auto sb = draw_channel(cfg, b);
    CHECK(sa.H == sb.H);
    CHECK(sa.G[1] == sb.G[1]);

    auto c = user_rng(7, 11, 4);
    CHECK(draw_channel(cfg, c).H != sa.H);
    auto d = user_rng(8, 11, 3);
    CHECK(draw_channel(cfg, d).H != sa.H);
}

TEST_CASE("streams are distinct") {
    auto a = make_rng(5, static_cast<std::uint64_t>(StreamId::channel), 0);
    auto b = make_rng(5, static_cast<std::uint64_t>(StreamId::wishart), 0);
    CHECK(a() != b());
}

TEST_CASE("entries are CN(0,1)") {
    constexpr int n = 100000;
    auto rng = make_rng(3, 9, 0);
    const auto cfg = make_cfg(1, 1, 1, 1);
    std::complex<double> sum = 0.0;
    double sq = 0.0, re_sq = 0.0, cross = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto v = draw_channel(cfg, rng).H(0, 0);
        sum += v;
        sq += std::norm(v);
        re_sq += v.real() * v.real();
        cross += v.real() * v.imag();
    }
    CHECK(std::abs(sum / double(n)) < 0.02);
    CHECK(sq / n == doctest::Approx(1.0).epsilon(0.02));
    // Entry variance 1/2 per real dimension, uncorrelated parts.
    CHECK(re_sq / n == doctest::Approx(0.5).epsilon(0.02));
    CHECK(std::abs(cross / n) < 0.01);
}

TEST_CASE("stack_real") {
    Eigen::VectorXcd x(1);
    x << std::complex<double>(1, 2);
    const auto s = stack_real(x);
    REQUIRE(s.size() == 2);
    CHECK(s(0) == 1.0);
    CHECK(s(1) == 2.0);
    CHECK(stack_real(Eigen::VectorXcd::Zero(2)) == Eigen::VectorXd::Zero(4));

    Eigen::VectorXcd y(2);
    y << std::complex<double>(1, -1), std::complex<double>(3, 4);
    const auto t = stack_real(y);
    CHECK(t(0) == 1.0);
    CHECK(t(1) == 3.0);
    CHECK(t(2) == -1.0);
    CHECK(t(3) == 4.0);
}

TEST_CASE("to_wl covers every column") {
    auto rng = make_rng(2, 2, 2);
    const auto s = draw_channel(make_cfg(3, 2, 2, 10), rng);
    const auto wl = to_wl(s);
    REQUIRE(wl.h.size() == 2);
    REQUIRE(wl.g.size() == 4);
    CHECK(wl.h[1] == stack_real(s.H.col(1)));
    CHECK(wl.g[3] == stack_real(s.G[1].col(1)));
    CHECK(wl.h[0].size() == 4);
}
