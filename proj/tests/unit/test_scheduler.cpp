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

#include <random>

#include "helpers.hpp"
#include "sicsched/scheduler.hpp"

using namespace sicsched;
using testing::make_cfg;

TEST_CASE("stream layouts") {
    const auto c = build_streams(make_cfg(3, 2, 2, 10, Encoding::make_complex()));
    CHECK(c.count() == 2);
    CHECK(c.sm_rate == 2.0);
    CHECK(c.receiver == ReceiverKind::mmse);

    const auto r = build_streams(make_cfg(3, 5, 8, 100, Encoding::make_real()));
    CHECK(r.count() == 5);
    CHECK(r.sm_rate == 2.5);
    CHECK(r.receiver == ReceiverKind::wl_mmse);

    const auto m = build_streams(make_cfg(3, 3, 8, 100, Encoding::make_mixed(2)));
    CHECK(m.count() == 5);
    CHECK(m.sm_rate == 2.5);
    CHECK(m.receiver == ReceiverKind::wl_mmse);
    std::vector<int> per_antenna(3, 0);
    double power = 0.0;
    for (const auto& s : m.streams) {
        ++per_antenna[s.antenna];
        power += s.power_fraction;
    }
    CHECK(per_antenna == std::vector<int>{2, 2, 1});
    CHECK(power == doctest::Approx(1.0));

    // 2Nt real streams carry the same pre-log as Nt complex streams.
    CHECK(build_streams(make_cfg(3, 2, 2, 10, Encoding::make_mixed(2))).sm_rate == c.sm_rate);
}

TEST_CASE("max_sinr_select") {
    const std::vector<double> v = {0.5, 2.0, 1.0};
    const auto s = max_sinr_select(v);
    CHECK(s.user == 1);
    CHECK(s.gamma == 2.0);
    const std::vector<double> flat(5, 3.0);
    CHECK(max_sinr_select(flat).user == 0);
    CHECK_THROWS_AS(max_sinr_select(std::vector<double>{}), ConfigError);

    std::mt19937_64 rng(4);
    std::exponential_distribution<double> e(1.0);
    std::vector<double> big(50);
    for (auto& x : big) x = e(rng);
    int ref = 0;
    for (int i = 1; i < 50; ++i)
        if (big[i] > big[ref]) ref = i;
    CHECK(max_sinr_select(big).user == ref);
}

TEST_CASE("sequential scheduler hand traces") {
    Eigen::MatrixXd a(2, 2);
    a << 3, 1, 2, 5;
    auto d = sequential_max_sinr(a);
    REQUIRE(d.assignments.size() == 2);
    CHECK(d.assignments[0].user == 0);
    CHECK(d.assignments[0].gamma == 3.0);
    CHECK(d.assignments[1].user == 1);
    CHECK(d.assignments[1].gamma == 5.0);

    Eigen::MatrixXd b(2, 2);
    b << 3, 9, 2, 5;
    d = sequential_max_sinr(b);
    CHECK(d.assignments[0].user == 0);
    CHECK(d.assignments[1].user == 1);
    CHECK(d.assignments[1].gamma == 5.0);

    d = sequential_max_sinr(b, SchedulingMode::repeat_users);
    CHECK(d.assignments[1].user == 0);
    CHECK(d.assignments[1].gamma == 9.0);
    CHECK(d.sum_rate() == doctest::Approx(std::log2(4.0) + std::log2(10.0)));
}

TEST_CASE("single stream reduces to max_sinr_select") {
    Eigen::MatrixXd c(4, 1);
    c << 0.1, 0.7, 0.7, 0.2;
    const auto d = sequential_max_sinr(c);
    CHECK(d.t == 1);
    CHECK(d.assignments[0].user == 1);
    CHECK(d.assignments[0].rate == doctest::Approx(std::log2(1.7)));
}

TEST_CASE("scheduler argument checks") {
    CHECK_THROWS_AS(sequential_max_sinr(Eigen::MatrixXd(1, 2)), ConfigError);
    CHECK_THROWS_AS(sequential_max_sinr(Eigen::MatrixXd(0, 0)), ConfigError);
    CHECK_NOTHROW(sequential_max_sinr(Eigen::MatrixXd::Ones(1, 2), SchedulingMode::repeat_users));
}

TEST_CASE("sequential scheduler on random tables") {
    std::mt19937_64 rng(11);
    std::exponential_distribution<double> e(1.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const int t = 1 + trial % 3;
        const int L = t + trial % 6;
        Eigen::MatrixXd cqi(L, t);
        for (int i = 0; i < L; ++i)
            for (int j = 0; j < t; ++j) cqi(i, j) = e(rng);
        const auto d = sequential_max_sinr(cqi);
        std::vector<char> taken(L, 0);
        for (int s = 0; s < t; ++s) {
            const auto& a = d.assignments[s];
            CHECK(a.stream == s);
            CHECK_FALSE(taken[a.user]);
            for (int l = 0; l < L; ++l)
                if (!taken[l]) CHECK(cqi(l, s) <= a.gamma);
            taken[a.user] = 1;
        }
        if (L <= 8) CHECK(exhaustive_best_group(cqi).sum_rate() >= d.sum_rate() - 1e-12);
    }
}
