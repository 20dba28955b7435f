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
#include "oracles.hpp"
#include "sicsched/channel.hpp"
#include "sicsched/receivers.hpp"
#include "sicsched/scheduler.hpp"

using namespace sicsched;
using testing::make_cfg;
using cd = std::complex<double>;

namespace {

ChannelSample sample_for(const SystemConfig& cfg, std::uint64_t index) {
    auto rng = make_rng(99, 7, index);
    return draw_channel(cfg, rng);
}

}  // namespace

TEST_CASE("nicm by hand") {
    auto cfg = make_cfg(1, 1, 3, 1);
    cfg.N0 = 0.25;
    const auto s = sample_for(cfg, 0);
    CHECK(nicm(s, cfg).isApprox(0.25 * Eigen::MatrixXcd::Identity(3, 3)));

    ChannelSample one;
    one.H = Eigen::MatrixXcd::Ones(1, 1);
    one.G = {Eigen::MatrixXcd::Ones(1, 1)};
    auto c2 = make_cfg(2, 1, 1, 1);
    c2.N0 = 0.5;
    CHECK(nicm(one, c2)(0, 0).real() == doctest::Approx(1.5));
}

TEST_CASE("nicm matches naive summation") {
    const auto cfg = make_cfg(5, 2, 3, 10, Encoding::make_complex(), 13.0);
    for (int i = 0; i < 20; ++i) {
        const auto s = sample_for(cfg, i);
        std::vector<Eigen::VectorXcd> vs;
        std::vector<double> p;
        for (const auto& g : s.G)
            for (int c = 0; c < g.cols(); ++c) {
                vs.push_back(g.col(c));
                p.push_back(cfg.I0 / cfg.Nt);
            }
        CHECK((nicm(s, cfg) - oracle::naive_covariance(vs, p, cfg.N0)).norm() < 1e-12);
    }
}

TEST_CASE("post_sinr_mmse diagonal case") {
    Eigen::VectorXcd h(2);
    h << 1.0, 0.0;
    Eigen::MatrixXcd R = Eigen::MatrixXcd::Zero(2, 2);
    R(0, 0) = 2.0;
    R(1, 1) = 1.0;
    CHECK(post_sinr_mmse(h, R, 4.0) == doctest::Approx(2.0));
}

TEST_CASE("eigen form and lower bound") {
    SUBCASE("diagonal lower bound") {
        ComplexSpectrum sp;
        sp.values = Eigen::Vector2d(3.0, 1.0);
        sp.U = Eigen::MatrixXcd::Identity(2, 2);
        Eigen::VectorXcd h(2);
        h << 0.0, 1.0;
        CHECK(sinr_lower_bound(h, sp, 2.0, 1.0) == doctest::Approx(1.0));
    }
    SUBCASE("zero interference is noise limited") {
        const auto cfg = make_cfg(1, 1, 3, 1, Encoding::make_complex(), 10.0);
        const auto s = sample_for(cfg, 1);
        const auto sp = decompose(icm(s, cfg));
        CHECK(post_sinr_eigenform(s.H.col(0), sp, cfg.S, cfg.N0) ==
              doctest::Approx(cfg.S * s.H.col(0).squaredNorm() / cfg.N0).epsilon(1e-12));
    }
    SUBCASE("single antenna lower bound is exact") {
        const auto cfg = make_cfg(4, 1, 1, 1, Encoding::make_complex(), 10.0);
        for (int i = 0; i < 50; ++i) {
            const auto s = sample_for(cfg, i);
            const auto sp = decompose(icm(s, cfg));
            CHECK(sinr_lower_bound(s.H.col(0), sp, cfg.S, cfg.N0) ==
                  doctest::Approx(post_sinr_eigenform(s.H.col(0), sp, cfg.S, cfg.N0)).epsilon(1e-14));
        }
    }
    SUBCASE("random instances") {
        for (int i = 0; i < 500; ++i) {
            const auto cfg = make_cfg(2 + i % 5, 1, 1 + i % 4, 1, Encoding::make_complex(), 5.0 + i % 25);
            const auto s = sample_for(cfg, 100 + i);
            const Eigen::VectorXcd h = s.H.col(0);
            const double direct = post_sinr_mmse(h, nicm(s, cfg), cfg.S);
            const double ref = oracle::quadratic_sinr(h, nicm(s, cfg), cfg.S);
            const auto sp = decompose(icm(s, cfg));
            const double eig = post_sinr_eigenform(h, sp, cfg.S, cfg.N0);
            CHECK(direct == doctest::Approx(ref).epsilon(1e-10));
            CHECK(eig == doctest::Approx(direct).epsilon(1e-10));
            CHECK(sinr_lower_bound(h, sp, cfg.S, cfg.N0) <= eig * (1 + 1e-12));
        }
    }
}

TEST_CASE("rank deficient ICM: SINR grows as 1/N0") {
    const auto cfg = make_cfg(2, 1, 3, 1, Encoding::make_complex(), 10.0);
    const auto s = sample_for(cfg, 7);
    const auto sp = decompose(icm(s, cfg));
    CHECK(numerical_rank(sp.values) == 1);
    const double g1 = post_sinr_eigenform(s.H.col(0), sp, cfg.S, 1e-4);
    const double g2 = post_sinr_eigenform(s.H.col(0), sp, cfg.S, 1e-6);
    CHECK(g2 / g1 == doctest::Approx(100.0).epsilon(0.01));
}

TEST_CASE("full rank ICM: SINR saturates") {
    const auto cfg = make_cfg(4, 1, 2, 1, Encoding::make_complex(), 10.0);
    const auto s = sample_for(cfg, 8);
    const auto sp = decompose(icm(s, cfg));
    const double g1 = post_sinr_eigenform(s.H.col(0), sp, cfg.S, 1e-6);
    const double g2 = post_sinr_eigenform(s.H.col(0), sp, cfg.S, 1e-9);
    CHECK(g2 / g1 == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("spectrum validation") {
    ComplexSpectrum sp;
    sp.values = Eigen::Vector2d(1.0, 3.0);
    sp.U = Eigen::MatrixXcd::Identity(2, 2);
    Eigen::VectorXcd h = Eigen::VectorXcd::Ones(2);
    CHECK_THROWS(post_sinr_eigenform(h, sp, 1.0, 1.0));
    sp.values = Eigen::Vector2d(1.0, -0.5);
    CHECK_THROWS(post_sinr_eigenform(h, sp, 1.0, 1.0));
    sp.values = Eigen::Vector2d(3.0, 1.0);
    sp.U(0, 0) = 2.0;
    CHECK_THROWS(post_sinr_eigenform(h, sp, 1.0, 1.0));

    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(2, 2);
    bad(1, 1) = -1.0;
    CHECK_THROWS_AS(decompose(bad), SolverError);
}

TEST_CASE("widely linear receiver") {
    SUBCASE("no interference") {
        const auto cfg = make_cfg(1, 1, 2, 1, Encoding::make_real(), 10.0);
        const auto wl = to_wl(sample_for(cfg, 3));
        CHECK(wl_nicm(wl, cfg).isApprox(0.5 * cfg.N0 * Eigen::MatrixXd::Identity(4, 4)));
        CHECK(post_sinr_wl(wl.h[0], wl_nicm(wl, cfg), cfg.S) ==
              doctest::Approx(2.0 * cfg.S * wl.h[0].squaredNorm() / cfg.N0).epsilon(1e-12));
    }
    SUBCASE("suppresses up to 2Nr-1 interferers") {
        const auto cfg = make_cfg(4, 1, 2, 1, Encoding::make_real(), 10.0);
        const auto wl = to_wl(sample_for(cfg, 4));
        const auto sp = decompose(wl_icm(wl, cfg));
        CHECK(numerical_rank(sp.values) == 3);
        const double g1 = post_sinr_wl_eigenform(wl.h[0], sp, cfg.S, 1e-4);
        const double g2 = post_sinr_wl_eigenform(wl.h[0], sp, cfg.S, 1e-6);
        CHECK(g2 / g1 == doctest::Approx(100.0).epsilon(0.01));
    }
    SUBCASE("random instances") {
        for (int i = 0; i < 300; ++i) {
            const auto cfg = make_cfg(2 + i % 7, 1, 1 + i % 3, 1, Encoding::make_real(), 5.0 + i % 25);
            const auto wl = to_wl(sample_for(cfg, 1000 + i));
            Eigen::MatrixXd naive = 0.5 * cfg.N0 * Eigen::MatrixXd::Identity(2 * cfg.Nr, 2 * cfg.Nr);
            for (const auto& g : wl.g) naive += cfg.I0 * g * g.transpose();
            CHECK((wl_nicm(wl, cfg) - naive).norm() < 1e-12);
            const double direct = post_sinr_wl(wl.h[0], wl_nicm(wl, cfg), cfg.S);
            const double ref = cfg.S * wl.h[0].dot(naive.fullPivLu().solve(wl.h[0]));
            const auto sp = decompose(wl_icm(wl, cfg));
            CHECK(direct == doctest::Approx(ref).epsilon(1e-10));
            CHECK(post_sinr_wl_eigenform(wl.h[0], sp, cfg.S, cfg.N0) == doctest::Approx(direct).epsilon(1e-10));
            CHECK(sinr_lower_bound_wl(wl.h[0], sp, cfg.S, cfg.N0) <= direct * (1 + 1e-12));
        }
    }
}

TEST_CASE("multi-stream SINR") {
    SUBCASE("Nt = 1 equals SST exactly") {
        for (int i = 0; i < 100; ++i) {
            const auto cfg = make_cfg(1 + i % 4, 1, 1 + i % 3, 1, Encoding::make_complex(), 12.0);
            const auto s = sample_for(cfg, 2000 + i);
            CHECK(stream_sinr_mu(s, 0, cfg) == post_sinr_mmse(s.H.col(0), nicm(s, cfg), cfg.S));
        }
    }
    SUBCASE("orthogonal columns without interferers") {
        auto cfg = make_cfg(1, 2, 2, 2, Encoding::make_complex(), 10.0);
        ChannelSample s;
        s.H = Eigen::MatrixXcd::Zero(2, 2);
        s.H(0, 0) = cd(1.0, 1.0);
        s.H(1, 1) = cd(0.0, 2.0);
        CHECK(stream_sinr_mu(s, 0, cfg) == doctest::Approx(2.0 / (cfg.Nt * cfg.N0)));
        CHECK(stream_sinr_mu(s, 1, cfg) == doctest::Approx(4.0 / (cfg.Nt * cfg.N0)));
    }
    SUBCASE("naive covariance oracle") {
        for (int i = 0; i < 100; ++i) {
            const auto cfg = make_cfg(1 + i % 4, 2 + i % 2, 2 + i % 3, 5, Encoding::make_complex(), 15.0);
            const auto s = sample_for(cfg, 3000 + i);
            const int st = i % cfg.Nt;
            std::vector<Eigen::VectorXcd> vs;
            std::vector<double> p;
            for (int c = 0; c < cfg.Nt; ++c)
                if (c != st) {
                    vs.push_back(s.H.col(c));
                    p.push_back(cfg.S / cfg.Nt);
                }
            for (const auto& g : s.G)
                for (int c = 0; c < cfg.Nt; ++c) {
                    vs.push_back(g.col(c));
                    p.push_back(cfg.I0 / cfg.Nt);
                }
            const auto R = oracle::naive_covariance(vs, p, cfg.N0);
            const double ref = oracle::quadratic_sinr(s.H.col(st), R, cfg.S / cfg.Nt);
            CHECK(stream_sinr_mu(s, st, cfg) == doctest::Approx(ref).epsilon(1e-10));
        }
    }
}

TEST_CASE("SstSinrModel agrees with direct solves") {
    for (auto enc : {Encoding::make_complex(), Encoding::make_real()}) {
        const auto cfg = make_cfg(4, 1, 2, 1, enc, 10.0);
        for (int i = 0; i < 50; ++i) {
            const auto s = sample_for(cfg, 4000 + i);
            const SstSinrModel model(s, cfg);
            for (double N0 : {1.0, 0.1, 0.001}) {
                auto c = cfg;
                c.N0 = N0;
                double direct;
                if (enc.kind == EncodingKind::complex) {
                    direct = post_sinr_mmse(s.H.col(0), nicm(s, c), c.S);
                } else {
                    const auto wl = to_wl(s);
                    direct = post_sinr_wl(wl.h[0], wl_nicm(wl, c), c.S);
                }
                CHECK(model.gamma(N0) == doctest::Approx(direct).epsilon(1e-10));
                CHECK(model.gamma_lower_bound(N0) <= model.gamma(N0) * (1 + 1e-12));
            }
        }
    }
}

TEST_CASE("StreamSinrModel agrees with direct covariance solves") {
    SUBCASE("complex MU") {
        const auto cfg = make_cfg(3, 2, 2, 4, Encoding::make_complex(), 10.0);
        const auto layout = build_streams(cfg);
        for (int i = 0; i < 50; ++i) {
            const auto s = sample_for(cfg, 5000 + i);
            const StreamSinrModel model(s, cfg, layout);
            std::vector<double> g(2);
            model.gammas(cfg.N0, g);
            for (int st = 0; st < 2; ++st)
                CHECK(g[st] == doctest::Approx(stream_sinr_mu(s, st, cfg)).epsilon(1e-8));
        }
    }
    SUBCASE("real and mixed streams") {
        for (auto enc : {Encoding::make_real(), Encoding::make_mixed(1)}) {
            const auto cfg = make_cfg(3, 2, 2, 4, enc, 10.0);
            const auto layout = build_streams(cfg);
            for (int i = 0; i < 30; ++i) {
                const auto s = sample_for(cfg, 6000 + i);
                const StreamSinrModel model(s, cfg, layout);
                std::vector<double> g(layout.count());
                model.gammas(cfg.N0, g);

                // Oracle: stacked real stream vectors with their powers.
                auto real_streams = [&](const Eigen::MatrixXcd& ch, double power) {
                    std::vector<std::pair<Eigen::VectorXd, double>> out;
                    for (const auto& d : layout.streams) {
                        Eigen::VectorXcd col = ch.col(d.antenna);
                        if (d.component == StreamComponent::quadrature) col *= cd(0.0, 1.0);
                        out.emplace_back(stack_real(col), power * d.power_fraction);
                    }
                    return out;
                };
                const auto desired = real_streams(s.H, cfg.S);
                Eigen::MatrixXd base = 0.5 * cfg.N0 * Eigen::MatrixXd::Identity(4, 4);
                for (const auto& G : s.G)
                    for (const auto& [v, p] : real_streams(G, cfg.I0)) base += p * v * v.transpose();
                for (int st = 0; st < layout.count(); ++st) {
                    Eigen::MatrixXd R = base;
                    for (int o = 0; o < layout.count(); ++o)
                        if (o != st) R += desired[o].second * desired[o].first * desired[o].first.transpose();
                    const auto& [v, p] = desired[st];
                    const double ref = p * v.dot(R.fullPivLu().solve(v));
                    CHECK(g[st] == doctest::Approx(ref).epsilon(1e-8));
                }
            }
        }
    }
}
