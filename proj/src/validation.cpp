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

#include "sicsched/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "sicsched/channel.hpp"
#include "sicsched/outage.hpp"
#include "sicsched/quadrature.hpp"
#include "sicsched/receivers.hpp"
#include "sicsched/scheduler.hpp"
#include "sicsched/special.hpp"
#include "sicsched/stats.hpp"
#include "sicsched/wishart.hpp"

namespace sicsched {

namespace {

std::string fmt(const char* f, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

std::size_t scaled(std::size_t n, double scale) {
    return std::max<std::size_t>(200, static_cast<std::size_t>(n * scale));
}

SystemConfig cfg_of(int K, int Nt, int Nr, int L, Encoding e, double snr_db, std::uint64_t seed) {
    SystemConfig c;
    c.K = K;
    c.Nt = Nt;
    c.Nr = Nr;
    c.L = L;
    c.encoding = e;
    c.seed = seed;
    return c.with_snr_db(snr_db);
}

CheckResult channel_statistics(const ValidationOptions& o) {
    const std::size_t n = scaled(100000, o.scale);
    auto rng = make_rng(o.seed, static_cast<std::uint64_t>(StreamId::validation), 1);
    double sr = 0, si = 0, srr = 0, sii = 0, sri = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto v = draw_cn_vector(1, rng)(0);
        sr += v.real();
        si += v.imag();
        srr += v.real() * v.real();
        sii += v.imag() * v.imag();
        sri += v.real() * v.imag();
    }
    const double mean = std::abs(std::complex<double>(sr, si)) / n;
    const double var = (srr + sii) / n;
    const double re_var = srr / n, im_var = sii / n, cross = sri / n;
    const double tol = 4.0 / std::sqrt(static_cast<double>(n));
    const bool ok = mean < 0.02 && std::abs(var - 1.0) < std::max(0.02, 3 * tol) &&
                    std::abs(re_var - im_var) < 2 * tol && std::abs(cross) < tol;
    return {"channel entries are CN(0,1) and circular", ok,
            fmt("|mean|=%.4f var=%.4f", mean, var) + fmt(" re-im var gap=%.4f cross=%.4f", re_var - im_var, cross)};
}

CheckResult stacking(const ValidationOptions& o) {
    auto rng = make_rng(o.seed, static_cast<std::uint64_t>(StreamId::validation), 2);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto x = draw_cn_vector(1 + i % 6, rng);
        worst = std::max(worst, std::abs(stack_real(x).squaredNorm() - x.squaredNorm()));
    }
    return {"stack_real preserves the norm", worst < 1e-12, fmt("max deviation %.3g", worst)};
}

CheckResult receiver_identities(const ValidationOptions& o) {
    const std::size_t n = scaled(10000, o.scale);
    double worst_rel = 0.0;
    std::size_t lb_violations = 0, monotone_violations = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const int Nr = 1 + static_cast<int>(i % 4);
        const int K = 1 + static_cast<int>((i / 4) % 6);
        const auto cfg = cfg_of(K, 1, Nr, 1, Encoding::make_complex(), 5.0 + (i % 30), o.seed);
        auto rng = make_rng(o.seed, static_cast<std::uint64_t>(StreamId::validation), 1000 + i);
        const auto s = draw_channel(cfg, rng);
        const auto h = s.H.col(0).eval();
        const double direct = post_sinr_mmse(h, nicm(s, cfg), cfg.S);
        const auto sp = decompose(icm(s, cfg));
        const double eig = post_sinr_eigenform(h, sp, cfg.S, cfg.N0);
        const double lb = sinr_lower_bound(h, sp, cfg.S, cfg.N0);
        worst_rel = std::max(worst_rel, std::abs(direct - eig) / std::max(direct, 1e-300));
        if (lb > eig * (1 + 1e-12)) ++lb_violations;
        if (!(post_sinr_eigenform(h, sp, cfg.S, 2 * cfg.N0) < eig)) ++monotone_violations;
    }
    const bool ok = worst_rel < 1e-10 && lb_violations == 0 && monotone_violations == 0;
    return {"MMSE direct solve equals eigen form; gamma >= gamma_lb; gamma decreasing in N0", ok,
            fmt("max rel diff %.3g, lb violations %.0f", worst_rel, static_cast<double>(lb_violations)) +
                fmt(", monotonicity violations %.0f", static_cast<double>(monotone_violations))};
}

CheckResult wl_identities(const ValidationOptions& o) {
    const std::size_t n = scaled(5000, o.scale);
    double worst_rel = 0.0;
    std::size_t lb_violations = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const int Nr = 1 + static_cast<int>(i % 3);
        const int K = 1 + static_cast<int>((i / 3) % 8);
        const auto cfg = cfg_of(K, 1, Nr, 1, Encoding::make_real(), 10.0, o.seed);
        auto rng = make_rng(o.seed, static_cast<std::uint64_t>(StreamId::validation), 50000 + i);
        const auto wl = to_wl(draw_channel(cfg, rng));
        const double direct = post_sinr_wl(wl.h[0], wl_nicm(wl, cfg), cfg.S);
        const auto sp = decompose(wl_icm(wl, cfg));
        const double eig = post_sinr_wl_eigenform(wl.h[0], sp, cfg.S, cfg.N0);
        worst_rel = std::max(worst_rel, std::abs(direct - eig) / direct);
        if (sinr_lower_bound_wl(wl.h[0], sp, cfg.S, cfg.N0) > eig * (1 + 1e-12)) ++lb_violations;
    }
    return {"WL-MMSE direct solve equals eigen form; gamma >= gamma_lb",
            worst_rel < 1e-10 && lb_violations == 0,
            fmt("max rel diff %.3g, lb violations %.0f", worst_rel, static_cast<double>(lb_violations))};
}

CheckResult icm_rank(const ValidationOptions& o) {
    std::size_t bad = 0, total = 0;
    for (int Nr = 1; Nr <= 4; ++Nr) {
        for (int K = 1; K <= 10; ++K) {
            const auto cfg = cfg_of(K, 1, Nr, 1, Encoding::make_complex(), 10.0, o.seed);
            for (int r = 0; r < 20; ++r) {
                auto rng = make_rng(o.seed, static_cast<std::uint64_t>(StreamId::validation),
                                    100000 + 1000 * Nr + 50 * K + r);
                const auto s = draw_channel(cfg, rng);
                bad += numerical_rank(decompose(icm(s, cfg)).values) != std::min(Nr, K - 1);
                bad += numerical_rank(decompose(wl_icm(to_wl(s), cfg)).values) != std::min(2 * Nr, K - 1);
                total += 2;
            }
        }
    }
    return {"ICM rank is min(Nr, K-1), WL ICM rank is min(2Nr, K-1)", bad == 0,
            fmt("%.0f of %.0f mismatches", static_cast<double>(bad), static_cast<double>(total))};
}

CheckResult mu_degenerate(const ValidationOptions& o) {
    std::size_t bad = 0;
    for (int i = 0; i < 2000; ++i) {
        const auto cfg = cfg_of(1 + i % 5, 1, 1 + i % 3, 1, Encoding::make_complex(), 15.0, o.seed);
        auto rng = make_rng(o.seed, static_cast<std::uint64_t>(StreamId::validation), 200000 + i);
        const auto s = draw_channel(cfg, rng);
        bad += stream_sinr_mu(s, 0, cfg) != post_sinr_mmse(s.H.col(0), nicm(s, cfg), cfg.S);
    }
    return {"single-antenna MU stream SINR equals SST SINR exactly", bad == 0,
            fmt("%.0f mismatches", static_cast<double>(bad))};
}

CheckResult omega_distribution(const ValidationOptions& o) {
    const std::size_t n = scaled(100000, o.scale);
    const auto cfg = cfg_of(4, 1, 2, 1, Encoding::make_complex(), 10.0, o.seed);
    std::vector<double> w;
    w.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto rng = make_rng(o.seed, static_cast<std::uint64_t>(StreamId::validation), 300000 + i);
        const auto s = draw_channel(cfg, rng);
        const auto sp = decompose(icm(s, cfg));
        w.push_back(std::norm((sp.U * s.H.col(0))(1)));
    }
    const double d = ks_statistic(w, [](double x) { return x <= 0 ? 0.0 : -std::expm1(-x); });
    const double crit = ks_critical_1pct(n);
    return {"|omega_p|^2 in the ICM eigenbasis is Exp(1)", d < crit, fmt("KS %.4f < %.4f", d, crit)};
}

CheckResult scheduler_properties(const ValidationOptions& o) {
    const std::size_t n = scaled(10000, o.scale);
    auto rng = make_rng(o.seed, static_cast<std::uint64_t>(StreamId::validation), 3);
    std::exponential_distribution<double> expo(1.0);
    std::size_t bad = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const int t = 1 + static_cast<int>(i % 4);
        const int L = t + static_cast<int>(i % 7);
        Eigen::MatrixXd cqi(L, t);
        for (int l = 0; l < L; ++l)
            for (int s = 0; s < t; ++s) cqi(l, s) = expo(rng);
        const auto d = sequential_max_sinr(cqi);
        std::vector<char> used(static_cast<std::size_t>(L), 0);
        for (const auto& a : d.assignments) {
            if (used[a.user]) ++bad;
            double best = -1;
            for (int l = 0; l < L; ++l)
                if (!used[l]) best = std::max(best, cqi(l, a.stream));
            if (a.gamma != best) ++bad;
            used[a.user] = 1;
        }
        const auto scaled_d = sequential_max_sinr(3.7 * cqi);
        for (int s = 0; s < t; ++s) bad += scaled_d.assignments[s].user != d.assignments[s].user;
        bad += d.assignments[0].gamma != cqi.col(0).maxCoeff();
    }
    return {"sequential scheduler: distinct users, argmax over eligible sets, scale invariance",
            bad == 0, fmt("%.0f violations in %.0f tables", static_cast<double>(bad), static_cast<double>(n))};
}

CheckResult mev_densities(const ValidationOptions& o) {
    const std::size_t n = scaled(100000, o.scale);
    std::ostringstream detail;
    bool ok = true;
    std::uint64_t idx = 0;
    auto check = [&](const std::string& name, int m, int dof, Field field,
                     const std::function<double(double)>& pdf) {
        quad::Options opt;
        opt.rel_tol = 1e-10;
        // u^2 substitution tames the odd-K endpoint singularity.
        const auto mass = quad::integrate_to_infinity([&](double u) { return pdf(u * u) * 2 * u; }, 0.0, opt);
        auto rng = make_rng(o.seed, static_cast<std::uint64_t>(StreamId::wishart), 1000 + idx++);
        auto draws = sample_mev(m, dof, 1.0, n, rng, field);
        std::sort(draws.begin(), draws.end());
        // Analytic cdf tabulated on a grid in sqrt(lambda), then interpolated.
        constexpr int kGrid = 2000;
        const double umax = std::sqrt(draws.back()) * (1 + 1e-9);
        std::vector<double> table(kGrid + 1, 0.0);
        for (int g = 1; g <= kGrid; ++g)
            table[g] = table[g - 1] + quad::integrate([&](double u) { return pdf(u * u) * 2 * u; },
                                                      umax * (g - 1) / kGrid, umax * g / kGrid, opt)
                                          .value;
        const auto cdf = [&](double x) {
            const double pos = std::sqrt(std::max(x, 0.0)) / umax * kGrid;
            const int g = std::min(static_cast<int>(pos), kGrid - 1);
            return table[g] + (pos - g) * (table[g + 1] - table[g]);
        };
        const double d = ks_statistic(draws, cdf);
        const double crit = ks_critical_1pct(n);
        const bool pass = std::abs(mass.value - 1.0) < 1e-6 && d < crit;
        ok = ok && pass;
        detail << name << (pass ? " ok" : " FAIL") << fmt(" (mass-1=%.2g, KS=%.4f); ", mass.value - 1.0, d);
    };
    for (const auto& c : builtin_coefficient_table())
        check(to_string(c.field) + "(" + std::to_string(c.m) + "," + std::to_string(c.n) + ")", c.m,
              c.degrees_of_freedom(), c.field, [c](double x) { return c.pdf(x, 1.0); });
    for (int Nr : {1, 2})
        check("real K=2Nr+1 Nr=" + std::to_string(Nr), 2 * Nr, 2 * Nr, Field::real,
              [Nr](double x) { return x == 0.0 ? 0.0 : pdf_mev_real_k2nr1(x, 1.0, 2 * Nr); });
    for (int Nr : {1, 2})
        check("real K=2Nr+3 Nr=" + std::to_string(Nr), 2 * Nr, 2 * Nr + 2, Field::real,
              [Nr](double x) { return pdf_mev_real_k2nr3(x, 1.0, 2 * Nr); });
    return {"MEV densities integrate to 1 and match sampled eigenvalues (KS 1%)", ok, detail.str()};
}

CheckResult exponential_mean(const ValidationOptions& o) {
    const std::size_t n = scaled(100000, o.scale);
    std::ostringstream detail;
    bool ok = true;
    for (int m : {1, 2, 4}) {
        auto rng = make_rng(o.seed, static_cast<std::uint64_t>(StreamId::wishart), 5000 + m);
        const auto d = sample_mev(m, m, 1.0, n, rng, Field::complex);
        const double mean = pairwise_sum(d) / n;
        const bool pass = std::abs(mean * m - 1.0) < 0.02;
        ok = ok && pass;
        detail << fmt("m=%.0f mean*m=%.4f; ", m, mean * m);
    }
    return {"square complex Wishart MEV has mean I0/m", ok, detail.str()};
}

CheckResult closed_form_ranges(const ValidationOptions& o) {
    (void)o;
    std::size_t bad = 0;
    struct Case {
        SystemConfig cfg;
        AnalyticKind kind;
    };
    std::vector<Case> cases = {
        {cfg_of(3, 1, 2, 10, Encoding::make_complex(), 20, 1), AnalyticKind::complex_exact},
        {cfg_of(4, 1, 2, 10, Encoding::make_complex(), 20, 1), AnalyticKind::complex_first_term},
        {cfg_of(2, 2, 2, 10, Encoding::make_complex(), 20, 1), AnalyticKind::mu_exact},
        {cfg_of(6, 1, 2, 10, Encoding::make_real(), 20, 1), AnalyticKind::real_even_exact},
        {cfg_of(6, 1, 2, 10, Encoding::make_real(), 20, 1), AnalyticKind::real_even_q_approx},
        {cfg_of(5, 1, 2, 10, Encoding::make_real(), 20, 1), AnalyticKind::real_k2nr1_approx},
        {cfg_of(7, 1, 2, 10, Encoding::make_real(), 20, 1), AnalyticKind::real_k2nr3_approx},
    };
    for (const auto& c : cases) {
        double prev = -1.0;
        for (double bdb = -10; bdb <= 40; bdb += 2.5) {
            const auto F = evaluate_cdf(c.kind, db_to_linear(bdb), c.cfg);
            if (!(F.F >= 0.0 && F.F <= 1.0) || std::abs(F.F + F.complement - 1.0) > 1e-12) ++bad;
            if (F.F < prev - 1e-12) ++bad;
            prev = F.F;
        }
    }
    return {"closed-form cdfs lie in [0,1] and increase with beta", bad == 0,
            fmt("%.0f violations", static_cast<double>(bad))};
}

CheckResult real_even_vs_quadrature(const ValidationOptions& o) {
    (void)o;
    double worst = 0.0;
    for (int K : {4, 6, 8}) {
        const int Nr = K == 4 ? 1 : 2;
        if (!real_mev_supported(Nr, K)) continue;
        for (double snr : {10.0, 20.0}) {
            const auto cfg = cfg_of(K, 1, Nr, 10, Encoding::make_real(), snr, 1);
            for (double bdb : {0.0, 10.0, 20.0, 30.0}) {
                const double b = db_to_linear(bdb);
                worst = std::max(worst, std::abs(cdf_F_real_even_exact(b, cfg).F -
                                                 cdf_F_real_quadrature(b, cfg).F));
            }
        }
    }
    return {"A1 + A2 equals numerical integration of the real MEV density", worst < 1e-6,
            fmt("max abs diff %.3g", worst)};
}

CheckResult top_vs_monte_carlo(const ValidationOptions& o) {
    auto cfg = cfg_of(3, 1, 2, 10, Encoding::make_complex(), 20.0, o.seed);
    cfg.trials = scaled(100000, o.scale);
    std::vector<double> betas;
    for (double bdb = 10; bdb <= 25; bdb += 3) betas.push_back(db_to_linear(bdb));
    const auto mc = estimate_top_curve(cfg, betas, SinrMode::lb_sinr, o.run);
    const auto truth = estimate_top_curve(cfg, betas, SinrMode::true_sinr, o.run);
    bool ok = true;
    double worst = 0.0;
    for (std::size_t i = 0; i < betas.size(); ++i) {
        const double bound = top_ub(cdf_F_complex(betas[i], cfg).F, cfg.L);
        const double z = std::abs(mc[i].value - bound) / std::max(mc[i].stderr_, 1e-12);
        if (bound >= 1e-3) {
            worst = std::max(worst, z);
            ok = ok && z <= 3.0;
        }
        ok = ok && truth[i].value <= mc[i].value;
    }
    return {"complex TOP bound matches lower-bound Monte Carlo; true SINR outage is lower", ok,
            fmt("worst |z| %.2f", worst)};
}

CheckResult mu_stream_bound(const ValidationOptions& o) {
    auto cfg = cfg_of(2, 2, 2, 10, Encoding::make_complex(), 20.0, o.seed);
    cfg.trials = scaled(20000, o.scale);
    bool ok = true;
    std::ostringstream detail;
    for (double bdb : {5.0, 10.0, 15.0}) {
        const double b = db_to_linear(bdb);
        const auto est = estimate_stream_outage(cfg, b, o.run);
        for (int s = 0; s < cfg.Nt; ++s) {
            const double bound = top_ub_mu(b, cfg, s);
            const bool pass = est[s].value <= bound + 2 * est[s].stderr_;
            ok = ok && pass;
            detail << fmt("beta=%.0fdB ", bdb) << fmt("s%.0f: %.4f", s, est[s].value)
                   << fmt(" <= %.4f; ", bound);
        }
    }
    return {"per-stream outage of the sequential scheduler is below the MU bound", ok, detail.str()};
}

CheckResult determinism(const ValidationOptions& o) {
    auto cfg = cfg_of(3, 2, 2, 6, Encoding::make_real(), 15.0, o.seed);
    cfg.trials = 300;
    const double noise[2] = {0.1, 0.01};
    RunOptions one = o.run;
    one.threads = 1;
    RunOptions many = o.run;
    many.threads = 4;
    const auto a = sample_scheduled_sinrs(cfg, noise, SinrMode::true_sinr, one);
    const auto b = sample_scheduled_sinrs(cfg, noise, SinrMode::true_sinr, many);
    bool same = a.size() == b.size();
    for (std::size_t g = 0; same && g < a.size(); ++g) same = a[g] == b[g];
    return {"simulation output is independent of the thread count", same, same ? "identical" : "differs"};
}

CheckResult capacity_monotone(const ValidationOptions& o) {
    auto cfg = cfg_of(3, 1, 2, 10, Encoding::make_complex(), 0.0, o.seed);
    cfg.trials = scaled(1000, o.scale);
    const std::vector<double> grid = {0, 5, 10, 15, 20, 25, 30};
    const auto est = estimate_mean_sum_capacity(cfg, grid, o.run);
    bool ok = est[0].value >= 0.0;
    for (std::size_t i = 1; i < est.size(); ++i) ok = ok && est[i].value >= est[i - 1].value;
    return {"mean sum capacity is nonnegative and nondecreasing in SNR", ok,
            fmt("%.3f .. %.3f", est.front().value, est.back().value)};
}

CheckResult solver_contract(const ValidationOptions& o) {
    (void)o;
    const auto cfg = cfg_of(3, 1, 2, 10, Encoding::make_complex(), 20.0, 1);
    bool ok = true;
    double prev = 0.0, worst = 0.0;
    for (int L : {1, 2, 5, 10, 20, 50}) {
        const double b = solve_target_beta(0.2, L, cfg, AnalyticKind::complex_exact);
        const double top = top_ub(cdf_F_complex(b, cfg).F, L);
        worst = std::max(worst, std::abs(top - 0.2));
        ok = ok && b > prev;
        prev = b;
    }
    return {"solve_target_beta meets the target and increases with L", ok && worst < 1e-9,
            fmt("max |TOP - target| %.3g", worst)};
}

}  // namespace

std::vector<CheckResult> run_validation_suite(const ValidationOptions& opts) {
    using Check = CheckResult (*)(const ValidationOptions&);
    const Check checks[] = {channel_statistics, stacking,          receiver_identities,
                            wl_identities,      icm_rank,          mu_degenerate,
                            omega_distribution, scheduler_properties, mev_densities,
                            exponential_mean,   closed_form_ranges, real_even_vs_quadrature,
                            top_vs_monte_carlo, mu_stream_bound,   determinism,
                            capacity_monotone,  solver_contract};
    std::vector<CheckResult> out;
    for (auto c : checks) {
        try {
            out.push_back(c(opts));
        } catch (const std::exception& e) {
            out.push_back({"check raised an error", false, e.what()});
        }
    }
    return out;
}

}  // namespace sicsched
