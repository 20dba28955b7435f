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

#include "sicsched/reproduction.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "sicsched/channel.hpp"
#include "sicsched/stats.hpp"
#include "sicsched/wishart.hpp"

namespace sicsched {

namespace {

constexpr std::uint64_t kDefaultSeed = 1;
constexpr std::uint64_t kTopTrials = 100000;
constexpr std::uint64_t kCapacityTrials = 1000;

std::vector<double> arange(double lo, double hi, double step) {
    std::vector<double> v;
    for (int i = 0; lo + i * step <= hi + 1e-9; ++i) v.push_back(lo + i * step);
    return v;
}

SystemConfig make_config(int K, int Nt, int Nr, int L, Encoding enc, double snr_db,
                         const ReproOptions& opts, std::uint64_t default_trials) {
    SystemConfig c;
    c.K = K;
    c.Nt = Nt;
    c.Nr = Nr;
    c.L = L;
    c.S = 1.0;
    c.I0 = 1.0;
    c.encoding = enc;
    c.trials = opts.trials.value_or(default_trials);
    c.seed = opts.seed.value_or(kDefaultSeed);
    c = c.with_snr_db(snr_db);
    c.validate();
    return c;
}

ResultRecord record(const std::string& metric, const SystemConfig& c) {
    ResultRecord r;
    r.metric = metric;
    r.encoding = c.encoding;
    r.K = c.K;
    r.Nt = c.Nt;
    r.Nr = c.Nr;
    r.L = c.L;
    r.snr_db = c.snr_db();
    r.seed = c.seed;
    return r;
}

// TOP against target SNR: Monte Carlo of the lower-bound and true-SINR
// schedulers, plus every listed closed form.
std::vector<ResultRecord> top_figure(const SystemConfig& cfg, AnalyticKind bound,
                                     const std::vector<AnalyticKind>& extra,
                                     const ReproOptions& opts) {
    const auto betas_db = arange(0.0, 30.0, 1.0);
    std::vector<double> betas;
    for (double b : betas_db) betas.push_back(db_to_linear(b));
    const auto lb = estimate_top_curve(cfg, betas, SinrMode::lb_sinr, opts.run);
    const auto tr = estimate_top_curve(cfg, betas, SinrMode::true_sinr, opts.run);
    std::vector<ResultRecord> out;
    for (std::size_t i = 0; i < betas.size(); ++i) {
        auto r = record("top", cfg);
        r.beta_db = betas_db[i];
        r.trials = lb[i].trials;
        r.mc_value = lb[i].value;
        r.mc_stderr = lb[i].stderr_;
        r.analytic_value = top_ub(evaluate_cdf(bound, betas[i], cfg).F, cfg.L);
        r.analytic_kind = to_string(bound);
        out.push_back(r);
        for (auto kind : extra) {
            auto a = record("top", cfg);
            a.beta_db = betas_db[i];
            a.analytic_value = top_ub(evaluate_cdf(kind, betas[i], cfg).F, cfg.L);
            a.analytic_kind = to_string(kind);
            out.push_back(a);
        }
        auto t = record("top_true_sinr", cfg);
        t.beta_db = betas_db[i];
        t.trials = tr[i].trials;
        t.mc_value = tr[i].value;
        t.mc_stderr = tr[i].stderr_;
        out.push_back(t);
    }
    return out;
}

struct Mode {
    Encoding encoding;
    int K;
    int Nt;
};

std::vector<ResultRecord> capacity_curves(int Nr, int L, const std::vector<Mode>& modes,
                                          const std::vector<double>& snr_grid,
                                          const ReproOptions& opts) {
    std::vector<ResultRecord> out;
    for (const auto& mode : modes) {
        const auto base =
            make_config(mode.K, mode.Nt, Nr, L, mode.encoding, snr_grid.front(), opts, kCapacityTrials);
        const auto est = estimate_mean_sum_capacity(base, snr_grid, opts.run);
        for (std::size_t i = 0; i < snr_grid.size(); ++i) {
            auto r = record("mean_sum_capacity", base.with_snr_db(snr_grid[i]));
            r.trials = est[i].trials;
            r.mc_value = est[i].value;
            r.mc_stderr = est[i].stderr_;
            out.push_back(r);
        }
    }
    return out;
}

std::vector<Mode> sst_modes(const std::vector<int>& complex_K, const std::vector<int>& real_K) {
    std::vector<Mode> m;
    for (int K : complex_K) m.push_back({Encoding::make_complex(), K, 1});
    for (int K : real_K) m.push_back({Encoding::make_real(), K, 1});
    return m;
}

std::vector<Mode> sm_modes(int K, int max_complex, const std::vector<int>& real_Nt,
                           const std::vector<std::pair<int, int>>& mixed = {}) {
    std::vector<Mode> m;
    for (int Nt = 1; Nt <= max_complex; ++Nt) m.push_back({Encoding::make_complex(), K, Nt});
    for (int Nt : real_Nt) m.push_back({Encoding::make_real(), K, Nt});
    for (auto [Nt, mc] : mixed) m.push_back({Encoding::make_mixed(mc), K, Nt});
    return m;
}

std::vector<ResultRecord> capacity_vs_L(const ReproOptions& opts) {
    const std::vector<int> L_grid = {1, 2, 3, 5, 7, 10, 15, 20, 30, 50, 70, 100};
    const double target = 0.2;
    struct Case {
        Encoding enc;
        int K;
        AnalyticKind kind;
    };
    const std::vector<Case> cases = {
        {Encoding::make_complex(), 3, AnalyticKind::complex_exact},
        {Encoding::make_complex(), 4, AnalyticKind::complex_exact},
        {Encoding::make_complex(), 5, AnalyticKind::complex_exact},
        {Encoding::make_real(), 5, AnalyticKind::real_quadrature},
        {Encoding::make_real(), 6, AnalyticKind::real_even_exact},
    };
    std::vector<ResultRecord> out;
    for (const auto& cs : cases) {
        auto cfg = make_config(cs.K, 1, 2, 1, cs.enc, 20.0, opts, 1);
        for (const auto& p : outage_capacity_vs_L(cfg, L_grid, target, cs.kind)) {
            cfg.L = p.L;
            auto r = record("outage_capacity", cfg);
            r.beta_db = linear_to_db(p.beta);
            r.analytic_value = p.capacity;
            r.analytic_kind = to_string(cs.kind);
            out.push_back(r);
        }
    }
    return out;
}

std::vector<ResultRecord> capacity_table(int Nr, const std::vector<std::pair<int, double>>& columns,
                                         const std::vector<Mode>& modes, const ReproOptions& opts) {
    std::vector<ResultRecord> out;
    for (const auto& mode : modes) {
        for (auto [L, snr] : columns) {
            const auto cfg = make_config(mode.K, mode.Nt, Nr, L, mode.encoding, snr, opts, kCapacityTrials);
            const double g[1] = {snr};
            const auto e = estimate_mean_sum_capacity(cfg, g, opts.run).front();
            auto r = record("mean_sum_capacity", cfg);
            r.trials = e.trials;
            r.mc_value = e.value;
            r.mc_stderr = e.stderr_;
            out.push_back(r);
        }
    }
    return out;
}

using Runner = std::function<std::vector<ResultRecord>(const ReproOptions&)>;

const std::map<std::string, Runner>& figures() {
    static const std::map<std::string, Runner> m = {
        {"top-complex",
         [](const ReproOptions& o) {
             const auto c = make_config(3, 1, 2, 10, Encoding::make_complex(), 20.0, o, kTopTrials);
             return top_figure(c, AnalyticKind::complex_exact, {AnalyticKind::complex_first_term}, o);
         }},
        {"top-real-even",
         [](const ReproOptions& o) {
             const auto c = make_config(6, 1, 2, 10, Encoding::make_real(), 20.0, o, kTopTrials);
             return top_figure(c, AnalyticKind::real_even_exact, {AnalyticKind::real_even_q_approx}, o);
         }},
        {"top-real-odd",
         [](const ReproOptions& o) {
             const auto c = make_config(5, 1, 2, 10, Encoding::make_real(), 20.0, o, kTopTrials);
             return top_figure(c, AnalyticKind::real_k2nr1_approx, {AnalyticKind::real_quadrature}, o);
         }},
        {"capacity-vs-L", capacity_vs_L},
        {"mean-capacity-nr1",
         [](const ReproOptions& o) {
             return capacity_curves(1, 10, sst_modes({3, 4}, {3, 4}), arange(0, 30, 5), o);
         }},
        {"mean-capacity-nr2",
         [](const ReproOptions& o) {
             return capacity_curves(2, 50, sst_modes({3, 4, 5}, {3, 4, 5}), arange(0, 30, 5), o);
         }},
        {"sm-nr2",
         [](const ReproOptions& o) {
             return capacity_curves(2, 10, sm_modes(3, 2, {1, 2, 3, 4}), arange(0, 30, 5), o);
         }},
        {"sm-nr4-k2",
         [](const ReproOptions& o) {
             return capacity_curves(4, 50, sm_modes(2, 4, {1, 2, 3, 4, 5, 6, 8}), arange(0, 30, 5), o);
         }},
        {"sm-nr4-k3",
         [](const ReproOptions& o) {
             return capacity_curves(4, 50, sm_modes(3, 4, {1, 2, 3, 4, 5, 6, 8}), arange(0, 30, 5), o);
         }},
        {"sm-nr8",
         [](const ReproOptions& o) {
             return capacity_curves(8, 100, sm_modes(3, 4, {2, 3, 4, 5, 6, 8}, {{3, 2}}),
                                    arange(0, 30, 5), o);
         }},
    };
    return m;
}

const std::map<std::string, Runner>& tables() {
    static const std::map<std::string, Runner> m = {
        {"mean-capacity-nr1",
         [](const ReproOptions& o) {
             return capacity_table(1, {{10, 5.0}, {10, 30.0}, {50, 5.0}, {50, 30.0}},
                                   sst_modes({3, 4}, {3, 4}), o);
         }},
        {"mean-capacity-nr2",
         [](const ReproOptions& o) {
             return capacity_table(2, {{50, 5.0}, {50, 20.0}}, sst_modes({3, 4, 5}, {3, 4, 5}), o);
         }},
    };
    return m;
}

}  // namespace

const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids = {
        "top-complex",       "top-real-even",     "top-real-odd", "capacity-vs-L",
        "mean-capacity-nr1", "mean-capacity-nr2", "sm-nr2",       "sm-nr4-k2",
        "sm-nr4-k3",         "sm-nr8"};
    return ids;
}

const std::vector<std::string>& table_ids() {
    static const std::vector<std::string> ids = {"coeffs", "mean-capacity-nr1", "mean-capacity-nr2"};
    return ids;
}

std::vector<ResultRecord> run_figure(std::string_view id, const ReproOptions& opts) {
    const auto it = figures().find(std::string(id));
    if (it == figures().end()) throw ConfigError("unknown figure id '" + std::string(id) + "'");
    return it->second(opts);
}

std::vector<ResultRecord> run_table(std::string_view id, const ReproOptions& opts) {
    if (id == "coeffs") throw ConfigError("table 'coeffs' has its own format; use coefficient_table");
    const auto it = tables().find(std::string(id));
    if (it == tables().end()) throw ConfigError("unknown table id '" + std::string(id) + "'");
    return it->second(opts);
}

std::vector<CoefficientRow> coefficient_table(std::uint64_t seed, std::uint64_t samples) {
    std::vector<CoefficientRow> rows;
    std::uint64_t index = 0;
    for (const auto& c : builtin_coefficient_table()) {
        auto rng = make_rng(seed, static_cast<std::uint64_t>(StreamId::wishart), index++);
        const auto draws = sample_mev(c.m, c.degrees_of_freedom(), 1.0,
                                      static_cast<std::size_t>(samples), rng, c.field);
        const double d = ks_statistic(draws, [&](double x) { return c.cdf(x, 1.0); });
        for (std::size_t k = 0; k < c.a.size(); ++k) {
            CoefficientRow r;
            r.field = to_string(c.field);
            r.m = c.m;
            r.n = c.n;
            r.k0 = c.k0;
            r.k = static_cast<int>(k);
            r.exact = c.exact[k];
            r.value = c.a[k];
            r.mass = c.mass();
            r.ks_statistic = d;
            r.ks_critical = ks_critical_1pct(draws.size());
            rows.push_back(r);
        }
    }
    return rows;
}

std::string coefficient_csv(const std::vector<CoefficientRow>& rows) {
    std::ostringstream out;
    out << "field,m,n,k0,k,exact,value,mass,ks_statistic,ks_critical\n";
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g", r.value, r.mass, r.ks_statistic,
                      r.ks_critical);
        out << r.field << ',' << r.m << ',' << r.n << ',' << r.k0 << ',' << r.k << ',' << r.exact
            << ',' << buf << '\n';
    }
    return out.str();
}

}  // namespace sicsched
