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

#include "sicsched/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "parallel.hpp"
#include "sicsched/channel.hpp"
#include "sicsched/receivers.hpp"

namespace sicsched {

namespace {

void check_noise_levels(std::span<const double> noise_levels) {
    if (noise_levels.empty()) throw ConfigError("empty noise grid");
    for (double n : noise_levels)
        if (!(n > 0.0) || !std::isfinite(n)) throw ConfigError("noise levels must be > 0");
}

std::vector<double> noise_grid(const SystemConfig& cfg, std::span<const double> snr_grid_db) {
    std::vector<double> out;
    out.reserve(snr_grid_db.size());
    for (double snr : snr_grid_db) out.push_back(cfg.S / db_to_linear(snr));
    return out;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt_double(*v) : std::string(); }

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("CSV: bad number '" + s + "' in column " + what);
    }
}

std::optional<double> parse_opt(const std::string& s, const std::string& what) {
    if (s.empty()) return std::nullopt;
    return parse_double(s, what);
}

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const auto v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("CSV: bad integer '" + s + "' in column " + what);
    }
}

ResultRecord base_record(const std::string& metric, const SystemConfig& c) {
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

}  // namespace

std::vector<Eigen::MatrixXd> sample_scheduled_sinrs(const SystemConfig& cfg,
                                                    std::span<const double> noise_levels,
                                                    SinrMode mode, const RunOptions& opts) {
    cfg.validate();
    check_noise_levels(noise_levels);
    const auto layout = build_streams(cfg);
    const int t = layout.count();
    if (mode == SinrMode::lb_sinr && t != 1)
        throw ConfigError("lower-bound SINR mode needs single-stream transmission");
    const auto G = noise_levels.size();
    const auto trials = static_cast<Eigen::Index>(cfg.trials);
    std::vector<Eigen::MatrixXd> out(G, Eigen::MatrixXd(trials, t));
    detail::parallel_for(cfg.trials, opts.threads, [&](std::size_t trial) {
        std::vector<Eigen::MatrixXd> cqi(G, Eigen::MatrixXd(cfg.L, t));
        std::vector<double> row(static_cast<std::size_t>(t));
        for (int l = 0; l < cfg.L; ++l) {
            auto rng = user_rng(cfg.seed, trial, static_cast<std::uint64_t>(l));
            const auto sample = draw_channel(cfg, rng);
            if (t == 1) {
                const SstSinrModel model(sample, cfg);
                for (std::size_t g = 0; g < G; ++g)
                    cqi[g](l, 0) = mode == SinrMode::lb_sinr
                                       ? model.gamma_lower_bound(noise_levels[g])
                                       : model.gamma(noise_levels[g]);
            } else {
                const StreamSinrModel model(sample, cfg, layout);
                for (std::size_t g = 0; g < G; ++g) {
                    model.gammas(noise_levels[g], row);
                    for (int s = 0; s < t; ++s) cqi[g](l, s) = row[static_cast<std::size_t>(s)];
                }
            }
        }
        for (std::size_t g = 0; g < G; ++g) {
            const auto decision = sequential_max_sinr(cqi[g], opts.scheduling);
            for (const auto& a : decision.assignments)
                out[g](static_cast<Eigen::Index>(trial), a.stream) = a.gamma;
        }
    });
    return out;
}

std::vector<Estimate> estimate_top_curve(const SystemConfig& cfg, std::span<const double> betas,
                                         SinrMode mode, const RunOptions& opts) {
    if (cfg.trials < 100) throw ConfigError("TOP estimation needs trials >= 100");
    const double noise[1] = {cfg.N0};
    const auto sinrs = sample_scheduled_sinrs(cfg, noise, mode, opts);
    const Eigen::VectorXd best = sinrs[0].col(0);
    std::vector<Estimate> out;
    for (double beta : betas) {
        std::size_t hits = 0;
        for (Eigen::Index i = 0; i < best.size(); ++i) hits += best(i) < beta ? 1 : 0;
        const auto p = proportion(hits, cfg.trials);
        out.push_back({p.mean, p.stderr_, cfg.trials});
    }
    return out;
}

Estimate estimate_top_mc(const SystemConfig& cfg, double beta, SinrMode mode,
                         const RunOptions& opts) {
    const double b[1] = {beta};
    return estimate_top_curve(cfg, b, mode, opts).front();
}

std::vector<Estimate> estimate_stream_outage(const SystemConfig& cfg, double beta,
                                             const RunOptions& opts) {
    if (cfg.trials < 100) throw ConfigError("outage estimation needs trials >= 100");
    const double noise[1] = {cfg.N0};
    const auto sinrs = sample_scheduled_sinrs(cfg, noise, SinrMode::true_sinr, opts);
    std::vector<Estimate> out;
    for (Eigen::Index s = 0; s < sinrs[0].cols(); ++s) {
        std::size_t hits = 0;
        for (Eigen::Index i = 0; i < sinrs[0].rows(); ++i) hits += sinrs[0](i, s) < beta ? 1 : 0;
        const auto p = proportion(hits, cfg.trials);
        out.push_back({p.mean, p.stderr_, cfg.trials});
    }
    return out;
}

std::vector<Estimate> estimate_mean_sum_capacity(const SystemConfig& cfg,
                                                 std::span<const double> snr_grid_db,
                                                 const RunOptions& opts) {
    const auto noise = noise_grid(cfg, snr_grid_db);
    const auto layout = build_streams(cfg);
    const auto sinrs = sample_scheduled_sinrs(cfg, noise, SinrMode::true_sinr, opts);
    std::vector<Estimate> out;
    std::vector<double> per_trial(cfg.trials);
    for (const auto& m : sinrs) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            double c = 0.0;
            for (Eigen::Index s = 0; s < m.cols(); ++s)
                c += layout.streams[static_cast<std::size_t>(s)].rate_weight * std::log2(1.0 + m(i, s));
            per_trial[static_cast<std::size_t>(i)] = cfg.K * c;
        }
        const auto e = mean_and_stderr(per_trial);
        out.push_back({e.mean, e.stderr_, cfg.trials});
    }
    return out;
}

std::vector<OutageCapacityPoint> outage_capacity_vs_L(const SystemConfig& cfg,
                                                      std::span<const int> L_grid,
                                                      double target_top, AnalyticKind kind) {
    std::vector<OutageCapacityPoint> out;
    for (int L : L_grid) {
        const double beta = solve_target_beta(target_top, L, cfg, kind);
        out.push_back({L, beta, sum_outage_capacity(beta, cfg)});
    }
    return out;
}

std::vector<double> users_required_curve(const SystemConfig& cfg,
                                         std::span<const double> snr_grid_db, double target_top,
                                         AnalyticKind kind, bool use_approx) {
    std::vector<double> out;
    for (double snr : snr_grid_db) {
        const auto c = cfg.with_snr_db(snr);
        const double beta = db_to_linear(snr);
        if (use_approx && kind == AnalyticKind::complex_exact)
            out.push_back(users_required_complex(target_top, beta, c).approx);
        else if (use_approx && kind == AnalyticKind::mu_exact)
            out.push_back(users_required_mu(target_top, beta, c).approx);
        else if (use_approx && kind == AnalyticKind::real_k2nr1_approx)
            out.push_back(users_required_real_k2nr1(target_top, beta, c));
        else
            out.push_back(users_required_exact(target_top, evaluate_cdf(kind, beta, c)));
    }
    return out;
}

LineFit fit_scaling_exponent(std::span<const double> snr_grid_db, std::span<const double> L_values) {
    if (snr_grid_db.size() != L_values.size())
        throw ConfigError("fit_scaling_exponent: grid and L sizes differ");
    if (snr_grid_db.size() < 4) throw ConfigError("fit_scaling_exponent: need >= 4 points");
    std::vector<double> x, y;
    for (std::size_t i = 0; i < L_values.size(); ++i) {
        if (!(L_values[i] > 0.0) || !std::isfinite(L_values[i]))
            throw ConfigError("fit_scaling_exponent: L values must be finite and > 0");
        x.push_back(std::log(db_to_linear(snr_grid_db[i])));
        y.push_back(std::log(L_values[i]));
    }
    return fit_line(x, y);
}

std::string csv_header() {
    return "metric,encoding,K,Nt,Nr,L,snr_db,beta_db,trials,mc_value,mc_stderr,analytic_value,"
           "analytic_kind,seed";
}

void write_records(std::ostream& out, const std::vector<ResultRecord>& records) {
    out << csv_header() << '\n';
    for (const auto& r : records) {
        out << r.metric << ',' << to_string(r.encoding) << ',' << r.K << ',' << r.Nt << ','
            << r.Nr << ',' << r.L << ',' << fmt_double(r.snr_db) << ',' << fmt_opt(r.beta_db)
            << ',' << r.trials << ',' << fmt_opt(r.mc_value) << ',' << fmt_opt(r.mc_stderr) << ','
            << fmt_opt(r.analytic_value) << ',' << r.analytic_kind << ',' << r.seed << '\n';
    }
}

void emit_records(const std::vector<ResultRecord>& records, const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
    write_records(f, records);
    f.flush();
    if (!f) throw IoError("failed writing '" + path.string() + "'");
}

std::vector<ResultRecord> parse_records(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("CSV: missing header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != csv_header()) throw ConfigError("CSV: unexpected header '" + line + "'");
    std::vector<ResultRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv(line);
        if (f.size() != 14) throw ConfigError("CSV: expected 14 fields in '" + line + "'");
        ResultRecord r;
        r.metric = f[0];
        r.encoding = parse_encoding(f[1]);
        r.K = static_cast<int>(parse_u64(f[2], "K"));
        r.Nt = static_cast<int>(parse_u64(f[3], "Nt"));
        r.Nr = static_cast<int>(parse_u64(f[4], "Nr"));
        r.L = static_cast<int>(parse_u64(f[5], "L"));
        r.snr_db = parse_double(f[6], "snr_db");
        r.beta_db = parse_opt(f[7], "beta_db");
        r.trials = parse_u64(f[8], "trials");
        r.mc_value = parse_opt(f[9], "mc_value");
        r.mc_stderr = parse_opt(f[10], "mc_stderr");
        r.analytic_value = parse_opt(f[11], "analytic_value");
        r.analytic_kind = f[12];
        r.seed = parse_u64(f[13], "seed");
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<ResultRecord> read_records(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path.string() + "' for reading");
    return parse_records(f);
}

std::string to_string(SweepAxis a) {
    switch (a) {
        case SweepAxis::snr: return "snr";
        case SweepAxis::L: return "L";
        case SweepAxis::K: return "K";
        case SweepAxis::encoding: return "encoding";
    }
    return "?";
}

std::string to_string(SweepMetric m) {
    switch (m) {
        case SweepMetric::top: return "top";
        case SweepMetric::mean_sum_capacity: return "mean_sum_capacity";
        case SweepMetric::outage_capacity_vs_L: return "outage_capacity_vs_L";
        case SweepMetric::scaling_exponent: return "scaling_exponent";
    }
    return "?";
}

SweepAxis parse_sweep_axis(const std::string& text) {
    for (auto a : {SweepAxis::snr, SweepAxis::L, SweepAxis::K, SweepAxis::encoding})
        if (to_string(a) == text) return a;
    throw ConfigError("unknown sweep axis '" + text + "' (snr, L, K, encoding)");
}

SweepMetric parse_sweep_metric(const std::string& text) {
    for (auto m : {SweepMetric::top, SweepMetric::mean_sum_capacity,
                   SweepMetric::outage_capacity_vs_L, SweepMetric::scaling_exponent})
        if (to_string(m) == text) return m;
    throw ConfigError("unknown sweep metric '" + text +
                      "' (top, mean_sum_capacity, outage_capacity_vs_L, scaling_exponent)");
}

void SweepSpec::validate() const {
    base.validate();
    if (axis == SweepAxis::encoding) {
        if (encodings.empty()) throw ConfigError("sweep: encoding list is empty");
    } else {
        if (grid.empty()) throw ConfigError("sweep: grid is empty");
        for (std::size_t i = 1; i < grid.size(); ++i)
            if (!(grid[i] > grid[i - 1])) throw ConfigError("sweep: grid must be strictly increasing");
        if (axis == SweepAxis::L || axis == SweepAxis::K)
            for (double v : grid)
                if (v != std::floor(v) || v < 1) throw ConfigError("sweep: L/K grid must hold integers >= 1");
    }
    if (!(target_top > 0.0 && target_top < 1.0)) throw ConfigError("sweep: target_top must lie in (0, 1)");
    if (metric == SweepMetric::scaling_exponent && (axis != SweepAxis::snr || grid.size() < 4))
        throw ConfigError("sweep: scaling_exponent needs an snr axis with >= 4 points");
}

std::vector<ResultRecord> run_sweep(const SweepSpec& spec, const RunOptions& opts) {
    spec.validate();
    std::vector<SystemConfig> points;
    if (spec.axis == SweepAxis::encoding) {
        for (const auto& e : spec.encodings) {
            auto c = spec.base;
            c.encoding = e;
            points.push_back(c);
        }
    } else {
        for (double v : spec.grid) {
            auto c = spec.base;
            if (spec.axis == SweepAxis::snr) c = c.with_snr_db(v);
            if (spec.axis == SweepAxis::L) c.L = static_cast<int>(v);
            if (spec.axis == SweepAxis::K) c.K = static_cast<int>(v);
            points.push_back(c);
        }
    }
    for (const auto& c : points) c.validate();

    std::vector<ResultRecord> out;
    switch (spec.metric) {
        case SweepMetric::top: {
            const double beta = db_to_linear(spec.beta_db);
            for (const auto& c : points) {
                auto r = base_record("top", c);
                r.beta_db = spec.beta_db;
                const auto e = estimate_top_mc(c, beta, spec.mode, opts);
                r.trials = e.trials;
                r.mc_value = e.value;
                r.mc_stderr = e.stderr_;
                if (auto kind = default_analytic_kind(c)) {
                    r.analytic_value = top_ub(evaluate_cdf(*kind, beta, c).F, c.L);
                    r.analytic_kind = to_string(*kind);
                }
                out.push_back(r);
            }
            break;
        }
        case SweepMetric::mean_sum_capacity: {
            if (spec.axis == SweepAxis::snr) {
                const auto est = estimate_mean_sum_capacity(spec.base, spec.grid, opts);
                for (std::size_t i = 0; i < points.size(); ++i) {
                    auto r = base_record("mean_sum_capacity", points[i]);
                    r.trials = est[i].trials;
                    r.mc_value = est[i].value;
                    r.mc_stderr = est[i].stderr_;
                    out.push_back(r);
                }
            } else {
                for (const auto& c : points) {
                    const double snr[1] = {c.snr_db()};
                    const auto e = estimate_mean_sum_capacity(c, snr, opts).front();
                    auto r = base_record("mean_sum_capacity", c);
                    r.trials = e.trials;
                    r.mc_value = e.value;
                    r.mc_stderr = e.stderr_;
                    out.push_back(r);
                }
            }
            break;
        }
        case SweepMetric::outage_capacity_vs_L: {
            for (const auto& c : points) {
                auto r = base_record("outage_capacity", c);
                if (auto kind = default_analytic_kind(c)) {
                    const int L[1] = {c.L};
                    const auto p = outage_capacity_vs_L(c, L, spec.target_top, *kind).front();
                    r.beta_db = linear_to_db(p.beta);
                    r.analytic_value = p.capacity;
                    r.analytic_kind = to_string(*kind);
                }
                out.push_back(r);
            }
            break;
        }
        case SweepMetric::scaling_exponent: {
            const auto kind = default_analytic_kind(spec.base);
            if (!kind) throw ConfigError("sweep: no closed form for this configuration");
            const auto L = users_required_curve(spec.base, spec.grid, spec.target_top, *kind);
            for (std::size_t i = 0; i < points.size(); ++i) {
                auto r = base_record("users_required", points[i]);
                r.beta_db = spec.grid[i];
                r.analytic_value = L[i];
                r.analytic_kind = to_string(*kind);
                out.push_back(r);
            }
            const auto fit = fit_scaling_exponent(spec.grid, L);
            auto r = base_record("scaling_exponent", points.back());
            r.analytic_value = fit.slope;
            r.analytic_kind = to_string(*kind);
            out.push_back(r);
            break;
        }
    }
    return out;
}

}  // namespace sicsched
