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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "sicsched/config_file.hpp"
#include "sicsched/experiments.hpp"
#include "sicsched/reproduction.hpp"

using namespace sicsched;
using testing::make_cfg;
namespace fs = std::filesystem;

namespace {

std::string to_csv(const std::vector<ResultRecord>& r) {
    std::ostringstream out;
    write_records(out, r);
    return out.str();
}

fs::path temp_dir(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("sicsched_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("Monte Carlo TOP edge cases") {
    const auto cfg = make_cfg(3, 1, 2, 10, Encoding::make_complex(), 20.0, 500);
    CHECK(estimate_top_mc(cfg, 0.0, SinrMode::lb_sinr).value == 0.0);
    CHECK(estimate_top_mc(cfg, 1e12, SinrMode::lb_sinr).value == 1.0);
    auto few = cfg;
    few.trials = 50;
    CHECK_THROWS_AS(estimate_top_mc(few, 1.0, SinrMode::lb_sinr), ConfigError);
    CHECK_THROWS_AS(estimate_top_mc(make_cfg(3, 2, 2, 10, Encoding::make_complex(), 20, 500), 1.0,
                                    SinrMode::lb_sinr),
                    ConfigError);
}

TEST_CASE("true SINR outage never exceeds lower-bound outage on the same draws") {
    const auto cfg = make_cfg(4, 1, 2, 10, Encoding::make_complex(), 20.0, 2000);
    std::vector<double> betas = {1.0, 10.0, 100.0, 300.0};
    const auto lb = estimate_top_curve(cfg, betas, SinrMode::lb_sinr);
    const auto tr = estimate_top_curve(cfg, betas, SinrMode::true_sinr);
    for (std::size_t i = 0; i < betas.size(); ++i) CHECK(tr[i].value <= lb[i].value);
}

TEST_CASE("thread count does not change results") {
    for (auto enc : {Encoding::make_complex(), Encoding::make_real(), Encoding::make_mixed(1)}) {
        const auto cfg = make_cfg(3, 2, 2, 5, enc, 10.0, 300, 9);
        const std::vector<double> grid = {0, 10, 20};
        const auto a = estimate_mean_sum_capacity(cfg, grid, RunOptions{1});
        const auto b = estimate_mean_sum_capacity(cfg, grid, RunOptions{3});
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(a[i].value == b[i].value);
            CHECK(a[i].stderr_ == b[i].stderr_);
        }
    }
}

TEST_CASE("mean sum capacity") {
    SUBCASE("monotone in SNR with common draws") {
        for (auto enc : {Encoding::make_complex(), Encoding::make_real()}) {
            const auto cfg = make_cfg(3, 1, 1, 10, enc, 0.0, 300);
            const std::vector<double> grid = {0, 5, 10, 15, 20, 25, 30, 35};
            const auto e = estimate_mean_sum_capacity(cfg, grid);
            CHECK(e[0].value > 0.0);
            for (std::size_t i = 1; i < e.size(); ++i) CHECK(e[i].value >= e[i - 1].value);
        }
    }
    SUBCASE("stderr shrinks as 1/sqrt(trials)") {
        const std::vector<double> grid = {10};
        const auto a = estimate_mean_sum_capacity(make_cfg(3, 1, 2, 10, Encoding::make_complex(), 0, 2000), grid);
        const auto b = estimate_mean_sum_capacity(make_cfg(3, 1, 2, 10, Encoding::make_complex(), 0, 8000), grid);
        CHECK(a[0].stderr_ / b[0].stderr_ == doctest::Approx(2.0).epsilon(0.15));
    }
    SUBCASE("noise-free single user single transmitter") {
        // K = 1, Nr = 1, L = 1: E[log2(1 + SNR |h|^2)] with |h|^2 ~ Exp(1).
        const std::vector<double> grid = {10};
        const auto e = estimate_mean_sum_capacity(make_cfg(1, 1, 1, 1, Encoding::make_complex(), 0, 20000), grid);
        const double ref = 2.9065148;  // int_0^inf log2(1 + 10 x) e^{-x} dx
        CHECK(e[0].value == doctest::Approx(ref).epsilon(0.02));
    }
}

TEST_CASE("per-stream outage") {
    const auto cfg = make_cfg(2, 2, 2, 10, Encoding::make_complex(), 20.0, 2000);
    const auto e = estimate_stream_outage(cfg, 5.0);
    REQUIRE(e.size() == 2);
    for (int s = 0; s < 2; ++s) CHECK(e[s].value <= top_ub_mu(5.0, cfg, s) + 3 * e[s].stderr_ + 1e-3);
}

TEST_CASE("scaling exponent fit") {
    const std::vector<double> grid = {10, 20, 30, 40};
    std::vector<double> L;
    for (double g : grid) L.push_back(3.0 * std::pow(db_to_linear(g), 1.5));
    const auto f = fit_scaling_exponent(grid, L);
    CHECK(f.slope == doctest::Approx(1.5).epsilon(1e-10));
    CHECK_THROWS_AS(fit_scaling_exponent(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2, 3}), ConfigError);
    CHECK_THROWS_AS(fit_scaling_exponent(grid, std::vector<double>{1, 0, 2, 3}), ConfigError);

    const auto cfg = make_cfg(3, 1, 2, 10);
    std::vector<double> snr;
    for (double s = 10; s <= 40; s += 2.5) snr.push_back(s);
    const auto curve = users_required_curve(cfg, snr, 0.1, AnalyticKind::complex_exact);
    CHECK(fit_scaling_exponent(snr, curve).slope == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("outage capacity against L") {
    const auto cfg = make_cfg(3, 1, 2, 1);
    const std::vector<int> Ls = {1, 2, 5, 10, 50};
    const auto pts = outage_capacity_vs_L(cfg, Ls, 0.2, AnalyticKind::complex_exact);
    REQUIRE(pts.size() == Ls.size());
    for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i].capacity > pts[i - 1].capacity);
    CHECK(pts[0].capacity == doctest::Approx(sum_outage_capacity(pts[0].beta, cfg)));
}

TEST_CASE("CSV records") {
    ResultRecord r;
    r.metric = "top";
    r.encoding = Encoding::make_mixed(2);
    r.K = 3;
    r.Nt = 3;
    r.Nr = 8;
    r.L = 100;
    r.snr_db = 12.5;
    r.beta_db = 0.1;
    r.trials = 1000;
    r.mc_value = 1.0 / 3.0;
    r.mc_stderr = 1e-17;
    r.analytic_kind = "complex_exact";
    r.seed = 18446744073709551615ull;
    ResultRecord blank = r;
    blank.beta_db.reset();
    blank.mc_value.reset();
    blank.mc_stderr.reset();
    blank.analytic_kind.clear();

    const std::vector<ResultRecord> rows = {r, blank};
    const auto text = to_csv(rows);
    CHECK(text.substr(0, text.find('\n')) ==
          "metric,encoding,K,Nt,Nr,L,snr_db,beta_db,trials,mc_value,mc_stderr,analytic_value,analytic_kind,seed");
    CHECK(text.find("mixed(2)") != std::string::npos);
    std::istringstream in(text);
    CHECK(parse_records(in) == rows);

    const auto dir = temp_dir("csv");
    emit_records({}, dir / "empty.csv");
    std::ifstream f(dir / "empty.csv");
    std::string all((std::istreambuf_iterator<char>(f)), {});
    CHECK(all == csv_header() + "\n");
    emit_records(rows, dir / "rows.csv");
    CHECK(read_records(dir / "rows.csv") == rows);

    CHECK_THROWS_AS(emit_records(rows, dir / "missing" / "x.csv"), IoError);
    CHECK_THROWS_AS(read_records(dir / "nope.csv"), IoError);
    std::istringstream bad("metric,wrong\n");
    CHECK_THROWS_AS(parse_records(bad), ConfigError);
}

TEST_CASE("config file") {
    const auto spec = parse_sweep_spec(R"(
[system]
K = 4
Nt = 1
Nr = 2
L = 20
snr_db = 15
encoding = real
trials = 200
seed = 5

[sweep]
axis = encoding
encodings = complex, real, mixed(1)
metric = mean_sum_capacity
mode = true
)");
    CHECK(spec.base.K == 4);
    CHECK(spec.base.snr_db() == doctest::Approx(15.0));
    CHECK(spec.base.encoding == Encoding::make_real());
    CHECK(spec.axis == SweepAxis::encoding);
    REQUIRE(spec.encodings.size() == 3);
    CHECK(spec.encodings[2] == Encoding::make_mixed(1));
    CHECK(spec.mode == SinrMode::true_sinr);

    CHECK_THROWS_AS(parse_sweep_spec("[system]\nK = 3\nbogus = 1\n[sweep]\ngrid = 1,2\n"), ConfigError);
    CHECK_THROWS_AS(parse_sweep_spec("[system]\nN0 = 0.1\nsnr_db = 10\n[sweep]\ngrid = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_sweep_spec("[other]\nK = 3\n"), ConfigError);
    CHECK_THROWS_AS(parse_sweep_spec("[system]\nK = three\n[sweep]\ngrid = 1\n"), ConfigError);
    CHECK_THROWS_AS(load_sweep_spec("/nonexistent/sweep.ini"), ConfigError);

    const auto dir = temp_dir("ini");
    std::ofstream(dir / "s.ini") << "[system]\nK = 2\nNr = 1\nL = 4\nN0 = 0.5\n";
    const auto cfg = load_system_config(dir / "s.ini");
    CHECK(cfg.K == 2);
    CHECK(cfg.N0 == 0.5);
}

TEST_CASE("sweeps are deterministic") {
    SweepSpec spec;
    spec.base = make_cfg(3, 1, 2, 10, Encoding::make_complex(), 10.0, 200, 4);
    spec.axis = SweepAxis::snr;
    spec.grid = {0, 10, 20};
    spec.metric = SweepMetric::mean_sum_capacity;
    const auto a = to_csv(run_sweep(spec));
    const auto b = to_csv(run_sweep(spec, RunOptions{2}));
    CHECK(a == b);
    spec.base.seed = 5;
    CHECK(to_csv(run_sweep(spec)) != a);

    SweepSpec top = spec;
    top.metric = SweepMetric::top;
    const auto rows = run_sweep(top);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].analytic_kind == "complex_exact");
    CHECK(rows[0].mc_value.has_value());

    SweepSpec scale = spec;
    scale.metric = SweepMetric::scaling_exponent;
    scale.grid = {10, 20, 30, 40};
    const auto s = run_sweep(scale);
    CHECK(s.back().metric == "scaling_exponent");
    CHECK(*s.back().analytic_value == doctest::Approx(1.0).epsilon(0.15));

    SweepSpec bad = spec;
    bad.grid = {10, 5};
    CHECK_THROWS_AS(run_sweep(bad), ConfigError);
    bad = spec;
    bad.target_top = 1.0;
    CHECK_THROWS_AS(run_sweep(bad), ConfigError);
}

TEST_CASE("reproduction ids") {
    CHECK(figure_ids().size() == 10);
    CHECK(table_ids() == std::vector<std::string>{"coeffs", "mean-capacity-nr1", "mean-capacity-nr2"});
    CHECK_THROWS_AS(run_figure("fig-99"), ConfigError);
    CHECK_THROWS_AS(run_table("coeffs"), ConfigError);

    ReproOptions o;
    o.trials = 20;
    const auto rows = run_figure("mean-capacity-nr1", o);
    CHECK_FALSE(rows.empty());
    for (const auto& r : rows) {
        CHECK(r.metric == "mean_sum_capacity");
        CHECK(r.Nr == 1);
        CHECK(r.L == 10);
        CHECK(r.trials == 20);
    }
    const auto again = run_figure("mean-capacity-nr1", o);
    CHECK(to_csv(rows) == to_csv(again));

    const auto table = run_table("mean-capacity-nr2", o);
    CHECK(table.size() == 12);

    const auto coeffs = coefficient_table(1, 2000);
    CHECK(coefficient_csv(coeffs).substr(0, 5) == "field");
    for (const auto& c : coeffs) CHECK(c.mass == doctest::Approx(1.0));
}
