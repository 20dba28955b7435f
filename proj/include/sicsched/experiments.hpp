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

// Monte Carlo estimation and sweep orchestration.
//
// Each trial draws every user's channel from its own substream
// (seed, trial, user), so results do not depend on the thread count. Noise
// grids reuse the same draws (common random numbers).

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sicsched/config.hpp"
#include "sicsched/outage.hpp"
#include "sicsched/scheduler.hpp"
#include "sicsched/stats.hpp"

namespace sicsched {

enum class SinrMode { true_sinr, lb_sinr };

struct RunOptions {
    /// Worker cap; 0 uses the hardware concurrency.
    unsigned threads = 0;
    SchedulingMode scheduling = SchedulingMode::distinct_users;
};

struct Estimate {
    double value = 0.0;
    double stderr_ = 0.0;
    std::uint64_t trials = 0;
};

/// Scheduled post-SINRs: one (trials x t) matrix per noise level, column s
/// holding stream s. `cfg.N0` is ignored in favour of `noise_levels`.
///
/// lb_sinr uses the minimum-eigenvalue SINR and is limited to single-stream
/// transmission (Nt = 1, complex or real); ConfigError otherwise.
std::vector<Eigen::MatrixXd> sample_scheduled_sinrs(const SystemConfig& cfg,
                                                    std::span<const double> noise_levels,
                                                    SinrMode mode, const RunOptions& opts = {});

/// Fraction of trials whose scheduled (stream 0) SINR is below beta.
/// Requires cfg.trials >= 100.
Estimate estimate_top_mc(const SystemConfig& cfg, double beta, SinrMode mode,
                         const RunOptions& opts = {});

/// estimate_top_mc over a beta grid from one set of draws.
std::vector<Estimate> estimate_top_curve(const SystemConfig& cfg, std::span<const double> betas,
                                         SinrMode mode, const RunOptions& opts = {});

/// Per-stream outage fractions of the sequential scheduler at beta, true SINR.
std::vector<Estimate> estimate_stream_outage(const SystemConfig& cfg, double beta,
                                             const RunOptions& opts = {});

/// Mean over trials of K sum_s w_s log2(1 + gamma_s), w_s the stream's rate
/// weight, one point per SNR (dB, S fixed).
std::vector<Estimate> estimate_mean_sum_capacity(const SystemConfig& cfg,
                                                 std::span<const double> snr_grid_db,
                                                 const RunOptions& opts = {});

struct OutageCapacityPoint {
    int L = 1;
    double beta = 0.0;
    double capacity = 0.0;
};

/// beta* from solve_target_beta for each L, then the sum outage capacity.
std::vector<OutageCapacityPoint> outage_capacity_vs_L(const SystemConfig& cfg,
                                                      std::span<const int> L_grid,
                                                      double target_top, AnalyticKind kind);

/// Users required at beta = SNR (N0 = S / SNR) for each grid point, from the
/// given closed form. Uses the approximate form where `use_approx` is set and
/// the form has one.
std::vector<double> users_required_curve(const SystemConfig& cfg,
                                         std::span<const double> snr_grid_db, double target_top,
                                         AnalyticKind kind, bool use_approx = false);

/// Slope of ln L against ln SNR with a 95% interval. Needs >= 4 points and
/// L > 0; ConfigError otherwise.
LineFit fit_scaling_exponent(std::span<const double> snr_grid_db, std::span<const double> L_values);

/// One CSV row.
struct ResultRecord {
    std::string metric;
    Encoding encoding = Encoding::make_complex();
    int K = 0;
    int Nt = 0;
    int Nr = 0;
    int L = 0;
    double snr_db = 0.0;
    std::optional<double> beta_db;
    std::uint64_t trials = 0;
    std::optional<double> mc_value;
    std::optional<double> mc_stderr;
    std::optional<double> analytic_value;
    std::string analytic_kind;
    std::uint64_t seed = 0;

    friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

/// Header line without the trailing newline.
std::string csv_header();

void write_records(std::ostream& out, const std::vector<ResultRecord>& records);
/// Throws IoError naming the path.
void emit_records(const std::vector<ResultRecord>& records, const std::filesystem::path& path);

std::vector<ResultRecord> parse_records(std::istream& in);
std::vector<ResultRecord> read_records(const std::filesystem::path& path);

class IoError : public Error {
public:
    using Error::Error;
};

enum class SweepAxis { snr, L, K, encoding };
enum class SweepMetric { top, mean_sum_capacity, outage_capacity_vs_L, scaling_exponent };

std::string to_string(SweepAxis a);
std::string to_string(SweepMetric m);
SweepAxis parse_sweep_axis(const std::string& text);
SweepMetric parse_sweep_metric(const std::string& text);

struct SweepSpec {
    SystemConfig base;
    SweepAxis axis = SweepAxis::snr;
    /// SNR (dB), L or K values; strictly increasing.
    std::vector<double> grid;
    /// Used with SweepAxis::encoding.
    std::vector<Encoding> encodings;
    SweepMetric metric = SweepMetric::mean_sum_capacity;
    double target_top = 0.1;
    /// Target SNR for metric top (dB).
    double beta_db = 10.0;
    SinrMode mode = SinrMode::lb_sinr;

    /// Throws ConfigError.
    void validate() const;
};

std::vector<ResultRecord> run_sweep(const SweepSpec& spec, const RunOptions& opts = {});

}  // namespace sicsched
