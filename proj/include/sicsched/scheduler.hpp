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

#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sicsched/config.hpp"

namespace sicsched {

enum class ReceiverKind { mmse, wl_mmse };

/// In-phase or quadrature half of an antenna's complex symbol, or the whole
/// complex symbol.
enum class StreamComponent { complex, in_phase, quadrature };

/// One transmitted stream of the representative transmitter.
struct StreamDescriptor {
    int antenna = 0;
    StreamComponent component = StreamComponent::complex;
    /// Fraction of the transmitter's total power S carried by this stream.
    double power_fraction = 1.0;
    /// Pre-log weight of the stream's rate: 1 for complex, 1/2 for real.
    double rate_weight = 1.0;
};

struct StreamLayout {
    std::vector<StreamDescriptor> streams;
    ReceiverKind receiver = ReceiverKind::mmse;
    /// Spatial multiplexing rate R; sum of the rate weights.
    double sm_rate = 1.0;

    int count() const { return static_cast<int>(streams.size()); }
};

/// complex: Nt complex streams (R = Nt, MMSE).
/// real:    Nt real streams on Nt antennas (R = Nt/2, WL-MMSE).
/// mixed m: 2 real streams on each of the first m antennas and one on each of
///          the remaining Nt-m, t = Nt+m, R = t/2, WL-MMSE.
StreamLayout build_streams(const SystemConfig& cfg);

struct Selection {
    int user = 0;
    double gamma = 0.0;
};

/// Argmax with ties resolved to the lowest index. Throws ConfigError on an
/// empty list.
Selection max_sinr_select(std::span<const double> sinrs);

struct Assignment {
    int stream = 0;
    int user = 0;
    double gamma = 0.0;
    double rate = 0.0;  ///< log2(1 + gamma), before the stream's rate weight
};

struct ScheduleDecision {
    std::vector<Assignment> assignments;
    int t = 0;

    double sum_rate() const;
};

enum class SchedulingMode {
    /// Each user gets at most one stream; stream i chooses among the L-i
    /// users not yet scheduled.
    distinct_users,
    /// Every stream chooses from the full pool; a user may get several streams.
    repeat_users,
};

/// Sequential max-SINR over an L x t CQI table (row = user, column = stream).
/// Throws ConfigError when L < t in distinct_users mode or the table is empty.
ScheduleDecision sequential_max_sinr(const Eigen::MatrixXd& cqi,
                                     SchedulingMode mode = SchedulingMode::distinct_users);

/// Brute-force best group (maximum sum of log2(1+gamma)) with distinct users.
/// Reference for measuring the sequential scheduler's gap; limited to L <= 8,
/// t <= 3.
ScheduleDecision exhaustive_best_group(const Eigen::MatrixXd& cqi);

}  // namespace sicsched
