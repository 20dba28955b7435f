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

#include "sicsched/scheduler.hpp"

#include <cmath>
#include <string>

namespace sicsched {

StreamLayout build_streams(const SystemConfig& cfg) {
    if (cfg.Nt < 1) throw ConfigError("Nt must be >= 1");
    StreamLayout layout;
    const double per_antenna = 1.0 / cfg.Nt;
    switch (cfg.encoding.kind) {
        case EncodingKind::complex:
            layout.receiver = ReceiverKind::mmse;
            for (int p = 0; p < cfg.Nt; ++p)
                layout.streams.push_back({p, StreamComponent::complex, per_antenna, 1.0});
            break;
        case EncodingKind::real:
            layout.receiver = ReceiverKind::wl_mmse;
            for (int p = 0; p < cfg.Nt; ++p)
                layout.streams.push_back({p, StreamComponent::in_phase, per_antenna, 0.5});
            break;
        case EncodingKind::mixed: {
            const int m = cfg.encoding.complex_antennas;
            if (m < 0 || m > cfg.Nt)
                throw ConfigError("mixed(m) requires 0 <= m <= Nt, got m=" + std::to_string(m));
            layout.receiver = ReceiverKind::wl_mmse;
            for (int p = 0; p < m; ++p) {
                layout.streams.push_back({p, StreamComponent::in_phase, 0.5 * per_antenna, 0.5});
                layout.streams.push_back({p, StreamComponent::quadrature, 0.5 * per_antenna, 0.5});
            }
            for (int p = m; p < cfg.Nt; ++p)
                layout.streams.push_back({p, StreamComponent::in_phase, per_antenna, 0.5});
            break;
        }
    }
    layout.sm_rate = 0.0;
    for (const auto& s : layout.streams) layout.sm_rate += s.rate_weight;
    return layout;
}

Selection max_sinr_select(std::span<const double> sinrs) {
    if (sinrs.empty()) throw ConfigError("max_sinr_select: empty SINR list");
    Selection best{0, sinrs[0]};
    for (std::size_t l = 1; l < sinrs.size(); ++l)
        if (sinrs[l] > best.gamma) best = {static_cast<int>(l), sinrs[l]};
    return best;
}

double ScheduleDecision::sum_rate() const {
    double r = 0.0;
    for (const auto& a : assignments) r += a.rate;
    return r;
}

ScheduleDecision sequential_max_sinr(const Eigen::MatrixXd& cqi, SchedulingMode mode) {
    const auto L = cqi.rows();
    const auto t = cqi.cols();
    if (L == 0 || t == 0) throw ConfigError("sequential_max_sinr: empty CQI table");
    if (mode == SchedulingMode::distinct_users && L < t)
        throw ConfigError("sequential_max_sinr: L=" + std::to_string(L) +
                          " users cannot fill t=" + std::to_string(t) + " streams");
    ScheduleDecision d;
    d.t = static_cast<int>(t);
    std::vector<char> taken(static_cast<std::size_t>(L), 0);
    for (Eigen::Index s = 0; s < t; ++s) {
        int best = -1;
        double best_gamma = 0.0;
        for (Eigen::Index l = 0; l < L; ++l) {
            if (mode == SchedulingMode::distinct_users && taken[l]) continue;
            if (best < 0 || cqi(l, s) > best_gamma) {
                best = static_cast<int>(l);
                best_gamma = cqi(l, s);
            }
        }
        taken[best] = 1;
        d.assignments.push_back({static_cast<int>(s), best, best_gamma, std::log2(1.0 + best_gamma)});
    }
    return d;
}

ScheduleDecision exhaustive_best_group(const Eigen::MatrixXd& cqi) {
    const int L = static_cast<int>(cqi.rows());
    const int t = static_cast<int>(cqi.cols());
    if (L == 0 || t == 0) throw ConfigError("exhaustive_best_group: empty CQI table");
    if (L > 8 || t > 3) throw ConfigError("exhaustive_best_group: limited to L <= 8, t <= 3");
    if (L < t) throw ConfigError("exhaustive_best_group: L < t");
    std::vector<int> pick(static_cast<std::size_t>(t), 0);
    std::vector<int> best_pick;
    double best = -1.0;
    // Enumerate ordered selections of distinct users, stream s -> pick[s].
    auto recurse = [&](auto&& self, int s, double acc) -> void {
        if (s == t) {
            if (acc > best) {
                best = acc;
                best_pick = pick;
            }
            return;
        }
        for (int l = 0; l < L; ++l) {
            bool used = false;
            for (int q = 0; q < s; ++q) used = used || pick[q] == l;
            if (used) continue;
            pick[s] = l;
            self(self, s + 1, acc + std::log2(1.0 + cqi(l, s)));
        }
    };
    recurse(recurse, 0, 0.0);
    ScheduleDecision d;
    d.t = t;
    for (int s = 0; s < t; ++s) {
        const double g = cqi(best_pick[s], s);
        d.assignments.push_back({s, best_pick[s], g, std::log2(1.0 + g)});
    }
    return d;
}

}  // namespace sicsched
