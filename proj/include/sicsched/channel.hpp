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

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "sicsched/config.hpp"

namespace sicsched {

using Rng = std::mt19937_64;

/// Deterministic generator for one (seed, stream, index) triple.
///
/// Distinct triples give statistically independent engines, so a trial or a
/// user can be regenerated in isolation and worker threads never share state.
Rng make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// Stream ids used by the simulators. Keeping them apart means a TOP run and
/// a capacity run with the same seed do not reuse draws.
enum class StreamId : std::uint64_t {
    channel = 1,
    wishart = 2,
    validation = 3,
};

/// Engine for user `user` of trial `trial`.
Rng user_rng(std::uint64_t seed, std::uint64_t trial, std::uint64_t user);

/// Channels seen by one user of the representative transmitter.
struct ChannelSample {
    /// Nr x Nt desired channel; column p feeds stream p.
    Eigen::MatrixXcd H;
    /// K-1 interferer channels, each Nr x Nt.
    std::vector<Eigen::MatrixXcd> G;
};

/// Real-stacked channels for the widely linear receiver, one vector of
/// length 2Nr per real-valued stream.
struct WLChannelSample {
    std::vector<Eigen::VectorXd> h;
    std::vector<Eigen::VectorXd> g;
};

/// I.i.d. CN(0,1) entries: real and imaginary parts are independent N(0,1/2).
ChannelSample draw_channel(const SystemConfig& cfg, Rng& rng);

/// Vector of i.i.d. CN(0,1) entries.
Eigen::VectorXcd draw_cn_vector(Eigen::Index n, Rng& rng);

/// [Re(x); Im(x)].
Eigen::VectorXd stack_real(const Eigen::Ref<const Eigen::VectorXcd>& x);

/// Real-stacked view: one vector per column of H and per column of every G_i,
/// i.e. one per real stream when every antenna carries a real stream.
WLChannelSample to_wl(const ChannelSample& sample);

}  // namespace sicsched
