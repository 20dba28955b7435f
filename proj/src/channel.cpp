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

#include "sicsched/channel.hpp"

#include <cmath>

namespace sicsched {

namespace {

void push_u64(std::vector<std::uint32_t>& words, std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
}

}  // namespace

Rng make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    std::vector<std::uint32_t> words;
    push_u64(words, seed);
    push_u64(words, stream);
    push_u64(words, index);
    std::seed_seq seq(words.begin(), words.end());
    return Rng(seq);
}

Rng user_rng(std::uint64_t seed, std::uint64_t trial, std::uint64_t user) {
    std::vector<std::uint32_t> words;
    push_u64(words, seed);
    push_u64(words, static_cast<std::uint64_t>(StreamId::channel));
    push_u64(words, trial);
    push_u64(words, user);
    std::seed_seq seq(words.begin(), words.end());
    return Rng(seq);
}

Eigen::VectorXcd draw_cn_vector(Eigen::Index n, Rng& rng) {
    std::normal_distribution<double> half(0.0, std::sqrt(0.5));
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double re = half(rng);
        const double im = half(rng);
        v(i) = {re, im};
    }
    return v;
}

ChannelSample draw_channel(const SystemConfig& cfg, Rng& rng) {
    ChannelSample s;
    s.H.resize(cfg.Nr, cfg.Nt);
    for (int p = 0; p < cfg.Nt; ++p) s.H.col(p) = draw_cn_vector(cfg.Nr, rng);
    s.G.reserve(static_cast<std::size_t>(cfg.K - 1));
    for (int i = 1; i < cfg.K; ++i) {
        Eigen::MatrixXcd g(cfg.Nr, cfg.Nt);
        for (int p = 0; p < cfg.Nt; ++p) g.col(p) = draw_cn_vector(cfg.Nr, rng);
        s.G.push_back(std::move(g));
    }
    return s;
}

Eigen::VectorXd stack_real(const Eigen::Ref<const Eigen::VectorXcd>& x) {
    const Eigen::Index n = x.size();
    Eigen::VectorXd out(2 * n);
    out.head(n) = x.real();
    out.tail(n) = x.imag();
    return out;
}

WLChannelSample to_wl(const ChannelSample& sample) {
    WLChannelSample wl;
    for (Eigen::Index p = 0; p < sample.H.cols(); ++p) wl.h.push_back(stack_real(sample.H.col(p)));
    for (const auto& g : sample.G)
        for (Eigen::Index p = 0; p < g.cols(); ++p) wl.g.push_back(stack_real(g.col(p)));
    return wl;
}

}  // namespace sicsched
