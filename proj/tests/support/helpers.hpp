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

#include "sicsched/config.hpp"

namespace testing {

inline sicsched::SystemConfig make_cfg(int K, int Nt, int Nr, int L,
                                       sicsched::Encoding enc = sicsched::Encoding::make_complex(),
                                       double snr_db = 20.0, std::uint64_t trials = 1000,
                                       std::uint64_t seed = 1) {
    sicsched::SystemConfig c;
    c.K = K;
    c.Nt = Nt;
    c.Nr = Nr;
    c.L = L;
    c.encoding = enc;
    c.trials = trials;
    c.seed = seed;
    return c.with_snr_db(snr_db);
}

}  // namespace testing
