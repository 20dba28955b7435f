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

// Named figure and table scenarios.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sicsched/experiments.hpp"

namespace sicsched {

const std::vector<std::string>& figure_ids();
const std::vector<std::string>& table_ids();

struct ReproOptions {
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    RunOptions run;
};

/// Throws ConfigError for an unknown id.
std::vector<ResultRecord> run_figure(std::string_view id, const ReproOptions& opts = {});

/// Tables other than `coeffs` produce ResultRecords.
std::vector<ResultRecord> run_table(std::string_view id, const ReproOptions& opts = {});

/// The `coeffs` table: one row per coefficient with the pair's normalization
/// and a Kolmogorov-Smirnov check against sampled eigenvalues.
struct CoefficientRow {
    std::string field;
    int m = 0;
    int n = 0;
    int k0 = 0;
    int k = 0;
    std::string exact;
    double value = 0.0;
    double mass = 0.0;
    double ks_statistic = 0.0;
    double ks_critical = 0.0;
};

std::vector<CoefficientRow> coefficient_table(std::uint64_t seed, std::uint64_t samples);
std::string coefficient_csv(const std::vector<CoefficientRow>& rows);

}  // namespace sicsched
