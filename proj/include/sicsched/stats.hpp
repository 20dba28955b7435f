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

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace sicsched {

/// Summation by recursive halving; the result depends only on the order of
/// `values`, not on how work was split.
double pairwise_sum(std::span<const double> values);

struct MeanEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;  ///< sample std / sqrt(n)
    std::size_t n = 0;
};

MeanEstimate mean_and_stderr(std::span<const double> values);

/// Binomial proportion k/n with stderr sqrt(p (1 - p) / n).
MeanEstimate proportion(std::size_t hits, std::size_t n);

/// Two-sided Kolmogorov-Smirnov statistic sup |F_n - F|. Sorts a copy.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Asymptotic 1% critical value 1.6276 / sqrt(n).
double ks_critical_1pct(std::size_t n);

/// Least-squares line y = intercept + slope x.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double ci_low = 0.0;   ///< 95% confidence interval on the slope
    double ci_high = 0.0;
};

/// Throws ConfigError when fewer than 3 points or all x equal.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace sicsched
