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

// Transmitter outage probability (TOP) bounds built on the minimum-eigenvalue
// densities. Every cdf below is F(beta) = P(gamma_lb < beta) for one user;
// the TOP bound with L users is F^L.
//
// beta and all powers are linear.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sicsched/config.hpp"

namespace sicsched {

/// F and 1 - F, the latter evaluated without cancellation where possible.
struct CdfValue {
    double F = 0.0;
    double complement = 1.0;
};

/// Users needed for a TOP target. `exact` = max(1, ln P / ln F);
/// `approx` is the large-argument form (NaN when not defined for the form);
/// `high_argument` flags beta I0 / S >= m, where the approximation is meant
/// to hold.
struct UsersRequired {
    double exact = 1.0;
    double approx = 0.0;
    bool high_argument = false;
};

/// Closed forms available for F(beta).
enum class AnalyticKind {
    complex_exact,       ///< complex SST, polynomial MEV density
    complex_first_term,  ///< complex SST, lowest-order coefficient only
    mu_exact,            ///< complex MU SM, per stream (stream 0)
    real_even_exact,     ///< real SST, K even: A1 + A2
    real_even_q_approx,  ///< real SST, K even: two-exponential Q form
    real_k2nr1_approx,   ///< real SST, K = 2Nr+1
    real_k2nr3_approx,   ///< real SST, K = 2Nr+3
    real_quadrature,     ///< real SST, any supported K: numerical integral
};

std::string to_string(AnalyticKind kind);
AnalyticKind parse_analytic_kind(const std::string& text);

/// 1 - e^{-beta N0/S} sum_k a(k) k! / (beta I0/S + m)^{k+1},  m = Nr,
/// coefficients of the complex pair (Nr, K-1).
CdfValue cdf_F_complex(double beta, const SystemConfig& cfg);

/// Same with only the k0 term kept.
CdfValue cdf_F_complex_first_term(double beta, const SystemConfig& cfg);

/// F^L. Requires F in [0, 1] and L >= 1.
double top_ub(double F, double L_effective);

/// Generic users-required from a cdf value.
double users_required_exact(double target_top, const CdfValue& F);

/// Exact and approximate users required, complex SST.
UsersRequired users_required_complex(double target_top, double beta, const SystemConfig& cfg);

/// K R log2(1 + beta), R from the configured encoding.
double sum_outage_capacity(double beta, const SystemConfig& cfg);

/// Per-stream cdf for complex MU SM with coefficients of (Nr, K Nt - 1):
///   1 - e^{-beta Nt N0/S} sum_k a(k) k! / (beta + m)^{k+1}.
/// Requires S == I0 (the form is not derived otherwise).
CdfValue cdf_F_mu(double beta, const SystemConfig& cfg);

/// F_mu^{L - stream} with 0-based stream; with `large_L` the exponent is L.
double top_ub_mu(double beta, const SystemConfig& cfg, int stream, bool large_L = false);

/// Users required on stream 0 for complex MU SM, exact and approximate.
UsersRequired users_required_mu(double target_top, double beta, const SystemConfig& cfg);

/// 1 - 2 Q(sqrt(beta N0/S)), exact Q.
double area_A1(double beta, double S, double N0);

/// Mass of the region where the WL lower-bound SINR falls below beta through
/// the interference term, K even. Closed form with incomplete-gamma terms.
double area_A2(double beta, const SystemConfig& cfg);

/// A1 + A2, K even.
CdfValue cdf_F_real_even_exact(double beta, const SystemConfig& cfg);

/// 1 - 2 sum_i K_i e^{-c_i beta N0/S} sum_k a(k) k! / (2 c_i beta I0/S + m)^{k+1}.
CdfValue cdf_F_real_even_approx(double beta, const SystemConfig& cfg);

/// K = 2Nr+1, Tricomi function replaced by its value at 0.
CdfValue cdf_F_real_k2nr1(double beta, const SystemConfig& cfg);

/// K = 2Nr+1 user scaling: L ~ ln(1/P) sqrt(I0 beta/S) / (...), the
/// large-beta form of ln P / ln F.
double users_required_real_k2nr1(double target_top, double beta, const SystemConfig& cfg);

/// K = 2Nr+3, Laguerre and Tricomi functions replaced by their values at 0.
CdfValue cdf_F_real_k2nr3(double beta, const SystemConfig& cfg);

/// Numerical F for real SST with the exact Q function:
///   F = 1 - int_0^inf 2 Q(sqrt(beta (2 lambda + N0)/S)) p(lambda) dlambda,
/// p the real MEV density of (Nr, K). Supports every K of pdf_mev_real.
CdfValue cdf_F_real_quadrature(double beta, const SystemConfig& cfg);

/// Dispatch by kind.
CdfValue evaluate_cdf(AnalyticKind kind, double beta, const SystemConfig& cfg);

/// The closed form matching the configuration, if any: complex SST ->
/// complex_exact; complex MU with S == I0 -> mu_exact; real SST with K even ->
/// real_even_exact, K = 2Nr+1 / 2Nr+3 -> the respective approximation.
std::optional<AnalyticKind> default_analytic_kind(const SystemConfig& cfg);

/// beta* such that F(beta*)^L = target_top, by bisection in log(beta) on
/// [beta_lo, beta_hi]. Throws SolverError, with both endpoint values, when the
/// range does not bracket the target.
double solve_target_beta(double target_top, int L, const SystemConfig& cfg, AnalyticKind kind,
                         double beta_lo = 1e-8, double beta_hi = 1e8);

}  // namespace sicsched
