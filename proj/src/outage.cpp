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

#include "sicsched/outage.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "sicsched/quadrature.hpp"
#include "sicsched/scheduler.hpp"
#include "sicsched/special.hpp"
#include "sicsched/wishart.hpp"

namespace sicsched {

namespace {

void check_beta(double beta) {
    if (!(beta >= 0.0) || !std::isfinite(beta))
        throw ConfigError("target SNR beta must be finite and >= 0");
}

CdfValue from_complement(double complement) {
    complement = std::clamp(complement, 0.0, 1.0);
    return {1.0 - complement, complement};
}

// sum_k a(k) k! / x^{k+1}, k from `first` to `last`.
double laplace_sum(const MevCoefficients& c, double x, std::size_t first, std::size_t last) {
    double s = 0.0;
    double kfact = 1.0;
    for (std::size_t k = 0; k <= last && k < c.a.size(); ++k) {
        if (k > 0) kfact *= static_cast<double>(k);
        if (k >= first) s += c.a[k] * kfact / std::pow(x, static_cast<double>(k + 1));
    }
    return s;
}

double factorial(int k) { return std::tgamma(k + 1.0); }

void require_sst(const SystemConfig& cfg, EncodingKind kind, const char* what) {
    if (cfg.encoding.kind != kind || cfg.Nt != 1)
        throw ConfigError(std::string(what) + " applies to single-stream " +
                          (kind == EncodingKind::complex ? "complex" : "real") + " encoding");
}

MevCoefficients complex_coeffs(const SystemConfig& cfg) {
    const auto pair = complex_pair(cfg.Nr, cfg.K);
    return coeff_lookup(pair.m, pair.n, Field::complex);
}

MevCoefficients real_even_coeffs(const SystemConfig& cfg) {
    if (!(cfg.I0 > 0.0)) throw ConfigError("real-encoding closed forms need I0 > 0");
    const auto pair = real_even_pair(cfg.Nr, cfg.K);
    return coeff_lookup(pair.m, pair.n, Field::real);
}

MevCoefficients mu_coeffs(const SystemConfig& cfg) {
    if (cfg.encoding.kind != EncodingKind::complex)
        throw ConfigError("MU SM closed form applies to complex encoding");
    if (std::abs(cfg.S - cfg.I0) > 1e-12 * std::max(cfg.S, cfg.I0))
        throw ConfigError("MU SM closed form is only derived for S == I0");
    const int n = cfg.K * cfg.Nt - 1;
    if (n < cfg.Nr) throw ConfigError("MU SM closed form needs K Nt - 1 >= Nr");
    return coeff_lookup(cfg.Nr, n, Field::complex);
}

void check_odd_k(const SystemConfig& cfg, int offset, const char* what) {
    require_sst(cfg, EncodingKind::real, what);
    if (cfg.K != 2 * cfg.Nr + offset)
        throw ConfigError(std::string(what) + " needs K = 2Nr+" + std::to_string(offset) +
                          " (K=" + std::to_string(cfg.K) + ", Nr=" + std::to_string(cfg.Nr) + ")");
    if (!(cfg.I0 > 0.0)) throw ConfigError("real-encoding closed forms need I0 > 0");
}

// sum_i K_i e^{-c_i beta N0/S} h(2 c_i beta I0/S + m)
template <typename H>
double q_approx_mixture(double beta, const SystemConfig& cfg, int m, H&& h) {
    double s = 0.0;
    for (int i = 0; i < 2; ++i) {
        const double c = kQApproxRate[i];
        s += kQApproxWeight[i] * std::exp(-c * beta * cfg.N0 / cfg.S) *
             h(2.0 * c * beta * cfg.I0 / cfg.S + m);
    }
    return s;
}

}  // namespace

std::string to_string(AnalyticKind kind) {
    switch (kind) {
        case AnalyticKind::complex_exact: return "complex_exact";
        case AnalyticKind::complex_first_term: return "complex_first_term";
        case AnalyticKind::mu_exact: return "mu_exact";
        case AnalyticKind::real_even_exact: return "real_even_exact";
        case AnalyticKind::real_even_q_approx: return "real_even_q_approx";
        case AnalyticKind::real_k2nr1_approx: return "real_k2nr1_approx";
        case AnalyticKind::real_k2nr3_approx: return "real_k2nr3_approx";
        case AnalyticKind::real_quadrature: return "real_quadrature";
    }
    return "?";
}

AnalyticKind parse_analytic_kind(const std::string& text) {
    for (auto k : {AnalyticKind::complex_exact, AnalyticKind::complex_first_term,
                   AnalyticKind::mu_exact, AnalyticKind::real_even_exact,
                   AnalyticKind::real_even_q_approx, AnalyticKind::real_k2nr1_approx,
                   AnalyticKind::real_k2nr3_approx, AnalyticKind::real_quadrature})
        if (to_string(k) == text) return k;
    throw ConfigError("unknown analytic kind '" + text + "'");
}

CdfValue cdf_F_complex(double beta, const SystemConfig& cfg) {
    check_beta(beta);
    require_sst(cfg, EncodingKind::complex, "cdf_F_complex");
    const auto c = complex_coeffs(cfg);
    const double x = beta * cfg.I0 / cfg.S + c.m;
    return from_complement(std::exp(-beta * cfg.N0 / cfg.S) * laplace_sum(c, x, 0, c.a.size()));
}

CdfValue cdf_F_complex_first_term(double beta, const SystemConfig& cfg) {
    check_beta(beta);
    require_sst(cfg, EncodingKind::complex, "cdf_F_complex_first_term");
    const auto c = complex_coeffs(cfg);
    const double x = beta * cfg.I0 / cfg.S + c.m;
    const auto k0 = static_cast<std::size_t>(c.k0);
    return from_complement(std::exp(-beta * cfg.N0 / cfg.S) * laplace_sum(c, x, k0, k0));
}

double top_ub(double F, double L_effective) {
    if (!(F >= 0.0 && F <= 1.0)) throw ConfigError("top_ub: F must lie in [0, 1]");
    if (!(L_effective >= 1.0)) throw ConfigError("top_ub: L must be >= 1");
    return std::pow(F, L_effective);
}

double users_required_exact(double target_top, const CdfValue& F) {
    if (!(target_top > 0.0 && target_top < 1.0))
        throw ConfigError("users_required: target TOP must lie in (0, 1)");
    if (F.F <= 0.0) return 1.0;
    if (F.complement <= 0.0) return std::numeric_limits<double>::infinity();
    const double ln_f = std::log1p(-F.complement);
    return std::max(1.0, std::log(target_top) / ln_f);
}

UsersRequired users_required_complex(double target_top, double beta, const SystemConfig& cfg) {
    const auto F = cdf_F_complex(beta, cfg);
    const auto c = complex_coeffs(cfg);
    UsersRequired r;
    r.exact = users_required_exact(target_top, F);
    const double x = beta * cfg.I0 / cfg.S + c.m;
    r.approx = std::exp(beta * cfg.N0 / cfg.S) * std::log(1.0 / target_top) *
               std::pow(x, c.k0 + 1.0) / (c.a[static_cast<std::size_t>(c.k0)] * factorial(c.k0));
    r.high_argument = beta * cfg.I0 / cfg.S >= c.m;
    return r;
}

double sum_outage_capacity(double beta, const SystemConfig& cfg) {
    check_beta(beta);
    return cfg.K * build_streams(cfg).sm_rate * std::log2(1.0 + beta);
}

CdfValue cdf_F_mu(double beta, const SystemConfig& cfg) {
    check_beta(beta);
    const auto c = mu_coeffs(cfg);
    const double x = beta + c.m;
    return from_complement(std::exp(-beta * cfg.Nt * cfg.N0 / cfg.S) *
                           laplace_sum(c, x, 0, c.a.size()));
}

double top_ub_mu(double beta, const SystemConfig& cfg, int stream, bool large_L) {
    if (stream < 0 || stream >= cfg.Nt)
        throw ConfigError("top_ub_mu: stream index outside [0, Nt)");
    const double exponent = large_L ? cfg.L : cfg.L - stream;
    return top_ub(cdf_F_mu(beta, cfg).F, exponent);
}

UsersRequired users_required_mu(double target_top, double beta, const SystemConfig& cfg) {
    const auto F = cdf_F_mu(beta, cfg);
    const auto c = mu_coeffs(cfg);
    UsersRequired r;
    r.exact = users_required_exact(target_top, F);
    r.approx = std::exp(beta * cfg.Nt * cfg.N0 / cfg.S) * std::log(1.0 / target_top) *
               std::pow(beta + c.m, c.k0 + 1.0) /
               (c.a[static_cast<std::size_t>(c.k0)] * factorial(c.k0));
    r.high_argument = beta >= c.m;
    return r;
}

double area_A1(double beta, double S, double N0) {
    check_beta(beta);
    if (!(S > 0.0) || !(N0 >= 0.0)) throw ConfigError("area_A1: need S > 0, N0 >= 0");
    return std::erf(std::sqrt(beta * N0 / (2.0 * S)));
}

double area_A2(double beta, const SystemConfig& cfg) {
    check_beta(beta);
    require_sst(cfg, EncodingKind::real, "area_A2");
    const auto c = real_even_coeffs(cfg);
    if (beta == 0.0) return 0.0;
    const double m = c.m;
    const double S = cfg.S, I0 = cfg.I0, N0 = cfg.N0;
    const double rate = m * S / (I0 * beta) + 1.0;
    const double x0 = beta * N0 / (2.0 * S);
    const double shift = -N0 / (2.0 * I0);
    const double ratio = S / (I0 * beta);
    double total = 0.0;
    for (std::size_t k = 0; k < c.a.size(); ++k) {
        if (c.a[k] == 0.0) continue;
        const int ki = static_cast<int>(k);
        double inner_p = 0.0;
        for (int p = 0; p <= ki; ++p) {
            const int j = ki - p;
            const double falling = factorial(ki) / factorial(j);
            double inner_r = 0.0;
            for (int r = 0; r <= j; ++r) {
                const int q = j - r;
                const double a = q + 0.5;
                const double d = std::tgamma(a) * gamma_q(a, rate * x0) / std::pow(rate, a);
                inner_r += binomial(j, r) * std::pow(shift, r) * std::pow(ratio, q) * d;
            }
            inner_p += falling * std::pow(m, j) * inner_r;
        }
        total += c.a[k] / std::pow(m, ki + 1.0) * inner_p;
    }
    return std::exp(m * N0 / (2.0 * I0)) * total / std::sqrt(std::numbers::pi);
}

CdfValue cdf_F_real_even_exact(double beta, const SystemConfig& cfg) {
    const double a2 = area_A2(beta, cfg);
    const double not_a1 = 2.0 * q_function(std::sqrt(beta * cfg.N0 / cfg.S));
    return from_complement(not_a1 - a2);
}

CdfValue cdf_F_real_even_approx(double beta, const SystemConfig& cfg) {
    check_beta(beta);
    require_sst(cfg, EncodingKind::real, "cdf_F_real_even_approx");
    const auto c = real_even_coeffs(cfg);
    const double s =
        q_approx_mixture(beta, cfg, c.m, [&](double x) { return laplace_sum(c, x, 0, c.a.size()); });
    return from_complement(2.0 * s);
}

CdfValue cdf_F_real_k2nr1(double beta, const SystemConfig& cfg) {
    check_beta(beta);
    check_odd_k(cfg, 1, "cdf_F_real_k2nr1");
    const double m = 2.0 * cfg.Nr;
    const double lead = m * std::tgamma(0.5 * (m + 1)) * std::tgamma(1.5) / std::tgamma(0.5 * m + 1);
    const double s =
        q_approx_mixture(beta, cfg, static_cast<int>(m), [](double x) { return 1.0 / std::sqrt(x); });
    return from_complement(2.0 * lead * s);
}

double users_required_real_k2nr1(double target_top, double beta, const SystemConfig& cfg) {
    check_beta(beta);
    check_odd_k(cfg, 1, "users_required_real_k2nr1");
    if (!(target_top > 0.0 && target_top < 1.0))
        throw ConfigError("users_required: target TOP must lie in (0, 1)");
    const double m = 2.0 * cfg.Nr;
    const double lead = m * std::tgamma(0.5 * (m + 1)) * std::tgamma(1.5) / std::tgamma(0.5 * m + 1);
    double s = 0.0;
    for (int i = 0; i < 2; ++i)
        s += kQApproxWeight[i] * std::exp(-kQApproxRate[i] * beta * cfg.N0 / cfg.S) /
             std::sqrt(2.0 * kQApproxRate[i]);
    return std::log(1.0 / target_top) * std::sqrt(cfg.I0 * beta / cfg.S) / (2.0 * lead * s);
}

CdfValue cdf_F_real_k2nr3(double beta, const SystemConfig& cfg) {
    check_beta(beta);
    check_odd_k(cfg, 3, "cdf_F_real_k2nr3");
    const double m = 2.0 * cfg.Nr;
    const double lead = std::tgamma(0.5 * (m + 1)) * std::tgamma(1.5) * binomial(m + 1, cfg.Nr * 2 - 1) /
                        std::tgamma(0.5 * m + 1);
    const double s = q_approx_mixture(beta, cfg, static_cast<int>(m),
                                      [](double x) { return std::pow(x, -1.5); });
    return from_complement(2.0 * lead * s);
}

CdfValue cdf_F_real_quadrature(double beta, const SystemConfig& cfg) {
    check_beta(beta);
    require_sst(cfg, EncodingKind::real, "cdf_F_real_quadrature");
    if (!(cfg.I0 > 0.0)) throw ConfigError("real-encoding closed forms need I0 > 0");
    if (!real_mev_supported(cfg.Nr, cfg.K))
        throw CoefficientsUnavailable("no real MEV density for K=" + std::to_string(cfg.K) +
                                      ", Nr=" + std::to_string(cfg.Nr));
    std::function<double(double)> pdf;
    if (cfg.K % 2 == 0) {
        const auto c = real_even_coeffs(cfg);
        pdf = [c, I0 = cfg.I0](double l) { return c.pdf(l, I0); };
    } else {
        pdf = [&cfg](double l) { return pdf_mev_real(l, cfg.I0, cfg.K, cfg.Nr); };
    }
    // lambda = u^2 removes the lambda^{-1/2} endpoint singularity of odd K.
    auto integrand = [&](double u) {
        const double lambda = u * u;
        if (lambda == 0.0) return 0.0;
        const double tail = 2.0 * q_function(std::sqrt(beta * (2.0 * lambda + cfg.N0) / cfg.S));
        if (tail == 0.0) return 0.0;
        return tail * pdf(lambda) * 2.0 * u;
    };
    quad::Options opt;
    opt.rel_tol = 1e-10;
    opt.abs_tol = 1e-300;
    const auto r = quad::integrate_to_infinity(integrand, 0.0, opt);
    if (!r.converged && r.error > 1e-7 * std::abs(r.value) + 1e-300)
        throw SolverError("cdf_F_real_quadrature: integral did not converge");
    return from_complement(r.value);
}

CdfValue evaluate_cdf(AnalyticKind kind, double beta, const SystemConfig& cfg) {
    switch (kind) {
        case AnalyticKind::complex_exact: return cdf_F_complex(beta, cfg);
        case AnalyticKind::complex_first_term: return cdf_F_complex_first_term(beta, cfg);
        case AnalyticKind::mu_exact: return cdf_F_mu(beta, cfg);
        case AnalyticKind::real_even_exact: return cdf_F_real_even_exact(beta, cfg);
        case AnalyticKind::real_even_q_approx: return cdf_F_real_even_approx(beta, cfg);
        case AnalyticKind::real_k2nr1_approx: return cdf_F_real_k2nr1(beta, cfg);
        case AnalyticKind::real_k2nr3_approx: return cdf_F_real_k2nr3(beta, cfg);
        case AnalyticKind::real_quadrature: return cdf_F_real_quadrature(beta, cfg);
    }
    throw ConfigError("unknown analytic kind");
}

std::optional<AnalyticKind> default_analytic_kind(const SystemConfig& cfg) {
    try {
        if (cfg.encoding.kind == EncodingKind::complex) {
            if (cfg.Nt == 1) {
                complex_coeffs(cfg);
                return AnalyticKind::complex_exact;
            }
            mu_coeffs(cfg);
            return AnalyticKind::mu_exact;
        }
        if (cfg.encoding.kind == EncodingKind::real && cfg.Nt == 1 && cfg.I0 > 0.0) {
            if (cfg.K % 2 == 0) {
                real_even_coeffs(cfg);
                return AnalyticKind::real_even_exact;
            }
            if (cfg.K == 2 * cfg.Nr + 1) return AnalyticKind::real_k2nr1_approx;
            if (cfg.K == 2 * cfg.Nr + 3) return AnalyticKind::real_k2nr3_approx;
        }
    } catch (const Error&) {
    }
    return std::nullopt;
}

double solve_target_beta(double target_top, int L, const SystemConfig& cfg, AnalyticKind kind,
                         double beta_lo, double beta_hi) {
    if (!(target_top > 0.0 && target_top < 1.0))
        throw ConfigError("solve_target_beta: target TOP must lie in (0, 1)");
    if (L < 1) throw ConfigError("solve_target_beta: L must be >= 1");
    if (!(beta_lo > 0.0 && beta_hi > beta_lo))
        throw ConfigError("solve_target_beta: need 0 < beta_lo < beta_hi");
    const double log_target = std::log(target_top);
    auto excess = [&](double beta) {
        const auto F = evaluate_cdf(kind, beta, cfg);
        if (F.F <= 0.0) return -std::numeric_limits<double>::infinity();
        return L * std::log1p(-F.complement) - log_target;
    };
    const double f_lo = excess(beta_lo);
    const double f_hi = excess(beta_hi);
    if (!(f_lo < 0.0 && f_hi > 0.0)) {
        std::ostringstream msg;
        msg.precision(6);
        msg << "solve_target_beta: [" << beta_lo << ", " << beta_hi
            << "] does not bracket TOP=" << target_top << " (TOP at ends: "
            << std::exp(f_lo + log_target) << ", " << std::exp(f_hi + log_target) << ")";
        throw SolverError(msg.str());
    }
    double lo = std::log(beta_lo);
    double hi = std::log(beta_hi);
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (excess(std::exp(mid)) < 0.0) lo = mid;
        else hi = mid;
    }
    return std::exp(0.5 * (lo + hi));
}

}  // namespace sicsched
