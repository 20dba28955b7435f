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

#include "sicsched/wishart.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <utility>

#include <Eigen/Eigenvalues>
#include <boost/multiprecision/cpp_int.hpp>

#include "sicsched/mev_table_data.hpp"
#include "sicsched/special.hpp"

namespace sicsched {

namespace mp = boost::multiprecision;

namespace {

using Poly = std::vector<mp::cpp_int>;  // coefficient of x^k at index k

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

void poly_add_scaled(Poly& acc, const Poly& p, int sign) {
    if (acc.size() < p.size()) acc.resize(p.size(), 0);
    for (std::size_t i = 0; i < p.size(); ++i) acc[i] += sign > 0 ? p[i] : mp::cpp_int(-p[i]);
}

mp::cpp_int factorial(int n) {
    mp::cpp_int f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// e^x Gamma(d, x) = (d-1)! sum_{j<d} x^j / j!, integer coefficients.
Poly scaled_upper_gamma(int d) {
    Poly p(static_cast<std::size_t>(d));
    const mp::cpp_int top = factorial(d - 1);
    for (int j = 0; j < d; ++j) p[static_cast<std::size_t>(j)] = top / factorial(j);
    return p;
}

// Determinant by Laplace expansion over column subsets (memoized).
Poly poly_determinant(const std::vector<std::vector<Poly>>& A) {
    const int m = static_cast<int>(A.size());
    std::vector<Poly> minor(std::size_t{1} << m);
    minor[0] = Poly{1};
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
        const int row = std::popcount(mask) - 1;
        Poly acc;
        int idx = 0;
        for (int j = 0; j < m; ++j) {
            if (!(mask & (1u << j))) continue;
            const int sign = ((row + idx) % 2 == 0) ? 1 : -1;
            poly_add_scaled(acc, poly_mul(A[row][j], minor[mask & ~(1u << j)]), sign);
            ++idx;
        }
        minor[mask] = std::move(acc);
    }
    return minor.back();
}

std::string rational_string(const mp::cpp_rational& r) {
    if (mp::denominator(r) == 1) return mp::numerator(r).str();
    return mp::numerator(r).str() + "/" + mp::denominator(r).str();
}

mp::cpp_rational parse_rational(const std::string& token) {
    const auto slash = token.find('/');
    try {
        if (slash == std::string::npos) return mp::cpp_rational(mp::cpp_int(token));
        const mp::cpp_int num(token.substr(0, slash));
        const mp::cpp_int den(token.substr(slash + 1));
        if (den == 0) throw ConfigError("zero denominator");
        return mp::cpp_rational(num, den);
    } catch (const std::exception&) {
        throw ConfigError("coefficient table: bad rational '" + token + "'");
    }
}

MevCoefficients from_rationals(Field field, int m, int n, const std::vector<mp::cpp_rational>& a) {
    MevCoefficients c;
    c.field = field;
    c.m = m;
    c.n = n;
    c.k0 = -1;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (c.k0 < 0 && a[k] != 0) c.k0 = static_cast<int>(k);
        c.a.push_back(a[k].convert_to<double>());
        c.exact.push_back(rational_string(a[k]));
    }
    if (c.k0 < 0) throw ConfigError("MEV coefficients are all zero");
    return c;
}

void check_pair(int m, int n) {
    if (m < 1 || n < m)
        throw ConfigError("MEV coefficients need n >= m >= 1, got (" + std::to_string(m) + ", " +
                          std::to_string(n) + ")");
}

void check_mass(const MevCoefficients& c) {
    if (std::abs(c.mass() - 1.0) > 1e-8)
        throw ConfigError("MEV coefficients for (" + std::to_string(c.m) + ", " +
                          std::to_string(c.n) + ") do not integrate to 1");
}

std::mutex& cache_mutex() {
    static std::mutex mu;
    return mu;
}

}  // namespace

std::string to_string(Field f) { return f == Field::complex ? "complex" : "real"; }

int MevCoefficients::degrees_of_freedom() const {
    return field == Field::complex ? n : m + 2 * k0 + 1;
}

double MevCoefficients::mass() const {
    double s = 0.0;
    double kfact = 1.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (k > 0) kfact *= static_cast<double>(k);
        s += a[k] * kfact / std::pow(static_cast<double>(m), static_cast<double>(k + 1));
    }
    return s;
}

double MevCoefficients::pdf(double lambda, double I0) const {
    if (!(lambda >= 0.0)) throw ConfigError("MEV pdf: lambda must be >= 0");
    if (!(I0 > 0.0)) throw ConfigError("MEV pdf: I0 must be > 0");
    const double x = lambda / I0;
    double poly = 0.0;
    for (std::size_t k = a.size(); k-- > 0;) poly = poly * x + a[k];
    return std::exp(-m * x) * poly / I0;
}

double MevCoefficients::survival(double x, double I0) const {
    if (!(I0 > 0.0)) throw ConfigError("MEV survival: I0 must be > 0");
    if (x <= 0.0) return 1.0;
    // int_y^inf e^{-mu} u^k du = k!/m^{k+1} e^{-my} sum_{j<=k} (my)^j / j!
    const double my = m * x / I0;
    double s = 0.0;
    double kfact = 1.0;
    double partial = 0.0;
    double term = 1.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (k > 0) {
            kfact *= static_cast<double>(k);
            term *= my / static_cast<double>(k);
        }
        partial += term;
        s += a[k] * kfact / std::pow(static_cast<double>(m), static_cast<double>(k + 1)) * partial;
    }
    return std::exp(-my) * s;
}

WishartPair complex_pair(int Nr, int K) {
    if (K - 1 < Nr)
        throw ConfigError("complex MEV density needs K-1 >= Nr (K=" + std::to_string(K) +
                          ", Nr=" + std::to_string(Nr) + ")");
    return {Nr, K - 1};
}

WishartPair real_even_pair(int Nr, int K) {
    if (K % 2 != 0) throw ConfigError("real even-K MEV density needs even K");
    if (K - 1 < 2 * Nr) throw ConfigError("real MEV density needs K-1 >= 2Nr");
    return {2 * Nr, 2 * Nr + (K - 2 * Nr - 2) / 2};
}

MevCoefficients generate_complex_coefficients(int m, int n) {
    check_pair(m, n);
    if (m > kMaxGeneratedM || n > kMaxGeneratedN)
        throw CoefficientsUnavailable("complex MEV coefficients for (" + std::to_string(m) + ", " +
                                      std::to_string(n) + ") exceed the generator limits; use "
                                      "sample_mev for a Monte Carlo estimate");
    std::vector<std::vector<Poly>> A(static_cast<std::size_t>(m),
                                     std::vector<Poly>(static_cast<std::size_t>(m)));
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j)
            A[i - 1][j - 1] = scaled_upper_gamma(n - m + i + j - 1);
    Poly P = poly_determinant(A);
    mp::cpp_int C = 1;
    for (int i = 1; i <= m; ++i) C *= factorial(n - i) * factorial(m - i);
    // Survival e^{-mx} P(x)/C, density e^{-mx} (m P - P')/C.
    while (P.size() > 1 && P.back() == 0) P.pop_back();
    std::vector<mp::cpp_rational> a(P.size());
    for (std::size_t k = 0; k < P.size(); ++k) {
        mp::cpp_int next = k + 1 < P.size() ? mp::cpp_int(P[k + 1] * (k + 1)) : mp::cpp_int(0);
        a[k] = mp::cpp_rational(m * P[k] - next, C);
    }
    auto c = from_rationals(Field::complex, m, n, a);
    if (c.k0 != n - m) throw SolverError("complex MEV generator produced an unexpected k0");
    return c;
}

std::vector<MevCoefficients> parse_coefficient_table(std::string_view text) {
    std::vector<MevCoefficients> out;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string field_s;
        if (!(ls >> field_s)) continue;
        const auto where = "coefficient table line " + std::to_string(lineno) + ": ";
        Field field;
        if (field_s == "complex") field = Field::complex;
        else if (field_s == "real") field = Field::real;
        else throw ConfigError(where + "unknown field '" + field_s + "'");
        int m = 0, n = 0;
        std::string colon;
        if (!(ls >> m >> n >> colon) || colon != ":")
            throw ConfigError(where + "expected '<field> <m> <n> :'");
        check_pair(m, n);
        std::vector<mp::cpp_rational> a;
        std::string tok;
        while (ls >> tok) a.push_back(parse_rational(tok));
        if (a.empty()) throw ConfigError(where + "no coefficients");
        auto c = from_rationals(field, m, n, a);
        if (c.k0 != n - m)
            throw ConfigError(where + "lowest nonzero power " + std::to_string(c.k0) +
                              " does not match n - m");
        check_mass(c);
        out.push_back(std::move(c));
    }
    return out;
}

std::string_view builtin_coefficient_table_text() { return detail::kMevTableText; }

const std::vector<MevCoefficients>& builtin_coefficient_table() {
    static const std::vector<MevCoefficients> table = parse_coefficient_table(detail::kMevTableText);
    return table;
}

MevCoefficients coeff_lookup(int m, int n, Field field) {
    check_pair(m, n);
    for (const auto& c : builtin_coefficient_table())
        if (c.field == field && c.m == m && c.n == n) return c;
    if (m == n) {
        MevCoefficients c;
        c.field = field;
        c.m = c.n = m;
        c.k0 = 0;
        c.a = {static_cast<double>(m)};
        c.exact = {std::to_string(m)};
        return c;
    }
    if (field == Field::real || m > kMaxGeneratedM || n > kMaxGeneratedN)
        throw CoefficientsUnavailable(
            to_string(field) + " MEV coefficients unavailable for (m, n) = (" +
            std::to_string(m) + ", " + std::to_string(n) +
            "); use sample_mev for a Monte Carlo estimate");
    static std::map<std::pair<int, int>, MevCoefficients> cache;
    std::lock_guard lock(cache_mutex());
    auto it = cache.find({m, n});
    if (it == cache.end()) {
        auto c = generate_complex_coefficients(m, n);
        check_mass(c);
        it = cache.emplace(std::make_pair(m, n), std::move(c)).first;
    }
    return it->second;
}

double pdf_mev_complex(double lambda, const MevCoefficients& coeffs, double I0) {
    return coeffs.pdf(lambda, I0);
}

double pdf_mev_real_even(double lambda, const MevCoefficients& coeffs, double I0, int K, int Nr) {
    const auto pair = real_even_pair(Nr, K);
    if (coeffs.field != Field::real || coeffs.m != pair.m || coeffs.n != pair.n)
        throw ConfigError("pdf_mev_real_even: coefficients do not match (Nr, K)");
    return coeffs.pdf(lambda, I0);
}

double pdf_mev_real_k2nr1(double lambda, double I0, int m) {
    if (!(lambda >= 0.0)) throw ConfigError("MEV pdf: lambda must be >= 0");
    if (!(I0 > 0.0)) throw ConfigError("MEV pdf: I0 must be > 0");
    if (m < 2) throw ConfigError("pdf_mev_real_k2nr1: m must be >= 2");
    if (lambda == 0.0) return std::numeric_limits<double>::infinity();
    const double x = lambda / I0;
    return std::tgamma(0.5 * (m + 1)) * m / (I0 * std::sqrt(std::numbers::pi * x)) *
           std::exp(-m * x) * tricomi_u(0.5 * (m - 1), -0.5, x);
}

double pdf_mev_real_k2nr3(double lambda, double I0, int m) {
    if (!(lambda >= 0.0)) throw ConfigError("MEV pdf: lambda must be >= 0");
    if (!(I0 > 0.0)) throw ConfigError("MEV pdf: I0 must be > 0");
    if (m < 2) throw ConfigError("pdf_mev_real_k2nr3: m must be >= 2");
    if (lambda == 0.0) return 0.0;
    const double x = lambda / I0;
    const double g = laguerre_poly_neg(2.0, m - 1, 2.0 * x) * tricomi_u(0.5 * (m - 1), -0.5, x) +
                     x * laguerre_poly_neg(3.0, m - 2, 2.0 * x) *
                         tricomi_u(0.5 * (m + 1), 0.5, x);
    return std::tgamma(0.5 * (m + 1)) * 2.0 / (std::sqrt(std::numbers::pi) * I0) * std::sqrt(x) *
           std::exp(-m * x) * g;
}

double pdf_mev_real(double lambda, double I0, int K, int Nr) {
    const int m = 2 * Nr;
    if (K - 1 < m) throw ConfigError("real MEV density needs K-1 >= 2Nr");
    if (K % 2 == 0) {
        const auto pair = real_even_pair(Nr, K);
        return coeff_lookup(pair.m, pair.n, Field::real).pdf(lambda, I0);
    }
    if (K == m + 1) return pdf_mev_real_k2nr1(lambda, I0, m);
    if (K == m + 3) return pdf_mev_real_k2nr3(lambda, I0, m);
    throw CoefficientsUnavailable("no real MEV density for K=" + std::to_string(K) +
                                  ", Nr=" + std::to_string(Nr) +
                                  "; use sample_mev for a Monte Carlo estimate");
}

bool real_mev_supported(int Nr, int K) {
    const int m = 2 * Nr;
    if (Nr < 1 || K - 1 < m) return false;
    if (K == m + 1 || K == m + 3) return true;
    if (K % 2 != 0) return false;
    const auto pair = real_even_pair(Nr, K);
    try {
        coeff_lookup(pair.m, pair.n, Field::real);
        return true;
    } catch (const CoefficientsUnavailable&) {
        return false;
    }
}

std::vector<double> sample_mev(int m, int n, double I0, std::size_t count, Rng& rng,
                               Field field) {
    check_pair(m, n);
    if (!(I0 > 0.0)) throw ConfigError("sample_mev: I0 must be > 0");
    std::vector<double> out;
    out.reserve(count);
    if (field == Field::complex) {
        Eigen::MatrixXcd V(m, n);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
        for (std::size_t c = 0; c < count; ++c) {
            for (int j = 0; j < n; ++j) V.col(j) = draw_cn_vector(m, rng);
            es.compute(I0 * (V * V.adjoint()), Eigen::EigenvaluesOnly);
            out.push_back(std::max(0.0, es.eigenvalues()(0)));
        }
    } else {
        std::normal_distribution<double> half(0.0, std::sqrt(0.5));
        Eigen::MatrixXd V(m, n);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
        for (std::size_t c = 0; c < count; ++c) {
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < m; ++i) V(i, j) = half(rng);
            es.compute(I0 * (V * V.transpose()), Eigen::EigenvaluesOnly);
            out.push_back(std::max(0.0, es.eigenvalues()(0)));
        }
    }
    return out;
}

}  // namespace sicsched
