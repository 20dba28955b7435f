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

// Minimum-eigenvalue (MEV) densities of the interference covariance
//   R = I0 sum_{i=1}^{n} v_i v_i^H
// with v_i ~ CN(0, I_m) (complex field) or v_i ~ N(0, I_m / 2) (real field).
//
// Polynomial-exponential densities are written as
//   p(lambda) = (1/I0) e^{-m lambda/I0} sum_k a(k) (lambda/I0)^k
// and indexed by (m, m + k0), k0 being the lowest power with a nonzero
// coefficient. For the complex field this is (m, n). For the real field with
// n vectors it is (m, m + (n - m - 1)/2), i.e. only n - m odd has this form.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "sicsched/channel.hpp"
#include "sicsched/config.hpp"

namespace sicsched {

enum class Field { complex, real };

std::string to_string(Field f);

/// Requested coefficients are neither tabulated nor derivable; Monte Carlo
/// (sample_mev) is the fallback.
class CoefficientsUnavailable : public Error {
public:
    using Error::Error;
};

struct MevCoefficients {
    Field field = Field::complex;
    int m = 1;
    int n = 1;   ///< table index m + k0
    int k0 = 0;
    std::vector<double> a;           ///< a[k] for k = 0..K0
    std::vector<std::string> exact;  ///< a[k] as exact rationals

    /// Number of Wishart vectors: n (complex) or m + 2 k0 + 1 (real).
    int degrees_of_freedom() const;
    /// sum_k a(k) k! / m^{k+1}; 1 for a valid density.
    double mass() const;
    double pdf(double lambda, double I0) const;
    /// P(lambda_min > x) in closed form.
    double survival(double x, double I0) const;
    double cdf(double x, double I0) const { return 1.0 - survival(x, I0); }
};

/// Pair (m, n) into the coefficient tables.
struct WishartPair {
    int m = 0;
    int n = 0;
};

/// (Nr, K-1). Requires K-1 >= Nr.
WishartPair complex_pair(int Nr, int K);
/// (2Nr, 2Nr + (K - 2Nr - 2)/2). Requires K even and K-1 >= 2Nr.
WishartPair real_even_pair(int Nr, int K);

/// Tabulated (real) or exactly generated (complex) coefficients.
///
/// Real field: pairs from the shipped table plus m = n (exponential case).
/// Complex field: shipped table entries, otherwise generated exactly for
/// n <= kMaxGeneratedN. Throws CoefficientsUnavailable otherwise. The result
/// is checked to integrate to 1 within 1e-8.
MevCoefficients coeff_lookup(int m, int n, Field field);

inline constexpr int kMaxGeneratedN = 40;
inline constexpr int kMaxGeneratedM = 8;

/// Complex-field coefficients from the determinant form of the MEV survival
/// function, P(lambda > x) = e^{-mx} det[Gamma(n-m+i+j-1, x) e^x] /
/// prod Gamma(n-i+1) Gamma(m-i+1), evaluated in exact rational arithmetic.
MevCoefficients generate_complex_coefficients(int m, int n);

/// Parses the plain-text table format:
///   # comment
///   <complex|real> <m> <n> : <a0> <a1> ...    (integers or p/q rationals)
std::vector<MevCoefficients> parse_coefficient_table(std::string_view text);

/// The table compiled into the library (data/mev_coefficients.txt).
const std::vector<MevCoefficients>& builtin_coefficient_table();
/// Raw text of the compiled-in table.
std::string_view builtin_coefficient_table_text();

double pdf_mev_complex(double lambda, const MevCoefficients& coeffs, double I0);

/// Real field, K even: same polynomial-exponential form with
/// k0 = (K - 2Nr - 2)/2. Throws ConfigError for odd K or mismatched coeffs.
double pdf_mev_real_even(double lambda, const MevCoefficients& coeffs, double I0, int K,
                         int Nr);

/// Real field, K = 2Nr + 1 (square m x m real Wishart, m = 2Nr):
///   Gamma((m+1)/2) m / sqrt(pi I0 lambda) e^{-m lambda/I0} U((m-1)/2, -1/2, lambda/I0).
double pdf_mev_real_k2nr1(double lambda, double I0, int m);

/// Real field, K = 2Nr + 3 (n = m + 2):
///   Gamma((m+1)/2) 2/(sqrt(pi) I0^{3/2}) sqrt(lambda) e^{-m lambda/I0} g(lambda/I0),
///   g(x) = L_{m-1}^(2)(-2x) U((m-1)/2, -1/2, x) + x L_{m-2}^(3)(-2x) U((m+1)/2, 1/2, x).
double pdf_mev_real_k2nr3(double lambda, double I0, int m);

/// Real-field MEV density for the WL interference covariance of (Nr, K),
/// dispatching on K: even, 2Nr+1 or 2Nr+3.
double pdf_mev_real(double lambda, double I0, int K, int Nr);

/// True if pdf_mev_real supports (Nr, K).
bool real_mev_supported(int Nr, int K);

/// Smallest eigenvalues of `count` sampled matrices I0 sum_{i=1}^{n} v v^H,
/// v of dimension m.
std::vector<double> sample_mev(int m, int n, double I0, std::size_t count, Rng& rng,
                               Field field);

}  // namespace sicsched
