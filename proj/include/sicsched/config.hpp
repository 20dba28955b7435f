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
#include <stdexcept>
#include <string>
#include <string_view>

namespace sicsched {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid scenario or command configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A numerical routine could not produce a result (singular matrix,
/// non-bracketing root search, failed quadrature).
class SolverError : public Error {
public:
    using Error::Error;
};

enum class EncodingKind { complex, real, mixed };

/// Transmit signalling format.
///
/// `mixed` puts complex symbols on the first `complex_antennas` antennas and
/// real symbols on the rest. `complex_antennas` is ignored for the other kinds.
struct Encoding {
    EncodingKind kind = EncodingKind::complex;
    int complex_antennas = 0;

    static constexpr Encoding make_complex() { return {EncodingKind::complex, 0}; }
    static constexpr Encoding make_real() { return {EncodingKind::real, 0}; }
    static constexpr Encoding make_mixed(int m) { return {EncodingKind::mixed, m}; }

    friend bool operator==(const Encoding&, const Encoding&) = default;
};

/// "complex", "real" or "mixed(m)".
std::string to_string(const Encoding& e);

/// Accepts "complex", "real", "mixed(m)" and "mixed:m".
Encoding parse_encoding(std::string_view text);

/// Scenario parameters of the symmetric interference channel.
///
/// Powers are linear. Every transmitter serves its own pool of `L` users and
/// the channel statistics are identical across transmitters.
struct SystemConfig {
    int K = 3;   ///< transmitters (one desired, K-1 interferers)
    int Nt = 1;  ///< transmit antennas per transmitter
    int Nr = 1;  ///< receive antennas per user
    int L = 10;  ///< active users per transmitter
    double S = 1.0;
    double I0 = 1.0;
    double N0 = 0.01;
    Encoding encoding = Encoding::make_complex();
    std::uint64_t trials = 1000;
    std::uint64_t seed = 1;

    /// Throws ConfigError on the first violated invariant.
    void validate() const;

    /// Operating SNR S/N0 in dB.
    double snr_db() const;

    /// Copy with N0 set so that S/N0 equals the given SNR.
    SystemConfig with_snr_db(double snr_db) const;
};

double db_to_linear(double db);
double linear_to_db(double x);

}  // namespace sicsched
