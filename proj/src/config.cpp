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

#include "sicsched/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

namespace sicsched {

std::string to_string(const Encoding& e) {
    switch (e.kind) {
        case EncodingKind::complex: return "complex";
        case EncodingKind::real: return "real";
        case EncodingKind::mixed: return "mixed(" + std::to_string(e.complex_antennas) + ")";
    }
    return "?";
}

Encoding parse_encoding(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
        text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.remove_suffix(1);
    if (text == "complex") return Encoding::make_complex();
    if (text == "real") return Encoding::make_real();
    if (text.starts_with("mixed")) {
        auto rest = text.substr(5);
        if (rest.size() >= 2 && ((rest.front() == '(' && rest.back() == ')') || rest.front() == ':')) {
            auto digits = rest.front() == ':' ? rest.substr(1) : rest.substr(1, rest.size() - 2);
            int m = -1;
            auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), m);
            if (ec == std::errc{} && ptr == digits.data() + digits.size() && m >= 0)
                return Encoding::make_mixed(m);
        }
    }
    throw ConfigError("unknown encoding '" + std::string(text) +
                      "' (expected complex, real or mixed(m))");
}

void SystemConfig::validate() const {
    auto fail = [](const std::string& what) { throw ConfigError("invalid config: " + what); };
    if (K < 1) fail("K must be >= 1");
    if (Nt < 1) fail("Nt must be >= 1");
    if (Nr < 1) fail("Nr must be >= 1");
    if (L < Nt) fail("L must be >= Nt");
    if (!(S > 0.0) || !std::isfinite(S)) fail("S must be > 0");
    if (!(I0 >= 0.0) || !std::isfinite(I0)) fail("I0 must be >= 0");
    if (!(N0 > 0.0) || !std::isfinite(N0)) fail("N0 must be > 0");
    if (trials < 1) fail("trials must be >= 1");
    if (encoding.kind == EncodingKind::mixed &&
        (encoding.complex_antennas < 0 || encoding.complex_antennas > Nt))
        fail("mixed(m) requires 0 <= m <= Nt");
    const int t = encoding.kind == EncodingKind::mixed ? Nt + encoding.complex_antennas : Nt;
    if (L < t) fail("L must be >= the number of streams (" + std::to_string(t) + ")");
}

double SystemConfig::snr_db() const { return linear_to_db(S / N0); }

SystemConfig SystemConfig::with_snr_db(double snr) const {
    SystemConfig c = *this;
    c.N0 = S / db_to_linear(snr);
    return c;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double x) { return 10.0 * std::log10(x); }

}  // namespace sicsched
