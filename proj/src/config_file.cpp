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

#include "sicsched/config_file.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace sicsched {

namespace pt = boost::property_tree;

namespace {

template <typename T>
T get_value(const pt::ptree& section, const std::string& key, const std::string& sec_name) {
    try {
        return section.get<T>(key);
    } catch (const pt::ptree_error&) {
        throw ConfigError("config: bad value for " + sec_name + "." + key + ": '" +
                          section.get<std::string>(key) + "'");
    }
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> parts;
    // Split on commas outside parentheses so mixed(2) survives.
    std::string cur;
    int depth = 0;
    for (char ch : text) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == ',' && depth == 0) {
            parts.push_back(boost::trim_copy(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!boost::trim_copy(cur).empty() || !parts.empty()) parts.push_back(boost::trim_copy(cur));
    return parts;
}

void check_keys(const pt::ptree& section, const std::string& name,
                const std::set<std::string>& allowed) {
    for (const auto& [key, child] : section) {
        if (!child.empty()) throw ConfigError("config: nested entries are not supported");
        if (!allowed.count(key)) throw ConfigError("config: unknown key " + name + "." + key);
    }
}

SystemConfig parse_system(const pt::ptree& root) {
    SystemConfig cfg;
    const auto sec = root.get_child_optional("system");
    if (!sec) return cfg;
    const auto& s = *sec;
    check_keys(s, "system", {"K", "Nt", "Nr", "L", "S", "I0", "N0", "snr_db", "encoding", "trials", "seed"});
    if (s.count("K")) cfg.K = get_value<int>(s, "K", "system");
    if (s.count("Nt")) cfg.Nt = get_value<int>(s, "Nt", "system");
    if (s.count("Nr")) cfg.Nr = get_value<int>(s, "Nr", "system");
    if (s.count("L")) cfg.L = get_value<int>(s, "L", "system");
    if (s.count("S")) cfg.S = get_value<double>(s, "S", "system");
    if (s.count("I0")) cfg.I0 = get_value<double>(s, "I0", "system");
    if (s.count("N0") && s.count("snr_db"))
        throw ConfigError("config: give either system.N0 or system.snr_db, not both");
    if (s.count("N0")) cfg.N0 = get_value<double>(s, "N0", "system");
    if (s.count("snr_db")) cfg = cfg.with_snr_db(get_value<double>(s, "snr_db", "system"));
    if (s.count("encoding")) cfg.encoding = parse_encoding(s.get<std::string>("encoding"));
    if (s.count("trials")) cfg.trials = get_value<std::uint64_t>(s, "trials", "system");
    if (s.count("seed")) cfg.seed = get_value<std::uint64_t>(s, "seed", "system");
    return cfg;
}

pt::ptree read_ini(const std::string& text) {
    pt::ptree root;
    std::istringstream in(text);
    try {
        pt::read_ini(in, root);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config: ") + e.message() + " (line " +
                          std::to_string(e.line()) + ")");
    }
    for (const auto& [name, child] : root) {
        if (child.empty() && !child.data().empty())
            throw ConfigError("config: key '" + name + "' outside a section");
        if (name != "system" && name != "sweep")
            throw ConfigError("config: unknown section [" + name + "]");
    }
    return root;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("config: cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

SweepSpec parse_sweep_spec(const std::string& text) {
    const auto root = read_ini(text);
    SweepSpec spec;
    spec.base = parse_system(root);
    if (const auto sec = root.get_child_optional("sweep")) {
        const auto& s = *sec;
        check_keys(s, "sweep", {"axis", "grid", "encodings", "metric", "target_top", "beta_db", "mode"});
        if (s.count("axis")) spec.axis = parse_sweep_axis(s.get<std::string>("axis"));
        if (s.count("grid")) {
            spec.grid.clear();
            for (const auto& v : split_list(s.get<std::string>("grid"))) {
                try {
                    std::size_t pos = 0;
                    spec.grid.push_back(std::stod(v, &pos));
                    if (pos != v.size()) throw std::invalid_argument(v);
                } catch (const std::exception&) {
                    throw ConfigError("config: bad grid value '" + v + "'");
                }
            }
        }
        if (s.count("encodings"))
            for (const auto& v : split_list(s.get<std::string>("encodings")))
                spec.encodings.push_back(parse_encoding(v));
        if (s.count("metric")) spec.metric = parse_sweep_metric(s.get<std::string>("metric"));
        if (s.count("target_top")) spec.target_top = get_value<double>(s, "target_top", "sweep");
        if (s.count("beta_db")) spec.beta_db = get_value<double>(s, "beta_db", "sweep");
        if (s.count("mode")) {
            const auto m = s.get<std::string>("mode");
            if (m == "lb") spec.mode = SinrMode::lb_sinr;
            else if (m == "true") spec.mode = SinrMode::true_sinr;
            else throw ConfigError("config: sweep.mode must be lb or true");
        }
    }
    return spec;
}

SweepSpec load_sweep_spec(const std::filesystem::path& path) {
    try {
        return parse_sweep_spec(read_file(path));
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

SystemConfig load_system_config(const std::filesystem::path& path) {
    try {
        return parse_system(read_ini(read_file(path)));
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

}  // namespace sicsched
