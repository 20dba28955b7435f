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

// sicsched command-line tool.

#include <Eigen/Core>
#include <boost/version.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <tuple>

#include "sicsched/config_file.hpp"
#include "sicsched/experiments.hpp"
#include "sicsched/reproduction.hpp"
#include "sicsched/validation.hpp"

#ifndef SICSCHED_VERSION
#define SICSCHED_VERSION "unknown"
#endif

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace sicsched;

namespace {

enum Exit : int {
    kOk = 0,
    kOther = 1,
    kUsage = 2,
    kConfig = 3,
    kSolver = 4,
    kValidation = 5,
    kIo = 6,
};

struct UsageError : Error {
    using Error::Error;
};

struct Common {
    std::optional<std::string> config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    unsigned threads = 0;
};

json versions() {
    return {{"sicsched", SICSCHED_VERSION},
            {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                          "." + std::to_string(EIGEN_MINOR_VERSION)},
            {"boost", BOOST_LIB_VERSION},
            {"compiler", __VERSION__}};
}

json config_json(const SystemConfig& c) {
    return {{"K", c.K},           {"Nt", c.Nt},
            {"Nr", c.Nr},         {"L", c.L},
            {"S", c.S},           {"I0", c.I0},
            {"N0", c.N0},         {"snr_db", c.snr_db()},
            {"encoding", to_string(c.encoding)}, {"trials", c.trials},
            {"seed", c.seed}};
}

// Distinct system configurations touched by a run, in first-seen order.
json configs_from_records(const std::vector<ResultRecord>& records) {
    json out = json::array();
    std::set<std::tuple<std::string, int, int, int, int, std::uint64_t, std::uint64_t>> seen;
    for (const auto& r : records) {
        const auto key = std::make_tuple(to_string(r.encoding), r.K, r.Nt, r.Nr, r.L, r.trials, r.seed);
        if (!seen.insert(key).second) continue;
        out.push_back({{"encoding", std::get<0>(key)},
                       {"K", r.K},
                       {"Nt", r.Nt},
                       {"Nr", r.Nr},
                       {"L", r.L},
                       {"trials", r.trials},
                       {"seed", r.seed}});
    }
    return out;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
    f << text;
    if (!f.flush()) throw IoError("write failed for '" + path.string() + "'");
}

fs::path prepare_out(const std::string& dir) {
    const fs::path p = dir.empty() ? fs::path(".") : fs::path(dir);
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec) throw IoError("cannot create output directory '" + p.string() + "': " + ec.message());
    return p;
}

void write_manifest(const fs::path& path, json manifest) {
    manifest["versions"] = versions();
    write_text(path, manifest.dump(2) + "\n");
}

json base_manifest(const std::string& command, const std::string& id, const Common& c) {
    json m = {{"command", command}, {"id", id}};
    m["seed_override"] = c.seed ? json(*c.seed) : json(nullptr);
    m["trials_override"] = c.trials ? json(*c.trials) : json(nullptr);
    m["threads"] = c.threads;
    return m;
}

void report(const fs::path& csv, std::size_t rows) {
    std::cout << "wrote " << csv.string() << " (" << rows << " rows)\n";
}

int run_figure_cmd(const std::string& id, const Common& c) {
    const auto& ids = figure_ids();
    if (std::find(ids.begin(), ids.end(), id) == ids.end())
        throw UsageError("unknown figure id '" + id + "'");
    ReproOptions o{c.seed, c.trials, RunOptions{c.threads, SchedulingMode::distinct_users}};
    const auto records = run_figure(id, o);
    const auto dir = prepare_out(c.out);
    const auto csv = dir / ("figure-" + id + ".csv");
    emit_records(records, csv);
    auto m = base_manifest("figure", id, c);
    m["output"] = csv.filename().string();
    m["rows"] = records.size();
    m["configs"] = configs_from_records(records);
    write_manifest(dir / ("figure-" + id + ".manifest.json"), m);
    report(csv, records.size());
    return kOk;
}

int run_table_cmd(const std::string& id, const Common& c) {
    const auto& ids = table_ids();
    if (std::find(ids.begin(), ids.end(), id) == ids.end())
        throw UsageError("unknown table id '" + id + "'");
    const auto dir = prepare_out(c.out);
    const auto csv = dir / ("table-" + id + ".csv");
    auto m = base_manifest("table", id, c);
    m["output"] = csv.filename().string();
    if (id == "coeffs") {
        const std::uint64_t seed = c.seed.value_or(1);
        const std::uint64_t samples = c.trials.value_or(100000);
        const auto rows = coefficient_table(seed, samples);
        write_text(csv, coefficient_csv(rows));
        m["rows"] = rows.size();
        m["seed"] = seed;
        m["samples"] = samples;
        write_manifest(dir / ("table-" + id + ".manifest.json"), m);
        report(csv, rows.size());
        return kOk;
    }
    ReproOptions o{c.seed, c.trials, RunOptions{c.threads, SchedulingMode::distinct_users}};
    const auto records = run_table(id, o);
    emit_records(records, csv);
    m["rows"] = records.size();
    m["configs"] = configs_from_records(records);
    write_manifest(dir / ("table-" + id + ".manifest.json"), m);
    report(csv, records.size());
    return kOk;
}

int run_sweep_cmd(const Common& c) {
    if (!c.config) throw UsageError("sweep requires --config <path>");
    auto spec = load_sweep_spec(*c.config);
    if (c.seed) spec.base.seed = *c.seed;
    if (c.trials) spec.base.trials = *c.trials;
    spec.validate();
    const auto records = run_sweep(spec, RunOptions{c.threads, SchedulingMode::distinct_users});
    const auto dir = prepare_out(c.out);
    const auto stem = fs::path(*c.config).stem().string();
    const auto csv = dir / ("sweep-" + stem + ".csv");
    emit_records(records, csv);
    auto m = base_manifest("sweep", stem, c);
    m["output"] = csv.filename().string();
    m["rows"] = records.size();
    m["base"] = config_json(spec.base);
    json grid = json::array();
    for (double g : spec.grid) grid.push_back(g);
    json encs = json::array();
    for (const auto& e : spec.encodings) encs.push_back(to_string(e));
    m["sweep"] = {{"axis", to_string(spec.axis)},
                  {"grid", grid},
                  {"encodings", encs},
                  {"metric", to_string(spec.metric)},
                  {"target_top", spec.target_top},
                  {"beta_db", spec.beta_db},
                  {"mode", spec.mode == SinrMode::lb_sinr ? "lb" : "true"}};
    write_manifest(dir / ("sweep-" + stem + ".manifest.json"), m);
    report(csv, records.size());
    return kOk;
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

int run_validate_cmd(const Common& c, double scale, bool write_files) {
    ValidationOptions o;
    o.seed = c.seed.value_or(1);
    o.scale = scale;
    o.run.threads = c.threads;
    const auto results = run_validation_suite(o);
    std::size_t failed = 0;
    std::string csv_text = "check,passed,detail\n";
    for (const auto& r : results) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " | " << r.detail << "\n";
        failed += !r.passed;
        csv_text += csv_quote(r.name) + "," + (r.passed ? "1" : "0") + "," + csv_quote(r.detail) + "\n";
    }
    std::cout << results.size() - failed << "/" << results.size() << " checks passed\n";
    if (write_files) {
        const auto dir = prepare_out(c.out);
        write_text(dir / "validate.csv", csv_text);
        auto m = base_manifest("validate", "", c);
        m["seed"] = o.seed;
        m["scale"] = scale;
        m["checks"] = results.size();
        m["failed"] = failed;
        write_manifest(dir / "validate.manifest.json", m);
    }
    return failed == 0 ? kOk : kValidation;
}

void emit_error(const char* kind, const std::string& message) {
    json e = {{"error", kind}, {"message", message}};
    std::cerr << e.dump() << "\n";
}

void add_common(CLI::App* sub, Common& c, bool with_config) {
    if (with_config) sub->add_option("--config", c.config, "Config file (INI: [system], [sweep])");
    sub->add_option("--out", c.out, "Output directory (default: current directory)");
    sub->add_option("--seed", c.seed, "Override the RNG seed");
    sub->add_option("--trials", c.trials, "Override the Monte Carlo trial count")
        ->check(CLI::PositiveNumber);
    sub->add_option("--threads", c.threads, "Worker thread cap (0 = all cores)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Opportunistic scheduling in the symmetric interference channel: "
                 "outage and capacity experiments.\n"
                 "SNR and beta are given in dB on the command line."};
    app.set_version_flag("--version", SICSCHED_VERSION);
    app.require_subcommand(1, 1);

    Common common;
    std::string id;
    double scale = 1.0;

    std::string figure_help = "Reproduce a figure. Ids:";
    for (const auto& f : figure_ids()) figure_help += " " + f;
    auto* fig = app.add_subcommand("figure", figure_help);
    fig->add_option("id", id, "Figure id")->required();
    add_common(fig, common, false);

    std::string table_help = "Reproduce a table. Ids:";
    for (const auto& t : table_ids()) table_help += " " + t;
    auto* tab = app.add_subcommand("table", table_help);
    tab->add_option("id", id, "Table id")->required();
    add_common(tab, common, false);

    auto* sweep = app.add_subcommand("sweep", "Run a custom sweep described by --config");
    add_common(sweep, common, true);

    auto* val = app.add_subcommand("validate", "Run the randomized invariant suite");
    add_common(val, common, false);
    val->add_option("--scale", scale, "Sample-count multiplier (1 = full suite)")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        emit_error("usage", e.what());
        return kUsage;
    }

    try {
        if (fig->parsed()) return run_figure_cmd(id, common);
        if (tab->parsed()) return run_table_cmd(id, common);
        if (sweep->parsed()) return run_sweep_cmd(common);
        return run_validate_cmd(common, scale, !common.out.empty());
    } catch (const UsageError& e) {
        emit_error("usage", e.what());
        return kUsage;
    } catch (const ConfigError& e) {
        emit_error("config", e.what());
        return kConfig;
    } catch (const SolverError& e) {
        emit_error("solver", e.what());
        return kSolver;
    } catch (const IoError& e) {
        emit_error("io", e.what());
        return kIo;
    } catch (const std::exception& e) {
        emit_error("internal", e.what());
        return kOther;
    }
}
