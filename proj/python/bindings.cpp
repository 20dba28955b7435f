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


// Python bindings for the sicsched core (module sicsched._core).

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "sicsched/experiments.hpp"
#include "sicsched/outage.hpp"
#include "sicsched/reproduction.hpp"
#include "sicsched/scheduler.hpp"
#include "sicsched/validation.hpp"
#include "sicsched/wishart.hpp"

namespace py = pybind11;
using namespace sicsched;

namespace {

py::dict record_dict(const ResultRecord& r) {
    py::dict d;
    d["metric"] = r.metric;
    d["encoding"] = to_string(r.encoding);
    d["K"] = r.K;
    d["Nt"] = r.Nt;
    d["Nr"] = r.Nr;
    d["L"] = r.L;
    d["snr_db"] = r.snr_db;
    d["beta_db"] = r.beta_db;
    d["trials"] = r.trials;
    d["mc_value"] = r.mc_value;
    d["mc_stderr"] = r.mc_stderr;
    d["analytic_value"] = r.analytic_value;
    d["analytic_kind"] = r.analytic_kind;
    d["seed"] = r.seed;
    return d;
}

py::list record_list(const std::vector<ResultRecord>& records) {
    py::list out;
    for (const auto& r : records) out.append(record_dict(r));
    return out;
}

SinrMode parse_mode(const std::string& s) {
    if (s == "lb") return SinrMode::lb_sinr;
    if (s == "true") return SinrMode::true_sinr;
    throw ConfigError("mode must be 'lb' or 'true'");
}

ReproOptions repro(std::optional<std::uint64_t> seed, std::optional<std::uint64_t> trials, unsigned threads) {
    ReproOptions o;
    o.seed = seed;
    o.trials = trials;
    o.run.threads = threads;
    return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Multiuser-diversity scheduling under interference: closed forms and Monte Carlo.";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<SolverError>(m, "SolverError", base.ptr());
    py::register_exception<CoefficientsUnavailable>(m, "CoefficientsUnavailable", base.ptr());
    py::register_exception<IoError>(m, "IoError", base.ptr());

    py::class_<SystemConfig>(m, "SystemConfig")
        .def(py::init([](int K, int Nt, int Nr, int L, const std::string& encoding, double snr_db, double S,
                         double I0, std::uint64_t trials, std::uint64_t seed) {
                 SystemConfig c;
                 c.K = K;
                 c.Nt = Nt;
                 c.Nr = Nr;
                 c.L = L;
                 c.S = S;
                 c.I0 = I0;
                 c.encoding = parse_encoding(encoding);
                 c.trials = trials;
                 c.seed = seed;
                 c = c.with_snr_db(snr_db);
                 c.validate();
                 return c;
             }),
             py::kw_only(), py::arg("K") = 3, py::arg("Nt") = 1, py::arg("Nr") = 1, py::arg("L") = 10,
             py::arg("encoding") = "complex", py::arg("snr_db") = 20.0, py::arg("S") = 1.0, py::arg("I0") = 1.0,
             py::arg("trials") = 1000, py::arg("seed") = 1)
        .def_readwrite("K", &SystemConfig::K)
        .def_readwrite("Nt", &SystemConfig::Nt)
        .def_readwrite("Nr", &SystemConfig::Nr)
        .def_readwrite("L", &SystemConfig::L)
        .def_readwrite("S", &SystemConfig::S)
        .def_readwrite("I0", &SystemConfig::I0)
        .def_readwrite("N0", &SystemConfig::N0)
        .def_readwrite("trials", &SystemConfig::trials)
        .def_readwrite("seed", &SystemConfig::seed)
        .def_property(
            "encoding", [](const SystemConfig& c) { return to_string(c.encoding); },
            [](SystemConfig& c, const std::string& e) { c.encoding = parse_encoding(e); })
        .def_property_readonly("snr_db", &SystemConfig::snr_db)
        .def("with_snr_db", &SystemConfig::with_snr_db)
        .def("validate", &SystemConfig::validate)
        .def("__repr__", [](const SystemConfig& c) {
            std::ostringstream os;
            os << "SystemConfig(K=" << c.K << ", Nt=" << c.Nt << ", Nr=" << c.Nr << ", L=" << c.L
               << ", encoding='" << to_string(c.encoding) << "', snr_db=" << c.snr_db() << ")";
            return os.str();
        });

    py::class_<MevCoefficients>(m, "MevCoefficients")
        .def_property_readonly("field", [](const MevCoefficients& c) { return to_string(c.field); })
        .def_readonly("m", &MevCoefficients::m)
        .def_readonly("n", &MevCoefficients::n)
        .def_readonly("k0", &MevCoefficients::k0)
        .def_readonly("a", &MevCoefficients::a)
        .def_readonly("exact", &MevCoefficients::exact)
        .def("mass", &MevCoefficients::mass)
        .def("pdf", &MevCoefficients::pdf, py::arg("x"), py::arg("I0") = 1.0)
        .def("cdf", &MevCoefficients::cdf, py::arg("x"), py::arg("I0") = 1.0);

    m.def(
        "mev_coefficients",
        [](int mm, int n, const std::string& field) {
            if (field != "complex" && field != "real") throw ConfigError("field must be 'complex' or 'real'");
            return coeff_lookup(mm, n, field == "real" ? Field::real : Field::complex);
        },
        py::arg("m"), py::arg("n"), py::arg("field") = "complex",
        "Minimum-eigenvalue density coefficients of an m x m Wishart matrix with n degrees of freedom.");

    m.def(
        "outage_cdf", [](const std::string& kind, double beta, const SystemConfig& c) {
            return evaluate_cdf(parse_analytic_kind(kind), beta, c).F;
        },
        py::arg("kind"), py::arg("beta"), py::arg("config"),
        "Per-user outage probability F(beta) from the named closed form.");
    m.def(
        "default_analytic_kind",
        [](const SystemConfig& c) -> std::optional<std::string> {
            const auto k = default_analytic_kind(c);
            if (!k) return std::nullopt;
            return to_string(*k);
        },
        py::arg("config"));
    m.def("top_bound", &top_ub, py::arg("F"), py::arg("L"), "Upper bound F**L on the transmission outage.");
    m.def(
        "solve_target_beta",
        [](double target, int L, const SystemConfig& c, const std::string& kind) {
            return solve_target_beta(target, L, c, parse_analytic_kind(kind));
        },
        py::arg("target_top"), py::arg("L"), py::arg("config"), py::arg("kind"));
    m.def(
        "users_required_curve",
        [](const SystemConfig& c, const std::vector<double>& snr_db, double target, const std::string& kind) {
            return users_required_curve(c, snr_db, target, parse_analytic_kind(kind));
        },
        py::arg("config"), py::arg("snr_db"), py::arg("target_top"), py::arg("kind"));
    m.def(
        "fit_scaling_exponent",
        [](const std::vector<double>& snr_db, const std::vector<double>& L) {
            const auto f = fit_scaling_exponent(snr_db, L);
            return py::dict(py::arg("slope") = f.slope, py::arg("ci_low") = f.ci_low,
                            py::arg("ci_high") = f.ci_high);
        },
        py::arg("snr_db"), py::arg("L"));

    m.def(
        "estimate_top",
        [](const SystemConfig& c, const std::vector<double>& betas, const std::string& mode, unsigned threads) {
            py::gil_scoped_release release;
            const auto est = estimate_top_curve(c, betas, parse_mode(mode), RunOptions{threads});
            std::vector<std::pair<double, double>> out;
            for (const auto& e : est) out.emplace_back(e.value, e.stderr_);
            return out;
        },
        py::arg("config"), py::arg("betas"), py::arg("mode") = "lb", py::arg("threads") = 0,
        "Monte Carlo transmission outage at each beta as (value, stderr) pairs.");
    m.def(
        "estimate_mean_sum_capacity",
        [](const SystemConfig& c, const std::vector<double>& snr_db, unsigned threads) {
            py::gil_scoped_release release;
            const auto est = estimate_mean_sum_capacity(c, snr_db, RunOptions{threads});
            std::vector<std::pair<double, double>> out;
            for (const auto& e : est) out.emplace_back(e.value, e.stderr_);
            return out;
        },
        py::arg("config"), py::arg("snr_db"), py::arg("threads") = 0);

    m.def(
        "schedule",
        [](const Eigen::MatrixXd& cqi, bool repeat_users) {
            const auto d = sequential_max_sinr(
                cqi, repeat_users ? SchedulingMode::repeat_users : SchedulingMode::distinct_users);
            std::vector<std::pair<int, double>> out;
            for (const auto& a : d.assignments) out.emplace_back(a.user, a.gamma);
            return out;
        },
        py::arg("cqi"), py::arg("repeat_users") = false,
        "Sequential max-SINR over a users x streams table: (user, sinr) per stream.");

    m.def("figure_ids", &figure_ids);
    m.def("table_ids", &table_ids);
    m.def(
        "run_figure",
        [](const std::string& id, std::optional<std::uint64_t> seed, std::optional<std::uint64_t> trials,
           unsigned threads) {
            std::vector<ResultRecord> r;
            {
                py::gil_scoped_release release;
                r = run_figure(id, repro(seed, trials, threads));
            }
            return record_list(r);
        },
        py::arg("id"), py::arg("seed") = py::none(), py::arg("trials") = py::none(), py::arg("threads") = 0);
    m.def(
        "run_table",
        [](const std::string& id, std::optional<std::uint64_t> seed, std::optional<std::uint64_t> trials,
           unsigned threads) {
            std::vector<ResultRecord> r;
            {
                py::gil_scoped_release release;
                r = run_table(id, repro(seed, trials, threads));
            }
            return record_list(r);
        },
        py::arg("id"), py::arg("seed") = py::none(), py::arg("trials") = py::none(), py::arg("threads") = 0);
    m.def(
        "coefficient_table",
        [](std::uint64_t seed, std::uint64_t samples) {
            py::list out;
            for (const auto& r : coefficient_table(seed, samples))
                out.append(py::dict(py::arg("field") = r.field, py::arg("m") = r.m, py::arg("n") = r.n,
                                    py::arg("k") = r.k, py::arg("exact") = r.exact, py::arg("value") = r.value,
                                    py::arg("mass") = r.mass, py::arg("ks_statistic") = r.ks_statistic,
                                    py::arg("ks_critical") = r.ks_critical));
            return out;
        },
        py::arg("seed") = 1, py::arg("samples") = 100000);
    m.def(
        "validate",
        [](double scale, std::uint64_t seed) {
            ValidationOptions o;
            o.scale = scale;
            o.seed = seed;
            std::vector<CheckResult> results;
            {
                py::gil_scoped_release release;
                results = run_validation_suite(o);
            }
            std::vector<std::tuple<std::string, bool, std::string>> out;
            for (const auto& r : results) out.emplace_back(r.name, r.passed, r.detail);
            return out;
        },
        py::arg("scale") = 1.0, py::arg("seed") = 1);
}
