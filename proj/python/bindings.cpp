// Copyright 2026 The coolsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "coolsim/channels.hpp"
#include "coolsim/circuit.hpp"
#include "coolsim/cli.hpp"
#include "coolsim/dc_protocol.hpp"
#include "coolsim/densitysim.hpp"
#include "coolsim/error.hpp"
#include "coolsim/experiments.hpp"
#include "coolsim/gda.hpp"
#include "coolsim/tsac_markov.hpp"

namespace py = pybind11;
using namespace coolsim;

namespace {

GateNoiseModel noise_from(const std::string &model, double p) {
    return noise_model_for_error_probability(parse_noise_kind(model), p);
}

py::dict estimate_dict(const GdaEstimate &e) {
    py::dict d;
    d["p"] = e.p;
    d["n_tg"] = e.n_tg;
    d["q"] = e.q;
    d["eta"] = e.eta;
    d["d"] = e.d;
    d["regime"] = std::string(regime_flag_name(e.flag));
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Global depolarizing approximation and algorithmic cooling simulator";
    m.attr("__version__") = COOLSIM_VERSION;

    py::register_exception<Error>(m, "CoolsimError", PyExc_RuntimeError);

    // gda
    m.def("eta_timekeeping", [](double p, std::uint64_t n_tg, std::uint64_t d) {
        return estimate_dict(eta_timekeeping(p, n_tg, d));
    }, py::arg("p"), py::arg("n_tg"), py::arg("d"));
    m.def("eta_bitflip", [](double chi, std::uint64_t n_tg, std::uint64_t d) {
        return estimate_dict(eta_bitflip(chi, n_tg, d));
    }, py::arg("chi"), py::arg("n_tg"), py::arg("d"));
    m.def("eta_general", [](double p, std::uint64_t n_tg, double q, std::uint64_t d) {
        return estimate_dict(eta_general(p, n_tg, q, d));
    }, py::arg("p"), py::arg("n_tg"), py::arg("q"), py::arg("d"));
    m.def("mitigate_expectation", &mitigate_expectation, py::arg("noisy"), py::arg("eta"));

    // circuits
    m.def("tsac_cx_count", &tsac_cx_count, py::arg("n"));
    m.def("describe", [](const std::string &protocol, int n, bool transpiled) {
        const Circuit logical = protocol == "dc" ? build_dc_mirror_circuit(n) : build_tsac_circuit(n);
        return transpiled ? transpile(logical).to_text() : logical.to_text();
    }, py::arg("protocol"), py::arg("n"), py::arg("transpiled") = false);
    m.def("compression_unitary", [](int n) { return Matrix(tsac_compression_unitary(n)); }, py::arg("n"));
    m.def("dc_unitary", [](int n) { return Matrix(dc_unitary(n)); }, py::arg("n"));

    // Markov model
    m.def("noisy_transition", [](int n_c, double eps, double eta) { return noisy_transition(n_c, eps, eta).m; },
          py::arg("n_c"), py::arg("epsilon"), py::arg("eta"));
    m.def("steady_state_power", [](int n_c, double eps, double eta, double tol) {
        return steady_state_power(noisy_transition(n_c, eps, eta), tol);
    }, py::arg("n_c"), py::arg("epsilon"), py::arg("eta"), py::arg("tol") = 1e-14);
    m.def("steady_state", [](int n_c, double eps, double eta) {
        const CoolingLimit lim = steady_state_analytic(n_c, eps, eta);
        py::dict d;
        d["lambda1"] = lim.lambda1;
        d["lambda2"] = lim.lambda2;
        d["z1"] = lim.z1;
        d["z2"] = lim.z2;
        d["v"] = lim.v;
        d["population"] = target_population(lim);
        return d;
    }, py::arg("n_c"), py::arg("epsilon"), py::arg("eta"));
    m.def("iterate_dynamics", [](int n_c, double eps, double eta, int rounds) {
        return iterate_dynamics(n_c, eps, eta, thermal_diagonal(n_c, eps), rounds);
    }, py::arg("n_c"), py::arg("epsilon"), py::arg("eta"), py::arg("rounds"));
    m.def("optimal_scan", [](double p, double eps, std::vector<int> ns, const std::string &model) {
        const ScanResult s = optimal_scan(p, eps, ns, parse_noise_kind(model));
        py::list rows;
        for (const auto &r : s.rows) rows.append(py::make_tuple(r.n, r.n_tg, r.eta, r.population));
        return py::make_tuple(s.n_opt, s.p_max, rows);
    }, py::arg("p"), py::arg("epsilon"), py::arg("n_range"), py::arg("model") = "timekeeping");
    m.def("polarization_to_population", &polarization_to_population, py::arg("epsilon"));
    m.def("population_to_polarization", &population_to_polarization, py::arg("ground_population"));

    // thermal / DC
    m.def("thermal_populations", [](double t, double f) {
        const ThermalSpec s{t, f};
        return py::make_tuple(s.ground_probability(), s.excited_probability());
    }, py::arg("temperature"), py::arg("frequency"));
    m.def("effective_temperature", [](double p0, double f) {
        const std::vector<double> d{p0, 1.0 - p0};
        return effective_temperature(DensityMatrix::from_diagonal(d), f).kelvin;
    }, py::arg("ground_population"), py::arg("frequency"));
    m.def("ideal_dc_population", [](int n, double t, double f) {
        return ideal_dc_output(n, {t, f}).populations()[0];
    }, py::arg("n"), py::arg("temperature"), py::arg("frequency"));

    // gate-level simulation
    m.def("run_tsac", [](int n, double p, double eps, const std::string &model, const std::string &orientation,
                         int max_rounds, double conv_tol) {
        SimConfig cfg;
        cfg.n = n;
        cfg.epsilon = eps;
        cfg.noise = noise_from(model, p);
        cfg.orientation = parse_orientation(orientation);
        cfg.max_rounds = max_rounds;
        cfg.conv_tol = conv_tol;
        TsacRun run;
        {
            py::gil_scoped_release release;
            run = run_tsac(cfg);
        }
        py::dict d;
        d["population"] = run.p_final;
        d["converged"] = run.converged;
        std::vector<double> traj;
        for (const auto &r : run.trajectory.rounds) traj.push_back(r.population);
        d["trajectory"] = traj;
        return d;
    }, py::arg("n"), py::arg("p"), py::arg("epsilon"), py::arg("model") = "timekeeping",
       py::arg("orientation") = "reversed", py::arg("max_rounds") = 10000, py::arg("conv_tol") = 1e-12);
    m.def("run_dc", [](int n, double p, double t, double f, const std::string &model, const std::string &orientation) {
        const DcRun run = run_dc(n, {t, f}, noise_from(model, p), parse_orientation(orientation));
        py::dict d;
        d["ground_population"] = run.target.populations()[0];
        d["t_eff"] = run.t_eff.kelvin;
        d["n_tg"] = run.n_tg;
        return d;
    }, py::arg("n"), py::arg("p"), py::arg("temperature"), py::arg("frequency"), py::arg("model") = "timekeeping",
       py::arg("orientation") = "reversed");
    m.def("twodesign_validation", [](int n, std::vector<int> reps, double p_init, double p, const std::string &model,
                                     const std::string &orientation) {
        std::vector<std::pair<int, double>> out;
        for (const auto &r : twodesign_validation(n, reps, p_init, noise_from(model, p), parse_orientation(orientation))) {
            out.emplace_back(r.repetitions, r.fidelity);
        }
        return out;
    }, py::arg("n"), py::arg("repetitions"), py::arg("p_initial"), py::arg("p") = 1e-3,
       py::arg("model") = "timekeeping", py::arg("orientation") = "reversed");

    // experiments and CLI
    m.def("run_config", [](const std::string &text) {
        const ExperimentConfig cfg = parse_config(text, "<string>");
        std::vector<ResultRecord> records;
        {
            py::gil_scoped_release release;
            records = run_experiment(cfg);
        }
        return to_csv(records);
    }, py::arg("text"), "Run a TOML experiment config and return the CSV table.");
    m.def("cli_main", [](std::vector<std::string> args) {
        std::ostringstream out, err;
        const int code = cli_main(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("args"));
}
