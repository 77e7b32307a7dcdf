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

#include "coolsim/cli.hpp"

#include <algorithm>
#include <cstdio>

#include <CLI11.hpp>

#include "coolsim/circuit.hpp"
#include "coolsim/error.hpp"
#include "coolsim/experiments.hpp"
#include "coolsim/gda.hpp"
#include "coolsim/tsac_markov.hpp"

namespace coolsim {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

int cli_main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"coolsim: global depolarizing approximation and algorithmic cooling simulator", "coolsim"};
    app.set_version_flag("--version", std::string("coolsim ") + COOLSIM_VERSION);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    auto *run = app.add_subcommand("run", "run an experiment config and write CSV/JSON tables");
    run->add_option("--config", config_path, "TOML experiment config")->required();
    run->add_option("--out", out_dir, "output directory")->required();

    std::string model = "timekeeping";
    double p = 0.0;
    int n = 0;
    auto *eta = app.add_subcommand("eta", "effective depolarizing strength of the TSAC circuit");
    eta->add_option("--model", model, "noise model")->check(CLI::IsMember({"timekeeping", "bitflip"}));
    eta->add_option("--p", p, "timekeeping p, or chi for bit flips")->required();
    eta->add_option("--n", n, "qubit count")->required()->check(CLI::Range(2, 10));

    int nc = 0;
    double eps = 0.0;
    double eta_value = 0.0;
    auto *limit = app.add_subcommand("limit", "closed-form noisy cooling limit");
    limit->add_option("--nc", nc, "computational qubits")->required()->check(CLI::Range(1, 20));
    limit->add_option("--eps", eps, "reset polarization epsilon")->required();
    limit->add_option("--eta", eta_value, "global depolarizing strength")->required();

    std::string protocol;
    bool transpiled = false;
    auto *describe = app.add_subcommand("describe", "print a protocol circuit and its CX count");
    describe->add_option("--protocol", protocol, "tsac or dc")->required()->check(CLI::IsMember({"tsac", "dc"}));
    describe->add_option("--n", n, "qubit count")->required()->check(CLI::Range(2, 12));
    describe->add_flag("--transpiled", transpiled, "print the {CX, SX, RZ} circuit");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::Success &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitConfigError;
    }

    try {
        if (*run) {
            const ExperimentConfig cfg = load_config(config_path);
            const auto records = run_experiment(cfg);
            write_outputs(cfg, records, out_dir);
            out << "wrote " << records.size() << " records to " << out_dir << "/" << cfg.name << ".csv\n";
        } else if (*eta) {
            const std::uint64_t n_tg = tsac_cx_count(n);
            const std::uint64_t d = std::uint64_t{1} << n;
            const GdaEstimate est = model == "bitflip" ? eta_bitflip(p, n_tg, d) : eta_timekeeping(p, n_tg, d);
            out << "model=" << model << "\n"
                << "p=" << fmt(est.p) << "\n"
                << "n_TG=" << est.n_tg << "\n"
                << "q=" << fmt(est.q) << "\n"
                << "eta=" << fmt(est.eta) << "\n"
                << "regime=" << regime_flag_name(est.flag) << "\n";
        } else if (*limit) {
            const CoolingLimit lim = steady_state_analytic(nc, eps, eta_value);
            out << "lambda1=" << fmt(lim.lambda1) << "\n"
                << "lambda2=" << fmt(lim.lambda2) << "\n"
                << "z1=" << fmt(lim.z1) << "\n"
                << "z2=" << fmt(lim.z2) << "\n"
                << "P=" << fmt(target_population(lim)) << "\n";
        } else if (*describe) {
            const Circuit logical = protocol == "tsac" ? build_tsac_circuit(n) : build_dc_mirror_circuit(n);
            const Circuit basis = transpile(logical);
            out << (transpiled ? basis : logical).to_text();
            out << "cx_count=" << count_cx(basis) << "\n";
        }
    } catch (const Error &e) {
        err << "coolsim: " << e.what() << "\n";
        return e.kind() == ErrorKind::kConfigError ? kExitConfigError : kExitNumericFailure;
    } catch (const std::exception &e) {
        err << "coolsim: " << e.what() << "\n";
        return kExitNumericFailure;
    }
    return kExitOk;
}

}  // namespace coolsim
