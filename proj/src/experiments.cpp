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

#include "coolsim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>
#include <toml.hpp>

#include "coolsim/circuit.hpp"
#include "coolsim/dc_protocol.hpp"
#include "coolsim/error.hpp"
#include "coolsim/gda.hpp"
#include "coolsim/parallel.hpp"
#include "coolsim/tsac_markov.hpp"

namespace coolsim {

namespace {

constexpr ExperimentKind kAllKinds[] = {
    ExperimentKind::kTsacScan, ExperimentKind::kDcGrid,       ExperimentKind::kDynamics,
    ExperimentKind::kTwodesign, ExperimentKind::kCoolingLimit, ExperimentKind::kEtaTable};

// Field access with line-numbered diagnostics.
class Reader {
   public:
    Reader(const toml::table &table, std::string source, std::size_t table_line)
        : table_(table), source_(std::move(source)), table_line_(table_line) {
    }

    [[noreturn]] void fail(std::string_view key, const std::string &message) const {
        std::size_t line = table_line_;
        if (const toml::node *node = table_.get(key)) {
            line = node->source().begin.line;
        }
        throw Error(ErrorKind::kConfigError,
                    source_ + ":" + std::to_string(line) + ": field '" + std::string(key) + "': " + message);
    }

    bool has(std::string_view key) const {
        return table_.contains(key);
    }

    std::string string(std::string_view key, std::string fallback) const {
        if (!has(key)) {
            return fallback;
        }
        const auto value = table_[key].value<std::string>();
        if (!value) {
            fail(key, "expected a string");
        }
        return *value;
    }

    double number(std::string_view key, double fallback) const {
        if (!has(key)) {
            return fallback;
        }
        const auto value = table_[key].value<double>();
        if (!value || !std::isfinite(*value)) {
            fail(key, "expected a finite number");
        }
        return *value;
    }

    int integer(std::string_view key, int fallback) const {
        if (!has(key)) {
            return fallback;
        }
        const toml::node *node = table_.get(key);
        if (!node->is_integer()) {
            fail(key, "expected an integer");
        }
        const auto value = node->value<std::int64_t>();
        if (*value < -1'000'000'000 || *value > 1'000'000'000) {
            fail(key, "integer out of range");
        }
        return static_cast<int>(*value);
    }

    std::vector<double> numbers(std::string_view key) const {
        const toml::array *arr = table_[key].as_array();
        if (!arr) {
            fail(key, "expected an array of numbers");
        }
        std::vector<double> out;
        for (const auto &element : *arr) {
            const auto value = element.value<double>();
            if (!value || !std::isfinite(*value)) {
                fail(key, "expected an array of numbers");
            }
            out.push_back(*value);
        }
        return out;
    }

    std::vector<int> integers(std::string_view key) const {
        const toml::array *arr = table_[key].as_array();
        if (!arr) {
            fail(key, "expected an array of integers");
        }
        std::vector<int> out;
        for (const auto &element : *arr) {
            if (!element.is_integer()) {
                fail(key, "expected an array of integers");
            }
            out.push_back(static_cast<int>(*element.value<std::int64_t>()));
        }
        return out;
    }

    void reject_unknown(const std::set<std::string, std::less<>> &allowed) const {
        for (const auto &[key, node] : table_) {
            if (!allowed.contains(key.str())) {
                fail(key.str(), "unknown field");
            }
        }
    }

   private:
    const toml::table &table_;
    std::string source_;
    std::size_t table_line_;
};

std::vector<double> read_p_grid(const Reader &r, bool required) {
    std::vector<double> out;
    if (r.has("p") && r.has("p_logspace")) {
        r.fail("p_logspace", "give either p or p_logspace, not both");
    }
    if (r.has("p")) {
        out = r.numbers("p");
    } else if (r.has("p_logspace")) {
        // [start, stop, count], endpoints included.
        const auto spec = r.numbers("p_logspace");
        if (spec.size() != 3 || !(spec[0] > 0.0) || !(spec[1] > 0.0) || spec[2] < 1.0 || spec[2] != std::floor(spec[2])) {
            r.fail("p_logspace", "expected [start, stop, count] with positive endpoints");
        }
        const int count = static_cast<int>(spec[2]);
        const double a = std::log10(spec[0]);
        const double b = std::log10(spec[1]);
        for (int i = 0; i < count; ++i) {
            out.push_back(count == 1 ? spec[0] : std::pow(10.0, a + (b - a) * i / (count - 1)));
        }
    } else if (required) {
        r.fail("p", "required");
    }
    for (double p : out) {
        if (!(p >= 0.0 && p < 1.0)) {
            r.fail(r.has("p") ? "p" : "p_logspace", "error probabilities must lie in [0, 1)");
        }
    }
    return out;
}

std::vector<int> read_n_grid(const Reader &r, int lo, int hi, std::vector<int> fallback) {
    std::vector<int> out;
    if (r.has("n")) {
        out = r.integers("n");
    } else if (r.has("n_min") || r.has("n_max")) {
        const int a = r.integer("n_min", lo);
        const int b = r.integer("n_max", hi);
        for (int n = a; n <= b; ++n) {
            out.push_back(n);
        }
    } else {
        out = std::move(fallback);
    }
    if (out.empty()) {
        r.fail("n", "qubit grid is empty");
    }
    for (int n : out) {
        if (n < lo || n > hi) {
            r.fail(r.has("n") ? "n" : "n_max",
                   "qubit counts must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double read_epsilon(const Reader &r) {
    if (r.has("epsilon") && r.has("p_initial")) {
        r.fail("epsilon", "give either epsilon or p_initial, not both");
    }
    if (r.has("epsilon")) {
        const double eps = r.number("epsilon", 0.0);
        if (!(eps > 0.0)) {
            r.fail("epsilon", "must be positive");
        }
        return eps;
    }
    if (r.has("p_initial")) {
        const double p0 = r.number("p_initial", 0.0);
        if (!(p0 > 0.5 && p0 < 1.0)) {
            r.fail("p_initial", "must lie in (0.5, 1)");
        }
        return population_to_polarization(p0);
    }
    r.fail("p_initial", "required (or epsilon)");
}

template <typename T>
void sort_unique(std::vector<T> &v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

ResultRecord record(const ExperimentConfig &cfg, std::string provenance, int n, double p, double eta, std::string metric,
                    double value, int index = -1) {
    if (index >= 0) {
        metric += "=" + std::to_string(index);
    }
    return {cfg.name, std::move(provenance), n, p, cfg.epsilon, eta, std::move(metric), value, index};
}

double gda_population(int n, double epsilon, double eta) {
    return eta >= 1.0 ? 0.5 : target_population(steady_state_analytic(n - 1, epsilon, eta));
}

using Records = std::vector<ResultRecord>;

Records run_tsac_scan(const ExperimentConfig &cfg, int workers) {
    struct Point {
        double p;
        int n;
        bool ideal;
    };
    std::vector<Point> points;
    for (int n : cfg.n) {
        points.push_back({0.0, n, true});
        for (double p : cfg.p) {
            points.push_back({p, n, false});
        }
    }
    auto rows = parallel_map(points.size(), workers, [&](std::size_t i) {
        const Point pt = points[i];
        Records out;
        const std::uint64_t n_tg = tsac_cx_count(pt.n);
        if (pt.ideal) {
            out.push_back(record(cfg, "ideal", pt.n, 0.0, 0.0, "P_n", gda_population(pt.n, cfg.epsilon, 0.0)));
            return out;
        }
        const GateNoiseModel noise = noise_model_for_error_probability(cfg.model, pt.p);
        const GdaEstimate est = eta_for_model(noise, n_tg, std::uint64_t{1} << pt.n);
        out.push_back(record(cfg, "gda", pt.n, pt.p, est.eta, "P_n", gda_population(pt.n, cfg.epsilon, est.eta)));
        out.push_back(record(cfg, "gda", pt.n, pt.p, est.eta, "n_TG", static_cast<double>(n_tg)));
        if (pt.n <= cfg.physical_max_n) {
            SimConfig sim;
            sim.n = pt.n;
            sim.noise = noise;
            sim.epsilon = cfg.epsilon;
            sim.max_rounds = cfg.max_rounds;
            sim.conv_tol = cfg.conv_tol;
            sim.orientation = cfg.orientation;
            const TsacRun run = run_tsac(sim);
            if (!run.converged) {
                throw Error(ErrorKind::kNoConvergence, "TSAC simulation did not converge at n=" + std::to_string(pt.n));
            }
            out.push_back(record(cfg, "physical", pt.n, pt.p, est.eta, "P_n", run.p_final));
            out.push_back(record(cfg, "physical", pt.n, pt.p, est.eta, "rounds",
                                 static_cast<double>(run.trajectory.rounds.size() - 1)));
        }
        return out;
    });
    Records flat;
    for (auto &r : rows) {
        flat.insert(flat.end(), r.begin(), r.end());
    }
    // n_opt and P_max per (provenance, p), smallest n on ties.
    std::map<std::pair<std::string, double>, const ResultRecord *> best;
    for (const auto &r : flat) {
        if (r.metric != "P_n" || r.provenance == "ideal") {
            continue;
        }
        auto &slot = best[{r.provenance, r.p}];
        if (!slot || r.value > slot->value || (r.value == slot->value && r.n < slot->n)) {
            slot = &r;
        }
    }
    Records summary;
    for (const auto &[key, r] : best) {
        summary.push_back(record(cfg, key.first, r->n, key.second, r->eta, "n_opt", static_cast<double>(r->n)));
        summary.push_back(record(cfg, key.first, r->n, key.second, r->eta, "P_max", r->value));
    }
    flat.insert(flat.end(), summary.begin(), summary.end());
    return flat;
}

Records run_dc_grid(const ExperimentConfig &cfg, int workers) {
    const ThermalSpec spec{cfg.t_initial, cfg.frequency};
    struct Point {
        double p;
        int n;
        bool ideal;
    };
    std::vector<Point> points;
    for (int n : cfg.n) {
        points.push_back({0.0, n, true});
        for (double p : cfg.p) {
            points.push_back({p, n, false});
        }
    }
    auto rows = parallel_map(points.size(), workers, [&](std::size_t i) {
        const Point pt = points[i];
        Records out;
        const DensityMatrix ideal = ideal_dc_output(pt.n, spec);
        if (pt.ideal) {
            out.push_back(record(cfg, "ideal", pt.n, 0.0, 0.0, "P_ground", ideal.matrix()(0, 0).real()));
            out.push_back(record(cfg, "ideal", pt.n, 0.0, 0.0, "T_eff", effective_temperature(ideal, spec.frequency).kelvin));
            return out;
        }
        const std::uint64_t n_tg = count_cx(transpile(build_dc_mirror_circuit(pt.n)));
        const GateNoiseModel noise = noise_model_for_error_probability(cfg.model, pt.p);
        const GdaEstimate est = eta_for_model(noise, n_tg, std::uint64_t{1} << pt.n);
        const DensityMatrix modelled = depolarize(ideal, est.eta);
        const double t_model = effective_temperature(modelled, spec.frequency).kelvin;
        const DcRun run = run_dc(pt.n, spec, noise, cfg.orientation);
        out.push_back(record(cfg, "gda", pt.n, pt.p, est.eta, "P_ground", modelled.matrix()(0, 0).real()));
        out.push_back(record(cfg, "gda", pt.n, pt.p, est.eta, "T_eff", t_model));
        out.push_back(record(cfg, "gda", pt.n, pt.p, est.eta, "n_TG", static_cast<double>(n_tg)));
        out.push_back(record(cfg, "physical", pt.n, pt.p, est.eta, "P_ground", run.target.matrix()(0, 0).real()));
        out.push_back(record(cfg, "physical", pt.n, pt.p, est.eta, "T_eff", run.t_eff.kelvin));
        out.push_back(record(cfg, "physical", pt.n, pt.p, est.eta, "relative_error",
                             std::abs(run.t_eff.kelvin - t_model) / t_model));
        return out;
    });
    Records flat;
    for (auto &r : rows) {
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return flat;
}

Records run_dynamics(const ExperimentConfig &cfg, int workers) {
    struct Point {
        double p;
        int n;
        int source;  // 0 ideal, 1 gda, 2 physical
    };
    std::vector<Point> points;
    for (int n : cfg.n) {
        points.push_back({0.0, n, 0});
        for (double p : cfg.p) {
            points.push_back({p, n, 1});
            if (n <= cfg.physical_max_n) {
                points.push_back({p, n, 2});
            }
        }
    }
    auto rows = parallel_map(points.size(), workers, [&](std::size_t i) {
        const Point pt = points[i];
        Records out;
        const std::uint64_t n_tg = tsac_cx_count(pt.n);
        const GateNoiseModel noise = noise_model_for_error_probability(cfg.model, pt.p);
        const double eta = pt.source == 0 ? 0.0 : eta_for_model(noise, n_tg, std::uint64_t{1} << pt.n).eta;
        if (pt.source < 2) {
            const auto v0 = thermal_diagonal(pt.n - 1, cfg.epsilon);
            const auto traj = iterate_dynamics(pt.n - 1, cfg.epsilon, std::min(eta, 1.0), v0, cfg.rounds);
            const char *prov = pt.source == 0 ? "ideal" : "gda";
            for (std::size_t r = 0; r < traj.size(); ++r) {
                out.push_back(record(cfg, prov, pt.n, pt.p, eta, "population@round", traj[r], static_cast<int>(r)));
            }
            return out;
        }
        SimConfig sim;
        sim.n = pt.n;
        sim.noise = noise;
        sim.epsilon = cfg.epsilon;
        sim.max_rounds = cfg.rounds;
        sim.conv_tol = cfg.conv_tol;
        sim.orientation = cfg.orientation;
        sim.fixed_rounds = true;
        const TsacRun run = run_tsac(sim);
        for (const auto &rec : run.trajectory.rounds) {
            out.push_back(record(cfg, "physical", pt.n, pt.p, eta, "population@round", rec.population, rec.round));
        }
        return out;
    });
    Records flat;
    for (auto &r : rows) {
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return flat;
}

Records run_twodesign(const ExperimentConfig &cfg) {
    Records out;
    const double p = cfg.p.empty() ? 1e-3 : cfg.p.front();
    const GateNoiseModel noise = noise_model_for_error_probability(cfg.model, p);
    const double p_initial = polarization_to_population(cfg.epsilon);
    for (int n : cfg.n) {
        const double q = q_param(noise.error_part, Eigen::Index{1} << n);
        out.push_back(record(cfg, "physical", n, p, 0.0, "q", q));
        for (const auto &row : twodesign_validation(n, cfg.repetitions, p_initial, noise, cfg.orientation)) {
            out.push_back(record(cfg, "physical", n, p, 0.0, "fidelity@R", row.fidelity, row.repetitions));
        }
    }
    return out;
}

Records run_cooling_limit(const ExperimentConfig &cfg, int workers) {
    std::vector<std::pair<double, int>> points;
    for (int n : cfg.n) {
        for (double p : cfg.p) {
            points.emplace_back(p, n);
        }
    }
    auto rows = parallel_map(points.size(), workers, [&](std::size_t i) {
        const auto [p, n] = points[i];
        const GateNoiseModel noise = noise_model_for_error_probability(cfg.model, p);
        const GdaEstimate est = eta_for_model(noise, tsac_cx_count(n), std::uint64_t{1} << n);
        Records out;
        if (est.eta >= 1.0) {
            out.push_back(record(cfg, "gda", n, p, est.eta, "P_n", 0.5));
            return out;
        }
        const CoolingLimit lim = steady_state_analytic(n - 1, cfg.epsilon, est.eta);
        out.push_back(record(cfg, "gda", n, p, est.eta, "P_n", target_population(lim)));
        out.push_back(record(cfg, "gda", n, p, est.eta, "lambda1", lim.lambda1));
        out.push_back(record(cfg, "gda", n, p, est.eta, "lambda2", lim.lambda2));
        out.push_back(record(cfg, "gda", n, p, est.eta, "z1", lim.z1));
        out.push_back(record(cfg, "gda", n, p, est.eta, "z2", lim.z2));
        return out;
    });
    Records flat;
    for (auto &r : rows) {
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return flat;
}

Records run_eta_table(const ExperimentConfig &cfg) {
    Records out;
    for (int n : cfg.n) {
        const std::uint64_t n_tg = tsac_cx_count(n);
        for (double p : cfg.p) {
            const GdaEstimate est = eta_for_model(noise_model_for_error_probability(cfg.model, p), n_tg, std::uint64_t{1} << n);
            out.push_back(record(cfg, "gda", n, p, est.eta, "n_TG", static_cast<double>(n_tg)));
            out.push_back(record(cfg, "gda", n, p, est.eta, "q", est.q));
            out.push_back(record(cfg, "gda", n, p, est.eta, "eta", est.eta));
            out.push_back(record(cfg, "gda", n, p, est.eta, "regime", static_cast<double>(static_cast<int>(est.flag))));
        }
    }
    return out;
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_atomically(const std::filesystem::path &path, const std::string &content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(ErrorKind::kInvalidInput, "cannot write " + tmp.string());
        }
        out << content;
        if (!out) {
            throw Error(ErrorKind::kInvalidInput, "failed writing " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace

std::string_view experiment_kind_name(ExperimentKind kind) noexcept {
    switch (kind) {
        case ExperimentKind::kTsacScan:
            return "tsac_scan";
        case ExperimentKind::kDcGrid:
            return "dc_grid";
        case ExperimentKind::kDynamics:
            return "dynamics";
        case ExperimentKind::kTwodesign:
            return "twodesign";
        case ExperimentKind::kCoolingLimit:
            return "cooling_limit";
        case ExperimentKind::kEtaTable:
            return "eta_table";
    }
    return "tsac_scan";
}

ExperimentConfig parse_config(std::string_view text, std::string_view source) {
    toml::table root;
    try {
        root = toml::parse(text, source);
    } catch (const toml::parse_error &err) {
        throw Error(ErrorKind::kConfigError, std::string(source) + ":" + std::to_string(err.source().begin.line) +
                                                 ": " + std::string(err.description()));
    }
    for (const auto &[key, node] : root) {
        if (key.str() != "experiment") {
            throw Error(ErrorKind::kConfigError, std::string(source) + ":" + std::to_string(node.source().begin.line) +
                                                     ": unexpected top-level key '" + std::string(key.str()) + "'");
        }
    }
    const toml::table *table = root["experiment"].as_table();
    if (!table) {
        throw Error(ErrorKind::kConfigError, std::string(source) + ":1: missing [experiment] table");
    }
    const Reader r(*table, std::string(source), table->source().begin.line);
    r.reject_unknown({"kind", "name", "p", "p_logspace", "n", "n_min", "n_max", "epsilon", "p_initial", "t_initial",
                      "frequency", "repetitions", "rounds", "model", "orientation", "max_rounds", "conv_tol",
                      "physical_max_n", "threads"});

    ExperimentConfig cfg;
    const std::string kind = r.string("kind", "");
    bool found = false;
    for (auto k : kAllKinds) {
        if (experiment_kind_name(k) == kind) {
            cfg.kind = k;
            found = true;
        }
    }
    if (!found) {
        r.fail("kind", "expected one of tsac_scan, dc_grid, dynamics, twodesign, cooling_limit, eta_table");
    }
    cfg.name = r.string("name", kind);
    if (cfg.name.empty() || cfg.name.find_first_of("/\\,\n\r\"") != std::string::npos) {
        r.fail("name", "must be non-empty and free of path separators, commas and quotes");
    }
    try {
        cfg.model = parse_noise_kind(r.string("model", "timekeeping"));
    } catch (const Error &) {
        r.fail("model", "expected none, bitflip, timekeeping or depolarizing2q");
    }
    try {
        cfg.orientation = parse_orientation(r.string("orientation", "reversed"));
    } catch (const Error &) {
        r.fail("orientation", "expected reversed or gate_aligned");
    }
    cfg.threads = r.integer("threads", 0);
    if (cfg.threads < 0) {
        r.fail("threads", "must be non-negative");
    }
    cfg.max_rounds = r.integer("max_rounds", cfg.max_rounds);
    if (cfg.max_rounds < 1) {
        r.fail("max_rounds", "must be at least 1");
    }
    cfg.conv_tol = r.number("conv_tol", cfg.conv_tol);
    if (!(cfg.conv_tol > 0.0)) {
        r.fail("conv_tol", "must be positive");
    }
    cfg.physical_max_n = r.integer("physical_max_n", cfg.physical_max_n);
    if (cfg.physical_max_n < 0 || cfg.physical_max_n > kMaxSimQubits) {
        r.fail("physical_max_n", "must lie in [0, 10]");
    }

    switch (cfg.kind) {
        case ExperimentKind::kTsacScan:
        case ExperimentKind::kCoolingLimit:
            cfg.p = read_p_grid(r, true);
            cfg.n = read_n_grid(r, 2, 10, {});
            cfg.epsilon = read_epsilon(r);
            break;
        case ExperimentKind::kDynamics:
            cfg.p = read_p_grid(r, true);
            cfg.n = read_n_grid(r, 2, 10, {});
            cfg.epsilon = read_epsilon(r);
            cfg.rounds = r.integer("rounds", 0);
            if (cfg.rounds < 1) {
                r.fail("rounds", "required, at least 1");
            }
            break;
        case ExperimentKind::kDcGrid: {
            cfg.p = read_p_grid(r, true);
            cfg.n = read_n_grid(r, 2, kMaxDcSimQubits, {});
            cfg.t_initial = r.number("t_initial", cfg.t_initial);
            cfg.frequency = r.number("frequency", cfg.frequency);
            if (!(cfg.t_initial > 0.0)) {
                r.fail("t_initial", "must be positive");
            }
            if (!(cfg.frequency > 0.0)) {
                r.fail("frequency", "must be positive");
            }
            const ThermalSpec spec{cfg.t_initial, cfg.frequency};
            cfg.epsilon = 0.5 * std::log(spec.ground_probability() / spec.excited_probability());
            break;
        }
        case ExperimentKind::kTwodesign:
            cfg.p = read_p_grid(r, false);
            cfg.n = read_n_grid(r, 2, 6, {3});
            cfg.epsilon = read_epsilon(r);
            if (!r.has("repetitions")) {
                r.fail("repetitions", "required");
            }
            cfg.repetitions = r.integers("repetitions");
            if (cfg.repetitions.empty()) {
                r.fail("repetitions", "must not be empty");
            }
            for (int reps : cfg.repetitions) {
                if (reps < 0 || reps > 50) {
                    r.fail("repetitions", "entries must lie in [0, 50]");
                }
            }
            sort_unique(cfg.repetitions);
            if (cfg.model == NoiseKind::kNone) {
                r.fail("model", "the 2-design check needs an error channel");
            }
            break;
        case ExperimentKind::kEtaTable:
            cfg.p = read_p_grid(r, true);
            cfg.n = read_n_grid(r, 2, 10, {});
            break;
    }
    if (cfg.kind == ExperimentKind::kTsacScan || cfg.kind == ExperimentKind::kDcGrid ||
        cfg.kind == ExperimentKind::kDynamics || cfg.kind == ExperimentKind::kCoolingLimit ||
        cfg.kind == ExperimentKind::kEtaTable) {
        if (cfg.p.empty()) {
            r.fail(r.has("p") ? "p" : "p_logspace", "must not be empty");
        }
    }
    sort_unique(cfg.p);
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::kConfigError, path.string() + ": cannot open config file");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), path.string());
}

std::vector<ResultRecord> run_experiment(const ExperimentConfig &cfg) {
    const int workers = worker_count(cfg.threads);
    Records records;
    switch (cfg.kind) {
        case ExperimentKind::kTsacScan:
            records = run_tsac_scan(cfg, workers);
            break;
        case ExperimentKind::kDcGrid:
            records = run_dc_grid(cfg, workers);
            break;
        case ExperimentKind::kDynamics:
            records = run_dynamics(cfg, workers);
            break;
        case ExperimentKind::kTwodesign:
            records = run_twodesign(cfg);
            break;
        case ExperimentKind::kCoolingLimit:
            records = run_cooling_limit(cfg, workers);
            break;
        case ExperimentKind::kEtaTable:
            records = run_eta_table(cfg);
            break;
    }
    std::sort(records.begin(), records.end(), [](const ResultRecord &a, const ResultRecord &b) {
        return std::tie(a.experiment, a.provenance, a.n, a.p, a.epsilon, a.eta, a.index, a.metric) <
               std::tie(b.experiment, b.provenance, b.n, b.p, b.epsilon, b.eta, b.index, b.metric);
    });
    return records;
}

std::string to_csv(std::span<const ResultRecord> records) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto &r : records) {
        out += r.experiment;
        out += ',';
        out += r.provenance;
        out += ',';
        out += std::to_string(r.n);
        out += ',';
        out += format_double(r.p);
        out += ',';
        out += format_double(r.epsilon);
        out += ',';
        out += format_double(r.eta);
        out += ',';
        out += r.metric;
        out += ',';
        out += format_double(r.value);
        out += '\n';
    }
    return out;
}

std::string to_json(const ExperimentConfig &cfg, std::span<const ResultRecord> records) {
    nlohmann::ordered_json doc;
    doc["experiment"] = cfg.name;
    doc["kind"] = experiment_kind_name(cfg.kind);
    doc["version"] = COOLSIM_VERSION;
    doc["model"] = noise_kind_name(cfg.model);
    doc["orientation"] = orientation_name(cfg.orientation);
    auto &rows = doc["records"] = nlohmann::ordered_json::array();
    for (const auto &r : records) {
        rows.push_back({{"provenance", r.provenance}, {"n", r.n}, {"p", r.p}, {"epsilon", r.epsilon},
                        {"eta", r.eta}, {"metric", r.metric}, {"value", r.value}});
    }
    return doc.dump(2) + "\n";
}

void write_outputs(const ExperimentConfig &cfg, std::span<const ResultRecord> records, const std::filesystem::path &dir) {
    std::filesystem::create_directories(dir);
    const std::string csv = to_csv(records);
    const std::string json = to_json(cfg, records);
    write_atomically(dir / (cfg.name + ".csv"), csv);
    write_atomically(dir / (cfg.name + ".json"), json);
}

}  // namespace coolsim
