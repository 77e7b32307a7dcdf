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

#include "coolsim/densitysim.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "coolsim/error.hpp"

namespace coolsim {

namespace {

// One conjugation step, monomial when possible.
struct LocalOp {
    std::optional<MonomialMap> map;
    Matrix op;
    std::vector<int> qubits;
};

LocalOp compile_op(const Matrix &op, std::vector<int> qubits, int n) {
    LocalOp out{monomial_map(op, qubits, n), op, std::move(qubits)};
    return out;
}

struct Step {
    LocalOp gate;
    std::vector<LocalOp> noise;  // empty for noiseless steps
};

bool single_qubit(const Gate &g) {
    return g.kind == GateKind::kX || g.kind == GateKind::kSX || g.kind == GateKind::kRZ;
}

class Engine {
   public:
    Engine(const Circuit &c, const GateNoiseModel &noise, ErrorOrientation orientation) : n_(c.n_qubits()) {
        const auto &gates = c.gates();
        const bool noisy = noise.kind != NoiseKind::kNone && noise.p > 0.0;
        for (std::size_t i = 0; i < gates.size();) {
            const Gate &g = gates[i];
            if (g.kind == GateKind::kMCX) {
                throw Error(ErrorKind::kNotTranspiled, "simulation needs a transpiled circuit");
            }
            if (single_qubit(g)) {
                // Noise only follows CX, so runs of one-qubit gates on one wire fuse.
                Matrix fused = gate_matrix(g);
                std::size_t j = i + 1;
                while (j < gates.size() && single_qubit(gates[j]) && gates[j].target == g.target) {
                    fused = gate_matrix(gates[j]) * fused;
                    ++j;
                }
                steps_.push_back({compile_op(fused, {g.target}, n_), {}});
                i = j;
                continue;
            }
            Step step{compile_op(gate_matrix(g), {g.controls.front(), g.target}, n_), {}};
            if (noisy) {
                const auto [a, b] = error_pair(g.controls.front(), g.target, orientation);
                const KrausChannel ch = embed_two_qubit(noise.full, {a, b}, n_);
                const std::vector<int> support(ch.support().begin(), ch.support().end());
                for (const auto &k : ch.local_operators()) {
                    step.noise.push_back(compile_op(k, support, n_));
                }
            }
            steps_.push_back(std::move(step));
            ++i;
        }
    }

    Matrix run(Matrix rho) const {
        Matrix scratch(rho.rows(), rho.cols());
        for (const auto &step : steps_) {
            apply(rho, scratch, step.gate);
            if (!step.noise.empty()) {
                scratch.setZero();
                for (const auto &k : step.noise) {
                    accumulate(scratch, rho, k);
                }
                rho.swap(scratch);
            }
        }
        return rho;
    }

   private:
    void accumulate(Matrix &out, const Matrix &m, const LocalOp &op) const {
        if (op.map) {
            accumulate_conjugate(out, m, *op.map);
        } else {
            accumulate_conjugate_local(out, m, op.op, op.qubits, n_);
        }
    }

    void apply(Matrix &rho, Matrix &scratch, const LocalOp &op) const {
        if (op.map) {
            scratch.setZero();
            accumulate_conjugate(scratch, rho, *op.map);
            rho.swap(scratch);
            return;
        }
        left_apply(rho, op.op, op.qubits, n_);
        rho.adjointInPlace();
        left_apply(rho, op.op, op.qubits, n_);
        rho.adjointInPlace();
    }

    int n_;
    std::vector<Step> steps_;
};

void check_dims(const Circuit &c, const DensityMatrix &rho) {
    if (c.n_qubits() != rho.n_qubits()) {
        throw Error(ErrorKind::kInvalidDims, "circuit and state have different qubit counts");
    }
}

Circuit repeated(const Circuit &c, int times) {
    Circuit out(c.n_qubits());
    for (int r = 0; r < times; ++r) {
        out.append(c.gates());
    }
    return out;
}

}  // namespace

std::string_view orientation_name(ErrorOrientation o) noexcept {
    return o == ErrorOrientation::kReversed ? "reversed" : "gate_aligned";
}

ErrorOrientation parse_orientation(std::string_view name) {
    if (name == "reversed") {
        return ErrorOrientation::kReversed;
    }
    if (name == "gate_aligned") {
        return ErrorOrientation::kGateAligned;
    }
    throw Error(ErrorKind::kInvalidParam, "unknown error orientation '" + std::string(name) + "'");
}

std::pair<int, int> error_pair(int control, int target, ErrorOrientation o) noexcept {
    return o == ErrorOrientation::kReversed ? std::pair{target, control} : std::pair{control, target};
}

DensityMatrix simulate_noisy_circuit(
    const Circuit &c, const DensityMatrix &rho0, const GateNoiseModel &noise, ErrorOrientation orientation) {
    check_dims(c, rho0);
    const Engine engine(c, noise, orientation);
    return DensityMatrix::unchecked(engine.run(rho0.matrix()));
}

DensityMatrix tsac_round(
    const DensityMatrix &rho, const Circuit &c, const GateNoiseModel &noise, double epsilon,
    ErrorOrientation orientation) {
    return simulate_noisy_circuit(c, reset_channel(rho, epsilon), noise, orientation);
}

TsacRun run_tsac(const SimConfig &cfg) {
    if (cfg.n < 2 || cfg.n > kMaxSimQubits) {
        throw Error(ErrorKind::kSizeLimit, "gate-level TSAC needs 2 <= n <= 10");
    }
    if (!(cfg.conv_tol > 0.0) || cfg.max_rounds < 1) {
        throw Error(ErrorKind::kInvalidParam, "need conv_tol > 0 and max_rounds >= 1");
    }
    const Circuit circuit = transpile(build_tsac_circuit(cfg.n));
    const Engine engine(circuit, cfg.noise, cfg.orientation);

    TsacRun run;
    DensityMatrix rho = thermal_product(cfg.n, cfg.epsilon);
    run.trajectory.rounds.push_back({0, rho.ground_population(0), 0.0});
    for (int r = 1; r <= cfg.max_rounds; ++r) {
        DensityMatrix next = DensityMatrix::unchecked(engine.run(reset_channel(rho, cfg.epsilon).matrix()));
        if (cfg.validate_rounds) {
            next.validate();
        }
        const double step = trace_distance(next, rho);
        rho = std::move(next);
        run.trajectory.rounds.push_back({r, rho.ground_population(0), step});
        if (step <= cfg.conv_tol) {
            run.converged = true;
            if (!cfg.fixed_rounds) {
                break;
            }
        }
    }

    const auto &rounds = run.trajectory.rounds;
    const std::size_t tail_start = std::max<std::size_t>(2, rounds.size() - rounds.size() / 4);
    for (std::size_t i = tail_start; i < rounds.size(); ++i) {
        if (rounds[i].step > rounds[i - 1].step + 1e-13) {
            run.trajectory.tail_monotone = false;
        }
    }
    run.p_final = rho.ground_population(0);
    run.final_state = std::move(rho);
    return run;
}

DcRun run_dc(int n, const ThermalSpec &spec, const GateNoiseModel &noise, ErrorOrientation orientation) {
    if (n < 2 || n > kMaxDcSimQubits) {
        throw Error(ErrorKind::kSizeLimit, "gate-level DC needs 2 <= n <= 8");
    }
    const Circuit circuit = transpile(build_dc_mirror_circuit(n));
    const DensityMatrix one = thermal_qubit(spec);
    Matrix rho = one.matrix();
    for (int i = 1; i < n; ++i) {
        rho = kron(rho, one.matrix());
    }
    const DensityMatrix out = simulate_noisy_circuit(circuit, DensityMatrix::unchecked(std::move(rho)), noise, orientation);
    const std::vector<int> keep = {0};
    DcRun run;
    run.target = reduce_to_qubits(out, keep);
    run.t_eff = effective_temperature(run.target, spec.frequency);
    run.n_tg = count_cx(circuit);
    return run;
}

std::vector<TwoDesignRow> twodesign_validation(
    int n, std::span<const int> repetitions, double p_init, const GateNoiseModel &noise,
    ErrorOrientation orientation) {
    if (n < 2 || n > 6) {
        throw Error(ErrorKind::kSizeLimit, "2-design validation needs 2 <= n <= 6");
    }
    const Circuit base = transpile(build_tsac_circuit(n));
    const Eigen::Index d = Eigen::Index{1} << n;
    const DensityMatrix rho0 = thermal_product(n, population_to_polarization(p_init));
    const double q = q_param(noise.error_part, d);
    const DensityMatrix rhs = DensityMatrix::unchecked(
        q * rho0.matrix() + (1.0 - q) * Matrix::Identity(d, d) / static_cast<double>(d));

    std::map<std::pair<int, int>, KrausChannel> lambdas;
    for (const auto &loc : cnot_locations(base)) {
        const auto pair = std::pair{loc.control, loc.target};
        if (!lambdas.contains(pair)) {
            lambdas.emplace(pair, embed_two_qubit(noise.error_part, error_pair(loc.control, loc.target, orientation), n));
        }
    }

    std::vector<TwoDesignRow> out;
    for (int reps : repetitions) {
        if (reps < 0) {
            throw Error(ErrorKind::kInvalidParam, "repetitions must be non-negative");
        }
        // Prefix unitaries D_j, each including its own CX, grouped by CX pair.
        std::map<std::pair<int, int>, std::vector<Matrix>> prefixes;
        if (reps == 0) {
            for (const auto &[pair, unused] : lambdas) {
                prefixes[pair].push_back(Matrix::Identity(d, d));
            }
        } else {
            const Circuit c = repeated(base, reps);
            Matrix prefix = Matrix::Identity(d, d);
            for (const auto &g : c.gates()) {
                std::vector<int> qs = g.controls;
                qs.push_back(g.target);
                left_apply(prefix, gate_matrix(g), qs, n);
                if (g.kind == GateKind::kCX) {
                    prefixes[{g.controls.front(), g.target}].push_back(prefix);
                }
            }
        }
        double total = 0.0;
        for (const auto &[pair, ds] : prefixes) {
            const KrausChannel &lambda = lambdas.at(pair);
            Matrix lhs = Matrix::Zero(d, d);
            for (const auto &dj : ds) {
                const DensityMatrix forward = DensityMatrix::unchecked(dj * rho0.matrix() * dj.adjoint());
                const Matrix twirled = apply_channel(forward, lambda, ChannelPath::kLocal).matrix();
                lhs += dj.adjoint() * twirled * dj;
            }
            lhs /= static_cast<double>(ds.size());
            total += fidelity(DensityMatrix::unchecked(std::move(lhs)), rhs);
        }
        out.push_back({reps, total / static_cast<double>(prefixes.size())});
    }
    return out;
}

}  // namespace coolsim
