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

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "coolsim/channels.hpp"
#include "coolsim/circuit.hpp"
#include "coolsim/dc_protocol.hpp"
#include "coolsim/densitysim.hpp"
#include "coolsim/error.hpp"
#include "coolsim/gda.hpp"
#include "coolsim/tsac_markov.hpp"

using namespace coolsim;

namespace {

const double kEps85 = 0.5 * std::log(17.0 / 3.0);

DensityMatrix random_state(std::mt19937_64 &rng, Eigen::Index d) {
    std::normal_distribution<double> g;
    Matrix a(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) a(i, j) = Complex(g(rng), g(rng));
    Matrix rho = a * a.adjoint();
    rho /= rho.trace();
    return DensityMatrix(rho);
}

std::vector<int> range(int a, int b) {
    std::vector<int> out;
    for (int i = a; i <= b; ++i) out.push_back(i);
    return out;
}

// diagonal of the computational register (reset qubit traced out)
std::vector<double> comp_diagonal(const DensityMatrix &rho) {
    const int n = rho.n_qubits();
    return reduce_to_qubits(rho, range(0, n - 2)).populations();
}

}  // namespace

TEST_CASE("noiseless simulation is unitary conjugation") {
    std::mt19937_64 rng(31);
    for (int n = 2; n <= 6; ++n) {
        DensityMatrix rho = random_state(rng, Eigen::Index{1} << n);
        for (const Circuit &logical : {build_tsac_circuit(n), build_dc_mirror_circuit(n)}) {
            Circuit c = transpile(logical);
            DensityMatrix out = simulate_noisy_circuit(c, rho, no_noise());
            DensityMatrix ref = apply_unitary(rho, circuit_unitary(logical));
            CHECK(max_abs_diff(out.matrix(), ref.matrix()) < 1e-10);
        }
    }
}

TEST_CASE("single noisy CX") {
    const double p = 0.1;
    Circuit c(2);
    c.append(Gate::cx(0, 1));
    DensityMatrix in = DensityMatrix::basis_state(2, 0b10);

    auto aligned = simulate_noisy_circuit(c, in, timekeeping_channel(p), ErrorOrientation::kGateAligned).populations();
    CHECK(aligned[0b11] == doctest::Approx(1 - p));
    CHECK(aligned[0b10] == doctest::Approx(p));

    // reversed: the error conditions on the target and flips the control
    auto reversed = simulate_noisy_circuit(c, in, timekeeping_channel(p), ErrorOrientation::kReversed).populations();
    CHECK(reversed[0b11] == doctest::Approx(1 - p));
    CHECK(reversed[0b01] == doctest::Approx(p));

    CHECK(error_pair(0, 1, ErrorOrientation::kGateAligned) == std::pair{0, 1});
    CHECK(error_pair(0, 1, ErrorOrientation::kReversed) == std::pair{1, 0});
}

TEST_CASE("noisy simulation matches a full-space Kraus reference") {
    std::mt19937_64 rng(17);
    const int n = 3;
    Circuit c = transpile(build_tsac_circuit(n));
    DensityMatrix rho = random_state(rng, 8);
    for (auto o : {ErrorOrientation::kReversed, ErrorOrientation::kGateAligned}) {
        for (const auto &model : {timekeeping_channel(0.05), bitflip_channel(0.03), depolarizing2q_channel(0.1)}) {
            DensityMatrix ref = rho;
            for (const auto &g : c.gates()) {
                Circuit one(n);
                one.append(g);
                ref = apply_unitary(ref, circuit_unitary(one));
                if (g.kind == GateKind::kCX) {
                    auto ch = embed_two_qubit(model.full, error_pair(g.controls[0], g.target, o), n);
                    ref = apply_channel(ref, ch, ChannelPath::kFullSpace);
                }
            }
            DensityMatrix out = simulate_noisy_circuit(c, rho, model, o);
            CHECK(max_abs_diff(out.matrix(), ref.matrix()) < 1e-10);
            CHECK(std::abs(out.trace() - 1.0) < 1e-10);
        }
    }
}

TEST_CASE("simulation rejects untranspiled circuits") {
    CHECK_THROWS_AS(simulate_noisy_circuit(build_tsac_circuit(3), DensityMatrix::maximally_mixed(3), no_noise()), Error);
    CHECK_THROWS_AS(
        simulate_noisy_circuit(transpile(build_tsac_circuit(3)), DensityMatrix::maximally_mixed(2), no_noise()), Error);
}

TEST_CASE("tsac rounds against the Markov model") {
    // one noiseless round from the thermal product
    const int n = 2;
    Circuit c = transpile(build_tsac_circuit(n));
    DensityMatrix rho = thermal_product(n, kEps85);
    auto next = comp_diagonal(tsac_round(rho, c, no_noise(), kEps85));
    auto v0 = thermal_diagonal(1, kEps85);
    Eigen::VectorXd expect = ideal_transition(1, kEps85).m * Eigen::Map<Eigen::VectorXd>(v0.data(), 2);
    CHECK(std::abs(next[0] - expect(0)) < 1e-12);

    // steady state is a fixed point of the noiseless round
    for (int m = 3; m <= 4; ++m) {
        auto ss = steady_state_analytic(m - 1, kEps85, 0.0).v;
        DensityMatrix state = kron(DensityMatrix::from_diagonal(ss), thermal_state(kEps85));
        DensityMatrix out = tsac_round(state, transpile(build_tsac_circuit(m)), no_noise(), kEps85);
        auto d = comp_diagonal(out);
        for (std::size_t k = 0; k < ss.size(); ++k) CHECK(std::abs(d[k] - ss[k]) < 1e-10);
    }
}

TEST_CASE("exact global depolarizing round equals the noisy transition") {
    std::mt19937_64 rng(5);
    for (int n = 2; n <= 4; ++n) {
        const Matrix u = tsac_compression_unitary(n);
        for (double eta : {0.0, 1e-3, 0.2}) {
            DensityMatrix rho = random_state(rng, Eigen::Index{1} << n);
            auto v = comp_diagonal(rho);
            DensityMatrix out = depolarize(apply_unitary(reset_channel(rho, kEps85), u), eta);
            auto got = comp_diagonal(out);
            Eigen::VectorXd expect = noisy_transition(n - 1, kEps85, eta).m *
                                     Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
            for (std::size_t k = 0; k < got.size(); ++k) {
                CHECK(std::abs(got[k] - expect(static_cast<Eigen::Index>(k))) < 1e-12);
            }
        }
    }
}

TEST_CASE("run_tsac noiseless reaches the ideal limit") {
    SimConfig cfg;
    cfg.n = 3;
    cfg.epsilon = kEps85;
    cfg.validate_rounds = true;
    auto run = run_tsac(cfg);
    const double z20 = (1 - std::exp(-2 * kEps85)) / (1 - std::exp(-8 * kEps85));
    CHECK(run.converged);
    CHECK(std::abs(run.p_final - z20 * (1 + std::exp(-2 * kEps85))) < 1e-8);
    CHECK(run.trajectory.rounds.front().round == 0);
    CHECK(run.trajectory.rounds.front().population == doctest::Approx(0.85));
    for (const auto &r : run.trajectory.rounds) {
        CHECK(r.population >= 0.0);
        CHECK(r.population <= 1.0);
    }
    CHECK(run.final_state.is_valid());
}

TEST_CASE("run_tsac follows the GDA model (gate-aligned errors)") {
    for (int n : {3, 4}) {
        for (double p : {1e-4, 1e-3}) {
            SimConfig cfg;
            cfg.n = n;
            cfg.epsilon = kEps85;
            cfg.noise = timekeeping_channel(p);
            cfg.orientation = ErrorOrientation::kGateAligned;
            auto run = run_tsac(cfg);
            const double eta = eta_timekeeping(p, tsac_cx_count(n), std::uint64_t{1} << n).eta;
            const double model = target_population(steady_state_analytic(n - 1, kEps85, eta));
            CHECK(run.converged);
            CHECK(std::abs(run.p_final - model) <= 0.02);
        }
    }
}

TEST_CASE("run_tsac degrades monotonically with p") {
    for (auto o : {ErrorOrientation::kReversed, ErrorOrientation::kGateAligned}) {
        double prev = 1.0;
        for (double p : {0.0, 1e-4, 1e-3, 1e-2}) {
            SimConfig cfg;
            cfg.n = 3;
            cfg.epsilon = kEps85;
            cfg.noise = timekeeping_channel(p);
            cfg.orientation = o;
            const double pf = run_tsac(cfg).p_final;
            CHECK(pf <= prev + 1e-12);
            prev = pf;
        }
    }
}

TEST_CASE("run_tsac trajectory shape at n=6, p=1e-5") {
    SimConfig cfg;
    cfg.n = 6;
    cfg.epsilon = kEps85;
    cfg.noise = timekeeping_channel(1e-5);
    cfg.max_rounds = 60;
    cfg.fixed_rounds = true;
    auto run = run_tsac(cfg);
    const auto &r = run.trajectory.rounds;
    REQUIRE(r.size() == 61);
    CHECK(r[10].population > r[0].population);
    CHECK(std::abs(r[60].population - r[59].population) < 1e-3);
    const double ideal = target_population(steady_state_analytic(5, kEps85, 0.0));
    CHECK(r.back().population < ideal);
}

TEST_CASE("run_tsac config validation") {
    SimConfig cfg;
    cfg.epsilon = kEps85;
    cfg.n = 11;
    CHECK_THROWS_AS(run_tsac(cfg), Error);
    cfg.n = 3;
    cfg.max_rounds = 0;
    CHECK_THROWS_AS(run_tsac(cfg), Error);
    cfg.max_rounds = 10;
    cfg.conv_tol = 0.0;
    CHECK_THROWS_AS(run_tsac(cfg), Error);
}

TEST_CASE("run_dc") {
    ThermalSpec spec{0.163, 1e10};
    auto three = run_dc(3, spec, no_noise());
    const double p0 = spec.ground_probability();
    CHECK(three.target.populations()[0] == doctest::Approx(p0 * p0 * (3 - 2 * p0)).epsilon(1e-12));
    CHECK(three.n_tg == count_cx(transpile(build_dc_mirror_circuit(3))));

    auto two = run_dc(2, spec, timekeeping_channel(1e-3));
    CHECK(two.n_tg == 0);
    CHECK(two.t_eff.kelvin == doctest::Approx(0.163).epsilon(1e-9));

    for (int n = 2; n <= 5; ++n) {
        auto ideal = ideal_dc_output(n, spec);
        CHECK(max_abs_diff(run_dc(n, spec, no_noise()).target.matrix(), ideal.matrix()) < 1e-12);
    }
    CHECK_THROWS_AS(run_dc(9, spec, no_noise()), Error);
}

TEST_CASE("twodesign validation") {
    const auto reps = range(0, 2);
    auto noiseless = twodesign_validation(3, reps, 0.8, no_noise());
    for (const auto &row : noiseless) CHECK(row.fidelity == doctest::Approx(1.0).epsilon(1e-10));

    auto rows = twodesign_validation(3, reps, 0.8, timekeeping_channel(1e-3));
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].repetitions == 0);
    CHECK(std::abs(rows[0].fidelity - 0.82) <= 0.03);
    CHECK(rows[1].fidelity > rows[0].fidelity);
    CHECK(rows[2].fidelity > rows[1].fidelity);
    for (const auto &row : rows) {
        CHECK(row.fidelity > 0.0);
        CHECK(row.fidelity <= 1.0 + 1e-12);
    }
    CHECK_THROWS_AS(twodesign_validation(7, reps, 0.8, no_noise()), Error);
}
