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

#include <bit>
#include <cmath>
#include <vector>

#include "coolsim/dc_protocol.hpp"
#include "coolsim/error.hpp"
#include "coolsim/gda.hpp"

using namespace coolsim;

namespace {

// Ground population of qubit 0 after the mirror rule, by enumerating basis states.
double brute_force_dc(int n, double p0) {
    const std::uint64_t d = std::uint64_t{1} << n;
    const std::uint64_t full = d - 1;
    const std::uint64_t msb = d >> 1;
    double ground = 0.0;
    for (std::uint64_t i = 0; i < d; ++i) {
        const int w = std::popcount(i);
        const double prob = std::pow(p0, n - w) * std::pow(1 - p0, w);
        std::uint64_t out = i;
        const std::uint64_t mirror = i ^ full;
        const int wm = n - w;
        // lighter state with target excited <-> its complement
        if ((w < wm && (i & msb)) || (wm < w && (mirror & msb))) out = mirror;
        if (!(out & msb)) ground += prob;
    }
    return ground;
}

double boltzmann_p0(double t, double f) {
    return 1.0 / (1.0 + std::exp(-kPlanck * f / (kBoltzmann * t)));
}

}  // namespace

TEST_CASE("mirror pairs") {
    auto p2 = mirror_pairs(2);
    REQUIRE(p2.size() == 2);
    for (const auto &p : p2) CHECK_FALSE(p.swap);

    auto p3 = mirror_pairs(3);
    int swaps = 0;
    for (const auto &p : p3) {
        if (p.swap) {
            ++swaps;
            CHECK(p.x == 0b011);
            CHECK(p.x_bar == 0b100);
        }
    }
    CHECK(swaps == 1);
    for (int n = 2; n <= 6; ++n) {
        auto pairs = mirror_pairs(n);
        CHECK(pairs.size() == (std::size_t{1} << (n - 1)));
        for (const auto &p : pairs) {
            CHECK(p.x < p.x_bar);
            CHECK(std::popcount(p.x) + std::popcount(p.x_bar) == n);
        }
    }
}

TEST_CASE("dc unitary") {
    CHECK(max_abs_diff(dc_unitary(2), Matrix::Identity(4, 4)) == 0.0);
    Matrix u3 = dc_unitary(3);
    CHECK(u3(3, 4) == Complex(1.0));
    CHECK(u3(4, 3) == Complex(1.0));
    CHECK(u3(3, 3) == Complex(0.0));
    for (int n = 2; n <= 7; ++n) {
        Matrix u = dc_unitary(n);
        const Eigen::Index d = u.rows();
        CHECK(max_abs_diff(u * u, Matrix::Identity(d, d)) == 0.0);
        for (Eigen::Index i = 0; i < d; ++i) {
            CHECK(u.row(i).cwiseAbs().sum() == doctest::Approx(1.0));
            CHECK(u.col(i).cwiseAbs().sum() == doctest::Approx(1.0));
        }
    }
    CHECK_THROWS_AS(dc_unitary(13), Error);
}

TEST_CASE("thermal qubit") {
    auto hot = thermal_qubit({1e6, 1e10}).populations();
    CHECK(std::abs(hot[0] - 0.5) < 1e-6);
    auto cold = thermal_qubit({0.163, 1e10}).populations();
    CHECK(std::abs(cold[0] - 0.950) < 0.003);
    CHECK(cold[0] == doctest::Approx(boltzmann_p0(0.163, 1e10)).epsilon(1e-14));

    ThermalSpec spec{0.163, 1e10};
    CHECK(spec.excited_probability() / spec.ground_probability() ==
          doctest::Approx(std::exp(-kPlanck * 1e10 / (kBoltzmann * 0.163))).epsilon(1e-12));
    // halving T doubles the exponent
    const double x = kPlanck * 1e10 / (kBoltzmann * 0.163);
    CHECK(thermal_qubit({0.0815, 1e10}).populations()[0] == doctest::Approx(1 / (1 + std::exp(-2 * x))));

    CHECK_THROWS_AS(thermal_qubit({0.0, 1e10}), Error);
    CHECK_THROWS_AS(thermal_qubit({0.1, -1.0}), Error);
}

TEST_CASE("ideal dc output") {
    ThermalSpec spec{0.163, 1e10};
    auto in = thermal_qubit(spec);
    CHECK(max_abs_diff(ideal_dc_output(2, spec).matrix(), in.matrix()) < 1e-15);

    const double p0 = spec.ground_probability();
    auto out3 = ideal_dc_output(3, spec);
    CHECK(out3.populations()[0] == doctest::Approx(p0 * p0 * (3 - 2 * p0)).epsilon(1e-14));
    CHECK(std::abs(out3.matrix()(0, 1)) == 0.0);

    for (int n = 2; n <= 8; ++n) {
        CHECK(ideal_dc_output(n, spec).populations()[0] == doctest::Approx(brute_force_dc(n, p0)).epsilon(1e-13));
    }
    // never heats
    for (int n = 2; n <= 6; ++n) {
        for (double q : {0.6, 0.8, 0.95}) {
            const double x = std::log(q / (1 - q));
            ThermalSpec s{kPlanck * 1e10 / (kBoltzmann * x), 1e10};
            CHECK(ideal_dc_output(n, s).populations()[0] >= s.ground_probability() - 1e-15);
        }
    }
    CHECK_THROWS_AS(ideal_dc_output(1, spec), Error);
    CHECK_THROWS_AS(ideal_dc_output(13, spec), Error);
}

TEST_CASE("gda dc output") {
    ThermalSpec spec{0.163, 1e10};
    auto ideal = ideal_dc_output(4, spec);
    CHECK(max_abs_diff(gda_dc_output(4, spec, 0.0, 20).state.matrix(), ideal.matrix()) == 0.0);
    auto sat = gda_dc_output(4, spec, 0.5, 20);
    CHECK(sat.estimate.flag == RegimeFlag::kClamped);
    CHECK(max_abs_diff(sat.state.matrix(), Matrix::Identity(2, 2) / 2.0) < 1e-15);

    auto mid = gda_dc_output(3, spec, 1e-4, 10);
    const double g = mid.state.populations()[0];
    CHECK(g < ideal_dc_output(3, spec).populations()[0]);
    CHECK(g > 0.5);
    CHECK(mid.estimate.eta == doctest::Approx(eta_timekeeping(1e-4, 10, 8).eta));

    double prev = 1.0;
    for (double p : {1e-6, 1e-5, 1e-4, 1e-3}) {
        const double pg = gda_dc_output(5, spec, p, 158).state.populations()[0];
        CHECK(pg < prev);
        prev = pg;
    }
}

TEST_CASE("effective temperature") {
    const std::vector<double> d{0.95, 0.05};
    auto t = effective_temperature(DensityMatrix::from_diagonal(d), 1e10);
    CHECK(t.kelvin == doctest::Approx(0.163).epsilon(0.01));
    CHECK_FALSE(t.zero_temperature);

    for (double temp : {0.01, 0.163, 1.0, 25.0}) {
        ThermalSpec s{temp, 1e10};
        CHECK(effective_temperature(thermal_qubit(s), 1e10).kelvin == doctest::Approx(temp).epsilon(1e-9));
    }
    double prev = 0.0;
    for (double delta : {0.1, 0.01, 0.001, 1e-4}) {
        const std::vector<double> v{0.5 + delta, 0.5 - delta};
        const double k = effective_temperature(DensityMatrix::from_diagonal(v), 1e10).kelvin;
        CHECK(k > prev);
        prev = k;
    }
    ThermalSpec spec{0.163, 1e10};
    const double k3 = effective_temperature(ideal_dc_output(3, spec), 1e10).kelvin;
    CHECK(k3 > 0.097);
    CHECK(k3 < 0.098);

    const std::vector<double> pure{1.0, 0.0};
    auto zero = effective_temperature(DensityMatrix::from_diagonal(pure), 1e10);
    CHECK(zero.zero_temperature);
    CHECK(zero.kelvin == 0.0);

    const std::vector<double> inverted{0.4, 0.6};
    CHECK_THROWS_AS(effective_temperature(DensityMatrix::from_diagonal(inverted), 1e10), Error);
    const std::vector<double> equal{0.5, 0.5};
    CHECK_THROWS_AS(effective_temperature(DensityMatrix::from_diagonal(equal), 1e10), Error);
}
