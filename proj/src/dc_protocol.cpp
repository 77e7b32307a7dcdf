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

#include "coolsim/dc_protocol.hpp"

#include <bit>
#include <cmath>

#include "coolsim/error.hpp"

namespace coolsim {

namespace {

void check_spec(const ThermalSpec &spec) {
    if (!(spec.temperature > 0.0) || !(spec.frequency > 0.0)) {
        throw Error(ErrorKind::kInvalidParam, "temperature and frequency must be positive");
    }
}

double boltzmann_exponent(const ThermalSpec &spec) {
    check_spec(spec);
    return kPlanck * spec.frequency / (kBoltzmann * spec.temperature);
}

}  // namespace

std::vector<MirrorPair> mirror_pairs(int n) {
    if (n < 2 || n > 30) {
        throw Error(ErrorKind::kInvalidParam, "mirror pairs need 2 <= n <= 30");
    }
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    const std::uint64_t half = std::uint64_t{1} << (n - 1);
    std::vector<MirrorPair> out;
    out.reserve(half);
    for (std::uint64_t x = 0; x < half; ++x) {
        const std::uint64_t x_bar = x ^ full;
        const int wx = std::popcount(x);
        const int wb = n - wx;
        // x has target bit 0, so only x_bar can be a lighter member with the target excited.
        out.push_back({x, x_bar, wb < wx});
    }
    return out;
}

std::vector<std::uint64_t> dc_permutation(int n) {
    std::vector<std::uint64_t> perm(std::size_t{1} << n);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        perm[i] = i;
    }
    for (const auto &pair : mirror_pairs(n)) {
        if (pair.swap) {
            perm[pair.x] = pair.x_bar;
            perm[pair.x_bar] = pair.x;
        }
    }
    return perm;
}

Matrix dc_unitary(int n) {
    if (n > 12) {
        throw Error(ErrorKind::kSizeLimit, "dc_unitary is capped at 12 qubits");
    }
    const auto perm = dc_permutation(n);
    const auto d = static_cast<Eigen::Index>(perm.size());
    Matrix u = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        u(static_cast<Eigen::Index>(perm[static_cast<std::size_t>(i)]), i) = 1.0;
    }
    return u;
}

double ThermalSpec::ground_probability() const {
    return 1.0 / (1.0 + std::exp(-boltzmann_exponent(*this)));
}

double ThermalSpec::excited_probability() const {
    return 1.0 / (1.0 + std::exp(boltzmann_exponent(*this)));
}

DensityMatrix thermal_qubit(const ThermalSpec &spec) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = spec.ground_probability();
    m(1, 1) = spec.excited_probability();
    return DensityMatrix::unchecked(std::move(m));
}

DensityMatrix ideal_dc_output(int n, const ThermalSpec &spec) {
    if (n < 2 || n > 12) {
        throw Error(ErrorKind::kSizeLimit, "ideal DC output needs 2 <= n <= 12");
    }
    const double p0 = spec.ground_probability();
    const double p1 = spec.excited_probability();
    const auto perm = dc_permutation(n);
    const std::uint64_t target_mask = std::uint64_t{1} << (n - 1);
    double ground = 0.0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if ((perm[i] & target_mask) == 0) {
            const int ones = std::popcount(i);
            ground += std::pow(p0, n - ones) * std::pow(p1, ones);
        }
    }
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = ground;
    m(1, 1) = 1.0 - ground;
    return DensityMatrix::unchecked(std::move(m));
}

GdaDcOutput gda_dc_output(int n, const ThermalSpec &spec, double p, std::uint64_t n_tg) {
    const DensityMatrix ideal = ideal_dc_output(n, spec);
    const GdaEstimate est = eta_timekeeping(p, n_tg, std::uint64_t{1} << n);
    return {depolarize(ideal, est.eta), est};
}

EffectiveTemperature effective_temperature(const DensityMatrix &rho, double frequency) {
    if (rho.n_qubits() != 1) {
        throw Error(ErrorKind::kInvalidDims, "effective temperature needs a one-qubit state");
    }
    if (!(frequency > 0.0)) {
        throw Error(ErrorKind::kInvalidParam, "frequency must be positive");
    }
    const double p0 = rho.matrix()(0, 0).real();
    const double p1 = rho.matrix()(1, 1).real();
    if (p1 <= 0.0) {
        return {0.0, true};
    }
    if (p1 >= p0) {
        throw Error(ErrorKind::kNegativeTemperature, "excited population is not below the ground population");
    }
    return {kPlanck * frequency / (kBoltzmann * std::log(p0 / p1)), false};
}

}  // namespace coolsim
