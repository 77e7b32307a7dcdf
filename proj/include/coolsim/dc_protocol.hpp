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

#ifndef COOLSIM_DC_PROTOCOL_HPP
#define COOLSIM_DC_PROTOCOL_HPP

#include <cstdint>
#include <vector>

#include "coolsim/gda.hpp"
#include "coolsim/linalg.hpp"

namespace coolsim {

/// CODATA 2018 exact values.
inline constexpr double kPlanck = 6.62607015e-34;     // J s
inline constexpr double kBoltzmann = 1.380649e-23;    // J / K

/// Complement pair with x < x_bar, so x always has target bit 0.
struct MirrorPair {
    std::uint64_t x = 0;
    std::uint64_t x_bar = 0;
    bool swap = false;
};

/// All 2^(n-1) pairs. A pair swaps when the weights differ and the lighter member has its target bit set.
std::vector<MirrorPair> mirror_pairs(int n);

/// Image of every basis index under the mirror permutation.
std::vector<std::uint64_t> dc_permutation(int n);
Matrix dc_unitary(int n);

/// Qubit with gap h f at temperature T.
struct ThermalSpec {
    double temperature = 0.0;  // K
    double frequency = 0.0;    // Hz

    double ground_probability() const;
    double excited_probability() const;
};

DensityMatrix thermal_qubit(const ThermalSpec &spec);

/// Target qubit after the exact mirror permutation on n thermal qubits.
DensityMatrix ideal_dc_output(int n, const ThermalSpec &spec);

struct GdaDcOutput {
    DensityMatrix state;
    GdaEstimate estimate;
};

/// (1 - eta_T) ideal + eta_T I/2 with eta_T at d = 2^n.
GdaDcOutput gda_dc_output(int n, const ThermalSpec &spec, double p, std::uint64_t n_tg);

struct EffectiveTemperature {
    double kelvin = 0.0;
    bool zero_temperature = false;
};

/// h f / (k_B ln(p0/p1)) from the diagonal of a one-qubit state.
EffectiveTemperature effective_temperature(const DensityMatrix &rho, double frequency);

}  // namespace coolsim

#endif
