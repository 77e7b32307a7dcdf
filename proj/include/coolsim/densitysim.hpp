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

#ifndef COOLSIM_DENSITYSIM_HPP
#define COOLSIM_DENSITYSIM_HPP

#include <span>
#include <string_view>
#include <vector>

#include "coolsim/channels.hpp"
#include "coolsim/circuit.hpp"
#include "coolsim/dc_protocol.hpp"
#include "coolsim/linalg.hpp"

namespace coolsim {

/// Which way the two-qubit error acts relative to its CX. The error's first tensor
/// factor sits on the CX target (kReversed) or on the CX control (kGateAligned).
enum class ErrorOrientation { kReversed, kGateAligned };

std::string_view orientation_name(ErrorOrientation o) noexcept;
ErrorOrientation parse_orientation(std::string_view name);

/// Qubit pair the error channel is embedded on for a CX(control, target).
std::pair<int, int> error_pair(int control, int target, ErrorOrientation o) noexcept;

inline constexpr int kMaxSimQubits = 10;

#ifdef NDEBUG
inline constexpr bool kValidateRoundsByDefault = false;
#else
inline constexpr bool kValidateRoundsByDefault = true;
#endif

struct SimConfig {
    int n = 3;
    GateNoiseModel noise = no_noise();
    double epsilon = 0.0;
    int max_rounds = 10000;
    double conv_tol = 1e-12;
    ErrorOrientation orientation = ErrorOrientation::kReversed;
    /// Runs exactly max_rounds rounds, ignoring conv_tol.
    bool fixed_rounds = false;
    /// Checks hermiticity, trace and positivity of the state after every round.
    bool validate_rounds = kValidateRoundsByDefault;
};

struct RoundRecord {
    int round = 0;
    double population = 0.0;
    double step = 0.0;  // trace distance to the previous round
};

struct Trajectory {
    std::vector<RoundRecord> rounds;
    /// False when a step grew over the last quarter of the run.
    bool tail_monotone = true;
};

struct TsacRun {
    Trajectory trajectory;
    double p_final = 0.0;
    bool converged = false;
    DensityMatrix final_state = DensityMatrix::maximally_mixed(1);
};

/// Each gate, then (CX only) the noise channel on that pair.
DensityMatrix simulate_noisy_circuit(
    const Circuit &c, const DensityMatrix &rho0, const GateNoiseModel &noise,
    ErrorOrientation orientation = ErrorOrientation::kReversed);

/// Reset of the last qubit, then the noisy compression circuit.
DensityMatrix tsac_round(
    const DensityMatrix &rho, const Circuit &c, const GateNoiseModel &noise, double epsilon,
    ErrorOrientation orientation = ErrorOrientation::kReversed);

/// Iterates rounds from the thermal product until the trace-distance step drops to conv_tol.
TsacRun run_tsac(const SimConfig &cfg);

struct DcRun {
    DensityMatrix target = DensityMatrix::maximally_mixed(1);
    EffectiveTemperature t_eff;
    std::uint64_t n_tg = 0;
};

inline constexpr int kMaxDcSimQubits = 8;

DcRun run_dc(
    int n, const ThermalSpec &spec, const GateNoiseModel &noise,
    ErrorOrientation orientation = ErrorOrientation::kReversed);

struct TwoDesignRow {
    int repetitions = 0;
    double fidelity = 0.0;
};

/// Mean fidelity over CX pairs between the prefix-twirled error on rho0 and q rho0 + (1 - q) I/d.
std::vector<TwoDesignRow> twodesign_validation(
    int n, std::span<const int> repetitions, double p_init, const GateNoiseModel &noise,
    ErrorOrientation orientation = ErrorOrientation::kReversed);

}  // namespace coolsim

#endif
