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

#ifndef COOLSIM_CHANNELS_HPP
#define COOLSIM_CHANNELS_HPP

#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "coolsim/linalg.hpp"

namespace coolsim {

inline constexpr double kCompletenessTolerance = 1e-10;

/// Completely positive trace-preserving map stored as local Kraus operators on `support`.
class KrausChannel {
   public:
    KrausChannel(int n_qubits, std::vector<int> support, std::vector<Matrix> local_ops);

    static KrausChannel identity(int n_qubits);

    int n_qubits() const noexcept {
        return n_qubits_;
    }
    std::span<const int> support() const noexcept {
        return support_;
    }
    const std::vector<Matrix> &local_operators() const noexcept {
        return ops_;
    }
    std::size_t size() const noexcept {
        return ops_.size();
    }

    /// Kraus operators embedded in the full 2^n space.
    std::vector<Matrix> full_operators() const;

    /// max |sum K^dagger K - I| over the local operators.
    double completeness_error() const;

   private:
    int n_qubits_;
    std::vector<int> support_;
    std::vector<Matrix> ops_;
};

enum class NoiseKind { kNone, kBitflip, kTimekeeping, kDepolarizing2q };

std::string_view noise_kind_name(NoiseKind kind) noexcept;
NoiseKind parse_noise_kind(std::string_view name);

/// Two-qubit gate noise E = (1 - p) id + p Lambda.
struct GateNoiseModel {
    NoiseKind kind = NoiseKind::kNone;
    double parameter = 0.0;
    double p = 0.0;
    KrausChannel full = KrausChannel::identity(2);
    KrausChannel error_part = KrausChannel::identity(2);
};

GateNoiseModel no_noise();
GateNoiseModel bitflip_channel(double chi);
GateNoiseModel timekeeping_channel(double p);
/// rho -> (1 - s) rho + s I/4 on the pair, so p = 15 s / 16.
GateNoiseModel depolarizing2q_channel(double strength);
GateNoiseModel make_noise_model(NoiseKind kind, double parameter);
/// Model whose error probability p equals `p` (chi = 1 - sqrt(1 - p) for bit flips).
GateNoiseModel noise_model_for_error_probability(NoiseKind kind, double p);

/// sum_i |Tr K_i|^2 over the full-space Kraus operators.
double superop_trace(const KrausChannel &lambda);

/// (Tr Lambda - 1)/(d^2 - 1), with Lambda padded by identity spectators up to dimension d.
double q_param(const KrausChannel &lambda, Eigen::Index d);

KrausChannel embed_two_qubit(const KrausChannel &two_qubit, std::pair<int, int> pair, int n_qubits);
KrausChannel embed_two_qubit(const GateNoiseModel &model, std::pair<int, int> pair, int n_qubits);

enum class ChannelPath { kAuto, kFullSpace, kLocal };

/// Full-space Kraus sum up to 6 qubits, local contraction above (kAuto).
DensityMatrix apply_channel(const DensityMatrix &rho, const KrausChannel &ch, ChannelPath path = ChannelPath::kAuto);

DensityMatrix depolarize(const DensityMatrix &rho, double eta);

/// diag(e^eps, e^-eps)/(e^eps + e^-eps).
DensityMatrix thermal_state(double epsilon);
DensityMatrix thermal_product(int n_qubits, double epsilon);

/// Ground population e^eps/(e^eps + e^-eps).
double polarization_to_population(double epsilon);
/// Inverse of polarization_to_population.
double population_to_polarization(double ground_population);

/// Traces out the last qubit and replaces it by a fresh thermal qubit.
DensityMatrix reset_channel(const DensityMatrix &rho, double epsilon);

}  // namespace coolsim

#endif
