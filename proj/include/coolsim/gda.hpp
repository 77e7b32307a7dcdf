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

#ifndef COOLSIM_GDA_HPP
#define COOLSIM_GDA_HPP

#include <cstdint>
#include <string_view>

#include "coolsim/channels.hpp"
#include "coolsim/linalg.hpp"

namespace coolsim {

/// kWarning once p * n_TG >= 0.1, kClamped once p * n_TG >= 1 or eta leaves [0, 1].
enum class RegimeFlag { kOk, kWarning, kClamped };

std::string_view regime_flag_name(RegimeFlag flag) noexcept;

inline constexpr double kRegimeWarning = 0.1;
inline constexpr double kRegimeClamp = 1.0;

struct GdaEstimate {
    double p = 0.0;
    std::uint64_t n_tg = 0;
    double q = 0.0;
    double eta = 0.0;
    std::uint64_t d = 2;
    RegimeFlag flag = RegimeFlag::kOk;
};

/// eta = p n_TG (1 - q).
GdaEstimate eta_general(double p, std::uint64_t n_tg, double q, std::uint64_t d);
/// 1 - q = (3 d^2 / 4)/(d^2 - 1).
GdaEstimate eta_timekeeping(double p, std::uint64_t n_tg, std::uint64_t d);
/// p = 2 chi - chi^2 and 1 - q = d^2/(d^2 - 1).
GdaEstimate eta_bitflip(double chi, std::uint64_t n_tg, std::uint64_t d);
/// Uses the model's own error part for q.
GdaEstimate eta_for_model(const GateNoiseModel &model, std::uint64_t n_tg, std::uint64_t d);

/// noisy/(1 - eta) for a traceless observable.
double mitigate_expectation(double noisy, double eta);

/// n(n-1) (2|O|/eps^2) ln(2/delta).
double twodesign_depth(int n, double o_norm, double eps, double delta);
/// (2|O|/eps^2) ln(2/delta).
double mk_samples(double o_norm, double eps, double delta);

DensityMatrix apply_gda(const DensityMatrix &rho_ideal, const GdaEstimate &est);

}  // namespace coolsim

#endif
