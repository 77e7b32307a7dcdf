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

#ifndef COOLSIM_TSAC_MARKOV_HPP
#define COOLSIM_TSAC_MARKOV_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "coolsim/channels.hpp"

namespace coolsim {

inline constexpr double kEtaIdealThreshold = 1e-12;
inline constexpr std::uint64_t kPowerIterationLimit = 10'000'000;

/// Column-stochastic round-to-round map on the computational-register diagonal.
struct TransitionMatrix {
    int n_c = 1;
    Eigen::MatrixXd m;

    Eigen::Index dim() const noexcept {
        return m.rows();
    }
};

TransitionMatrix ideal_transition(int n_c, double epsilon);
/// (1 - eta) T + eta/d_c.
TransitionMatrix noisy_transition(int n_c, double epsilon, double eta);

/// Power iteration from the uniform vector until |T v - v|_1 <= tol.
std::vector<double> steady_state_power(const TransitionMatrix &t, double tol);

struct CoolingLimit {
    int n_c = 1;
    double epsilon = 0.0;
    double eta = 0.0;
    double lambda1 = 1.0;
    double lambda2 = 0.0;
    double z1 = 0.0;
    double z2 = 0.0;
    std::vector<double> v;
};

/// Closed-form steady state v_k = z1 lambda1^(k-1) + z2 lambda2^(k-1) + 1/d_c.
CoolingLimit steady_state_analytic(int n_c, double epsilon, double eta);

/// First order in eta: (1 + eta/tanh eps, e^{-2 eps}(1 - eta/tanh eps)).
std::pair<double, double> perturbative_eigs(double epsilon, double eta);

/// Ground population of the most significant qubit.
double target_population(std::span<const double> v);
double target_population(const CoolingLimit &limit);

/// Thermal product diagonal at polarization epsilon.
std::vector<double> thermal_diagonal(int n_c, double epsilon);

/// Target populations after 0..rounds applications of the noisy map.
std::vector<double> iterate_dynamics(int n_c, double epsilon, double eta, std::span<const double> v0, int rounds);

struct ScanRow {
    int n = 0;
    std::uint64_t n_tg = 0;
    double eta = 0.0;
    double population = 0.0;
};

struct ScanResult {
    int n_opt = 0;
    double p_max = 0.0;
    std::vector<ScanRow> rows;
};

/// CX count of the transpiled TSAC circuit on n qubits.
std::uint64_t tsac_cx_count(int n);

/// Steady-state target population per n (n_c = n - 1), argmax with the smallest n on ties.
ScanResult optimal_scan(double p, double epsilon, std::span<const int> n_range, NoiseKind model);

}  // namespace coolsim

#endif
