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

#include "coolsim/tsac_markov.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "coolsim/circuit.hpp"
#include "coolsim/error.hpp"
#include "coolsim/gda.hpp"

namespace coolsim {

namespace {

void check_markov_args(int n_c, double epsilon) {
    if (n_c < 1 || n_c > 20) {
        throw Error(ErrorKind::kInvalidParam, "n_c must lie in [1, 20]");
    }
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw Error(ErrorKind::kInvalidParam, "epsilon must be positive");
    }
}

void check_distribution(std::span<const double> v, Eigen::Index d) {
    if (static_cast<Eigen::Index>(v.size()) != d) {
        throw Error(ErrorKind::kInvalidInput, "probability vector has the wrong length");
    }
    double total = 0.0;
    for (double x : v) {
        if (x < -1e-12) {
            throw Error(ErrorKind::kInvalidInput, "probability vector has a negative entry");
        }
        total += x;
    }
    if (std::abs(total - 1.0) > 1e-10) {
        throw Error(ErrorKind::kInvalidInput, "probability vector is not normalized");
    }
}

}  // namespace

TransitionMatrix ideal_transition(int n_c, double epsilon) {
    check_markov_args(n_c, epsilon);
    const Eigen::Index d = Eigen::Index{1} << n_c;
    const double up = 1.0 / (1.0 + std::exp(-2.0 * epsilon));
    const double down = 1.0 / (1.0 + std::exp(2.0 * epsilon));
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
    m(0, 0) = up;
    m(1, 0) = down;
    for (Eigen::Index j = 1; j + 1 < d; ++j) {
        m(j - 1, j) = up;
        m(j + 1, j) = down;
    }
    m(d - 2, d - 1) += up;
    m(d - 1, d - 1) += down;
    return {n_c, std::move(m)};
}

TransitionMatrix noisy_transition(int n_c, double epsilon, double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw Error(ErrorKind::kInvalidParam, "eta must lie in [0, 1]");
    }
    TransitionMatrix t = ideal_transition(n_c, epsilon);
    const auto d = static_cast<double>(t.dim());
    t.m = (1.0 - eta) * t.m;
    t.m.array() += eta / d;
    return t;
}

std::vector<double> steady_state_power(const TransitionMatrix &t, double tol) {
    if (t.m.rows() != t.m.cols() || t.m.rows() < 1) {
        throw Error(ErrorKind::kInvalidInput, "transition matrix must be square");
    }
    if (t.m.minCoeff() < 0.0 || (t.m.colwise().sum().array() - 1.0).abs().maxCoeff() > 1e-12) {
        throw Error(ErrorKind::kInvalidInput, "transition matrix is not column-stochastic");
    }
    const Eigen::Index d = t.dim();
    Eigen::VectorXd v = Eigen::VectorXd::Constant(d, 1.0 / static_cast<double>(d));
    Eigen::VectorXd w(d);
    for (std::uint64_t iter = 0; iter < kPowerIterationLimit; ++iter) {
        w.noalias() = t.m * v;
        w /= w.sum();
        const double step = (w - v).lpNorm<1>();
        v.swap(w);
        if (step <= tol) {
            return {v.data(), v.data() + d};
        }
    }
    throw Error(ErrorKind::kNoConvergence, "power iteration did not reach tolerance");
}

CoolingLimit steady_state_analytic(int n_c, double epsilon, double eta) {
    check_markov_args(n_c, epsilon);
    if (!(eta >= 0.0 && eta < 1.0)) {
        throw Error(ErrorKind::kInvalidParam, "eta must lie in [0, 1)");
    }
    const Eigen::Index d = Eigen::Index{1} << n_c;
    const auto dd = static_cast<double>(d);
    CoolingLimit out;
    out.n_c = n_c;
    out.epsilon = epsilon;
    out.eta = eta;
    out.v.resize(static_cast<std::size_t>(d));

    if (eta < kEtaIdealThreshold) {
        out.lambda1 = 1.0;
        out.lambda2 = std::exp(-2.0 * epsilon);
        out.z1 = -1.0 / dd;
        out.z2 = std::expm1(-2.0 * epsilon) / std::expm1(-2.0 * dd * epsilon);
        for (Eigen::Index k = 0; k < d; ++k) {
            out.v[static_cast<std::size_t>(k)] = out.z2 * std::exp(-2.0 * epsilon * static_cast<double>(k));
        }
        return out;
    }

    const double tanh_eps = std::tanh(epsilon);
    const double one_plus_e = 2.0 / (1.0 + std::exp(-2.0 * epsilon));
    const double one_minus_e = 2.0 / (1.0 + std::exp(2.0 * epsilon));
    const double sech = 1.0 / std::cosh(epsilon);
    const double dc_c = 2.0 * eta / (1.0 - eta);
    const double b = 2.0 + dc_c;
    const double root = std::sqrt((b - 2.0 * sech) * (b + 2.0 * sech));

    // Smaller root first; the larger one through the characteristic polynomial at 1,
    // (1 + E)(1 - lambda1)(1 - lambda2) = -d_c C, which keeps lambda1 - 1 exact as eta -> 0.
    const double lambda2 = 2.0 * one_minus_e / (b + root);
    const double lambda1_m1 = dc_c / (one_plus_e * (1.0 - lambda2));
    const double log1 = std::log1p(lambda1_m1);
    const double log2 = std::log(lambda2);
    out.lambda1 = 1.0 + lambda1_m1;
    out.lambda2 = lambda2;

    // Divided through by lambda1^d_c so nothing overflows.
    const double scale = 2.0 * tanh_eps / (dd * one_plus_e);
    const double one_minus_ratio = -std::expm1(dd * (log2 - log1));
    const double coef1 = -scale * (-std::expm1(dd * log2)) / (1.0 - lambda2) / one_minus_ratio;
    const double coef2 = scale * (-std::expm1(-dd * log1)) / lambda1_m1 / one_minus_ratio;
    out.z1 = coef1 * std::exp(-dd * log1);
    out.z2 = coef2;
    for (Eigen::Index k = 0; k < d; ++k) {
        const auto kk = static_cast<double>(k);
        out.v[static_cast<std::size_t>(k)] =
            coef1 * std::exp((kk - dd) * log1) + coef2 * std::exp(kk * log2) + 1.0 / dd;
    }
    return out;
}

std::pair<double, double> perturbative_eigs(double epsilon, double eta) {
    const double shift = eta / std::tanh(epsilon);
    return {1.0 + shift, std::exp(-2.0 * epsilon) * (1.0 - shift)};
}

double target_population(std::span<const double> v) {
    if (v.size() < 2 || (v.size() & (v.size() - 1)) != 0) {
        throw Error(ErrorKind::kInvalidDims, "distribution length must be a power of two >= 2");
    }
    double total = 0.0;
    for (std::size_t k = 0; k < v.size() / 2; ++k) {
        total += v[k];
    }
    return total;
}

double target_population(const CoolingLimit &limit) {
    return target_population(limit.v);
}

std::vector<double> thermal_diagonal(int n_c, double epsilon) {
    check_markov_args(n_c, epsilon);
    const double up = polarization_to_population(epsilon);
    const double down = 1.0 / (1.0 + std::exp(2.0 * epsilon));
    const std::size_t d = std::size_t{1} << n_c;
    std::vector<double> v(d);
    for (std::size_t i = 0; i < d; ++i) {
        const int ones = std::popcount(i);
        v[i] = std::pow(up, n_c - ones) * std::pow(down, ones);
    }
    return v;
}

std::vector<double> iterate_dynamics(int n_c, double epsilon, double eta, std::span<const double> v0, int rounds) {
    if (rounds < 0) {
        throw Error(ErrorKind::kInvalidParam, "rounds must be non-negative");
    }
    const TransitionMatrix t = noisy_transition(n_c, epsilon, eta);
    check_distribution(v0, t.dim());
    Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(v0.data(), t.dim());
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(rounds) + 1);
    out.push_back(target_population(std::span<const double>(v.data(), static_cast<std::size_t>(v.size()))));
    for (int r = 0; r < rounds; ++r) {
        v = t.m * v;
        out.push_back(target_population(std::span<const double>(v.data(), static_cast<std::size_t>(v.size()))));
    }
    return out;
}

std::uint64_t tsac_cx_count(int n) {
    return count_cx(transpile(build_tsac_circuit(n)));
}

ScanResult optimal_scan(double p, double epsilon, std::span<const int> n_range, NoiseKind model) {
    if (n_range.empty()) {
        throw Error(ErrorKind::kInvalidParam, "empty qubit range");
    }
    const GateNoiseModel noise = noise_model_for_error_probability(model, p);
    ScanResult result;
    for (int n : n_range) {
        if (n < 2 || n > 10) {
            throw Error(ErrorKind::kInvalidParam, "scan range must lie in [2, 10], got " + std::to_string(n));
        }
        const std::uint64_t n_tg = tsac_cx_count(n);
        const GdaEstimate est = eta_for_model(noise, n_tg, std::uint64_t{1} << n);
        const double population = est.eta >= 1.0 ? 0.5 : target_population(steady_state_analytic(n - 1, epsilon, est.eta));
        result.rows.push_back({n, n_tg, est.eta, population});
        if (result.rows.size() == 1 || population > result.p_max ||
            (population == result.p_max && n < result.n_opt)) {
            result.p_max = population;
            result.n_opt = n;
        }
    }
    return result;
}

}  // namespace coolsim
