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

#include "coolsim/gda.hpp"

#include <algorithm>
#include <cmath>

#include "coolsim/error.hpp"

namespace coolsim {

namespace {

void check_dimension(std::uint64_t d) {
    if (d < 2) {
        throw Error(ErrorKind::kInvalidParam, "Hilbert dimension must be at least 2");
    }
}

GdaEstimate make_estimate(double p, std::uint64_t n_tg, double q, std::uint64_t d) {
    GdaEstimate est{p, n_tg, q, p * static_cast<double>(n_tg) * (1.0 - q), d, RegimeFlag::kOk};
    const double load = p * static_cast<double>(n_tg);
    if (load >= kRegimeClamp || est.eta > 1.0 || est.eta < 0.0) {
        est.flag = RegimeFlag::kClamped;
        est.eta = std::min(std::max(est.eta, 0.0), 1.0);
    } else if (load >= kRegimeWarning) {
        est.flag = RegimeFlag::kWarning;
    }
    return est;
}

double dd_ratio(std::uint64_t d) {
    const double dd = static_cast<double>(d) * static_cast<double>(d);
    return dd / (dd - 1.0);
}

void check_bound_args(double o_norm, double eps, double delta) {
    if (!(eps > 0.0) || !(delta > 0.0 && delta < 1.0) || !(o_norm >= 0.0)) {
        throw Error(ErrorKind::kInvalidParam, "need eps > 0, 0 < delta < 1 and |O| >= 0");
    }
}

}  // namespace

std::string_view regime_flag_name(RegimeFlag flag) noexcept {
    switch (flag) {
        case RegimeFlag::kOk:
            return "ok";
        case RegimeFlag::kWarning:
            return "warning";
        case RegimeFlag::kClamped:
            return "clamped";
    }
    return "ok";
}

GdaEstimate eta_general(double p, std::uint64_t n_tg, double q, std::uint64_t d) {
    if (!(p >= 0.0 && p < 1.0)) {
        throw Error(ErrorKind::kInvalidParam, "p must lie in [0, 1)");
    }
    if (!(q <= 1.0)) {
        throw Error(ErrorKind::kInvalidParam, "q must not exceed 1");
    }
    check_dimension(d);
    return make_estimate(p, n_tg, q, d);
}

GdaEstimate eta_timekeeping(double p, std::uint64_t n_tg, std::uint64_t d) {
    if (!(p >= 0.0 && p < 1.0)) {
        throw Error(ErrorKind::kInvalidParam, "p must lie in [0, 1)");
    }
    check_dimension(d);
    const double one_minus_q = 0.75 * dd_ratio(d);
    return make_estimate(p, n_tg, 1.0 - one_minus_q, d);
}

GdaEstimate eta_bitflip(double chi, std::uint64_t n_tg, std::uint64_t d) {
    if (!(chi >= 0.0 && chi <= 1.0)) {
        throw Error(ErrorKind::kInvalidParam, "chi must lie in [0, 1]");
    }
    check_dimension(d);
    const double dd = static_cast<double>(d) * static_cast<double>(d);
    return make_estimate(2.0 * chi - chi * chi, n_tg, -1.0 / (dd - 1.0), d);
}

GdaEstimate eta_for_model(const GateNoiseModel &model, std::uint64_t n_tg, std::uint64_t d) {
    switch (model.kind) {
        case NoiseKind::kNone:
            return make_estimate(0.0, n_tg, 1.0, d);
        case NoiseKind::kTimekeeping:
            return eta_timekeeping(model.p, n_tg, d);
        case NoiseKind::kBitflip:
            return eta_bitflip(model.parameter, n_tg, d);
        case NoiseKind::kDepolarizing2q:
            check_dimension(d);
            return make_estimate(model.p, n_tg, q_param(model.error_part, static_cast<Eigen::Index>(d)), d);
    }
    return make_estimate(0.0, n_tg, 1.0, d);
}

double mitigate_expectation(double noisy, double eta) {
    if (eta >= 1.0) {
        throw Error(ErrorKind::kUnmitigable, "eta >= 1 leaves no signal to rescale");
    }
    if (!(eta >= 0.0)) {
        throw Error(ErrorKind::kInvalidParam, "eta must be non-negative");
    }
    return noisy / (1.0 - eta);
}

double mk_samples(double o_norm, double eps, double delta) {
    check_bound_args(o_norm, eps, delta);
    return 2.0 * o_norm / (eps * eps) * std::log(2.0 / delta);
}

double twodesign_depth(int n, double o_norm, double eps, double delta) {
    if (n < 1) {
        throw Error(ErrorKind::kInvalidParam, "n must be positive");
    }
    return static_cast<double>(n) * static_cast<double>(n - 1) * mk_samples(o_norm, eps, delta);
}

DensityMatrix apply_gda(const DensityMatrix &rho_ideal, const GdaEstimate &est) {
    if (static_cast<std::uint64_t>(rho_ideal.dim()) != est.d) {
        throw Error(ErrorKind::kInvalidDims, "estimate dimension does not match the state");
    }
    return depolarize(rho_ideal, est.eta);
}

}  // namespace coolsim
