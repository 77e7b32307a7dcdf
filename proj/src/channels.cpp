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

#include "coolsim/channels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "coolsim/error.hpp"

namespace coolsim {

namespace {

Matrix pauli(char name) {
    Matrix m(2, 2);
    switch (name) {
        case 'I':
            m << 1, 0, 0, 1;
            break;
        case 'X':
            m << 0, 1, 1, 0;
            break;
        case 'Y':
            m << 0, Complex(0, -1), Complex(0, 1), 0;
            break;
        default:
            m << 1, 0, 0, -1;
            break;
    }
    return m;
}

Matrix pauli2(char a, char b) {
    return kron(pauli(a), pauli(b));
}

// Drops zero-weight terms so the kernels skip them.
void push_weighted(std::vector<Matrix> &ops, double weight, const Matrix &op) {
    if (weight > 0.0) {
        ops.push_back(std::sqrt(weight) * op);
    }
}

const std::vector<int> kPairSupport = {0, 1};

}  // namespace

KrausChannel::KrausChannel(int n_qubits, std::vector<int> support, std::vector<Matrix> local_ops)
    : n_qubits_(n_qubits), support_(std::move(support)), ops_(std::move(local_ops)) {
    if (n_qubits_ < 1) {
        throw Error(ErrorKind::kInvalidDims, "channel needs at least one qubit");
    }
    for (std::size_t a = 0; a < support_.size(); ++a) {
        if (support_[a] < 0 || support_[a] >= n_qubits_) {
            throw Error(ErrorKind::kInvalidQubits, "channel support out of range");
        }
        for (std::size_t b = 0; b < a; ++b) {
            if (support_[a] == support_[b]) {
                throw Error(ErrorKind::kInvalidQubits, "channel support repeats a qubit");
            }
        }
    }
    const Eigen::Index local_dim = Eigen::Index{1} << support_.size();
    if (ops_.empty()) {
        throw Error(ErrorKind::kInvalidInput, "channel has no Kraus operators");
    }
    for (const auto &op : ops_) {
        if (op.rows() != local_dim || op.cols() != local_dim) {
            throw Error(ErrorKind::kInvalidDims, "Kraus operator does not match its support");
        }
    }
    if (completeness_error() > kCompletenessTolerance) {
        throw Error(ErrorKind::kInvalidInput, "Kraus operators are not trace preserving");
    }
}

KrausChannel KrausChannel::identity(int n_qubits) {
    return KrausChannel(n_qubits, {}, {Matrix::Identity(1, 1)});
}

std::vector<Matrix> KrausChannel::full_operators() const {
    std::vector<Matrix> out;
    out.reserve(ops_.size());
    for (const auto &op : ops_) {
        out.push_back(embed_operator(op, support_, n_qubits_));
    }
    return out;
}

double KrausChannel::completeness_error() const {
    const Eigen::Index local_dim = ops_.front().rows();
    Matrix sum = Matrix::Zero(local_dim, local_dim);
    for (const auto &op : ops_) {
        sum += op.adjoint() * op;
    }
    return max_abs_diff(sum, Matrix::Identity(local_dim, local_dim));
}

std::string_view noise_kind_name(NoiseKind kind) noexcept {
    switch (kind) {
        case NoiseKind::kNone:
            return "none";
        case NoiseKind::kBitflip:
            return "bitflip";
        case NoiseKind::kTimekeeping:
            return "timekeeping";
        case NoiseKind::kDepolarizing2q:
            return "depolarizing2q";
    }
    return "none";
}

NoiseKind parse_noise_kind(std::string_view name) {
    for (auto kind : {NoiseKind::kNone, NoiseKind::kBitflip, NoiseKind::kTimekeeping, NoiseKind::kDepolarizing2q}) {
        if (noise_kind_name(kind) == name) {
            return kind;
        }
    }
    throw Error(ErrorKind::kInvalidParam, "unknown noise model '" + std::string(name) + "'");
}

GateNoiseModel no_noise() {
    return GateNoiseModel{};
}

GateNoiseModel bitflip_channel(double chi) {
    if (!(chi >= 0.0 && chi <= 1.0)) {
        throw Error(ErrorKind::kInvalidParam, "bit-flip chi must lie in [0, 1]");
    }
    const double p = 2.0 * chi - chi * chi;
    std::vector<Matrix> full;
    push_weighted(full, (1.0 - chi) * (1.0 - chi), pauli2('I', 'I'));
    push_weighted(full, chi * (1.0 - chi), pauli2('X', 'I'));
    push_weighted(full, chi * (1.0 - chi), pauli2('I', 'X'));
    push_weighted(full, chi * chi, pauli2('X', 'X'));

    // chi(1 - chi)/p = (1 - chi)/(2 - chi) and chi^2/p = chi/(2 - chi) stay finite at chi = 0.
    const double single = (1.0 - chi) / (2.0 - chi);
    const double both = chi / (2.0 - chi);
    std::vector<Matrix> lambda;
    push_weighted(lambda, single, pauli2('X', 'I'));
    push_weighted(lambda, single, pauli2('I', 'X'));
    push_weighted(lambda, both, pauli2('X', 'X'));

    return GateNoiseModel{
        NoiseKind::kBitflip, chi, p, KrausChannel(2, kPairSupport, std::move(full)),
        KrausChannel(2, kPairSupport, std::move(lambda))};
}

GateNoiseModel timekeeping_channel(double p) {
    if (!(p >= 0.0 && p < 1.0)) {
        throw Error(ErrorKind::kInvalidParam, "timekeeping p must lie in [0, 1)");
    }
    Matrix p0 = Matrix::Zero(2, 2);
    p0(0, 0) = 1.0;
    Matrix p1 = Matrix::Zero(2, 2);
    p1(1, 1) = 1.0;
    const Matrix k = kron(p1, pauli('X')) + kron(p0, pauli('I'));
    std::vector<Matrix> full;
    push_weighted(full, 1.0 - p, pauli2('I', 'I'));
    push_weighted(full, p, k);
    return GateNoiseModel{
        NoiseKind::kTimekeeping, p, p, KrausChannel(2, kPairSupport, std::move(full)),
        KrausChannel(2, kPairSupport, {k})};
}

GateNoiseModel depolarizing2q_channel(double strength) {
    if (!(strength >= 0.0 && strength <= 16.0 / 15.0)) {
        throw Error(ErrorKind::kInvalidParam, "two-qubit depolarizing strength must lie in [0, 16/15]");
    }
    const double p = 15.0 * strength / 16.0;
    std::vector<Matrix> full;
    std::vector<Matrix> lambda;
    push_weighted(full, 1.0 - p, pauli2('I', 'I'));
    for (char a : {'I', 'X', 'Y', 'Z'}) {
        for (char b : {'I', 'X', 'Y', 'Z'}) {
            if (a == 'I' && b == 'I') {
                continue;
            }
            push_weighted(full, strength / 16.0, pauli2(a, b));
            push_weighted(lambda, 1.0 / 15.0, pauli2(a, b));
        }
    }
    return GateNoiseModel{
        NoiseKind::kDepolarizing2q, strength, p, KrausChannel(2, kPairSupport, std::move(full)),
        KrausChannel(2, kPairSupport, std::move(lambda))};
}

GateNoiseModel make_noise_model(NoiseKind kind, double parameter) {
    switch (kind) {
        case NoiseKind::kNone:
            return no_noise();
        case NoiseKind::kBitflip:
            return bitflip_channel(parameter);
        case NoiseKind::kTimekeeping:
            return timekeeping_channel(parameter);
        case NoiseKind::kDepolarizing2q:
            return depolarizing2q_channel(parameter);
    }
    return no_noise();
}

GateNoiseModel noise_model_for_error_probability(NoiseKind kind, double p) {
    switch (kind) {
        case NoiseKind::kBitflip:
            if (!(p >= 0.0 && p <= 1.0)) {
                throw Error(ErrorKind::kInvalidParam, "p must lie in [0, 1]");
            }
            return bitflip_channel(1.0 - std::sqrt(1.0 - p));
        case NoiseKind::kDepolarizing2q:
            return depolarizing2q_channel(16.0 * p / 15.0);
        default:
            return make_noise_model(kind, p);
    }
}

double superop_trace(const KrausChannel &lambda) {
    // Tr(K (x) I_m) = m Tr(K).
    const double spectators = std::ldexp(1.0, lambda.n_qubits() - static_cast<int>(lambda.support().size()));
    double total = 0.0;
    for (const auto &op : lambda.local_operators()) {
        total += std::norm(op.trace() * spectators);
    }
    return total;
}

double q_param(const KrausChannel &lambda, Eigen::Index d) {
    if (d < 2) {
        throw Error(ErrorKind::kInvalidParam, "q needs d >= 2");
    }
    const int n = qubit_count(d);
    if (n < lambda.n_qubits()) {
        throw Error(ErrorKind::kInvalidDims, "d is smaller than the channel dimension");
    }
    const double pad = std::ldexp(1.0, n - lambda.n_qubits());
    const double dd = static_cast<double>(d);
    return (superop_trace(lambda) * pad * pad - 1.0) / (dd * dd - 1.0);
}

KrausChannel embed_two_qubit(const KrausChannel &two_qubit, std::pair<int, int> pair, int n_qubits) {
    if (two_qubit.n_qubits() != 2) {
        throw Error(ErrorKind::kInvalidDims, "expected a two-qubit channel");
    }
    const auto [a, b] = pair;
    if (a == b || a < 0 || b < 0 || a >= n_qubits || b >= n_qubits) {
        throw Error(ErrorKind::kInvalidQubits, "invalid qubit pair");
    }
    if (two_qubit.support().size() != 2) {
        return KrausChannel::identity(n_qubits);
    }
    // Local support entries name which of (a, b) each tensor factor lands on.
    std::vector<int> support;
    for (int s : two_qubit.support()) {
        support.push_back(s == 0 ? a : b);
    }
    return KrausChannel(n_qubits, std::move(support), two_qubit.local_operators());
}

KrausChannel embed_two_qubit(const GateNoiseModel &model, std::pair<int, int> pair, int n_qubits) {
    return embed_two_qubit(model.full, pair, n_qubits);
}

DensityMatrix apply_channel(const DensityMatrix &rho, const KrausChannel &ch, ChannelPath path) {
    if (rho.n_qubits() != ch.n_qubits()) {
        throw Error(ErrorKind::kInvalidDims, "channel and state have different qubit counts");
    }
    if (path == ChannelPath::kAuto) {
        path = ch.n_qubits() <= 6 ? ChannelPath::kFullSpace : ChannelPath::kLocal;
    }
    Matrix out = Matrix::Zero(rho.dim(), rho.dim());
    if (path == ChannelPath::kFullSpace) {
        for (const auto &k : ch.full_operators()) {
            out += k * rho.matrix() * k.adjoint();
        }
    } else {
        for (const auto &k : ch.local_operators()) {
            accumulate_conjugate_local(out, rho.matrix(), k, ch.support(), ch.n_qubits());
        }
    }
    return DensityMatrix::unchecked(std::move(out));
}

DensityMatrix depolarize(const DensityMatrix &rho, double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw Error(ErrorKind::kInvalidParam, "eta must lie in [0, 1]");
    }
    Matrix out = (1.0 - eta) * rho.matrix();
    out.diagonal().array() += eta / static_cast<double>(rho.dim());
    return DensityMatrix::unchecked(std::move(out));
}

double polarization_to_population(double epsilon) {
    return 1.0 / (1.0 + std::exp(-2.0 * epsilon));
}

double population_to_polarization(double ground_population) {
    if (!(ground_population > 0.5 && ground_population < 1.0)) {
        throw Error(ErrorKind::kInvalidParam, "ground population must lie in (1/2, 1)");
    }
    return 0.5 * std::log(ground_population / (1.0 - ground_population));
}

DensityMatrix thermal_state(double epsilon) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw Error(ErrorKind::kInvalidParam, "polarization epsilon must be positive");
    }
    const double ground = polarization_to_population(epsilon);
    const double excited = 1.0 / (1.0 + std::exp(2.0 * epsilon));
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = ground;
    m(1, 1) = excited;
    return DensityMatrix::unchecked(std::move(m));
}

DensityMatrix thermal_product(int n_qubits, double epsilon) {
    if (n_qubits < 1) {
        throw Error(ErrorKind::kInvalidDims, "need at least one qubit");
    }
    const DensityMatrix one = thermal_state(epsilon);
    Matrix m = one.matrix();
    for (int i = 1; i < n_qubits; ++i) {
        m = kron(m, one.matrix());
    }
    return DensityMatrix::unchecked(std::move(m));
}

DensityMatrix reset_channel(const DensityMatrix &rho, double epsilon) {
    if (rho.n_qubits() < 2) {
        throw Error(ErrorKind::kInvalidDims, "reset needs at least two qubits");
    }
    const DensityMatrix fresh = thermal_state(epsilon);
    const Eigen::Index half = rho.dim() / 2;
    const Matrix &m = rho.matrix();
    Matrix out = Matrix::Zero(rho.dim(), rho.dim());
    for (Eigen::Index j = 0; j < half; ++j) {
        for (Eigen::Index i = 0; i < half; ++i) {
            const Complex reduced = m(2 * i, 2 * j) + m(2 * i + 1, 2 * j + 1);
            out(2 * i, 2 * j) = reduced * fresh.matrix()(0, 0);
            out(2 * i + 1, 2 * j + 1) = reduced * fresh.matrix()(1, 1);
        }
    }
    return DensityMatrix::unchecked(std::move(out));
}

}  // namespace coolsim
