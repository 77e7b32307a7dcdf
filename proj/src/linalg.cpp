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

#include "coolsim/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "coolsim/error.hpp"

namespace coolsim {

namespace {

void require_square_power_of_two(const Matrix &m) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorKind::kInvalidDims, "matrix is not square");
    }
    qubit_count(m.rows());
}

// Full-space index offsets for every local basis index of `qubits`.
std::vector<std::uint64_t> local_offsets(std::span<const int> qubits, int n_qubits) {
    const std::size_t k = qubits.size();
    std::vector<std::uint64_t> offsets(std::size_t{1} << k, 0);
    for (std::size_t l = 0; l < offsets.size(); ++l) {
        std::uint64_t off = 0;
        for (std::size_t a = 0; a < k; ++a) {
            if ((l >> (k - 1 - a)) & 1u) {
                off |= std::uint64_t{1} << (n_qubits - 1 - qubits[a]);
            }
        }
        offsets[l] = off;
    }
    return offsets;
}

std::uint64_t local_mask(std::span<const int> qubits, int n_qubits) {
    std::uint64_t mask = 0;
    for (int q : qubits) {
        mask |= std::uint64_t{1} << (n_qubits - 1 - q);
    }
    return mask;
}

void check_local(const Matrix &m, const Matrix &op, std::span<const int> qubits, int n_qubits) {
    if (m.rows() != (Eigen::Index{1} << n_qubits)) {
        throw Error(ErrorKind::kInvalidDims, "state does not match qubit count");
    }
    if (op.rows() != op.cols() || op.rows() != (Eigen::Index{1} << qubits.size())) {
        throw Error(ErrorKind::kInvalidDims, "local operator does not match its support");
    }
    for (std::size_t a = 0; a < qubits.size(); ++a) {
        if (qubits[a] < 0 || qubits[a] >= n_qubits) {
            throw Error(ErrorKind::kInvalidQubits, "qubit index out of range");
        }
        for (std::size_t b = 0; b < a; ++b) {
            if (qubits[a] == qubits[b]) {
                throw Error(ErrorKind::kInvalidQubits, "repeated qubit in support");
            }
        }
    }
}

// Each column of a monomial operator has exactly one nonzero entry.
bool monomial_rows(const Matrix &op, std::vector<Eigen::Index> &rows) {
    rows.assign(static_cast<std::size_t>(op.cols()), -1);
    for (Eigen::Index c = 0; c < op.cols(); ++c) {
        for (Eigen::Index r = 0; r < op.rows(); ++r) {
            if (op(r, c) != Complex(0.0, 0.0)) {
                if (rows[c] >= 0) {
                    return false;
                }
                rows[c] = r;
            }
        }
    }
    return true;
}

}  // namespace

int qubit_count(Eigen::Index dim) {
    if (dim < 1 || (dim & (dim - 1)) != 0) {
        throw Error(ErrorKind::kInvalidDims, "dimension " + std::to_string(dim) + " is not a power of two");
    }
    int n = 0;
    while ((Eigen::Index{1} << n) < dim) {
        ++n;
    }
    return n;
}

double max_abs_diff(const Matrix &a, const Matrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorKind::kInvalidDims, "shape mismatch");
    }
    if (a.size() == 0) {
        return 0.0;
    }
    return (a - b).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix &a, double tol) {
    return a.rows() == a.cols() && max_abs_diff(a, a.adjoint()) <= tol;
}

bool is_unitary(const Matrix &u, double tol) {
    if (u.rows() != u.cols()) {
        return false;
    }
    return max_abs_diff(u.adjoint() * u, Matrix::Identity(u.rows(), u.cols())) <= tol;
}

bool equal_up_to_phase(const Matrix &a, const Matrix &b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return false;
    }
    Eigen::Index r = 0;
    Eigen::Index c = 0;
    const double peak = b.cwiseAbs().maxCoeff(&r, &c);
    if (peak == 0.0) {
        return a.cwiseAbs().maxCoeff() <= tol;
    }
    const Complex phase = a(r, c) / b(r, c);
    if (std::abs(std::abs(phase) - 1.0) > tol) {
        return false;
    }
    return max_abs_diff(a, phase * b) <= tol;
}

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

HermitianEig hermitian_eig(const Matrix &a, double tol) {
    if (a.rows() != a.cols()) {
        throw Error(ErrorKind::kInvalidInput, "hermitian_eig needs a square matrix");
    }
    if (!is_hermitian(a, tol)) {
        throw Error(ErrorKind::kInvalidInput, "matrix is not Hermitian");
    }
    const Matrix sym = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::kNoConvergence, "eigensolver failed");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

DensityMatrix::DensityMatrix(Matrix m, double tol) : m_(std::move(m)) {
    require_square_power_of_two(m_);
    n_qubits_ = qubit_count(m_.rows());
    validate(tol);
}

DensityMatrix DensityMatrix::unchecked(Matrix m) {
    require_square_power_of_two(m);
    DensityMatrix out;
    out.n_qubits_ = qubit_count(m.rows());
    out.m_ = std::move(m);
    return out;
}

DensityMatrix DensityMatrix::from_diagonal(std::span<const double> probabilities) {
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(probabilities.size()),
                            static_cast<Eigen::Index>(probabilities.size()));
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = probabilities[i];
    }
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
    const Eigen::Index d = Eigen::Index{1} << n_qubits;
    return unchecked(Matrix::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix DensityMatrix::basis_state(int n_qubits, std::uint64_t index) {
    const Eigen::Index d = Eigen::Index{1} << n_qubits;
    if (index >= static_cast<std::uint64_t>(d)) {
        throw Error(ErrorKind::kInvalidInput, "basis index out of range");
    }
    Matrix m = Matrix::Zero(d, d);
    m(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
    return unchecked(std::move(m));
}

double DensityMatrix::trace() const {
    return m_.trace().real();
}

std::vector<double> DensityMatrix::populations() const {
    std::vector<double> out(static_cast<std::size_t>(dim()));
    for (Eigen::Index i = 0; i < dim(); ++i) {
        out[static_cast<std::size_t>(i)] = m_(i, i).real();
    }
    return out;
}

double DensityMatrix::ground_population(int qubit) const {
    if (qubit < 0 || qubit >= n_qubits_) {
        throw Error(ErrorKind::kInvalidQubits, "qubit index out of range");
    }
    double total = 0.0;
    for (Eigen::Index i = 0; i < dim(); ++i) {
        if (qubit_bit(static_cast<std::uint64_t>(i), qubit, n_qubits_) == 0) {
            total += m_(i, i).real();
        }
    }
    return total;
}

bool DensityMatrix::is_valid(double tol) const {
    if (!is_hermitian(m_, tol) || std::abs(m_.trace() - Complex(1.0, 0.0)) > tol) {
        return false;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m_ + m_.adjoint()), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff() >= -tol;
}

void DensityMatrix::validate(double tol) const {
    if (!is_hermitian(m_, tol)) {
        throw Error(ErrorKind::kInvalidState, "density matrix is not Hermitian");
    }
    if (std::abs(m_.trace() - Complex(1.0, 0.0)) > tol) {
        throw Error(ErrorKind::kInvalidState, "density matrix trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m_ + m_.adjoint()), Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -tol) {
        throw Error(ErrorKind::kInvalidState, "density matrix has a negative eigenvalue");
    }
}

DensityMatrix kron(const DensityMatrix &a, const DensityMatrix &b) {
    return DensityMatrix::unchecked(kron(a.matrix(), b.matrix()));
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const int> keep, std::span<const int> dims) {
    const std::size_t k = dims.size();
    Eigen::Index total = 1;
    for (int d : dims) {
        if (d < 1) {
            throw Error(ErrorKind::kInvalidDims, "subsystem dimension must be positive");
        }
        total *= d;
    }
    if (total != rho.dim()) {
        throw Error(ErrorKind::kInvalidDims, "subsystem dims do not multiply to the state dimension");
    }
    std::vector<bool> kept(k, false);
    for (int s : keep) {
        if (s < 0 || static_cast<std::size_t>(s) >= k || kept[static_cast<std::size_t>(s)]) {
            throw Error(ErrorKind::kInvalidDims, "invalid kept subsystem");
        }
        kept[static_cast<std::size_t>(s)] = true;
    }

    // Split every full index into (kept part, traced part), first subsystem most significant.
    const auto d = static_cast<std::size_t>(total);
    std::vector<Eigen::Index> kept_index(d);
    std::vector<Eigen::Index> traced_index(d);
    Eigen::Index kept_dim = 1;
    for (std::size_t s = 0; s < k; ++s) {
        if (kept[s]) {
            kept_dim *= dims[s];
        }
    }
    for (std::size_t i = 0; i < d; ++i) {
        std::size_t rest = i;
        Eigen::Index kp = 0;
        Eigen::Index kstride = 1;
        Eigen::Index tp = 0;
        Eigen::Index tstride = 1;
        for (std::size_t s = k; s-- > 0;) {
            const auto digit = static_cast<Eigen::Index>(rest % static_cast<std::size_t>(dims[s]));
            rest /= static_cast<std::size_t>(dims[s]);
            if (kept[s]) {
                kp += digit * kstride;
                kstride *= dims[s];
            } else {
                tp += digit * tstride;
                tstride *= dims[s];
            }
        }
        kept_index[i] = kp;
        traced_index[i] = tp;
    }

    Matrix out = Matrix::Zero(kept_dim, kept_dim);
    const Matrix &m = rho.matrix();
    for (std::size_t col = 0; col < d; ++col) {
        for (std::size_t row = 0; row < d; ++row) {
            if (traced_index[row] == traced_index[col]) {
                out(kept_index[row], kept_index[col]) += m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
            }
        }
    }
    return DensityMatrix::unchecked(std::move(out));
}

DensityMatrix reduce_to_qubits(const DensityMatrix &rho, std::span<const int> keep) {
    const std::vector<int> dims(static_cast<std::size_t>(rho.n_qubits()), 2);
    return partial_trace(rho, keep, dims);
}

double fidelity(const DensityMatrix &rho, const DensityMatrix &sigma, double tol) {
    if (rho.dim() != sigma.dim()) {
        throw Error(ErrorKind::kInvalidDims, "fidelity needs equal dimensions");
    }
    const auto eig_rho = hermitian_eig(rho.matrix(), tol);
    const auto eig_sigma = hermitian_eig(sigma.matrix(), tol);
    if (eig_rho.values.minCoeff() < -tol || eig_sigma.values.minCoeff() < -tol) {
        throw Error(ErrorKind::kInvalidState, "fidelity input is not positive semidefinite");
    }
    const Eigen::VectorXd root = eig_rho.values.cwiseMax(0.0).cwiseSqrt();
    const Matrix sqrt_rho = eig_rho.vectors * root.asDiagonal() * eig_rho.vectors.adjoint();
    const Matrix inner = sqrt_rho * sigma.matrix() * sqrt_rho;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (inner + inner.adjoint()), Eigen::EigenvaluesOnly);
    const double s = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    return std::clamp(s * s, 0.0, 1.0);
}

double trace_distance(const DensityMatrix &rho, const DensityMatrix &sigma) {
    if (rho.dim() != sigma.dim()) {
        throw Error(ErrorKind::kInvalidDims, "trace distance needs equal dimensions");
    }
    const Matrix diff = rho.matrix() - sigma.matrix();
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (diff + diff.adjoint()), Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

DensityMatrix apply_unitary(const DensityMatrix &rho, const Matrix &u, double tol) {
    if (u.rows() != rho.dim() || u.cols() != rho.dim()) {
        throw Error(ErrorKind::kInvalidDims, "unitary does not match the state dimension");
    }
    if (!is_unitary(u, tol)) {
        throw Error(ErrorKind::kInvalidUnitary, "operator is not unitary");
    }
    return DensityMatrix::unchecked(u * rho.matrix() * u.adjoint());
}

Matrix embed_operator(const Matrix &op, std::span<const int> qubits, int n_qubits) {
    const Eigen::Index d = Eigen::Index{1} << n_qubits;
    Matrix full = Matrix::Identity(d, d);
    left_apply(full, op, qubits, n_qubits);
    return full;
}

void left_apply(Matrix &m, const Matrix &op, std::span<const int> qubits, int n_qubits) {
    check_local(m, op, qubits, n_qubits);
    const auto offsets = local_offsets(qubits, n_qubits);
    const std::uint64_t mask = local_mask(qubits, n_qubits);
    const auto d = static_cast<std::uint64_t>(m.rows());
    const auto k = static_cast<Eigen::Index>(offsets.size());
    std::vector<Complex> in(offsets.size());
    for (Eigen::Index col = 0; col < m.cols(); ++col) {
        for (std::uint64_t base = 0; base < d; ++base) {
            if (base & mask) {
                continue;
            }
            for (Eigen::Index l = 0; l < k; ++l) {
                in[static_cast<std::size_t>(l)] = m(static_cast<Eigen::Index>(base | offsets[l]), col);
            }
            for (Eigen::Index r = 0; r < k; ++r) {
                Complex acc(0.0, 0.0);
                for (Eigen::Index l = 0; l < k; ++l) {
                    acc += op(r, l) * in[static_cast<std::size_t>(l)];
                }
                m(static_cast<Eigen::Index>(base | offsets[r]), col) = acc;
            }
        }
    }
}

std::optional<MonomialMap> monomial_map(const Matrix &op, std::span<const int> qubits, int n_qubits) {
    std::vector<Eigen::Index> rows;
    if (!monomial_rows(op, rows)) {
        return std::nullopt;
    }
    const auto offsets = local_offsets(qubits, n_qubits);
    const std::uint64_t mask = local_mask(qubits, n_qubits);
    const std::size_t d = std::size_t{1} << n_qubits;
    const std::size_t k = qubits.size();
    MonomialMap map{std::vector<Eigen::Index>(d), std::vector<Complex>(d)};
    for (std::size_t i = 0; i < d; ++i) {
        std::size_t l = 0;
        for (std::size_t a = 0; a < k; ++a) {
            l = (l << 1) | static_cast<std::size_t>(qubit_bit(i, qubits[a], n_qubits));
        }
        const Eigen::Index r = rows[l];
        if (r < 0) {
            map.target[i] = -1;
            continue;
        }
        map.target[i] = static_cast<Eigen::Index>((i & ~mask) | offsets[static_cast<std::size_t>(r)]);
        map.coeff[i] = op(r, static_cast<Eigen::Index>(l));
    }
    return map;
}

void accumulate_conjugate(Matrix &out, const Matrix &m, const MonomialMap &map, double weight) {
    // (op m op^dagger)(f(i), f(j)) = c(i) m(i, j) conj(c(j)).
    const std::size_t d = map.target.size();
    if (static_cast<std::size_t>(m.rows()) != d || out.rows() != m.rows() || out.cols() != m.cols()) {
        throw Error(ErrorKind::kInvalidDims, "monomial map does not match the matrix");
    }
    for (std::size_t j = 0; j < d; ++j) {
        const Eigen::Index tj = map.target[j];
        if (tj < 0) {
            continue;
        }
        const Complex cj = weight * std::conj(map.coeff[j]);
        const auto jj = static_cast<Eigen::Index>(j);
        for (std::size_t i = 0; i < d; ++i) {
            const Eigen::Index ti = map.target[i];
            if (ti >= 0) {
                out(ti, tj) += map.coeff[i] * m(static_cast<Eigen::Index>(i), jj) * cj;
            }
        }
    }
}

void accumulate_conjugate_local(
    Matrix &out, const Matrix &m, const Matrix &op, std::span<const int> qubits, int n_qubits, double weight) {
    check_local(m, op, qubits, n_qubits);
    if (out.rows() != m.rows() || out.cols() != m.cols()) {
        throw Error(ErrorKind::kInvalidDims, "accumulator shape mismatch");
    }
    if (const auto map = monomial_map(op, qubits, n_qubits)) {
        accumulate_conjugate(out, m, *map, weight);
        return;
    }
    Matrix both = m;
    left_apply(both, op, qubits, n_qubits);
    both.adjointInPlace();
    left_apply(both, op, qubits, n_qubits);
    both.adjointInPlace();
    out += weight * both;
}

Matrix conjugate_local(const Matrix &m, const Matrix &op, std::span<const int> qubits, int n_qubits) {
    Matrix out = Matrix::Zero(m.rows(), m.cols());
    accumulate_conjugate_local(out, m, op, qubits, n_qubits);
    return out;
}

}  // namespace coolsim
