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

#ifndef COOLSIM_LINALG_HPP
#define COOLSIM_LINALG_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace coolsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kStateTolerance = 1e-10;
inline constexpr double kUnitaryTolerance = 1e-10;
inline constexpr double kHermitianTolerance = 1e-10;

/// Number of qubits for a 2^n dimension. Throws InvalidDims otherwise.
int qubit_count(Eigen::Index dim);

/// Bit of `qubit` in basis index `index`. Qubit 0 is the most significant bit.
inline int qubit_bit(std::uint64_t index, int qubit, int n_qubits) {
    return static_cast<int>((index >> (n_qubits - 1 - qubit)) & 1u);
}

double max_abs_diff(const Matrix &a, const Matrix &b);
bool is_hermitian(const Matrix &a, double tol = kHermitianTolerance);
bool is_unitary(const Matrix &u, double tol = kUnitaryTolerance);

/// True when a = e^{i phi} b for some phase, entrywise within tol.
bool equal_up_to_phase(const Matrix &a, const Matrix &b, double tol);

Matrix kron(const Matrix &a, const Matrix &b);

struct HermitianEig {
    Eigen::VectorXd values;  // ascending
    Matrix vectors;          // columns
};

HermitianEig hermitian_eig(const Matrix &a, double tol = kHermitianTolerance);

class DensityMatrix {
   public:
    /// Validates hermiticity, unit trace and positivity within tol.
    explicit DensityMatrix(Matrix m, double tol = kStateTolerance);

    /// Skips the spectral checks. Only the shape is verified.
    static DensityMatrix unchecked(Matrix m);
    static DensityMatrix from_diagonal(std::span<const double> probabilities);
    static DensityMatrix maximally_mixed(int n_qubits);
    static DensityMatrix basis_state(int n_qubits, std::uint64_t index);

    const Matrix &matrix() const noexcept {
        return m_;
    }
    Eigen::Index dim() const noexcept {
        return m_.rows();
    }
    int n_qubits() const noexcept {
        return n_qubits_;
    }

    double trace() const;
    std::vector<double> populations() const;
    /// Probability that `qubit` reads 0.
    double ground_population(int qubit) const;

    bool is_valid(double tol = kStateTolerance) const;
    void validate(double tol = kStateTolerance) const;

   private:
    DensityMatrix() = default;

    Matrix m_;
    int n_qubits_ = 0;
};

DensityMatrix kron(const DensityMatrix &a, const DensityMatrix &b);

/// Reduced state on the subsystems listed in `keep` (kept in ascending order).
DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const int> keep, std::span<const int> dims);

/// Qubit convenience wrapper around partial_trace.
DensityMatrix reduce_to_qubits(const DensityMatrix &rho, std::span<const int> keep);

/// Squared Uhlmann fidelity.
double fidelity(const DensityMatrix &rho, const DensityMatrix &sigma, double tol = kStateTolerance);

double trace_distance(const DensityMatrix &rho, const DensityMatrix &sigma);

DensityMatrix apply_unitary(const DensityMatrix &rho, const Matrix &u, double tol = kUnitaryTolerance);

/// Embeds a 2^k x 2^k operator acting on `qubits` into the full 2^n space.
Matrix embed_operator(const Matrix &op, std::span<const int> qubits, int n_qubits);

/// m <- op m, with op acting on `qubits` only.
void left_apply(Matrix &m, const Matrix &op, std::span<const int> qubits, int n_qubits);

/// Full-space action of an operator with one nonzero entry per column:
/// op|i> = coeff[i] |target[i]>, target[i] < 0 for columns that vanish.
struct MonomialMap {
    std::vector<Eigen::Index> target;
    std::vector<Complex> coeff;
};

std::optional<MonomialMap> monomial_map(const Matrix &op, std::span<const int> qubits, int n_qubits);

/// out += weight * op m op^dagger for the operator described by `map`.
void accumulate_conjugate(Matrix &out, const Matrix &m, const MonomialMap &map, double weight = 1.0);

/// op m op^dagger with op acting on `qubits` only. Monomial ops take a permutation path.
Matrix conjugate_local(const Matrix &m, const Matrix &op, std::span<const int> qubits, int n_qubits);

/// out += weight * op m op^dagger.
void accumulate_conjugate_local(
    Matrix &out, const Matrix &m, const Matrix &op, std::span<const int> qubits, int n_qubits, double weight = 1.0);

}  // namespace coolsim

#endif
