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

#ifndef COOLSIM_CIRCUIT_HPP
#define COOLSIM_CIRCUIT_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coolsim/linalg.hpp"

namespace coolsim {

enum class GateKind { kX, kSX, kRZ, kCX, kMCX };

struct Gate {
    GateKind kind = GateKind::kX;
    std::vector<int> controls;
    int target = 0;
    double theta = 0.0;  // RZ only

    static Gate x(int target);
    static Gate sx(int target);
    static Gate rz(double theta, int target);
    static Gate cx(int control, int target);
    /// One control gives CX.
    static Gate mcx(std::vector<int> controls, int target);

    bool operator==(const Gate &other) const = default;
};

/// 2x2 (single-qubit) or 2^(k+1) matrix of the gate on its own qubits, controls first.
Matrix gate_matrix(const Gate &gate);

class Circuit {
   public:
    explicit Circuit(int n_qubits);

    int n_qubits() const noexcept {
        return n_qubits_;
    }
    const std::vector<Gate> &gates() const noexcept {
        return gates_;
    }
    std::size_t size() const noexcept {
        return gates_.size();
    }

    Circuit &append(Gate gate);
    Circuit &append(std::span<const Gate> gates);

    bool is_transpiled() const noexcept;

    /// One gate per line: `CX c t`, `SX t`, `RZ theta t`, `X t`, `MCX c1,c2,... t`.
    std::string to_text() const;

    bool operator==(const Circuit &other) const = default;

   private:
    int n_qubits_;
    std::vector<Gate> gates_;
};

inline constexpr int kMaxUnitaryQubits = 12;

Circuit build_tsac_circuit(int n);
Circuit build_dc_mirror_circuit(int n);

/// Gates over {CX, SX, RZ, X}; equal to MCX up to global phase.
std::vector<Gate> mcx_decompose(std::span<const int> controls, int target);

/// Rewrites into {CX, SX, RZ} up to global phase.
Circuit transpile(const Circuit &c);

std::size_t count_cx(const Circuit &c);

Matrix circuit_unitary(const Circuit &c);

struct CnotLocation {
    std::size_t gate_index;
    int control;
    int target;
};

std::vector<CnotLocation> cnot_locations(const Circuit &c);

/// The block-diagonal 1 + sigma_x + ... + sigma_x + 1 compression permutation.
Matrix tsac_compression_unitary(int n);

}  // namespace coolsim

#endif
