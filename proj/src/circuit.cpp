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

#include "coolsim/circuit.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "coolsim/dc_protocol.hpp"
#include "coolsim/error.hpp"

namespace coolsim {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<int> gate_qubits(const Gate &g) {
    std::vector<int> qs = g.controls;
    qs.push_back(g.target);
    return qs;
}

// H = RZ(pi/2) SX RZ(pi/2) up to global phase.
void push_h(std::vector<Gate> &out, int q) {
    out.push_back(Gate::rz(kPi / 2, q));
    out.push_back(Gate::sx(q));
    out.push_back(Gate::rz(kPi / 2, q));
}

void push_ccx(std::vector<Gate> &out, int a, int b, int t) {
    const double t_angle = kPi / 4;
    push_h(out, t);
    out.push_back(Gate::cx(b, t));
    out.push_back(Gate::rz(-t_angle, t));
    out.push_back(Gate::cx(a, t));
    out.push_back(Gate::rz(t_angle, t));
    out.push_back(Gate::cx(b, t));
    out.push_back(Gate::rz(-t_angle, t));
    out.push_back(Gate::cx(a, t));
    out.push_back(Gate::rz(t_angle, b));
    out.push_back(Gate::rz(t_angle, t));
    push_h(out, t);
    out.push_back(Gate::cx(a, b));
    out.push_back(Gate::rz(t_angle, a));
    out.push_back(Gate::rz(-t_angle, b));
    out.push_back(Gate::cx(a, b));
}

// Multi-controlled Z on all of `qs` as a phase polynomial. For each j the parities
// containing qs[j] and a subset of qs[0..j) are visited in reflected Gray order, so
// consecutive parities differ by one CX into qs[j].
void push_gray_mcz(std::vector<Gate> &out, std::span<const int> qs) {
    const auto m = static_cast<int>(qs.size());
    const double unit = kPi / std::ldexp(1.0, m - 1);
    out.push_back(Gate::rz(unit, qs[0]));
    for (int j = 1; j < m; ++j) {
        unsigned prev = 0;
        for (unsigned s = 0; s < (1u << j); ++s) {
            const unsigned code = s ^ (s >> 1);
            if (s > 0) {
                const int bit = std::bit_width(code ^ prev) - 1;
                out.push_back(Gate::cx(qs[bit], qs[j]));
            }
            prev = code;
            const int size = std::popcount(code) + 1;
            out.push_back(Gate::rz(size % 2 == 1 ? unit : -unit, qs[j]));
        }
        out.push_back(Gate::cx(qs[std::bit_width(prev) - 1], qs[j]));
    }
}

void validate_gate(const Gate &g, int n_qubits) {
    const auto qs = gate_qubits(g);
    for (std::size_t a = 0; a < qs.size(); ++a) {
        if (qs[a] < 0 || qs[a] >= n_qubits) {
            throw Error(ErrorKind::kInvalidQubits, "gate qubit out of range");
        }
        for (std::size_t b = 0; b < a; ++b) {
            if (qs[a] == qs[b]) {
                throw Error(ErrorKind::kInvalidQubits, "gate repeats a qubit");
            }
        }
    }
    const std::size_t want = g.kind == GateKind::kCX ? 1 : 0;
    if (g.kind == GateKind::kMCX ? g.controls.size() < 2 : g.controls.size() != want) {
        throw Error(ErrorKind::kInvalidInput, "wrong number of controls");
    }
}

std::string format_angle(double theta) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", theta);
    return buf;
}

}  // namespace

Gate Gate::x(int target) {
    return Gate{GateKind::kX, {}, target, 0.0};
}

Gate Gate::sx(int target) {
    return Gate{GateKind::kSX, {}, target, 0.0};
}

Gate Gate::rz(double theta, int target) {
    return Gate{GateKind::kRZ, {}, target, theta};
}

Gate Gate::cx(int control, int target) {
    return Gate{GateKind::kCX, {control}, target, 0.0};
}

Gate Gate::mcx(std::vector<int> controls, int target) {
    if (controls.empty()) {
        throw Error(ErrorKind::kInvalidInput, "MCX needs at least one control");
    }
    if (controls.size() == 1) {
        return cx(controls.front(), target);
    }
    return Gate{GateKind::kMCX, std::move(controls), target, 0.0};
}

Matrix gate_matrix(const Gate &gate) {
    Matrix m(2, 2);
    switch (gate.kind) {
        case GateKind::kX:
            m << 0, 1, 1, 0;
            return m;
        case GateKind::kSX:
            m << Complex(0.5, 0.5), Complex(0.5, -0.5), Complex(0.5, -0.5), Complex(0.5, 0.5);
            return m;
        case GateKind::kRZ:
            m << std::polar(1.0, -gate.theta / 2), 0, 0, std::polar(1.0, gate.theta / 2);
            return m;
        case GateKind::kCX:
        case GateKind::kMCX: {
            const Eigen::Index d = Eigen::Index{1} << (gate.controls.size() + 1);
            Matrix u = Matrix::Identity(d, d);
            u(d - 2, d - 2) = 0;
            u(d - 1, d - 1) = 0;
            u(d - 2, d - 1) = 1;
            u(d - 1, d - 2) = 1;
            return u;
        }
    }
    return m;
}

Circuit::Circuit(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1) {
        throw Error(ErrorKind::kInvalidParam, "circuit needs at least one qubit");
    }
}

Circuit &Circuit::append(Gate gate) {
    validate_gate(gate, n_qubits_);
    gates_.push_back(std::move(gate));
    return *this;
}

Circuit &Circuit::append(std::span<const Gate> gates) {
    for (const auto &g : gates) {
        append(g);
    }
    return *this;
}

bool Circuit::is_transpiled() const noexcept {
    for (const auto &g : gates_) {
        if (g.kind == GateKind::kX || g.kind == GateKind::kMCX) {
            return false;
        }
    }
    return true;
}

std::string Circuit::to_text() const {
    std::ostringstream out;
    for (const auto &g : gates_) {
        switch (g.kind) {
            case GateKind::kX:
                out << "X " << g.target << '\n';
                break;
            case GateKind::kSX:
                out << "SX " << g.target << '\n';
                break;
            case GateKind::kRZ:
                out << "RZ " << format_angle(g.theta) << ' ' << g.target << '\n';
                break;
            case GateKind::kCX:
                out << "CX " << g.controls.front() << ' ' << g.target << '\n';
                break;
            case GateKind::kMCX: {
                out << "MCX ";
                for (std::size_t i = 0; i < g.controls.size(); ++i) {
                    out << (i ? "," : "") << g.controls[i];
                }
                out << ' ' << g.target << '\n';
                break;
            }
        }
    }
    return out.str();
}

Circuit build_tsac_circuit(int n) {
    if (n < 2) {
        throw Error(ErrorKind::kInvalidParam, "TSAC needs n >= 2");
    }
    auto ladder_controls = [n](int i) {
        std::vector<int> cs;
        for (int j = i + 1; j < n; ++j) {
            cs.push_back(j);
        }
        return cs;
    };
    Circuit c(n);
    const int reset = n - 1;
    c.append(Gate::x(reset));
    for (int i = n - 2; i >= 0; --i) {
        c.append(Gate::mcx(ladder_controls(i), i));
    }
    std::vector<int> all_but_reset;
    for (int j = 0; j < n - 1; ++j) {
        all_but_reset.push_back(j);
    }
    c.append(Gate::mcx(all_but_reset, reset));
    c.append(Gate::x(reset));
    for (int i = 0; i <= n - 2; ++i) {
        c.append(Gate::mcx(ladder_controls(i), i));
    }
    c.append(Gate::x(reset));
    return c;
}

Circuit build_dc_mirror_circuit(int n) {
    if (n < 2) {
        throw Error(ErrorKind::kInvalidParam, "the mirror protocol needs n >= 2");
    }
    Circuit c(n);
    std::vector<MirrorPair> flagged;
    for (const auto &pair : mirror_pairs(n)) {
        if (pair.swap) {
            flagged.push_back(pair);
        }
    }
    if (flagged.empty()) {
        return c;
    }
    // Under C = prod_j CX(q0 -> qj) a flagged pair differs only in q0, both members
    // carrying the rest bits of the member with target bit 0.
    std::vector<Gate> frame;
    std::vector<int> rest;
    for (int j = 1; j < n; ++j) {
        frame.push_back(Gate::cx(0, j));
        rest.push_back(j);
    }
    c.append(frame);
    for (const auto &pair : flagged) {
        const std::uint64_t zero_member = qubit_bit(pair.x, 0, n) == 0 ? pair.x : pair.x_bar;
        std::vector<Gate> polarity;
        for (int j = 1; j < n; ++j) {
            if (qubit_bit(zero_member, j, n) == 0) {
                polarity.push_back(Gate::x(j));
            }
        }
        c.append(polarity);
        c.append(Gate::mcx(rest, 0));
        c.append(polarity);
    }
    c.append(frame);
    return c;
}

std::vector<Gate> mcx_decompose(std::span<const int> controls, int target) {
    if (controls.empty()) {
        throw Error(ErrorKind::kInvalidInput, "MCX needs at least one control");
    }
    std::vector<Gate> out;
    if (controls.size() == 1) {
        out.push_back(Gate::cx(controls.front(), target));
        return out;
    }
    if (controls.size() == 2) {
        push_ccx(out, controls[0], controls[1], target);
        return out;
    }
    std::vector<int> qs(controls.begin(), controls.end());
    qs.push_back(target);
    push_h(out, target);
    push_gray_mcz(out, qs);
    push_h(out, target);
    return out;
}

Circuit transpile(const Circuit &c) {
    Circuit out(c.n_qubits());
    auto emit = [&out](const Gate &g) {
        if (g.kind == GateKind::kX) {
            out.append(Gate::sx(g.target));
            out.append(Gate::sx(g.target));
        } else {
            out.append(g);
        }
    };
    for (const auto &g : c.gates()) {
        if (g.kind == GateKind::kMCX) {
            for (const auto &h : mcx_decompose(g.controls, g.target)) {
                emit(h);
            }
        } else {
            emit(g);
        }
    }
    return out;
}

std::size_t count_cx(const Circuit &c) {
    std::size_t total = 0;
    for (const auto &g : c.gates()) {
        if (g.kind == GateKind::kMCX) {
            throw Error(ErrorKind::kNotTranspiled, "circuit still contains MCX gates");
        }
        total += g.kind == GateKind::kCX ? 1 : 0;
    }
    return total;
}

Matrix circuit_unitary(const Circuit &c) {
    if (c.n_qubits() > kMaxUnitaryQubits) {
        throw Error(ErrorKind::kSizeLimit, "circuit_unitary is capped at 12 qubits");
    }
    const Eigen::Index d = Eigen::Index{1} << c.n_qubits();
    Matrix u = Matrix::Identity(d, d);
    for (const auto &g : c.gates()) {
        left_apply(u, gate_matrix(g), gate_qubits(g), c.n_qubits());
    }
    return u;
}

std::vector<CnotLocation> cnot_locations(const Circuit &c) {
    std::vector<CnotLocation> out;
    for (std::size_t i = 0; i < c.gates().size(); ++i) {
        const auto &g = c.gates()[i];
        if (g.kind == GateKind::kMCX) {
            throw Error(ErrorKind::kNotTranspiled, "circuit still contains MCX gates");
        }
        if (g.kind == GateKind::kCX) {
            out.push_back({i, g.controls.front(), g.target});
        }
    }
    return out;
}

Matrix tsac_compression_unitary(int n) {
    if (n < 2 || n > kMaxUnitaryQubits) {
        throw Error(ErrorKind::kInvalidParam, "compression unitary needs 2 <= n <= 12");
    }
    const Eigen::Index d = Eigen::Index{1} << n;
    Matrix u = Matrix::Zero(d, d);
    u(0, 0) = 1;
    u(d - 1, d - 1) = 1;
    for (Eigen::Index a = 1; a + 1 < d; a += 2) {
        u(a, a + 1) = 1;
        u(a + 1, a) = 1;
    }
    return u;
}

}  // namespace coolsim
