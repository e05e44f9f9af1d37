// Copyright 2026 The possim Authors
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

// Gate-level quantum circuit IR and its line-oriented text format.

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "possim/error.hpp"
#include "possim/text.hpp"

namespace possim {

enum class GateKind : std::uint8_t { H, S, Sdg, X, Y, Z, CX, CZ, T, Tdg };

inline constexpr std::array<GateKind, 10> kAllGateKinds = {
    GateKind::H, GateKind::S,  GateKind::Sdg, GateKind::X, GateKind::Y,
    GateKind::Z, GateKind::CX, GateKind::CZ,  GateKind::T, GateKind::Tdg};

constexpr std::size_t arity(GateKind k) noexcept {
    return (k == GateKind::CX || k == GateKind::CZ) ? 2 : 1;
}

constexpr bool is_clifford(GateKind k) noexcept {
    return k != GateKind::T && k != GateKind::Tdg;
}

constexpr GateKind inverse(GateKind k) noexcept {
    switch (k) {
        case GateKind::S:
            return GateKind::Sdg;
        case GateKind::Sdg:
            return GateKind::S;
        case GateKind::T:
            return GateKind::Tdg;
        case GateKind::Tdg:
            return GateKind::T;
        default:
            return k;
    }
}

constexpr std::string_view mnemonic(GateKind k) noexcept {
    switch (k) {
        case GateKind::H:
            return "h";
        case GateKind::S:
            return "s";
        case GateKind::Sdg:
            return "sdg";
        case GateKind::X:
            return "x";
        case GateKind::Y:
            return "y";
        case GateKind::Z:
            return "z";
        case GateKind::CX:
            return "cx";
        case GateKind::CZ:
            return "cz";
        case GateKind::T:
            return "t";
        case GateKind::Tdg:
            return "tdg";
    }
    return "?";
}

inline std::optional<GateKind> gate_from_mnemonic(std::string_view s) {
    for (GateKind k : kAllGateKinds) {
        if (mnemonic(k) == s) {
            return k;
        }
    }
    return std::nullopt;
}

/// One gate application. For CX, qubits[0] is the control.
struct Gate {
    GateKind kind;
    std::array<std::uint32_t, 2> qubits{0, 0};

    static Gate one(GateKind k, std::uint32_t q) {
        return Gate{k, {q, q}};
    }
    static Gate two(GateKind k, std::uint32_t a, std::uint32_t b) {
        return Gate{k, {a, b}};
    }

    std::size_t arity() const noexcept {
        return possim::arity(kind);
    }

    friend bool operator==(const Gate &a, const Gate &b) {
        if (a.kind != b.kind || a.qubits[0] != b.qubits[0]) {
            return false;
        }
        return a.arity() == 1 || a.qubits[1] == b.qubits[1];
    }
};

/// A quantum circuit over a fixed set of lines, laid out as
/// [inputs | advice | magic]. Inputs carry the variable bitstring x, advice
/// lines start in |0>, magic lines start in (|0> + e^{i pi/4}|1>)/sqrt(2).
struct QuantumCircuit {
    std::size_t n_qubits = 0;
    std::size_t n_inputs = 0;
    std::size_t n_advice = 0;
    std::size_t n_magic = 0;
    std::vector<Gate> gates;
    /// (line, required bit) pairs applied just before measurement.
    std::vector<std::pair<std::size_t, bool>> postselect;
    /// Output lines, in output order.
    std::vector<std::size_t> measured;

    /// A circuit on n lines, all inputs, measuring all of them.
    static QuantumCircuit with_inputs(std::size_t n) {
        QuantumCircuit qc;
        qc.n_qubits = n;
        qc.n_inputs = n;
        qc.measured = default_measured(n);
        return qc;
    }

    static std::vector<std::size_t> default_measured(std::size_t n_inputs) {
        std::vector<std::size_t> m(n_inputs);
        for (std::size_t i = 0; i < n_inputs; ++i) {
            m[i] = i;
        }
        return m;
    }

    std::size_t first_magic_line() const noexcept {
        return n_inputs + n_advice;
    }

    QuantumCircuit &add(GateKind k, std::uint32_t q) {
        gates.push_back(Gate::one(k, q));
        return *this;
    }
    QuantumCircuit &add(GateKind k, std::uint32_t a, std::uint32_t b) {
        gates.push_back(Gate::two(k, a, b));
        return *this;
    }

    std::size_t count(GateKind k) const {
        return static_cast<std::size_t>(
            std::count_if(gates.begin(), gates.end(), [k](const Gate &g) { return g.kind == k; }));
    }

    bool is_clifford() const {
        return std::all_of(gates.begin(), gates.end(),
                           [](const Gate &g) { return possim::is_clifford(g.kind); });
    }

    /// Throws Error describing the first broken invariant.
    void validate() const {
        if (n_inputs + n_advice + n_magic != n_qubits) {
            throw Error("line counts do not add up: " + std::to_string(n_inputs) + " inputs + " +
                        std::to_string(n_advice) + " advice + " + std::to_string(n_magic) +
                        " magic != " + std::to_string(n_qubits) + " qubits");
        }
        for (std::size_t i = 0; i < gates.size(); ++i) {
            const Gate &g = gates[i];
            for (std::size_t k = 0; k < g.arity(); ++k) {
                if (g.qubits[k] >= n_qubits) {
                    throw Error("gate " + std::to_string(i) + " touches line " +
                                std::to_string(g.qubits[k]) + " of " + std::to_string(n_qubits));
                }
            }
            if (g.arity() == 2 && g.qubits[0] == g.qubits[1]) {
                throw Error("gate " + std::to_string(i) + " repeats line " +
                            std::to_string(g.qubits[0]));
            }
        }
        for (auto [line, bit] : postselect) {
            if (line >= n_qubits) {
                throw Error("post-selected line " + std::to_string(line) + " out of range");
            }
            if (std::find(measured.begin(), measured.end(), line) != measured.end()) {
                throw Error("line " + std::to_string(line) + " is both measured and post-selected");
            }
        }
        for (std::size_t line : measured) {
            if (line >= n_qubits) {
                throw Error("measured line " + std::to_string(line) + " out of range");
            }
        }
    }

    friend bool operator==(const QuantumCircuit &, const QuantumCircuit &) = default;
};

/// Reads the circuit text format:
///
///     qubits <N>        (required, first directive)
///     inputs <n>        (optional, default N)
///     advice <k>        (optional, default N - n)
///     h q | s q | sdg q | x q | y q | z q | t q | tdg q | cx c t | cz a b
///
/// '#' starts a comment. Qubit indices are 0-based.
inline QuantumCircuit parse_circuit(std::istream &in) {
    QuantumCircuit qc;
    std::optional<std::size_t> inputs;
    std::optional<std::size_t> advice;
    bool have_header = false;
    bool seen_gate = false;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto words = detail::split_words(detail::strip_comment(raw));
        if (words.empty()) {
            continue;
        }
        std::string_view head = words[0];
        if (!have_header) {
            if (head != "qubits" || words.size() != 2) {
                throw ParseError(line_no, "missing 'qubits <N>' header");
            }
            qc.n_qubits = detail::parse_uint(words[1], line_no, "qubit count");
            if (qc.n_qubits > 0xFFFFFFFFu) {
                throw ParseError(line_no, "qubit count too large");
            }
            have_header = true;
            continue;
        }
        if (head == "qubits") {
            throw ParseError(line_no, "duplicate 'qubits' header");
        }
        if (head == "inputs" || head == "advice") {
            if (seen_gate) {
                throw ParseError(line_no, "'" + std::string(head) + "' must precede all gates");
            }
            if (words.size() != 2) {
                throw ParseError(line_no, "expected '" + std::string(head) + " <count>'");
            }
            auto &slot = head == "inputs" ? inputs : advice;
            if (slot) {
                throw ParseError(line_no, "duplicate '" + std::string(head) + "'");
            }
            slot = detail::parse_uint(words[1], line_no, "line count");
            if (*slot > qc.n_qubits) {
                throw ParseError(line_no, std::string(head) + " count exceeds qubit count");
            }
            continue;
        }
        auto kind = gate_from_mnemonic(head);
        if (!kind) {
            throw ParseError(line_no, "unknown gate '" + std::string(head) + "'");
        }
        std::size_t k = arity(*kind);
        if (words.size() != k + 1) {
            throw ParseError(line_no, "'" + std::string(head) + "' takes " + std::to_string(k) +
                                          " qubit" + (k == 1 ? "" : "s"));
        }
        Gate g{*kind, {0, 0}};
        for (std::size_t j = 0; j < k; ++j) {
            std::uint64_t q = detail::parse_uint(words[j + 1], line_no, "qubit index");
            if (q >= qc.n_qubits) {
                throw ParseError(line_no, "qubit " + std::to_string(q) + " out of range for " +
                                              std::to_string(qc.n_qubits) + " qubits");
            }
            g.qubits[j] = static_cast<std::uint32_t>(q);
        }
        if (k == 1) {
            g.qubits[1] = g.qubits[0];
        } else if (g.qubits[0] == g.qubits[1]) {
            throw ParseError(line_no, "repeated qubit " + std::to_string(g.qubits[0]));
        }
        qc.gates.push_back(g);
        seen_gate = true;
    }
    if (!have_header) {
        throw ParseError(line_no == 0 ? 1 : line_no, "missing 'qubits <N>' header");
    }
    if (inputs && advice) {
        if (*inputs + *advice != qc.n_qubits) {
            throw ParseError(0, "inputs + advice must equal qubits");
        }
    } else if (inputs) {
        advice = qc.n_qubits - *inputs;
    } else if (advice) {
        inputs = qc.n_qubits - *advice;
    } else {
        inputs = qc.n_qubits;
        advice = 0;
    }
    qc.n_inputs = *inputs;
    qc.n_advice = *advice;
    qc.measured = QuantumCircuit::default_measured(qc.n_inputs);
    return qc;
}

inline QuantumCircuit parse_circuit(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_circuit(in);
}

/// Canonical text form. Only representable for circuits without magic lines
/// or post-selection, with the default measured lines.
inline std::string serialize_circuit(const QuantumCircuit &qc) {
    if (qc.n_magic != 0 || !qc.postselect.empty() ||
        qc.measured != QuantumCircuit::default_measured(qc.n_inputs)) {
        throw Error("circuit has magic lines, post-selection, or custom outputs; not serializable");
    }
    std::ostringstream out;
    out << "qubits " << qc.n_qubits << '\n';
    if (qc.n_advice != 0) {
        out << "inputs " << qc.n_inputs << '\n';
        out << "advice " << qc.n_advice << '\n';
    }
    for (const Gate &g : qc.gates) {
        out << mnemonic(g.kind) << ' ' << g.qubits[0];
        if (g.arity() == 2) {
            out << ' ' << g.qubits[1];
        }
        out << '\n';
    }
    return out.str();
}

/// Depth under as-soon-as-possible layering: each gate lands one layer after
/// the latest earlier gate sharing a line with it.
inline std::size_t circuit_depth(const QuantumCircuit &qc) {
    std::vector<std::size_t> frontier(qc.n_qubits, 0);
    std::size_t depth = 0;
    for (const Gate &g : qc.gates) {
        std::size_t layer = frontier[g.qubits[0]];
        if (g.arity() == 2) {
            layer = std::max(layer, frontier[g.qubits[1]]);
        }
        ++layer;
        frontier[g.qubits[0]] = layer;
        frontier[g.qubits[1]] = layer;
        depth = std::max(depth, layer);
    }
    return depth;
}

/// Rewrites the gate set down to {H, S, Sdg, X, Z, CX, CZ, T}:
/// Tdg -> Sdg, T (since T^2 = S) and Y -> Z, X (equal up to global phase).
inline QuantumCircuit canonicalize(const QuantumCircuit &qc) {
    QuantumCircuit out = qc;
    out.gates.clear();
    out.gates.reserve(qc.gates.size());
    for (const Gate &g : qc.gates) {
        switch (g.kind) {
            case GateKind::Tdg:
                out.gates.push_back(Gate::one(GateKind::Sdg, g.qubits[0]));
                out.gates.push_back(Gate::one(GateKind::T, g.qubits[0]));
                break;
            case GateKind::Y:
                out.gates.push_back(Gate::one(GateKind::Z, g.qubits[0]));
                out.gates.push_back(Gate::one(GateKind::X, g.qubits[0]));
                break;
            default:
                out.gates.push_back(g);
        }
    }
    return out;
}

}  // namespace possim
