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

// Seeded random circuits for property and acceptance suites.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "possim/qcir.hpp"

namespace possim::testing {

struct RandomCircuitParams {
    std::size_t min_qubits = 1;
    std::size_t max_qubits = 6;
    std::size_t max_t = 4;  // T plus Tdg gates
    std::size_t max_depth = 8;
    bool clifford_only = false;
};

inline std::size_t below(std::mt19937_64 &rng, std::size_t k) {
    return static_cast<std::size_t>(rng() % k);
}

/// Layered random circuit: each layer places gates on disjoint lines, so
/// circuit_depth never exceeds the number of layers drawn. Gates come from
/// the full set; T/Tdg only while the T budget lasts.
inline QuantumCircuit random_circuit(std::mt19937_64 &rng, const RandomCircuitParams &p) {
    const std::size_t n = p.min_qubits + below(rng, p.max_qubits - p.min_qubits + 1);
    QuantumCircuit qc = QuantumCircuit::with_inputs(n);
    const std::size_t layers = 1 + below(rng, p.max_depth);
    std::size_t t_left = p.clifford_only ? 0 : below(rng, p.max_t + 1);
    static constexpr GateKind kOneQubit[] = {GateKind::H, GateKind::S, GateKind::Sdg,
                                             GateKind::X, GateKind::Y, GateKind::Z};
    std::vector<std::uint32_t> lines(n);
    for (std::size_t layer = 0; layer < layers; ++layer) {
        for (std::size_t q = 0; q < n; ++q) {
            lines[q] = static_cast<std::uint32_t>(q);
        }
        std::shuffle(lines.begin(), lines.end(), rng);
        std::size_t k = 0;
        while (k < lines.size()) {
            std::size_t roll = below(rng, 10);
            if (roll < 3 && k + 1 < lines.size()) {
                qc.add(below(rng, 2) ? GateKind::CX : GateKind::CZ, lines[k], lines[k + 1]);
                k += 2;
                continue;
            }
            if (roll < 5 && t_left > 0) {
                qc.add(below(rng, 2) ? GateKind::T : GateKind::Tdg, lines[k]);
                --t_left;
            } else if (roll < 9) {
                qc.add(kOneQubit[below(rng, 6)], lines[k]);
            }
            ++k;
        }
    }
    return qc;
}

inline std::size_t t_count(const QuantumCircuit &qc) {
    return qc.count(GateKind::T) + qc.count(GateKind::Tdg);
}

}  // namespace possim::testing
