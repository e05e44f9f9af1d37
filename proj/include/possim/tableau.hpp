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

// Stabilizer machinery: Pauli conjugation through Clifford circuits, the
// input-frame table a^(j), and Gottesman-Knill support strings.

#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "possim/error.hpp"
#include "possim/f2.hpp"
#include "possim/qcir.hpp"

namespace possim {

/// i^phase times a tensor product of Hermitian single-qubit Paulis. Line j
/// carries X when (x, z) = (1, 0), Y for (1, 1), Z for (0, 1).
struct PauliString {
    F2Vector xmask;
    F2Vector zmask;
    std::uint8_t phase = 0;  // mod 4

    PauliString() = default;
    explicit PauliString(std::size_t width) : xmask(width), zmask(width) {
    }

    /// Parses e.g. "XIZ", "-YX", "iZ", "-iXX".
    static PauliString from_string(std::string_view text) {
        std::uint8_t phase = 0;
        if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
            phase = text[0] == '-' ? 2 : 0;
            text.remove_prefix(1);
        }
        if (!text.empty() && text[0] == 'i') {
            phase = static_cast<std::uint8_t>((phase + 1) & 3);
            text.remove_prefix(1);
        }
        PauliString p(text.size());
        p.phase = phase;
        for (std::size_t j = 0; j < text.size(); ++j) {
            switch (text[j]) {
                case 'I':
                case '_':
                    break;
                case 'X':
                    p.xmask.set(j);
                    break;
                case 'Y':
                    p.xmask.set(j);
                    p.zmask.set(j);
                    break;
                case 'Z':
                    p.zmask.set(j);
                    break;
                default:
                    throw ParseError(0, "bad Pauli character '" + std::string(1, text[j]) + "'");
            }
        }
        return p;
    }

    static PauliString single(std::size_t width, std::size_t line, char which) {
        std::string s(width, 'I');
        s[line] = which;
        return from_string(s);
    }

    std::size_t width() const noexcept {
        return xmask.size();
    }
    bool is_identity() const noexcept {
        return xmask.is_zero() && zmask.is_zero();
    }

    std::string to_string() const {
        static constexpr std::string_view prefix[4] = {"+", "+i", "-", "-i"};
        std::string s(prefix[phase & 3]);
        for (std::size_t j = 0; j < width(); ++j) {
            bool x = xmask.get(j);
            bool z = zmask.get(j);
            s += x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
        }
        return s;
    }

    /// *this = *this * rhs.
    PauliString &operator*=(const PauliString &rhs) {
        if (rhs.width() != width()) {
            throw WidthError("Pauli width mismatch");
        }
        // Exponent of i picked up by sigma(x1,z1) * sigma(x2,z2) on each line.
        int acc = phase + rhs.phase;
        const auto &x1 = xmask.words();
        const auto &z1 = zmask.words();
        const auto &x2 = rhs.xmask.words();
        const auto &z2 = rhs.zmask.words();
        for (std::size_t k = 0; k < x1.size(); ++k) {
            std::uint64_t live = (x1[k] | z1[k]) & (x2[k] | z2[k]);
            while (live != 0) {
                int b = std::countr_zero(live);
                live &= live - 1;
                int a1 = (x1[k] >> b) & 1, b1 = (z1[k] >> b) & 1;
                int a2 = (x2[k] >> b) & 1, b2 = (z2[k] >> b) & 1;
                if (a1 && b1) {
                    acc += b2 - a2;
                } else if (a1) {
                    acc += b2 * (2 * a2 - 1);
                } else {
                    acc += a2 * (1 - 2 * b2);
                }
            }
        }
        xmask ^= rhs.xmask;
        zmask ^= rhs.zmask;
        phase = static_cast<std::uint8_t>(((acc % 4) + 4) % 4);
        return *this;
    }
    friend PauliString operator*(PauliString a, const PauliString &b) {
        a *= b;
        return a;
    }

    /// In-place P -> G P G^dagger for one Clifford gate.
    void conjugate_by(const Gate &g) {
        const std::size_t a = g.qubits[0];
        const std::size_t b = g.qubits[1];
        const bool xa = xmask.get(a), za = zmask.get(a);
        bool flip = false;
        switch (g.kind) {
            case GateKind::H:
                flip = xa && za;
                xmask.set(a, za);
                zmask.set(a, xa);
                break;
            case GateKind::S:
                flip = xa && za;
                zmask.set(a, za != xa);
                break;
            case GateKind::Sdg:
                flip = xa && !za;
                zmask.set(a, za != xa);
                break;
            case GateKind::X:
                flip = za;
                break;
            case GateKind::Y:
                flip = xa != za;
                break;
            case GateKind::Z:
                flip = xa;
                break;
            case GateKind::CX: {
                const bool xb = xmask.get(b), zb = zmask.get(b);
                flip = xa && zb && !(xb != za);
                xmask.set(b, xb != xa);
                zmask.set(a, za != zb);
                break;
            }
            case GateKind::CZ: {
                const bool xb = xmask.get(b), zb = zmask.get(b);
                flip = xa && xb && (za != zb);
                zmask.set(a, za != xb);
                zmask.set(b, zb != xa);
                break;
            }
            case GateKind::T:
            case GateKind::Tdg:
                throw NonCliffordError("cannot conjugate a Pauli through a T gate");
        }
        if (flip) {
            phase = static_cast<std::uint8_t>((phase + 2) & 3);
        }
    }

    friend bool operator==(const PauliString &, const PauliString &) = default;
};

/// Q P Q^dagger, gate by gate.
inline PauliString conjugate_pauli(const QuantumCircuit &qc, PauliString p) {
    if (p.width() != qc.n_qubits) {
        throw WidthError("Pauli width " + std::to_string(p.width()) + " != circuit width " +
                         std::to_string(qc.n_qubits));
    }
    for (const Gate &g : qc.gates) {
        p.conjugate_by(g);
    }
    return p;
}

/// Row j is a^(j): bit i is set when X_i on input line i, pushed through the
/// circuit, leaves an X or Y on line j. Output line j then carries
/// X^{a^(j) . x} for input x.
struct AVectorTable {
    F2Matrix matrix;  // n_qubits x n_inputs

    const F2Vector &row(std::size_t line) const {
        return matrix.row(line);
    }
    std::size_t max_weight() const {
        std::size_t w = 0;
        for (const auto &r : matrix.row_data()) {
            w = std::max(w, r.weight());
        }
        return w;
    }
};

/// Tracks, for every line, which input X operators currently have an X
/// (resp. Z) component there. Signs are dropped: they only scale basis states.
inline AVectorTable a_vectors(const QuantumCircuit &qc) {
    const std::size_t n = qc.n_inputs;
    std::vector<F2Vector> xs(qc.n_qubits, F2Vector(n));
    std::vector<F2Vector> zs(qc.n_qubits, F2Vector(n));
    for (std::size_t i = 0; i < n; ++i) {
        xs[i].set(i);
    }
    for (const Gate &g : qc.gates) {
        const std::size_t a = g.qubits[0];
        const std::size_t b = g.qubits[1];
        switch (g.kind) {
            case GateKind::H:
                std::swap(xs[a], zs[a]);
                break;
            case GateKind::S:
            case GateKind::Sdg:
                zs[a] ^= xs[a];
                break;
            case GateKind::X:
            case GateKind::Y:
            case GateKind::Z:
                break;
            case GateKind::CX:
                xs[b] ^= xs[a];
                zs[a] ^= zs[b];
                break;
            case GateKind::CZ:
                zs[a] ^= xs[b];
                zs[b] ^= xs[a];
                break;
            case GateKind::T:
            case GateKind::Tdg:
                throw NonCliffordError("a-vectors need a Clifford circuit; gadgetize T gates first");
        }
    }
    return AVectorTable{F2Matrix::from_rows(std::move(xs), n)};
}

/// Aaronson-Gottesman tableau on n lines: rows [0, n) are destabilizers,
/// rows [n, 2n) stabilizers.
class StabilizerTableau {
   public:
    explicit StabilizerTableau(std::size_t n) : n_(n) {
        rows_.reserve(2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            rows_.push_back(PauliString::single(n, i, 'X'));
        }
        for (std::size_t i = 0; i < n; ++i) {
            rows_.push_back(PauliString::single(n, i, 'Z'));
        }
    }

    std::size_t width() const noexcept {
        return n_;
    }
    const PauliString &stabilizer(std::size_t i) const {
        return rows_[n_ + i];
    }

    void apply(const Gate &g) {
        for (auto &row : rows_) {
            row.conjugate_by(g);
        }
    }

    struct Outcome {
        bool bit;
        bool random;
    };

    /// Z-basis measurement of `line`. A random outcome takes `preferred`;
    /// a deterministic one ignores it.
    Outcome measure(std::size_t line, bool preferred = false) {
        std::optional<std::size_t> pivot;
        for (std::size_t i = n_; i < 2 * n_; ++i) {
            if (rows_[i].xmask.get(line)) {
                pivot = i;
                break;
            }
        }
        if (pivot) {
            const std::size_t p = *pivot;
            for (std::size_t i = 0; i < 2 * n_; ++i) {
                if (i != p && rows_[i].xmask.get(line)) {
                    rows_[i] *= rows_[p];
                }
            }
            rows_[p - n_] = rows_[p];
            rows_[p] = PauliString::single(n_, line, 'Z');
            rows_[p].phase = preferred ? 2 : 0;
            return {preferred, true};
        }
        PauliString acc(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            if (rows_[i].xmask.get(line)) {
                acc *= rows_[n_ + i];
            }
        }
        if (acc.phase != 0 && acc.phase != 2) {
            throw InternalError("stabilizer product has a non-real sign");
        }
        return {acc.phase == 2, false};
    }

   private:
    std::size_t n_;
    std::vector<PauliString> rows_;
};

/// A string s on qc.measured with <s|Q|0...0> != 0 after post-selection.
/// Post-selected lines are measured first with their required value forced;
/// measured lines follow in order, taking 0 whenever the outcome is random.
/// The result is the lexicographically smallest possible outcome.
inline F2Vector clifford_support_string(const QuantumCircuit &qc) {
    if (!qc.is_clifford()) {
        throw NonCliffordError("support strings by tableau need a Clifford circuit");
    }
    if (qc.n_magic != 0) {
        throw NonCliffordError("magic-state lines are not stabilizer states");
    }
    StabilizerTableau tab(qc.n_qubits);
    for (const Gate &g : qc.gates) {
        tab.apply(g);
    }
    for (auto [line, bit] : qc.postselect) {
        if (tab.measure(line, bit).bit != bit) {
            throw PostselectImpossible("line " + std::to_string(line) + " can never read " +
                                       std::to_string(int{bit}));
        }
    }
    F2Vector s(qc.measured.size());
    for (std::size_t k = 0; k < qc.measured.size(); ++k) {
        s.set(k, tab.measure(qc.measured[k], false).bit);
    }
    return s;
}

}  // namespace possim
