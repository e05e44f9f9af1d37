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

// Dense statevector simulation. Ground truth for every other module.
//
// Index convention: line 0 is the most significant bit of an amplitude index,
// so the basis state |b_0 b_1 ... b_{N-1}> sits at index sum_q b_q 2^{N-1-q}.
// Ordering indices numerically therefore orders bitstrings lexicographically.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "possim/error.hpp"
#include "possim/f2.hpp"
#include "possim/qcir.hpp"

namespace possim {

using Complex = std::complex<double>;

inline constexpr double kDefaultTol = 1e-9;
inline constexpr std::size_t kDefaultMaxQubits = 24;
inline constexpr std::size_t kDefaultExhaustiveLimit = 16;

/// Largest statevector width to allocate. POSSIM_MAX_QUBITS
/// overrides the default.
inline std::size_t max_qubits() {
    if (const char *env = std::getenv("POSSIM_MAX_QUBITS")) {
        char *end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0 && v < 63) {
            return static_cast<std::size_t>(v);
        }
    }
    return kDefaultMaxQubits;
}

/// Amplitudes of clifford+T circuits live in Z[e^{i pi/4}] / 2^{k/2}, so at
/// desk scale a nonzero amplitude is never within many orders of magnitude
/// of 1e-9 relative to the largest one. The threshold only has to swallow
/// rounding noise.
struct Tolerance {
    double tol = kDefaultTol;
};

struct Statevector {
    std::size_t n_qubits = 0;
    std::vector<Complex> amps;

    /// |0...0>.
    static Statevector zero(std::size_t n) {
        Statevector sv;
        sv.n_qubits = n;
        sv.amps.assign(std::size_t{1} << n, Complex{0.0, 0.0});
        sv.amps[0] = 1.0;
        return sv;
    }

    std::size_t bit_of(std::size_t line) const noexcept {
        return n_qubits - 1 - line;
    }

    double norm_squared() const {
        double s = 0.0;
        for (const Complex &a : amps) {
            s += std::norm(a);
        }
        return s;
    }

    Complex amplitude(const F2Vector &basis) const {
        return amps.at(basis.to_index());
    }

    void apply(const Gate &g) {
        static const double r = 1.0 / std::sqrt(2.0);
        static const Complex w{r, r};  // e^{i pi/4}
        switch (g.kind) {
            case GateKind::H:
                apply_1q(g.qubits[0], {r, r, r, -r});
                break;
            case GateKind::X:
                apply_1q(g.qubits[0], {0.0, 1.0, 1.0, 0.0});
                break;
            case GateKind::Y:
                apply_1q(g.qubits[0], {0.0, Complex{0, -1}, Complex{0, 1}, 0.0});
                break;
            case GateKind::Z:
                apply_phase(g.qubits[0], -1.0);
                break;
            case GateKind::S:
                apply_phase(g.qubits[0], Complex{0, 1});
                break;
            case GateKind::Sdg:
                apply_phase(g.qubits[0], Complex{0, -1});
                break;
            case GateKind::T:
                apply_phase(g.qubits[0], w);
                break;
            case GateKind::Tdg:
                apply_phase(g.qubits[0], std::conj(w));
                break;
            case GateKind::CX: {
                std::size_t c = std::size_t{1} << bit_of(g.qubits[0]);
                std::size_t t = std::size_t{1} << bit_of(g.qubits[1]);
                for (std::size_t i = 0; i < amps.size(); ++i) {
                    if ((i & c) && !(i & t)) {
                        std::swap(amps[i], amps[i | t]);
                    }
                }
                break;
            }
            case GateKind::CZ: {
                std::size_t mask = (std::size_t{1} << bit_of(g.qubits[0])) |
                                   (std::size_t{1} << bit_of(g.qubits[1]));
                for (std::size_t i = 0; i < amps.size(); ++i) {
                    if ((i & mask) == mask) {
                        amps[i] = -amps[i];
                    }
                }
                break;
            }
        }
    }

   private:
    // Row-major 2x2 matrix {m00, m01, m10, m11}.
    void apply_1q(std::size_t line, const std::array<Complex, 4> &m) {
        std::size_t bit = std::size_t{1} << bit_of(line);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if (i & bit) {
                continue;
            }
            Complex a0 = amps[i];
            Complex a1 = amps[i | bit];
            amps[i] = m[0] * a0 + m[1] * a1;
            amps[i | bit] = m[2] * a0 + m[3] * a1;
        }
    }
    void apply_phase(std::size_t line, Complex phase) {
        std::size_t bit = std::size_t{1} << bit_of(line);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if (i & bit) {
                amps[i] *= phase;
            }
        }
    }
};

/// Q applied to |x, 0^advice, A^magic>. No post-selection.
inline Statevector simulate(const QuantumCircuit &qc, const F2Vector &x) {
    if (x.size() != qc.n_inputs) {
        throw WidthError("input has " + std::to_string(x.size()) + " bits, circuit has " +
                         std::to_string(qc.n_inputs) + " input lines");
    }
    if (qc.n_qubits > max_qubits()) {
        throw CapacityError("circuit width " + std::to_string(qc.n_qubits) +
                            " exceeds statevector limit " + std::to_string(max_qubits()));
    }
    Statevector sv = Statevector::zero(qc.n_qubits);
    std::size_t start = 0;
    for (std::size_t i = 0; i < qc.n_inputs; ++i) {
        if (x.get(i)) {
            start |= std::size_t{1} << sv.bit_of(i);
        }
    }
    sv.amps[0] = 0.0;
    sv.amps[start] = 1.0;
    // |A> on each magic line: H then T.
    for (std::size_t k = 0; k < qc.n_magic; ++k) {
        auto line = static_cast<std::uint32_t>(qc.first_magic_line() + k);
        sv.apply(Gate::one(GateKind::H, line));
        sv.apply(Gate::one(GateKind::T, line));
    }
    for (const Gate &g : qc.gates) {
        sv.apply(g);
    }
    return sv;
}

/// (I ⊗ <value|) applied on `lines`. The result lives on the remaining lines,
/// in their original relative order, and is not renormalized.
inline Statevector post_select(const Statevector &state, const std::vector<std::size_t> &lines,
                               const F2Vector &value) {
    if (value.size() != lines.size()) {
        throw WidthError("post-selection value has " + std::to_string(value.size()) +
                         " bits for " + std::to_string(lines.size()) + " lines");
    }
    std::vector<bool> selected(state.n_qubits, false);
    std::size_t fixed = 0;
    for (std::size_t k = 0; k < lines.size(); ++k) {
        if (lines[k] >= state.n_qubits || selected[lines[k]]) {
            throw WidthError("bad post-selection line " + std::to_string(lines[k]));
        }
        selected[lines[k]] = true;
        if (value.get(k)) {
            fixed |= std::size_t{1} << state.bit_of(lines[k]);
        }
    }
    std::vector<std::size_t> kept_bits;
    for (std::size_t line = 0; line < state.n_qubits; ++line) {
        if (!selected[line]) {
            kept_bits.push_back(state.bit_of(line));
        }
    }
    Statevector out;
    out.n_qubits = kept_bits.size();
    out.amps.resize(std::size_t{1} << out.n_qubits);
    for (std::size_t j = 0; j < out.amps.size(); ++j) {
        std::size_t full = fixed;
        for (std::size_t k = 0; k < kept_bits.size(); ++k) {
            if ((j >> (kept_bits.size() - 1 - k)) & 1) {
                full |= std::size_t{1} << kept_bits[k];
            }
        }
        out.amps[j] = state.amps[full];
    }
    return out;
}

namespace detail {

/// Strings y (as indices) with magnitude[y] > tol * max magnitude.
inline std::vector<std::size_t> above_threshold(const std::vector<double> &magnitude, double tol) {
    double peak = 0.0;
    for (double m : magnitude) {
        peak = std::max(peak, m);
    }
    std::vector<std::size_t> out;
    if (peak == 0.0) {
        return out;
    }
    for (std::size_t i = 0; i < magnitude.size(); ++i) {
        if (magnitude[i] > tol * peak) {
            out.push_back(i);
        }
    }
    return out;
}

}  // namespace detail

/// Basis strings whose amplitude magnitude exceeds tol times the largest
/// magnitude. Empty iff the state is zero.
inline std::set<F2Vector> support(const Statevector &state, Tolerance tol = {}) {
    std::vector<double> mag(state.amps.size());
    for (std::size_t i = 0; i < mag.size(); ++i) {
        mag[i] = std::abs(state.amps[i]);
    }
    std::set<F2Vector> out;
    for (std::size_t i : detail::above_threshold(mag, tol.tol)) {
        out.insert(F2Vector::from_index(i, state.n_qubits));
    }
    return out;
}

/// Possible measurement outcomes on `qc.measured` after applying
/// `qc.postselect`, given the full pre-measurement state. Unmeasured lines are
/// marginalized: y is possible iff some completion of it has nonzero amplitude.
/// The threshold is relative to the largest marginal amplitude sqrt(P(y)).
inline std::set<F2Vector> outcome_support(const QuantumCircuit &qc, const Statevector &state,
                                          Tolerance tol = {}) {
    std::size_t want = 0;
    std::size_t care = 0;
    for (auto [line, bit] : qc.postselect) {
        std::size_t b = std::size_t{1} << state.bit_of(line);
        care |= b;
        if (bit) {
            want |= b;
        }
    }
    const std::size_t m = qc.measured.size();
    std::vector<double> prob(std::size_t{1} << m, 0.0);
    for (std::size_t i = 0; i < state.amps.size(); ++i) {
        if ((i & care) != want) {
            continue;
        }
        std::size_t key = 0;
        for (std::size_t line : qc.measured) {
            key = (key << 1) | ((i >> state.bit_of(line)) & 1);
        }
        prob[key] += std::norm(state.amps[i]);
    }
    for (double &p : prob) {
        p = std::sqrt(p);
    }
    std::set<F2Vector> out;
    for (std::size_t y : detail::above_threshold(prob, tol.tol)) {
        out.insert(F2Vector::from_index(y, m));
    }
    return out;
}

/// R(Q) = {(x, y) : <y|Q|x> != 0}, over every x on the input lines.
inline std::vector<std::pair<F2Vector, F2Vector>> relation(const QuantumCircuit &qc, Tolerance tol = {},
                                                          std::size_t exhaustive_limit =
                                                              kDefaultExhaustiveLimit) {
    if (qc.n_inputs > exhaustive_limit) {
        throw CapacityError("relation over " + std::to_string(qc.n_inputs) +
                            " inputs exceeds exhaustive limit " + std::to_string(exhaustive_limit));
    }
    std::vector<std::pair<F2Vector, F2Vector>> out;
    for (std::uint64_t xi = 0; xi < (std::uint64_t{1} << qc.n_inputs); ++xi) {
        F2Vector x = F2Vector::from_index(xi, qc.n_inputs);
        for (const F2Vector &y : outcome_support(qc, simulate(qc, x), tol)) {
            out.emplace_back(x, y);
        }
    }
    return out;
}

}  // namespace possim
