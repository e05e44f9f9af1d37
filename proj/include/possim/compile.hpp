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

// Clifford+T circuit -> classical netlist that p-simulates it.
//
// Pipeline: canonicalize, swap every T for a post-selected magic-state
// gadget, push the input X frame through the resulting Clifford circuit, pick
// one support string per post-selection pattern z, then emit
//
//   stage 1: shared parities p_j = a^(j).x on output lines, and the candidate
//            bundles C_z(x) = p XOR s^(z)
//   stage 2: z(x) = S.x, parities on the magic lines
//   stage 3: one-hot decoder over z(x) feeding an AND/OR multiplexer

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "possim/bcir.hpp"
#include "possim/error.hpp"
#include "possim/f2.hpp"
#include "possim/qcir.hpp"
#include "possim/sv.hpp"
#include "possim/tableau.hpp"

namespace possim {

/// s^(z) for every z in {0,1}^t, indexed by the little-endian value of z.
struct SupportTable {
    std::size_t t = 0;
    std::vector<F2Vector> entries;

    const F2Vector &at(std::uint64_t j) const {
        return entries.at(j);
    }
    const F2Vector &at(const F2Vector &z) const {
        return entries.at(z.to_uint_le());
    }
};

struct DepthReport {
    std::size_t n = 0;  // input lines
    std::size_t m = 0;  // output lines
    std::size_t t = 0;  // T gates after canonicalization
    std::size_t d = 0;  // depth of the source circuit
    std::size_t rank_s = 0;
    std::size_t max_a_weight = 0;
    std::size_t stage1_depth = 0;
    std::size_t stage2_depth = 0;
    std::size_t stage3_depth = 0;
    std::size_t total_depth = 0;
    std::size_t gate_count = 0;
    std::size_t mux_leaves = 0;
    bool rank_refined = false;
};

struct CompileOptions {
    bool rank_refine = false;
    Tolerance tol{};
};

struct CompilationArtifacts {
    QuantumCircuit gadgetized;
    AVectorTable a_table;
    F2Matrix selector;  // S: t x n, row k = a^(magic line k)
    SupportTable supports;
    BoolCircuit netlist;
    DepthReport report;
};

/// Replaces each T on line q by CX(q, fresh magic line) with that line
/// post-selected on 0. Magic lines are appended in T order.
inline QuantumCircuit gadgetize(const QuantumCircuit &qc) {
    QuantumCircuit out = qc;
    out.gates.clear();
    std::size_t fresh = qc.n_qubits;
    for (const Gate &g : qc.gates) {
        if (g.kind == GateKind::Tdg) {
            throw Error("gadgetize expects a canonicalized circuit (found tdg)");
        }
        if (g.kind == GateKind::T) {
            auto magic = static_cast<std::uint32_t>(fresh++);
            out.gates.push_back(Gate::two(GateKind::CX, g.qubits[0], magic));
            out.postselect.emplace_back(magic, false);
        } else {
            out.gates.push_back(g);
        }
    }
    out.n_magic += fresh - qc.n_qubits;
    out.n_qubits = fresh;
    return out;
}

namespace detail {

inline std::vector<std::size_t> magic_lines(const QuantumCircuit &qc) {
    std::vector<std::size_t> lines(qc.n_magic);
    for (std::size_t k = 0; k < qc.n_magic; ++k) {
        lines[k] = qc.first_magic_line() + k;
    }
    return lines;
}

}  // namespace detail

/// For every z, the lexicographically smallest possible outcome on the
/// measured lines after post-selecting the magic lines on z.
inline SupportTable precompute_supports(const QuantumCircuit &gadgetized, Tolerance tol = {}) {
    const std::size_t t = gadgetized.n_magic;
    SupportTable table;
    table.t = t;
    if (t == 0) {
        table.entries.push_back(clifford_support_string(gadgetized));
        return table;
    }
    if (gadgetized.n_qubits > max_qubits()) {
        throw CapacityError("support precomputation needs " + std::to_string(gadgetized.n_qubits) +
                            " qubits; limit is " + std::to_string(max_qubits()));
    }
    const Statevector psi = simulate(gadgetized, F2Vector(gadgetized.n_inputs));
    const auto magic = detail::magic_lines(gadgetized);
    for (auto [line, bit] : gadgetized.postselect) {
        if (line < gadgetized.first_magic_line()) {
            throw Error("only magic lines may be post-selected");
        }
    }

    const std::size_t m = gadgetized.measured.size();
    const std::size_t groups = std::size_t{1} << t;
    const std::size_t keys = std::size_t{1} << m;
    std::vector<double> prob(groups * keys, 0.0);
    for (std::size_t i = 0; i < psi.amps.size(); ++i) {
        std::size_t z = 0;
        for (std::size_t k = 0; k < t; ++k) {
            z |= ((i >> psi.bit_of(magic[k])) & 1) << k;
        }
        std::size_t y = 0;
        for (std::size_t line : gadgetized.measured) {
            y = (y << 1) | ((i >> psi.bit_of(line)) & 1);
        }
        prob[z * keys + y] += std::norm(psi.amps[i]);
    }
    table.entries.reserve(groups);
    for (std::size_t z = 0; z < groups; ++z) {
        std::vector<double> mag(prob.begin() + static_cast<std::ptrdiff_t>(z * keys),
                                prob.begin() + static_cast<std::ptrdiff_t>((z + 1) * keys));
        for (double &p : mag) {
            p = std::sqrt(p);
        }
        auto hits = detail::above_threshold(mag, tol.tol);
        if (hits.empty()) {
            throw EmptySupport("post-selected state for z=" + F2Vector::from_uint_le(z, t).to_string() +
                               " vanished");
        }
        table.entries.push_back(F2Vector::from_index(hits.front(), m));
    }
    return table;
}

struct ImagePoint {
    F2Vector value;    // S.x
    F2Vector witness;  // one such x
};

/// The 2^rk(S) distinct values of S.x, sorted by little-endian value, each
/// with a preimage built from independent columns of S.
inline std::vector<ImagePoint> image_enumerate(const F2Matrix &s) {
    const F2Matrix cols = s.transpose();
    std::vector<F2Vector> reduced;
    std::vector<std::size_t> pivot;
    std::vector<std::size_t> source;
    for (std::size_t c = 0; c < cols.rows(); ++c) {
        F2Vector v = cols.row(c);
        for (std::size_t k = 0; k < reduced.size(); ++k) {
            if (v.get(pivot[k])) {
                v ^= reduced[k];
            }
        }
        if (auto p = v.first_set()) {
            reduced.push_back(std::move(v));
            pivot.push_back(*p);
            source.push_back(c);
        }
    }
    const std::size_t r = source.size();
    if (r >= 63) {
        throw CapacityError("selector rank " + std::to_string(r) + " too large to enumerate");
    }
    std::vector<ImagePoint> out;
    out.reserve(std::size_t{1} << r);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << r); ++mask) {
        ImagePoint pt{F2Vector(s.rows()), F2Vector(s.cols())};
        for (std::size_t k = 0; k < r; ++k) {
            if ((mask >> k) & 1) {
                pt.value ^= cols.row(source[k]);
                pt.witness.set(source[k]);
            }
        }
        out.push_back(std::move(pt));
    }
    std::sort(out.begin(), out.end(), [](const ImagePoint &a, const ImagePoint &b) {
        return a.value.to_uint_le() < b.value.to_uint_le();
    });
    return out;
}

inline CompilationArtifacts compile(const QuantumCircuit &qc, const CompileOptions &opts = {}) {
    qc.validate();
    if (qc.n_magic != 0 || !qc.postselect.empty()) {
        throw Error("compile expects a circuit without magic lines or post-selection");
    }
    CompilationArtifacts art;
    art.gadgetized = gadgetize(canonicalize(qc));
    const QuantumCircuit &g = art.gadgetized;
    const std::size_t n = g.n_inputs;
    const std::size_t t = g.n_magic;
    if (t >= 63) {
        throw CapacityError("too many T gates: " + std::to_string(t));
    }
    art.a_table = a_vectors(g);
    const auto magic = detail::magic_lines(g);
    art.selector = F2Matrix(0, n);
    for (std::size_t line : magic) {
        art.selector.push_row(art.a_table.row(line));
    }
    art.supports = precompute_supports(g, opts.tol);

    NetlistBuilder b(n);
    std::map<F2Vector, NodeId> parity_cache;
    auto parity = [&](const F2Vector &a) {
        auto it = parity_cache.find(a);
        if (it != parity_cache.end()) {
            return it->second;
        }
        NodeId id = build_parity(b, a);
        parity_cache.emplace(a, id);
        return id;
    };

    std::vector<NodeId> p;
    for (std::size_t line : g.measured) {
        p.push_back(parity(art.a_table.row(line)));
    }
    std::vector<NodeId> z;
    for (std::size_t line : magic) {
        z.push_back(parity(art.a_table.row(line)));
    }

    std::vector<std::uint64_t> selected;
    if (opts.rank_refine) {
        for (const auto &pt : image_enumerate(art.selector)) {
            selected.push_back(pt.value.to_uint_le());
        }
    } else {
        for (std::uint64_t j = 0; j < (std::uint64_t{1} << t); ++j) {
            selected.push_back(j);
        }
    }

    std::vector<std::vector<NodeId>> bundles;
    for (std::uint64_t j : selected) {
        const F2Vector &s = art.supports.at(j);
        std::vector<NodeId> bundle(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
            bundle[i] = s.get(i) ? b.not_(p[i]) : p[i];
        }
        bundles.push_back(std::move(bundle));
    }

    const std::size_t stage3_start = b.size();
    MuxResult mux;
    if (t == 0) {
        mux = build_mux(b, bundles, {});
    } else {
        std::vector<NodeId> f;
        for (std::uint64_t j : selected) {
            f.push_back(build_decoder(b, z, j));
        }
        mux = build_mux(b, bundles, f);
    }
    art.netlist = std::move(b).finish(mux.outputs);

    DepthReport &rep = art.report;
    rep.n = n;
    rep.m = g.measured.size();
    rep.t = t;
    rep.d = circuit_depth(qc);
    rep.rank_s = rank(art.selector);
    rep.max_a_weight = art.a_table.max_weight();
    rep.rank_refined = opts.rank_refine;
    const auto full = node_depths(art.netlist);
    for (const auto &bundle : bundles) {
        for (NodeId id : bundle) {
            rep.stage1_depth = std::max(rep.stage1_depth, full[id]);
        }
    }
    for (NodeId id : z) {
        rep.stage2_depth = std::max(rep.stage2_depth, full[id]);
    }
    if (t != 0) {
        const auto local = node_depths(art.netlist, stage3_start);
        for (NodeId id : art.netlist.outputs) {
            rep.stage3_depth = std::max(rep.stage3_depth, id >= stage3_start ? local[id] : 0);
        }
    }
    rep.total_depth = depth(art.netlist);
    rep.gate_count = art.netlist.gate_count();
    rep.mux_leaves = t == 0 ? 0 : mux.leaves_per_output;
    return art;
}

inline std::string format_report(const DepthReport &r) {
    std::ostringstream out;
    out << "n " << r.n << '\n'
        << "m " << r.m << '\n'
        << "t " << r.t << '\n'
        << "d " << r.d << '\n'
        << "rank_S " << r.rank_s << '\n'
        << "rank_refine " << (r.rank_refined ? 1 : 0) << '\n'
        << "max_a_weight " << r.max_a_weight << '\n'
        << "stage1_depth " << r.stage1_depth << '\n'
        << "stage2_depth " << r.stage2_depth << '\n'
        << "stage3_depth " << r.stage3_depth << '\n'
        << "total_depth " << r.total_depth << '\n'
        << "gate_count " << r.gate_count << '\n'
        << "mux_leaves " << r.mux_leaves << '\n';
    return out.str();
}

}  // namespace possim
