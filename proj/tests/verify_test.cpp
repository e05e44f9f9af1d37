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

#include "possim/verify.hpp"

#include <random>

#include "gtest/gtest.h"
#include "possim/compile.hpp"
#include "support/random_circuits.hpp"

using namespace possim;

namespace {

F2Vector bits(const char *s) {
    return F2Vector::from_string(s);
}

BoolCircuit identity_netlist(std::size_t n) {
    NetlistBuilder b(n);
    std::vector<NodeId> outs;
    for (std::size_t i = 0; i < n; ++i) {
        outs.push_back(b.input(i));
    }
    return std::move(b).finish(outs);
}

BoolCircuit const_zero_netlist() {
    NetlistBuilder b(1);
    NodeId zero = b.constant(false);
    return std::move(b).finish({zero});
}

BoolCircuit not_netlist() {
    NetlistBuilder b(1);
    NodeId x = b.input(0);
    NodeId y = b.not_(x);
    return std::move(b).finish({y});
}

}  // namespace

TEST(Verify, constant_zero_simulates_hadamard) {
    QuantumCircuit h = QuantumCircuit::with_inputs(1).add(GateKind::H, 0);
    VerifyResult r = verify_psim(h, const_zero_netlist());
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.checked, 2u);
}

TEST(Verify, not_simulates_pauli_x) {
    QuantumCircuit x = QuantumCircuit::with_inputs(1).add(GateKind::X, 0);
    EXPECT_TRUE(verify_psim(x, not_netlist()).passed());
}

TEST(Verify, identity_fails_on_pauli_x) {
    QuantumCircuit x = QuantumCircuit::with_inputs(1).add(GateKind::X, 0);
    VerifyResult r = verify_psim(x, identity_netlist(1));
    ASSERT_FALSE(r.passed());
    ASSERT_EQ(r.failures.size(), 2u);
    EXPECT_EQ(r.failures[0].x.to_string(), "0");
    EXPECT_EQ(r.failures[0].y.to_string(), "0");
    EXPECT_EQ(r.failures[1].x.to_string(), "1");
}

TEST(Verify, is_possible_examples) {
    QuantumCircuit bell = parse_circuit("qubits 2\nh 0\ncx 0 1\n");
    EXPECT_TRUE(is_possible(bell, bits("00"), bits("11")));
    EXPECT_FALSE(is_possible(bell, bits("00"), bits("01")));
    EXPECT_TRUE(is_possible(bell, bits("01"), bits("01")));
}

TEST(Verify, width_checks) {
    QuantumCircuit two = QuantumCircuit::with_inputs(2);
    EXPECT_THROW(verify_psim(two, identity_netlist(1)), WidthError);
    NetlistBuilder b(2);
    NodeId x = b.input(0);
    EXPECT_THROW(verify_psim(two, std::move(b).finish({x})), WidthError);
}

TEST(Verify, exhaustive_limit) {
    VerifyOptions opts;
    opts.exhaustive_limit = 3;
    EXPECT_THROW(verify_psim(QuantumCircuit::with_inputs(4), identity_netlist(4), opts), CapacityError);
    opts.exhaustive = false;
    opts.samples = 10;
    VerifyResult r = verify_psim(QuantumCircuit::with_inputs(4), identity_netlist(4), opts);
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.checked, 10u);
}

TEST(Verify, sampled_inputs_are_seeded) {
    VerifyOptions opts;
    opts.exhaustive = false;
    opts.samples = 50;
    opts.seed = 5;
    auto a = verification_inputs(70, opts);
    auto b = verification_inputs(70, opts);
    EXPECT_EQ(a, b);
    opts.seed = 6;
    EXPECT_NE(verification_inputs(70, opts), a);
    for (const auto &x : a) {
        EXPECT_EQ(x.size(), 70u);
    }
}

TEST(Verify, thread_count_does_not_change_result) {
    // wrong netlist for a 5-qubit X layer: every input fails
    QuantumCircuit qc = parse_circuit("qubits 5\nx 0\nx 1\nx 2\nx 3\nx 4\n");
    VerifyOptions one;
    one.threads = 1;
    VerifyOptions many;
    many.threads = 4;
    VerifyResult a = verify_psim(qc, identity_netlist(5), one);
    VerifyResult b = verify_psim(qc, identity_netlist(5), many);
    ASSERT_EQ(a.failures.size(), 32u);
    ASSERT_EQ(b.failures.size(), 32u);
    for (std::size_t k = 0; k < 32; ++k) {
        EXPECT_EQ(a.failures[k].x, b.failures[k].x);
        EXPECT_EQ(a.failures[k].y, b.failures[k].y);
    }
    EXPECT_EQ(a.failures.front().x.to_string(), "00000");
}

TEST(Verify, agrees_with_relation_oracle) {
    std::mt19937_64 rng(81);
    for (int k = 0; k < 60; ++k) {
        QuantumCircuit qc = possim::testing::random_circuit(rng, {1, 3, 3, 5, false});
        // random single-output-per-line netlist: each output a random parity
        const std::size_t n = qc.n_qubits;
        NetlistBuilder b(n);
        std::vector<NodeId> outs;
        for (std::size_t i = 0; i < n; ++i) {
            outs.push_back(build_parity(b, F2Vector::from_uint_le(rng() & ((1u << n) - 1), n)));
        }
        BoolCircuit net = std::move(b).finish(outs);
        auto rel = relation(qc);
        std::set<std::pair<F2Vector, F2Vector>> pairs(rel.begin(), rel.end());
        std::size_t bad = 0;
        for (std::uint64_t xi = 0; xi < (std::uint64_t{1} << n); ++xi) {
            F2Vector x = F2Vector::from_index(xi, n);
            bad += pairs.count({x, eval(net, x)}) ? 0 : 1;
        }
        EXPECT_EQ(verify_psim(qc, net).failures.size(), bad);
    }
}

TEST(Verify, compiled_netlists_pass) {
    std::mt19937_64 rng(82);
    for (int k = 0; k < 40; ++k) {
        QuantumCircuit qc = possim::testing::random_circuit(rng, {1, 6, 4, 8, false});
        EXPECT_TRUE(verify_psim(qc, compile(qc).netlist).passed());
    }
}
