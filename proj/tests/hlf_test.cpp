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

#include "possim/hlf.hpp"

#include <random>

#include "gtest/gtest.h"

using namespace possim;

namespace {

F2Vector bits(const char *s) {
    return F2Vector::from_string(s);
}

std::uint64_t bit_at(std::uint64_t v, std::size_t i) {
    return (v >> i) & 1;
}

/// Brute force over all x: in ker(A) iff every row sum is even.
bool in_kernel(const HlfInstance &inst, std::uint64_t x) {
    for (std::size_t i = 0; i < inst.M; ++i) {
        std::uint64_t s = 0;
        for (std::size_t j = 0; j < inst.M; ++j) {
            s += inst.A.get(i, j) * bit_at(x, j);
        }
        if (s % 2) {
            return false;
        }
    }
    return true;
}

/// Double sum over integer entries.
unsigned q_oracle(const HlfInstance &inst, std::uint64_t x) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < inst.M; ++i) {
        for (std::size_t j = 0; j < inst.M; ++j) {
            s += bit_at(x, i) * inst.A.get(i, j) * bit_at(x, j);
        }
    }
    return static_cast<unsigned>(s % 4);
}

/// z solves the instance iff q(x) = 2 (z . x) mod 4 for every kernel x.
bool solves_brute_force(const HlfInstance &inst, const F2Vector &z) {
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << inst.M); ++x) {
        if (!in_kernel(inst, x)) {
            continue;
        }
        unsigned dot = static_cast<unsigned>(std::popcount(z.to_uint_le() & x) & 1);
        if (q_oracle(inst, x) != 2 * dot) {
            return false;
        }
    }
    return true;
}

std::size_t degree(const HlfInstance &inst, std::size_t v) {
    return inst.A.row(v).weight();
}

}  // namespace

TEST(Grid, small_sides) {
    HlfInstance g1 = gen_grid(1);
    EXPECT_EQ(g1.M, 1u);
    EXPECT_FALSE(g1.A.get(0, 0));

    HlfInstance g2 = gen_grid(2);
    EXPECT_EQ(g2.M, 4u);
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t u = 0; u < 4; ++u) {
        for (std::size_t v = u + 1; v < 4; ++v) {
            if (g2.A.get(u, v)) {
                edges.emplace(u, v);
            }
        }
    }
    EXPECT_EQ(edges, (std::set<std::pair<std::size_t, std::size_t>>{{0, 1}, {0, 2}, {1, 3}, {2, 3}}));

    HlfInstance g3 = gen_grid(3);
    for (std::size_t v : {0, 2, 6, 8}) {
        EXPECT_EQ(degree(g3, v), 2u);
    }
    for (std::size_t v : {1, 3, 5, 7}) {
        EXPECT_EQ(degree(g3, v), 3u);
    }
    EXPECT_EQ(degree(g3, 4), 4u);
    g3.validate();
    EXPECT_THROW(gen_grid(0), Error);
}

TEST(Random, deterministic_and_symmetric) {
    for (std::size_t M = 1; M <= 12; ++M) {
        HlfInstance a = gen_random(M, 7 + M);
        HlfInstance b = gen_random(M, 7 + M);
        EXPECT_EQ(a.A, b.A);
        EXPECT_NO_THROW(a.validate());
    }
    EXPECT_NE(gen_random(10, 1).A, gen_random(10, 2).A);
}

TEST(Validate, asymmetric_matrix) {
    HlfInstance inst{2, F2Matrix::from_rows({"01", "00"})};
    EXPECT_THROW(inst.validate(), Error);
    EXPECT_THROW(solve_hlf(inst), Error);
}

TEST(QuadraticForm, examples) {
    HlfInstance swap{2, F2Matrix::from_rows({"01", "10"})};
    EXPECT_EQ(quadratic_form(swap, bits("00")), 0u);
    EXPECT_EQ(quadratic_form(swap, bits("11")), 2u);
    EXPECT_EQ(quadratic_form(swap, bits("10")), 0u);
    EXPECT_THROW(quadratic_form(swap, bits("1")), WidthError);
}

TEST(QuadraticForm, matches_double_sum) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        HlfInstance inst = gen_random(1 + seed % 8, seed);
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << inst.M); ++x) {
            ASSERT_EQ(quadratic_form(inst, F2Vector::from_uint_le(x, inst.M)), q_oracle(inst, x));
        }
    }
}

TEST(QuadraticForm, even_and_linear_on_kernel) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        HlfInstance inst = gen_random(1 + seed % 10, 100 + seed);
        std::vector<std::uint64_t> kernel;
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << inst.M); ++x) {
            if (in_kernel(inst, x)) {
                kernel.push_back(x);
                ASSERT_EQ(q_oracle(inst, x) % 2, 0u);
            }
        }
        for (std::uint64_t x : kernel) {
            for (std::uint64_t y : kernel) {
                ASSERT_EQ(q_oracle(inst, x ^ y), (q_oracle(inst, x) + q_oracle(inst, y)) % 4);
            }
        }
    }
}

TEST(Solve, zero_matrix) {
    HlfInstance zero{2, F2Matrix(2, 2)};
    EXPECT_EQ(solve_hlf(zero).z.to_string(), "00");
}

TEST(Solve, two_by_two_grid) {
    HlfInstance g = gen_grid(2);
    auto basis = kernel_basis(g.A);
    ASSERT_EQ(basis.size(), 2u);
    std::set<std::string> got = {basis[0].to_string(), basis[1].to_string()};
    EXPECT_EQ(got, (std::set<std::string>{"1001", "0110"}));
    for (const F2Vector &e : basis) {
        EXPECT_EQ(quadratic_form(g, e), 0u);
    }
    EXPECT_EQ(solve_hlf(g).z.to_string(), "0000");
}

TEST(Solve, grids_pass_verification) {
    for (std::size_t N = 1; N <= 6; ++N) {
        HlfInstance g = gen_grid(N);
        HlfSolution sol = solve_hlf(g);
        EXPECT_TRUE(verify_hlf(g, sol, 64)) << N;
        for (const F2Vector &e : kernel_basis(g.A)) {
            unsigned q = quadratic_form(g, e);
            EXPECT_TRUE(q == 0 || q == 2);
        }
        if (N <= 4) {
            EXPECT_TRUE(solves_brute_force(g, sol.z)) << N;
        }
    }
}

TEST(Solve, random_instances_against_brute_force) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        HlfInstance inst = gen_random(1 + seed % 12, 1000 + seed);
        HlfSolution sol = solve_hlf(inst);
        ASSERT_EQ(sol.z.size(), inst.M);
        EXPECT_TRUE(verify_hlf(inst, sol));
        EXPECT_TRUE(solves_brute_force(inst, sol.z)) << seed;
    }
}

TEST(Verify, examples) {
    HlfInstance zero{2, F2Matrix(2, 2)};
    EXPECT_TRUE(verify_hlf(zero, {bits("00")}));
    EXPECT_FALSE(verify_hlf(zero, {bits("10")}));
    EXPECT_FALSE(verify_hlf(zero, {bits("000")}));
    EXPECT_TRUE(verify_hlf(gen_grid(2), {bits("0000")}));
}

TEST(Verify, agrees_with_brute_force_on_arbitrary_z) {
    std::mt19937_64 rng(71);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        HlfInstance inst = gen_random(1 + seed % 8, 2000 + seed);
        for (int k = 0; k < 8; ++k) {
            F2Vector z = F2Vector::from_uint_le(rng() & ((std::uint64_t{1} << inst.M) - 1), inst.M);
            ASSERT_EQ(verify_hlf(inst, {z}), solves_brute_force(inst, z));
        }
    }
}

TEST(Verify, sampled_path) {
    // zero matrix: the kernel is everything, dimension 20 > budget 4
    HlfInstance zero{20, F2Matrix(20, 20)};
    EXPECT_TRUE(verify_hlf(zero, {F2Vector(20)}, 4, 9));
    F2Vector bad(20);
    bad.set(7);
    EXPECT_FALSE(verify_hlf(zero, {bad}, 4, 9));
}

TEST(Format, instance_round_trip) {
    for (std::size_t M = 1; M <= 9; ++M) {
        HlfInstance inst = gen_random(M, M);
        std::string text = serialize_hlf(inst);
        std::string body = text.substr(text.find('\n') + 1);
        EXPECT_EQ(body.size(), M * (M + 1) / 2 + 1);
        HlfInstance back = parse_hlf(text);
        EXPECT_EQ(back.M, M);
        EXPECT_EQ(back.A, inst.A);
        EXPECT_EQ(serialize_hlf(back), text);
    }
    EXPECT_EQ(serialize_hlf(gen_grid(2)), "hlf 4\n0110001010\n");
}

TEST(Format, instance_errors) {
    auto line_of = [](const char *text) {
        try {
            parse_hlf(text);
        } catch (const ParseError &e) {
            return e.line();
        }
        return std::size_t{0};
    };
    EXPECT_EQ(line_of("hlf 2\n101\n"), 0u);
    EXPECT_EQ(line_of("hlf 2\n10\n"), 2u);
    EXPECT_EQ(line_of("hlf 2\n1x1\n"), 2u);
    EXPECT_EQ(line_of("hlf 0\n"), 1u);
    EXPECT_EQ(line_of("matrix 2\n101\n"), 1u);
    EXPECT_EQ(line_of("hlf 2\n101\n111\n"), 3u);
    EXPECT_EQ(line_of(""), 1u);
}

TEST(Format, solution_round_trip) {
    HlfSolution sol{bits("0110")};
    std::string text = serialize_solution(sol);
    EXPECT_EQ(text, "0110\n");
    std::istringstream in(text);
    EXPECT_EQ(parse_solution(in).z, sol.z);
}
