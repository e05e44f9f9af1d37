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

// Hidden Linear Function instances and the kernel / quadratic-form / solve
// pipeline that recovers the hidden z.
//
// For symmetric binary A, q(x) = x^T A x mod 4 (entries lifted to integers)
// is linear on ker(A) with values in {0, 2}, so q(x) = 2 (z . x) mod 4 there
// for some z. Solving for z only needs q on a kernel basis.

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "possim/error.hpp"
#include "possim/f2.hpp"
#include "possim/text.hpp"

namespace possim {

struct HlfInstance {
    std::size_t M = 0;
    F2Matrix A;

    void validate() const {
        if (A.rows() != M || A.cols() != M) {
            throw WidthError("HLF matrix must be " + std::to_string(M) + "x" + std::to_string(M));
        }
        for (std::size_t i = 0; i < M; ++i) {
            for (std::size_t j = i + 1; j < M; ++j) {
                if (A.get(i, j) != A.get(j, i)) {
                    throw Error("HLF matrix is not symmetric at (" + std::to_string(i) + ", " +
                                std::to_string(j) + ")");
                }
            }
        }
    }
};

struct HlfSolution {
    F2Vector z;
};

/// Adjacency matrix of the N x N grid graph, vertices numbered r*N + c.
inline HlfInstance gen_grid(std::size_t N) {
    if (N == 0) {
        throw Error("grid side must be at least 1");
    }
    HlfInstance inst{N * N, F2Matrix(N * N, N * N)};
    auto link = [&](std::size_t u, std::size_t v) {
        inst.A.set(u, v);
        inst.A.set(v, u);
    };
    for (std::size_t r = 0; r < N; ++r) {
        for (std::size_t c = 0; c < N; ++c) {
            std::size_t u = r * N + c;
            if (c + 1 < N) {
                link(u, u + 1);
            }
            if (r + 1 < N) {
                link(u, u + N);
            }
        }
    }
    return inst;
}

/// Uniform symmetric matrix, diagonal included, from mt19937_64(seed). One
/// generator word per upper-triangle entry, top bit used, row-major.
inline HlfInstance gen_random(std::size_t M, std::uint64_t seed) {
    if (M == 0) {
        throw Error("HLF size must be at least 1");
    }
    std::mt19937_64 rng(seed);
    HlfInstance inst{M, F2Matrix(M, M)};
    for (std::size_t i = 0; i < M; ++i) {
        for (std::size_t j = i; j < M; ++j) {
            if (rng() >> 63) {
                inst.A.set(i, j);
                inst.A.set(j, i);
            }
        }
    }
    return inst;
}

/// x^T A x over the integers, mod 4.
inline unsigned quadratic_form(const HlfInstance &inst, const F2Vector &x) {
    if (x.size() != inst.M) {
        throw WidthError("quadratic form needs " + std::to_string(inst.M) + " bits");
    }
    std::size_t total = 0;
    for (std::size_t i = 0; i < inst.M; ++i) {
        if (x.get(i)) {
            total += (inst.A.row(i) & x).weight();
        }
    }
    return static_cast<unsigned>(total % 4);
}

/// Kernel basis e_i of A, b_i = q(e_i), then z with E z = b / 2.
inline HlfSolution solve_hlf(const HlfInstance &inst) {
    inst.validate();
    std::vector<F2Vector> basis = kernel_basis(inst.A);
    F2Vector half_b(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        unsigned q = quadratic_form(inst, basis[i]);
        if (q % 2 != 0) {
            throw InternalError("quadratic form is odd on a kernel vector");
        }
        half_b.set(i, q == 2);
    }
    F2Matrix e = F2Matrix::from_rows(std::move(basis), inst.M);
    try {
        return HlfSolution{solve(e, half_b)};
    } catch (const NoSolution &) {
        throw InternalError("kernel basis system is inconsistent");
    }
}

/// Checks q(x) = 2 (z . x) mod 4 on span(ker A): every element when the
/// kernel has dimension <= budget, otherwise 10000 random combinations drawn
/// from mt19937_64(seed).
inline bool verify_hlf(const HlfInstance &inst, const HlfSolution &sol, std::size_t budget = 16,
                       std::uint64_t seed = 0) {
    inst.validate();
    if (sol.z.size() != inst.M) {
        return false;
    }
    const std::vector<F2Vector> basis = kernel_basis(inst.A);
    const std::size_t k = basis.size();
    auto holds = [&](const F2Vector &x) { return quadratic_form(inst, x) == (sol.z.dot(x) ? 2u : 0u); };
    F2Vector x(inst.M);
    if (k <= budget) {
        // Gray-code walk: each step toggles one basis vector.
        if (!holds(x)) {
            return false;
        }
        for (std::uint64_t step = 1; step < (std::uint64_t{1} << k); ++step) {
            x ^= basis[static_cast<std::size_t>(std::countr_zero(step))];
            if (!holds(x)) {
                return false;
            }
        }
        return true;
    }
    std::mt19937_64 rng(seed);
    for (int sample = 0; sample < 10000; ++sample) {
        F2Vector y(inst.M);
        std::uint64_t word = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if (i % 64 == 0) {
                word = rng();
            }
            if ((word >> (i % 64)) & 1) {
                y ^= basis[i];
            }
        }
        if (!holds(y)) {
            return false;
        }
    }
    return true;
}

/// "hlf <M>" followed by the M(M+1)/2 upper-triangle bits, row-major,
/// diagonal included.
inline std::string serialize_hlf(const HlfInstance &inst) {
    std::string bits;
    bits.reserve(inst.M * (inst.M + 1) / 2);
    for (std::size_t i = 0; i < inst.M; ++i) {
        for (std::size_t j = i; j < inst.M; ++j) {
            bits += inst.A.get(i, j) ? '1' : '0';
        }
    }
    return "hlf " + std::to_string(inst.M) + "\n" + bits + "\n";
}

inline HlfInstance parse_hlf(std::istream &in) {
    std::size_t M = 0;
    bool have_header = false;
    std::string bits;
    std::size_t bits_line = 0;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto words = detail::split_words(detail::strip_comment(raw));
        if (words.empty()) {
            continue;
        }
        if (!have_header) {
            if (words.size() != 2 || words[0] != "hlf") {
                throw ParseError(line_no, "missing 'hlf <M>' header");
            }
            M = detail::parse_uint(words[1], line_no, "size");
            if (M == 0) {
                throw ParseError(line_no, "HLF size must be at least 1");
            }
            have_header = true;
        } else if (bits_line == 0 && words.size() == 1) {
            bits = std::string(words[0]);
            bits_line = line_no;
        } else {
            throw ParseError(line_no, "expected exactly one row of matrix bits");
        }
    }
    if (!have_header) {
        throw ParseError(line_no == 0 ? 1 : line_no, "missing 'hlf <M>' header");
    }
    if (bits.size() != M * (M + 1) / 2) {
        throw ParseError(bits_line == 0 ? line_no : bits_line,
                         "expected " + std::to_string(M * (M + 1) / 2) + " matrix bits, got " +
                             std::to_string(bits.size()));
    }
    HlfInstance inst{M, F2Matrix(M, M)};
    std::size_t k = 0;
    for (std::size_t i = 0; i < M; ++i) {
        for (std::size_t j = i; j < M; ++j, ++k) {
            if (bits[k] != '0' && bits[k] != '1') {
                throw ParseError(bits_line, "matrix bits must be '0' or '1'");
            }
            if (bits[k] == '1') {
                inst.A.set(i, j);
                inst.A.set(j, i);
            }
        }
    }
    return inst;
}

inline HlfInstance parse_hlf(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_hlf(in);
}

inline std::string serialize_solution(const HlfSolution &sol) {
    return sol.z.to_string() + "\n";
}

inline HlfSolution parse_solution(std::istream &in) {
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto words = detail::split_words(detail::strip_comment(raw));
        if (words.empty()) {
            continue;
        }
        if (words.size() != 1) {
            throw ParseError(line_no, "expected a single bitstring");
        }
        try {
            return HlfSolution{F2Vector::from_string(words[0])};
        } catch (const ParseError &e) {
            throw ParseError(line_no, e.what());
        }
    }
    throw ParseError(line_no == 0 ? 1 : line_no, "missing solution bitstring");
}

}  // namespace possim
