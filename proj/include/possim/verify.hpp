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

// Checks that a netlist p-simulates a quantum circuit: for each checked
// input x, eval(C, x) must be a possible outcome of Q on x.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "possim/bcir.hpp"
#include "possim/error.hpp"
#include "possim/f2.hpp"
#include "possim/qcir.hpp"
#include "possim/sv.hpp"

namespace possim {

struct VerifyOptions {
    bool exhaustive = true;
    std::size_t samples = 1024;
    std::uint64_t seed = 0;
    Tolerance tol{};
    std::size_t exhaustive_limit = kDefaultExhaustiveLimit;
    /// 0 picks std::thread::hardware_concurrency().
    std::size_t threads = 0;
};

struct Counterexample {
    F2Vector x;
    F2Vector y;
};

struct VerifyResult {
    std::size_t checked = 0;
    /// Sorted by x; duplicates from sampling are kept.
    std::vector<Counterexample> failures;

    bool passed() const noexcept {
        return failures.empty();
    }
};

/// True iff y is a possible outcome of `qc` on input x.
inline bool is_possible(const QuantumCircuit &qc, const F2Vector &x, const F2Vector &y, Tolerance tol = {}) {
    return outcome_support(qc, simulate(qc, x), tol).contains(y);
}

inline std::vector<F2Vector> verification_inputs(std::size_t n, const VerifyOptions &opts) {
    std::vector<F2Vector> xs;
    if (opts.exhaustive) {
        if (n > opts.exhaustive_limit) {
            throw CapacityError("exhaustive verification over " + std::to_string(n) +
                                " inputs exceeds limit " + std::to_string(opts.exhaustive_limit));
        }
        xs.reserve(std::size_t{1} << n);
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
            xs.push_back(F2Vector::from_index(v, n));
        }
        return xs;
    }
    std::mt19937_64 rng(opts.seed);
    xs.reserve(opts.samples);
    for (std::size_t k = 0; k < opts.samples; ++k) {
        F2Vector x(n);
        std::uint64_t word = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i % 64 == 0) {
                word = rng();
            }
            x.set(i, (word >> (i % 64)) & 1);
        }
        xs.push_back(std::move(x));
    }
    return xs;
}

inline VerifyResult verify_psim(const QuantumCircuit &qc, const BoolCircuit &netlist,
                                const VerifyOptions &opts = {}) {
    qc.validate();
    netlist.validate();
    if (netlist.n_inputs != qc.n_inputs) {
        throw WidthError("netlist has " + std::to_string(netlist.n_inputs) + " inputs, circuit has " +
                         std::to_string(qc.n_inputs));
    }
    if (netlist.outputs.size() != qc.measured.size()) {
        throw WidthError("netlist has " + std::to_string(netlist.outputs.size()) +
                         " outputs, circuit measures " + std::to_string(qc.measured.size()));
    }
    if (qc.n_qubits > max_qubits()) {
        throw CapacityError("circuit width " + std::to_string(qc.n_qubits) +
                            " exceeds statevector limit " + std::to_string(max_qubits()));
    }
    const std::vector<F2Vector> xs = verification_inputs(qc.n_inputs, opts);

    std::size_t workers = opts.threads != 0 ? opts.threads : std::thread::hardware_concurrency();
    workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(xs.size(), 1));
    std::vector<std::vector<Counterexample>> found(workers);
    std::vector<std::exception_ptr> errors(workers);
    auto run = [&](std::size_t w) {
        try {
            for (std::size_t k = w; k < xs.size(); k += workers) {
                F2Vector y = eval(netlist, xs[k]);
                if (!is_possible(qc, xs[k], y, opts.tol)) {
                    found[w].push_back({xs[k], std::move(y)});
                }
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(run, w);
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    VerifyResult result;
    result.checked = xs.size();
    for (auto &bucket : found) {
        for (auto &c : bucket) {
            result.failures.push_back(std::move(c));
        }
    }
    std::sort(result.failures.begin(), result.failures.end(),
              [](const Counterexample &a, const Counterexample &b) { return a.x < b.x; });
    return result;
}

}  // namespace possim
