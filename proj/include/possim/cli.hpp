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

// Command-line front end. `run_cli` is the whole program; tools/possim.cpp
// only forwards argv so tests can drive every subcommand in-process.
//
// Exit codes: 0 success, 1 verification failed, 2 unreadable or malformed
// input (or bad usage), 3 capacity limit exceeded, 4 internal error.

#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "possim/bcir.hpp"
#include "possim/compile.hpp"
#include "possim/error.hpp"
#include "possim/f2.hpp"
#include "possim/hlf.hpp"
#include "possim/qcir.hpp"
#include "possim/sv.hpp"
#include "possim/verify.hpp"

namespace possim {

enum ExitCode : int {
    kExitOk = 0,
    kExitFail = 1,
    kExitInput = 2,
    kExitCapacity = 3,
    kExitInternal = 4,
};

namespace cli_detail {

class InputError : public Error {
   public:
    using Error::Error;
};

inline std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot read '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::string &path, const std::string &contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << contents)) {
        throw InputError("cannot write '" + path + "'");
    }
}

inline std::string fnv1a64(const std::string &bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

inline std::string format_real(double v) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(12) << (v + 0.0);
    std::string s = out.str();
    return s == "-0.000000000000" ? "0.000000000000" : s;
}

template <typename Parse>
auto load(const std::string &path, Parse parse, std::ostream &report, std::string_view label) {
    std::string text = read_file(path);
    report << label << ' ' << path << " fnv1a64:" << fnv1a64(text) << '\n';
    return parse(std::string_view(text));
}

}  // namespace cli_detail

inline int run_cli(std::vector<std::string> args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Compile Clifford+T circuits into classical netlists that p-simulate them", "possim"};
    app.require_subcommand(1);

    std::string circuit_path, netlist_path, instance_path, solution_path, input_bits;
    double tol = kDefaultTol;
    bool rank_refine = false;
    bool exhaustive = false;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::size_t threads = 0;
    std::size_t count = 0;
    std::size_t budget = 16;

    auto *compile_cmd = app.add_subcommand("compile", "Compile a circuit to a netlist; prints a depth report");
    compile_cmd->add_option("circuit", circuit_path, "Circuit file")->required();
    compile_cmd->add_option("netlist", netlist_path, "Output netlist file")->required();
    compile_cmd->add_flag("--rank-refine", rank_refine, "Multiplex only over reachable z = S.x");
    compile_cmd->add_option("--tol", tol, "Relative amplitude threshold");

    auto *verify_cmd = app.add_subcommand("verify", "Check that a netlist p-simulates a circuit");
    verify_cmd->add_option("circuit", circuit_path, "Circuit file")->required();
    verify_cmd->add_option("netlist", netlist_path, "Netlist file")->required();
    auto *exhaustive_flag = verify_cmd->add_flag("--exhaustive", exhaustive, "Check every input");
    auto *samples_opt = verify_cmd->add_option("--samples", samples, "Check this many seeded random inputs");
    exhaustive_flag->excludes(samples_opt);
    verify_cmd->add_option("--seed", seed, "Seed for sampled inputs");
    verify_cmd->add_option("--tol", tol, "Relative amplitude threshold");
    verify_cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");

    auto *depth_cmd = app.add_subcommand("depth", "Print the depth of a netlist");
    depth_cmd->add_option("netlist", netlist_path, "Netlist file")->required();

    auto *relation_cmd = app.add_subcommand("relation", "Print every (x, y) with <y|Q|x> != 0");
    relation_cmd->add_option("circuit", circuit_path, "Circuit file")->required();
    relation_cmd->add_option("--tol", tol, "Relative amplitude threshold");

    auto *simulate_cmd = app.add_subcommand("simulate", "Print the nonzero amplitudes of Q|x>");
    simulate_cmd->add_option("circuit", circuit_path, "Circuit file")->required();
    simulate_cmd->add_option("--input", input_bits, "Input bitstring x (default all zeros)");
    simulate_cmd->add_option("--tol", tol, "Relative amplitude threshold");

    auto *hlf_cmd = app.add_subcommand("hlf", "Hidden linear function instances");
    hlf_cmd->require_subcommand(1);
    auto *grid_cmd = hlf_cmd->add_subcommand("gen-grid", "Print the N x N grid instance");
    grid_cmd->add_option("N", count, "Grid side")->required()->check(CLI::PositiveNumber);
    auto *random_cmd = hlf_cmd->add_subcommand("gen-random", "Print a seeded random symmetric instance");
    random_cmd->add_option("M", count, "Matrix size")->required()->check(CLI::PositiveNumber);
    random_cmd->add_option("--seed", seed, "Generator seed");
    auto *solve_cmd = hlf_cmd->add_subcommand("solve", "Solve an instance; prints z");
    solve_cmd->add_option("instance", instance_path, "Instance file")->required();
    auto *hverify_cmd = hlf_cmd->add_subcommand("verify", "Check a solution against an instance");
    hverify_cmd->add_option("instance", instance_path, "Instance file")->required();
    hverify_cmd->add_option("solution", solution_path, "Solution file")->required();
    hverify_cmd->add_option("--budget", budget, "Exhaustive up to this kernel dimension");
    hverify_cmd->add_option("--seed", seed, "Seed for sampled kernel elements");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (compile_cmd->parsed()) {
            std::ostringstream report;
            report << "command compile\n";
            QuantumCircuit qc = cli_detail::load(circuit_path, [](std::string_view t) { return parse_circuit(t); },
                                                 report, "circuit");
            auto art = compile(qc, CompileOptions{rank_refine, Tolerance{tol}});
            cli_detail::write_file(netlist_path, serialize_netlist(art.netlist));
            report << "netlist " << netlist_path << " fnv1a64:" << cli_detail::fnv1a64(serialize_netlist(art.netlist))
                   << '\n';
            report << format_report(art.report);
            report << "circuits 1\nfailures 0\n";
            out << report.str();
            return kExitOk;
        }
        if (verify_cmd->parsed()) {
            std::ostringstream report;
            report << "command verify\n";
            QuantumCircuit qc = cli_detail::load(circuit_path, [](std::string_view t) { return parse_circuit(t); },
                                                 report, "circuit");
            BoolCircuit bc = cli_detail::load(netlist_path, [](std::string_view t) { return parse_netlist(t); },
                                              report, "netlist");
            VerifyOptions opts;
            opts.tol = Tolerance{tol};
            opts.seed = seed;
            opts.threads = threads;
            if (samples_opt->count() > 0) {
                opts.exhaustive = false;
                opts.samples = samples;
            } else if (exhaustive_flag->count() > 0 || qc.n_inputs <= kDefaultExhaustiveLimit) {
                opts.exhaustive = true;
            } else {
                opts.exhaustive = false;
                opts.samples = 1024;
            }
            report << "mode " << (opts.exhaustive ? "exhaustive" : "sampled seed=" + std::to_string(seed)) << '\n';
            VerifyResult res = verify_psim(qc, bc, opts);
            report << "inputs_checked " << res.checked << '\n';
            report << "failures " << res.failures.size() << '\n';
            if (!res.passed()) {
                const auto &c = res.failures.front();
                report << "counterexample x=" << c.x.to_string() << " y=" << c.y.to_string() << '\n';
            }
            report << "result " << (res.passed() ? "PASS" : "FAIL") << '\n';
            out << report.str();
            return res.passed() ? kExitOk : kExitFail;
        }
        if (depth_cmd->parsed()) {
            BoolCircuit bc = parse_netlist(cli_detail::read_file(netlist_path));
            bc.validate();
            out << depth(bc) << '\n';
            return kExitOk;
        }
        if (relation_cmd->parsed()) {
            QuantumCircuit qc = parse_circuit(cli_detail::read_file(circuit_path));
            for (const auto &[x, y] : relation(qc, Tolerance{tol})) {
                out << x.to_string() << ' ' << y.to_string() << '\n';
            }
            return kExitOk;
        }
        if (simulate_cmd->parsed()) {
            QuantumCircuit qc = parse_circuit(cli_detail::read_file(circuit_path));
            F2Vector x = input_bits.empty() ? F2Vector(qc.n_inputs) : F2Vector::from_string(input_bits);
            Statevector sv = simulate(qc, x);
            for (const F2Vector &b : support(sv, Tolerance{tol})) {
                Complex a = sv.amplitude(b);
                out << b.to_string() << ' ' << cli_detail::format_real(a.real()) << ' '
                    << cli_detail::format_real(a.imag()) << '\n';
            }
            return kExitOk;
        }
        if (grid_cmd->parsed()) {
            out << serialize_hlf(gen_grid(count));
            return kExitOk;
        }
        if (random_cmd->parsed()) {
            out << serialize_hlf(gen_random(count, seed));
            return kExitOk;
        }
        if (solve_cmd->parsed()) {
            HlfInstance inst = parse_hlf(cli_detail::read_file(instance_path));
            inst.validate();
            out << serialize_solution(solve_hlf(inst));
            return kExitOk;
        }
        if (hverify_cmd->parsed()) {
            HlfInstance inst = parse_hlf(cli_detail::read_file(instance_path));
            std::istringstream sol_text(cli_detail::read_file(solution_path));
            HlfSolution sol = parse_solution(sol_text);
            bool ok = verify_hlf(inst, sol, budget, seed);
            out << (ok ? "PASS" : "FAIL") << '\n';
            return ok ? kExitOk : kExitFail;
        }
    } catch (const ParseError &e) {
        err << "parse error: " << e.what() << '\n';
        return kExitInput;
    } catch (const cli_detail::InputError &e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const WidthError &e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const CapacityError &e) {
        err << "capacity exceeded: " << e.what() << '\n';
        return kExitCapacity;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitInternal;
}

}  // namespace possim
