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

// Boolean netlists over {NOT, AND, OR} with fan-in at most 2, plus the
// building blocks the compiler assembles them from.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "possim/error.hpp"
#include "possim/f2.hpp"
#include "possim/text.hpp"

namespace possim {

using NodeId = std::uint32_t;

enum class NodeKind : std::uint8_t { Input, Const, Not, And, Or };

/// For Input, `a` is the input index; for Const, `a` is the bit. Not uses
/// `a`; And/Or use `a` and `b`. Operands always precede the node.
struct BoolNode {
    NodeKind kind = NodeKind::Const;
    NodeId a = 0;
    NodeId b = 0;

    std::size_t fan_in() const noexcept {
        switch (kind) {
            case NodeKind::Not:
                return 1;
            case NodeKind::And:
            case NodeKind::Or:
                return 2;
            default:
                return 0;
        }
    }
    bool is_gate() const noexcept {
        return fan_in() > 0;
    }

    friend bool operator==(const BoolNode &x, const BoolNode &y) {
        return x.kind == y.kind && x.a == y.a && (x.fan_in() < 2 || x.b == y.b);
    }
};

struct BoolCircuit {
    std::size_t n_inputs = 0;
    std::vector<BoolNode> nodes;
    std::vector<NodeId> outputs;

    std::size_t gate_count() const {
        return static_cast<std::size_t>(
            std::count_if(nodes.begin(), nodes.end(), [](const BoolNode &n) { return n.is_gate(); }));
    }

    std::size_t count(NodeKind kind) const {
        return static_cast<std::size_t>(std::count_if(
            nodes.begin(), nodes.end(), [kind](const BoolNode &n) { return n.kind == kind; }));
    }

    /// Structural checks: operand ids precede their node, input indices and
    /// constants are in range, outputs exist.
    void validate() const {
        for (std::size_t id = 0; id < nodes.size(); ++id) {
            const BoolNode &n = nodes[id];
            switch (n.kind) {
                case NodeKind::Input:
                    if (n.a >= n_inputs) {
                        throw Error("node " + std::to_string(id) + " reads input " +
                                    std::to_string(n.a) + " of " + std::to_string(n_inputs));
                    }
                    break;
                case NodeKind::Const:
                    if (n.a > 1) {
                        throw Error("node " + std::to_string(id) + " has a non-binary constant");
                    }
                    break;
                case NodeKind::And:
                case NodeKind::Or:
                    if (n.b >= id) {
                        throw Error("node " + std::to_string(id) + " references a later node");
                    }
                    [[fallthrough]];
                case NodeKind::Not:
                    if (n.a >= id) {
                        throw Error("node " + std::to_string(id) + " references a later node");
                    }
                    break;
            }
        }
        for (NodeId o : outputs) {
            if (o >= nodes.size()) {
                throw Error("output references missing node " + std::to_string(o));
            }
        }
    }

    friend bool operator==(const BoolCircuit &, const BoolCircuit &) = default;
};

inline F2Vector eval(const BoolCircuit &bc, const F2Vector &x) {
    if (x.size() != bc.n_inputs) {
        throw WidthError("netlist expects " + std::to_string(bc.n_inputs) + " input bits, got " +
                         std::to_string(x.size()));
    }
    std::vector<std::uint8_t> value(bc.nodes.size(), 0);
    for (std::size_t id = 0; id < bc.nodes.size(); ++id) {
        const BoolNode &n = bc.nodes[id];
        switch (n.kind) {
            case NodeKind::Input:
                value[id] = x.get(n.a);
                break;
            case NodeKind::Const:
                value[id] = static_cast<std::uint8_t>(n.a);
                break;
            case NodeKind::Not:
                value[id] = !value[n.a];
                break;
            case NodeKind::And:
                value[id] = value[n.a] & value[n.b];
                break;
            case NodeKind::Or:
                value[id] = value[n.a] | value[n.b];
                break;
        }
    }
    F2Vector y(bc.outputs.size());
    for (std::size_t k = 0; k < bc.outputs.size(); ++k) {
        y.set(k, value[bc.outputs[k]] != 0);
    }
    return y;
}

/// Per-node depth: Inputs and Consts sit at 0, each gate adds 1. Nodes with
/// id < `floor_below` are treated as depth-0 sources, which measures the
/// depth contributed by nodes built after that point.
inline std::vector<std::size_t> node_depths(const BoolCircuit &bc, std::size_t floor_below = 0) {
    std::vector<std::size_t> d(bc.nodes.size(), 0);
    for (std::size_t id = floor_below; id < bc.nodes.size(); ++id) {
        const BoolNode &n = bc.nodes[id];
        if (n.fan_in() == 1) {
            d[id] = d[n.a] + 1;
        } else if (n.fan_in() == 2) {
            d[id] = std::max(d[n.a], d[n.b]) + 1;
        }
    }
    return d;
}

/// Longest source-to-output path, in gates.
inline std::size_t depth(const BoolCircuit &bc) {
    auto d = node_depths(bc);
    std::size_t out = 0;
    for (NodeId o : bc.outputs) {
        out = std::max(out, d[o]);
    }
    return out;
}

inline std::string_view node_keyword(NodeKind k) {
    switch (k) {
        case NodeKind::Input:
            return "INPUT";
        case NodeKind::Const:
            return "CONST";
        case NodeKind::Not:
            return "NOT";
        case NodeKind::And:
            return "AND";
        case NodeKind::Or:
            return "OR";
    }
    return "?";
}

/// Netlist text format:
///
///     inputs <n>
///     outputs <id> <id> ...
///     <id> INPUT <index> | <id> CONST <0|1> | <id> NOT <src> | <id> AND <a> <b> | <id> OR <a> <b>
inline std::string serialize_netlist(const BoolCircuit &bc) {
    std::ostringstream out;
    out << "inputs " << bc.n_inputs << '\n';
    out << "outputs";
    for (NodeId o : bc.outputs) {
        out << ' ' << o;
    }
    out << '\n';
    for (std::size_t id = 0; id < bc.nodes.size(); ++id) {
        const BoolNode &n = bc.nodes[id];
        out << id << ' ' << node_keyword(n.kind) << ' ' << n.a;
        if (n.fan_in() == 2) {
            out << ' ' << n.b;
        }
        out << '\n';
    }
    return out.str();
}

/// Parses the netlist format. Ids must be strictly increasing; gaps are
/// allowed and squeezed out, so the parsed circuit always has dense ids.
inline BoolCircuit parse_netlist(std::istream &in) {
    BoolCircuit bc;
    bool have_inputs = false;
    bool have_outputs = false;
    std::vector<std::uint64_t> raw_outputs;
    std::size_t outputs_line = 0;
    std::map<std::uint64_t, NodeId> dense;
    std::uint64_t last_id = 0;
    std::string raw;
    std::size_t line_no = 0;
    auto lookup = [&](std::uint64_t id, std::size_t ln) {
        auto it = dense.find(id);
        if (it == dense.end()) {
            throw ParseError(ln, "reference to undefined node " + std::to_string(id));
        }
        return it->second;
    };
    while (std::getline(in, raw)) {
        ++line_no;
        auto words = detail::split_words(detail::strip_comment(raw));
        if (words.empty()) {
            continue;
        }
        if (!have_inputs) {
            if (words[0] != "inputs" || words.size() != 2) {
                throw ParseError(line_no, "missing 'inputs <n>' header");
            }
            bc.n_inputs = detail::parse_uint(words[1], line_no, "input count");
            have_inputs = true;
            continue;
        }
        if (!have_outputs) {
            if (words[0] != "outputs") {
                throw ParseError(line_no, "missing 'outputs ...' header");
            }
            for (std::size_t k = 1; k < words.size(); ++k) {
                raw_outputs.push_back(detail::parse_uint(words[k], line_no, "node id"));
            }
            outputs_line = line_no;
            have_outputs = true;
            continue;
        }
        if (words.size() < 3) {
            throw ParseError(line_no, "expected '<id> <KIND> <operands>'");
        }
        std::uint64_t id = detail::parse_uint(words[0], line_no, "node id");
        if (!dense.empty() && id <= last_id) {
            throw ParseError(line_no, "node ids must be strictly increasing");
        }
        std::string_view kw = words[1];
        BoolNode node;
        std::size_t want = 0;
        if (kw == "INPUT") {
            node.kind = NodeKind::Input;
            want = 1;
        } else if (kw == "CONST") {
            node.kind = NodeKind::Const;
            want = 1;
        } else if (kw == "NOT") {
            node.kind = NodeKind::Not;
            want = 1;
        } else if (kw == "AND") {
            node.kind = NodeKind::And;
            want = 2;
        } else if (kw == "OR") {
            node.kind = NodeKind::Or;
            want = 2;
        } else {
            throw ParseError(line_no, "unknown node kind '" + std::string(kw) + "'");
        }
        if (words.size() != want + 2) {
            throw ParseError(line_no, std::string(kw) + " takes " + std::to_string(want) +
                                          " operand" + (want == 1 ? "" : "s"));
        }
        std::uint64_t first = detail::parse_uint(words[2], line_no, "operand");
        if (node.kind == NodeKind::Input) {
            if (first >= bc.n_inputs) {
                throw ParseError(line_no, "input index " + std::to_string(first) + " out of range");
            }
            node.a = static_cast<NodeId>(first);
        } else if (node.kind == NodeKind::Const) {
            if (first > 1) {
                throw ParseError(line_no, "constant must be 0 or 1");
            }
            node.a = static_cast<NodeId>(first);
        } else {
            node.a = lookup(first, line_no);
            if (want == 2) {
                node.b = lookup(detail::parse_uint(words[3], line_no, "operand"), line_no);
            }
        }
        dense[id] = static_cast<NodeId>(bc.nodes.size());
        last_id = id;
        bc.nodes.push_back(node);
    }
    if (!have_inputs) {
        throw ParseError(line_no == 0 ? 1 : line_no, "missing 'inputs <n>' header");
    }
    if (!have_outputs) {
        throw ParseError(line_no, "missing 'outputs ...' header");
    }
    for (std::uint64_t o : raw_outputs) {
        bc.outputs.push_back(lookup(o, outputs_line));
    }
    return bc;
}

inline BoolCircuit parse_netlist(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_netlist(in);
}

/// Appends nodes to a netlist under construction. Folds constants, reuses
/// input/constant nodes, and caches NOT per source so a negated wire is only
/// built once.
class NetlistBuilder {
   public:
    explicit NetlistBuilder(std::size_t n_inputs) {
        bc_.n_inputs = n_inputs;
    }

    std::size_t size() const noexcept {
        return bc_.nodes.size();
    }
    const BoolNode &node(NodeId id) const {
        return bc_.nodes[id];
    }
    std::size_t n_inputs() const noexcept {
        return bc_.n_inputs;
    }

    NodeId input(std::size_t index) {
        if (index >= bc_.n_inputs) {
            throw WidthError("input " + std::to_string(index) + " out of range");
        }
        auto [it, fresh] = inputs_.try_emplace(index, 0);
        if (fresh) {
            it->second = push({NodeKind::Input, static_cast<NodeId>(index), 0});
        }
        return it->second;
    }

    NodeId constant(bool bit) {
        auto &slot = consts_[bit ? 1 : 0];
        if (!slot) {
            slot = push({NodeKind::Const, bit ? 1u : 0u, 0});
        }
        return *slot;
    }

    std::optional<bool> constant_value(NodeId id) const {
        const BoolNode &n = bc_.nodes[id];
        if (n.kind == NodeKind::Const) {
            return n.a != 0;
        }
        return std::nullopt;
    }

    NodeId not_(NodeId a) {
        if (auto c = constant_value(a)) {
            return constant(!*c);
        }
        auto [it, fresh] = nots_.try_emplace(a, 0);
        if (fresh) {
            it->second = push({NodeKind::Not, a, 0});
        }
        return it->second;
    }

    NodeId and_(NodeId a, NodeId b) {
        auto ca = constant_value(a);
        auto cb = constant_value(b);
        if ((ca && !*ca) || (cb && !*cb)) {
            return constant(false);
        }
        if (ca) {
            return b;
        }
        if (cb || a == b) {
            return a;
        }
        return push({NodeKind::And, a, b});
    }

    NodeId or_(NodeId a, NodeId b) {
        auto ca = constant_value(a);
        auto cb = constant_value(b);
        if ((ca && *ca) || (cb && *cb)) {
            return constant(true);
        }
        if (ca) {
            return b;
        }
        if (cb || a == b) {
            return a;
        }
        return push({NodeKind::Or, a, b});
    }

    /// (a OR b) AND NOT (a AND b): four gates, depth 3.
    NodeId xor_(NodeId a, NodeId b) {
        auto ca = constant_value(a);
        auto cb = constant_value(b);
        if (ca) {
            return *ca ? not_(b) : b;
        }
        if (cb) {
            return *cb ? not_(a) : a;
        }
        if (a == b) {
            return constant(false);
        }
        NodeId either = push({NodeKind::Or, a, b});
        NodeId both = push({NodeKind::And, a, b});
        NodeId not_both = push({NodeKind::Not, both, 0});
        return push({NodeKind::And, either, not_both});
    }

    NodeId and_tree(std::vector<NodeId> leaves) {
        return reduce(std::move(leaves), true, [this](NodeId a, NodeId b) { return and_(a, b); });
    }
    NodeId or_tree(std::vector<NodeId> leaves) {
        return reduce(std::move(leaves), false, [this](NodeId a, NodeId b) { return or_(a, b); });
    }
    NodeId xor_tree(std::vector<NodeId> leaves) {
        return reduce(std::move(leaves), false, [this](NodeId a, NodeId b) { return xor_(a, b); });
    }

    BoolCircuit finish(std::vector<NodeId> outputs) && {
        bc_.outputs = std::move(outputs);
        return std::move(bc_);
    }

   private:
    NodeId push(BoolNode n) {
        bc_.nodes.push_back(n);
        return static_cast<NodeId>(bc_.nodes.size() - 1);
    }

    // Balanced pairwise reduction: ceil(log2 |leaves|) levels.
    template <typename Op>
    NodeId reduce(std::vector<NodeId> level, bool empty_value, Op op) {
        if (level.empty()) {
            return constant(empty_value);
        }
        while (level.size() > 1) {
            std::vector<NodeId> next;
            next.reserve((level.size() + 1) / 2);
            for (std::size_t k = 0; k + 1 < level.size(); k += 2) {
                next.push_back(op(level[k], level[k + 1]));
            }
            if (level.size() % 2 == 1) {
                next.push_back(level.back());
            }
            level = std::move(next);
        }
        return level.front();
    }

    BoolCircuit bc_;
    std::unordered_map<std::size_t, NodeId> inputs_;
    std::unordered_map<NodeId, NodeId> nots_;
    std::optional<NodeId> consts_[2];
};

/// XOR of the inputs selected by `a`, as a balanced tree of XOR blocks.
/// Weight 0 gives Const(0), weight 1 the bare input wire.
inline NodeId build_parity(NetlistBuilder &b, const F2Vector &a) {
    if (a.size() != b.n_inputs()) {
        throw WidthError("parity mask has " + std::to_string(a.size()) + " bits for " +
                         std::to_string(b.n_inputs()) + " inputs");
    }
    std::vector<NodeId> leaves;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.get(i)) {
            leaves.push_back(b.input(i));
        }
    }
    return b.xor_tree(std::move(leaves));
}

/// Node that is 1 iff the little-endian value of z equals j, where z[k]
/// contributes bit k.
inline NodeId build_decoder(NetlistBuilder &b, std::span<const NodeId> z, std::uint64_t j) {
    std::vector<NodeId> literals;
    literals.reserve(z.size());
    for (std::size_t k = 0; k < z.size(); ++k) {
        literals.push_back(((j >> k) & 1) ? z[k] : b.not_(z[k]));
    }
    return b.and_tree(std::move(literals));
}

struct MuxResult {
    std::vector<NodeId> outputs;
    /// Terms fed to each output's OR tree, before constant folding.
    std::size_t leaves_per_output = 0;
};

/// y_i = OR_j (candidates[j][i] AND select[j]). With one candidate and no
/// select line the candidate passes through unchanged.
inline MuxResult build_mux(NetlistBuilder &b, const std::vector<std::vector<NodeId>> &candidates,
                           const std::vector<NodeId> &select) {
    if (candidates.empty()) {
        throw Error("multiplexer needs at least one candidate");
    }
    const std::size_t width = candidates.front().size();
    for (const auto &c : candidates) {
        if (c.size() != width) {
            throw WidthError("multiplexer candidates differ in width");
        }
    }
    if (candidates.size() == 1 && select.empty()) {
        return {candidates.front(), 1};
    }
    if (select.size() != candidates.size()) {
        throw WidthError("multiplexer needs one select line per candidate");
    }
    MuxResult out;
    out.leaves_per_output = candidates.size();
    for (std::size_t i = 0; i < width; ++i) {
        std::vector<NodeId> terms;
        terms.reserve(candidates.size());
        for (std::size_t j = 0; j < candidates.size(); ++j) {
            terms.push_back(b.and_(candidates[j][i], select[j]));
        }
        out.outputs.push_back(b.or_tree(std::move(terms)));
    }
    return out;
}

}  // namespace possim
