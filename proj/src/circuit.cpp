// Copyright 2026 The qmul Authors
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

#include "qmul/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>
#include <utility>

namespace qmul {

BigUInt parse_biguint(const std::string &text) {
    if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw std::invalid_argument("not an unsigned decimal integer: '" + text + "'");
    }
    return BigUInt(text);
}

Register::Register(std::vector<QubitId> qubits) : qubits_(std::move(qubits)) {
    std::vector<QubitId> sorted = qubits_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw CircuitError("register contains a duplicate qubit");
    }
}

Register Register::slice(std::size_t begin, std::size_t count) const {
    if (begin + count > qubits_.size()) {
        throw CircuitError("register slice out of range");
    }
    return Register(std::vector<QubitId>(qubits_.begin() + begin, qubits_.begin() + begin + count));
}

Register Register::concat(const Register &high) const {
    std::vector<QubitId> all = qubits_;
    all.insert(all.end(), high.qubits_.begin(), high.qubits_.end());
    return Register(std::move(all));
}

std::string_view mnemonic(GateKind kind) {
    switch (kind) {
        case GateKind::Not: return "not";
        case GateKind::Cnot: return "cnot";
        case GateKind::MultiCnot: return "mcnot";
        case GateKind::Toffoli: return "tof";
        case GateKind::TempAnd: return "and";
        case GateKind::TempAndUncompute: return "unand";
        case GateKind::LookupLoad: return "lookup";
        case GateKind::LookupUnload: return "unlookup";
    }
    return "?";
}

Gate Gate::not_gate(QubitId target) { return Gate{GateKind::Not, {target}}; }

Gate Gate::cnot(QubitId control, QubitId target) { return Gate{GateKind::Cnot, {control, target}}; }

Gate Gate::multi_cnot(QubitId control, std::vector<QubitId> targets) {
    Gate g{GateKind::MultiCnot, {control}};
    g.qubits.insert(g.qubits.end(), targets.begin(), targets.end());
    return g;
}

Gate Gate::toffoli(QubitId c1, QubitId c2, QubitId target) { return Gate{GateKind::Toffoli, {c1, c2, target}}; }

Gate Gate::temp_and(QubitId c1, QubitId c2, QubitId target) { return Gate{GateKind::TempAnd, {c1, c2, target}}; }

Gate Gate::temp_and_uncompute(QubitId c1, QubitId c2, QubitId target) {
    return Gate{GateKind::TempAndUncompute, {c1, c2, target}};
}

namespace {

Gate make_lookup(GateKind kind, const Register &address, const Register &target,
                 std::shared_ptr<const LookupTable> table) {
    Gate g{kind};
    g.qubits = address.qubits();
    g.qubits.insert(g.qubits.end(), target.begin(), target.end());
    g.address_width = static_cast<std::uint32_t>(address.width());
    g.table = std::move(table);
    return g;
}

}  // namespace

Gate Gate::lookup_load(const Register &address, const Register &target, std::shared_ptr<const LookupTable> table) {
    return make_lookup(GateKind::LookupLoad, address, target, std::move(table));
}

Gate Gate::lookup_unload(const Register &address, const Register &target, std::shared_ptr<const LookupTable> table) {
    return make_lookup(GateKind::LookupUnload, address, target, std::move(table));
}

std::span<const QubitId> Gate::address() const { return std::span(qubits).first(address_width); }

std::span<const QubitId> Gate::lookup_target() const { return std::span(qubits).subspan(address_width); }

double Gate::nominal_toffoli() const {
    switch (kind) {
        case GateKind::Toffoli:
        case GateKind::TempAnd:
            return 1.0;
        case GateKind::LookupLoad:
            return std::ldexp(1.0, static_cast<int>(address_width));
        case GateKind::LookupUnload:
            return 3.0 * std::exp2(address_width / 2.0);
        default:
            return 0.0;
    }
}

Gate Gate::inverse() const {
    Gate g = *this;
    switch (kind) {
        case GateKind::TempAnd: g.kind = GateKind::TempAndUncompute; break;
        case GateKind::TempAndUncompute: g.kind = GateKind::TempAnd; break;
        case GateKind::LookupLoad: g.kind = GateKind::LookupUnload; break;
        case GateKind::LookupUnload: g.kind = GateKind::LookupLoad; break;
        default: break;
    }
    return g;
}

bool Gate::operator==(const Gate &other) const {
    if (kind != other.kind || qubits != other.qubits || address_width != other.address_width || block != other.block) {
        return false;
    }
    if (static_cast<bool>(table) != static_cast<bool>(other.table)) {
        return false;
    }
    return !table || *table == *other.table;
}

namespace {

std::string describe(std::size_t index, const Gate &g) {
    std::ostringstream out;
    out << "gate " << index << " (" << mnemonic(g.kind) << ")";
    return out.str();
}


using AndTriple = std::tuple<QubitId, QubitId, QubitId>;

AndTriple and_triple(const Gate &g) {
    return {std::min(g.qubits[0], g.qubits[1]), std::max(g.qubits[0], g.qubits[1]), g.qubits[2]};
}

}  // namespace

void validate_gate(std::size_t index, const Gate &g, std::size_t qubit_count) {
    std::size_t expected = 0;
    switch (g.kind) {
        case GateKind::Not: expected = 1; break;
        case GateKind::Cnot: expected = 2; break;
        case GateKind::Toffoli:
        case GateKind::TempAnd:
        case GateKind::TempAndUncompute: expected = 3; break;
        case GateKind::MultiCnot:
            if (g.qubits.size() < 2) {
                throw CircuitError(describe(index, g) + ": needs a control and at least one target");
            }
            break;
        case GateKind::LookupLoad:
        case GateKind::LookupUnload: {
            if (g.address_width == 0 || g.address_width >= g.qubits.size()) {
                throw CircuitError(describe(index, g) + ": needs non-empty address and target");
            }
            if (g.address_width > 30) {
                throw CircuitError(describe(index, g) + ": address too wide");
            }
            if (!g.table || g.table->size() != (std::size_t{1} << g.address_width)) {
                throw CircuitError(describe(index, g) + ": table must have 2^w entries");
            }
            const BigUInt bound = pow2(g.qubits.size() - g.address_width);
            for (const auto &v : *g.table) {
                if (v < 0 || v >= bound) {
                    throw CircuitError(describe(index, g) + ": table entry does not fit the target");
                }
            }
            break;
        }
    }
    if (expected != 0 && g.qubits.size() != expected) {
        throw CircuitError(describe(index, g) + ": wrong operand count");
    }
    std::vector<QubitId> sorted = g.qubits;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw CircuitError(describe(index, g) + ": operands are not distinct");
    }
    if (!sorted.empty() && sorted.back() >= qubit_count) {
        throw CircuitError(describe(index, g) + ": qubit index out of range");
    }
}

void validate(const CircuitData &data) {
    std::vector<int> owner(data.qubit_count, 0);
    for (const auto &[role, reg] : data.registers) {
        if (reg.empty()) {
            throw CircuitError("register '" + role + "' is empty");
        }
        for (QubitId q : reg) {
            if (q >= data.qubit_count) {
                throw CircuitError("register '" + role + "' references a qubit out of range");
            }
            if (owner[q]++) {
                throw CircuitError("register '" + role + "' overlaps another register");
            }
        }
    }
    for (const auto &role : data.zero_inputs) {
        if (!data.registers.contains(role)) {
            throw CircuitError("zero-input role '" + role + "' is not a register");
        }
    }
    for (const auto &[role, limit] : data.input_limits) {
        if (!data.registers.contains(role)) {
            throw CircuitError("input limit for unknown role '" + role + "'");
        }
        if (limit <= 0) {
            throw CircuitError("input limit for '" + role + "' must be positive");
        }
    }

    // Each TempAnd must be closed by a later TempAndUncompute on the same
    // triple before its target is reused by another TempAnd.
    std::map<QubitId, AndTriple> open;
    for (std::size_t i = 0; i < data.gates.size(); ++i) {
        const Gate &g = data.gates[i];
        validate_gate(i, g, data.qubit_count);
        if (g.block >= static_cast<std::int32_t>(data.block_labels.size()) || g.block < -1) {
            throw CircuitError(describe(i, g) + ": block index out of range");
        }
        if (g.kind == GateKind::TempAnd) {
            if (open.contains(g.target())) {
                throw CircuitError(describe(i, g) + ": target already holds an open AND");
            }
            open.emplace(g.target(), and_triple(g));
        } else if (g.kind == GateKind::TempAndUncompute) {
            auto it = open.find(g.target());
            if (it == open.end() || it->second != and_triple(g)) {
                throw CircuitError(describe(i, g) + ": no matching AND to uncompute");
            }
            open.erase(it);
        }
    }
    if (!open.empty()) {
        throw CircuitError("AND on qubit " + std::to_string(open.begin()->first) + " is never uncomputed");
    }
    for (const auto &check : data.zero_checks) {
        if (check.position > data.gates.size()) {
            throw CircuitError("zero check '" + check.label + "' is past the end of the circuit");
        }
        for (QubitId q : check.qubits) {
            if (q >= data.qubit_count) {
                throw CircuitError("zero check '" + check.label + "' references a qubit out of range");
            }
        }
    }
    for (const auto &[label, position] : data.checkpoints) {
        if (position > data.gates.size()) {
            throw CircuitError("checkpoint '" + label + "' is past the end of the circuit");
        }
    }
}

Circuit::Circuit(CircuitData data) : data_(std::move(data)) {
    validate(data_);
    std::vector<bool> named(data_.qubit_count, false);
    for (const auto &[role, reg] : data_.registers) {
        for (QubitId q : reg) {
            named[q] = true;
        }
    }
    for (QubitId q = 0; q < data_.qubit_count; ++q) {
        if (!named[q]) {
            ancillas_.push_back(q);
        }
    }
}

const Register &Circuit::reg(std::string_view role) const {
    auto it = data_.registers.find(std::string(role));
    if (it == data_.registers.end()) {
        throw CircuitError("no register named '" + std::string(role) + "'");
    }
    return it->second;
}

bool Circuit::has_register(std::string_view role) const { return data_.registers.contains(std::string(role)); }

std::string_view Circuit::block_of(const Gate &gate) const {
    return gate.block < 0 ? std::string_view{} : std::string_view{data_.block_labels[gate.block]};
}

Circuit invert(const Circuit &circuit) {
    CircuitData data = circuit.data();
    const std::size_t n = data.gates.size();
    std::reverse(data.gates.begin(), data.gates.end());
    for (auto &g : data.gates) {
        g = g.inverse();
    }
    for (auto &check : data.zero_checks) {
        check.position = n - check.position;
    }
    std::stable_sort(data.zero_checks.begin(), data.zero_checks.end(),
                     [](const ZeroCheck &a, const ZeroCheck &b) { return a.position < b.position; });
    for (auto &[label, position] : data.checkpoints) {
        position = n - position;
    }
    data.zero_inputs.clear();
    data.input_limits.clear();
    return Circuit(std::move(data));
}

const LedgerEntry *ResourceReport::find(std::string_view label) const {
    for (const auto &e : block_ledger) {
        if (e.label == label) {
            return &e;
        }
    }
    return nullptr;
}

ResourceReport count_resources(const Circuit &circuit, Accounting mode) {
    ResourceReport report;
    report.qubit_count = circuit.qubit_count();
    const auto &labels = circuit.block_labels();
    const auto &overrides = circuit.nominal_overrides();

    std::vector<std::int64_t> counted(labels.size(), 0);
    std::vector<double> nominal(labels.size(), 0.0);
    std::vector<std::size_t> first_seen(labels.size(), SIZE_MAX);

    for (std::size_t i = 0; i < circuit.gates().size(); ++i) {
        const Gate &g = circuit.gates()[i];
        std::int64_t c = 0;
        if (g.kind == GateKind::Toffoli || g.kind == GateKind::TempAnd) {
            c = 1;
        } else if (g.kind == GateKind::TempAndUncompute && mode == Accounting::Strict) {
            c = 1;
        }
        report.counted_toffoli += c;
        if (g.block < 0) {
            report.nominal_toffoli += g.nominal_toffoli();
            continue;
        }
        counted[g.block] += c;
        nominal[g.block] += g.nominal_toffoli();
        first_seen[g.block] = std::min(first_seen[g.block], i);
    }

    std::vector<std::size_t> order;
    for (std::size_t b = 0; b < labels.size(); ++b) {
        if (first_seen[b] != SIZE_MAX || overrides.contains(labels[b])) {
            order.push_back(b);
        }
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return first_seen[a] < first_seen[b]; });
    for (std::size_t b : order) {
        auto it = overrides.find(labels[b]);
        const double charge = it != overrides.end() ? it->second : nominal[b];
        report.nominal_toffoli += charge;
        report.block_ledger.push_back({labels[b], counted[b], charge});
    }
    return report;
}

// ---------------------------------------------------------------------------
// CircuitBuilder

CircuitBuilder::CircuitBuilder(const Circuit &base) : data_(base.data()) {
    for (std::size_t i = 0; i < data_.block_labels.size(); ++i) {
        label_index_.emplace(data_.block_labels[i], static_cast<std::int32_t>(i));
    }
}

Register CircuitBuilder::allocate_register(std::size_t width, const std::string &role) {
    if (width == 0) {
        throw CircuitError("register '" + role + "' must have positive width");
    }
    if (data_.registers.contains(role)) {
        throw CircuitError("role '" + role + "' already allocated");
    }
    std::vector<QubitId> qubits(width);
    for (auto &q : qubits) {
        q = static_cast<QubitId>(data_.qubit_count++);
    }
    Register reg(std::move(qubits));
    data_.registers.emplace(role, reg);
    return reg;
}

void CircuitBuilder::name_register(const std::string &role, const Register &reg) {
    if (data_.registers.contains(role)) {
        throw CircuitError("role '" + role + "' already allocated");
    }
    if (reg.empty()) {
        throw CircuitError("register '" + role + "' must have positive width");
    }
    data_.registers.emplace(role, reg);
}

Register CircuitBuilder::acquire_ancillas(std::size_t width) {
    std::vector<QubitId> qubits;
    qubits.reserve(width);
    while (qubits.size() < width && !free_ancillas_.empty()) {
        qubits.push_back(free_ancillas_.back());
        free_ancillas_.pop_back();
    }
    while (qubits.size() < width) {
        qubits.push_back(static_cast<QubitId>(data_.qubit_count++));
    }
    return Register(std::move(qubits));
}

void CircuitBuilder::release_ancillas(const Register &reg) {
    // Reverse order keeps acquire() handing back the same qubits LIFO.
    for (auto it = reg.qubits().rbegin(); it != reg.qubits().rend(); ++it) {
        free_ancillas_.push_back(*it);
    }
}

void CircuitBuilder::mark_zero_input(const std::string &role) { data_.zero_inputs.insert(role); }

void CircuitBuilder::set_input_limit(const std::string &role, const BigUInt &limit) {
    data_.input_limits[role] = limit;
}

void CircuitBuilder::add(Gate gate) {
    gate.block = current_block();
    data_.gates.push_back(std::move(gate));
}

void CircuitBuilder::mcx(QubitId c, std::vector<QubitId> targets) {
    if (targets.empty()) {
        return;
    }
    if (targets.size() == 1) {
        cx(c, targets[0]);
        return;
    }
    add(Gate::multi_cnot(c, std::move(targets)));
}

void CircuitBuilder::assert_zero(const std::string &label, std::vector<QubitId> qubits) {
    std::string full = label;
    if (!label_stack_.empty()) {
        full = data_.block_labels[current_block()] + "/" + label;
    }
    data_.zero_checks.push_back({data_.gates.size(), std::move(full), std::move(qubits)});
}

void CircuitBuilder::checkpoint(const std::string &label) { data_.checkpoints[label] = data_.gates.size(); }

void CircuitBuilder::append(const Circuit &sub, std::span<const QubitId> qubit_map, std::string_view prefix) {
    if (qubit_map.size() != sub.qubit_count()) {
        throw CircuitError("append: qubit map does not cover the sub-circuit");
    }
    const std::string pre(prefix);
    std::vector<std::int32_t> block_map(sub.block_labels().size());
    for (std::size_t b = 0; b < block_map.size(); ++b) {
        const std::string label = pre + sub.block_labels()[b];
        auto [it, inserted] = label_index_.emplace(label, static_cast<std::int32_t>(data_.block_labels.size()));
        if (inserted) {
            data_.block_labels.push_back(label);
        }
        block_map[b] = it->second;
        if (auto o = sub.nominal_overrides().find(sub.block_labels()[b]); o != sub.nominal_overrides().end()) {
            data_.nominal_overrides[label] = o->second;
        }
    }
    const std::size_t offset = data_.gates.size();
    for (const Gate &g : sub.gates()) {
        Gate copy = g;
        for (auto &q : copy.qubits) {
            q = qubit_map[q];
        }
        copy.block = g.block < 0 ? current_block() : block_map[g.block];
        data_.gates.push_back(std::move(copy));
    }
    for (const auto &check : sub.zero_checks()) {
        ZeroCheck copy{check.position + offset, pre + check.label, {}};
        for (QubitId q : check.qubits) {
            copy.qubits.push_back(qubit_map[q]);
        }
        data_.zero_checks.push_back(std::move(copy));
    }
    for (const auto &[label, position] : sub.checkpoints()) {
        data_.checkpoints[pre + label] = position + offset;
    }
}

CircuitBuilder::Block::Block(CircuitBuilder &builder, std::string label, std::optional<double> nominal)
    : builder_(builder) {
    builder_.label_stack_.push_back(std::move(label));
    if (nominal) {
        const std::int32_t b = builder_.current_block();
        builder_.data_.nominal_overrides[builder_.data_.block_labels[b]] = *nominal;
    }
}

CircuitBuilder::Block::~Block() { builder_.label_stack_.pop_back(); }

std::int32_t CircuitBuilder::current_block() {
    if (label_stack_.empty()) {
        return -1;
    }
    std::string label;
    for (const auto &part : label_stack_) {
        if (!label.empty()) {
            label += '/';
        }
        label += part;
    }
    auto [it, inserted] = label_index_.emplace(label, static_cast<std::int32_t>(data_.block_labels.size()));
    if (inserted) {
        data_.block_labels.push_back(label);
    }
    return it->second;
}

Circuit CircuitBuilder::build() && { return Circuit(std::move(data_)); }

}  // namespace qmul
