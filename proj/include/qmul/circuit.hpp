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

#pragma once

#include "qmul/bigint.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qmul {

using QubitId = std::uint32_t;

/// Ordered qubits of a little-endian unsigned integer: position k holds the
/// coefficient of 2^k.
class Register {
public:
    Register() = default;
    explicit Register(std::vector<QubitId> qubits);

    std::size_t width() const { return qubits_.size(); }
    bool empty() const { return qubits_.empty(); }
    QubitId operator[](std::size_t k) const { return qubits_[k]; }
    const std::vector<QubitId> &qubits() const { return qubits_; }

    /// Sub-register of `count` qubits starting at bit `begin`.
    Register slice(std::size_t begin, std::size_t count) const;
    /// This register followed by `high` (high bits appended above).
    Register concat(const Register &high) const;

    auto begin() const { return qubits_.begin(); }
    auto end() const { return qubits_.end(); }

    bool operator==(const Register &) const = default;

private:
    std::vector<QubitId> qubits_;
};

enum class GateKind : std::uint8_t {
    Not,
    Cnot,
    MultiCnot,
    Toffoli,
    TempAnd,
    TempAndUncompute,
    LookupLoad,
    LookupUnload,
};

std::string_view mnemonic(GateKind kind);

using LookupTable = std::vector<BigUInt>;

/// One reversible primitive.
///
/// Operand layout in `qubits`:
///   Not              [target]
///   Cnot             [control, target]
///   MultiCnot        [control, target...]
///   Toffoli/TempAnd* [control1, control2, target]
///   Lookup*          [address (address_width qubits)..., target...]
struct Gate {
    GateKind kind = GateKind::Not;
    std::vector<QubitId> qubits;
    std::uint32_t address_width = 0;
    std::shared_ptr<const LookupTable> table;
    /// Index into Circuit::block_labels(), or -1 for unlabeled gates.
    std::int32_t block = -1;

    static Gate not_gate(QubitId target);
    static Gate cnot(QubitId control, QubitId target);
    static Gate multi_cnot(QubitId control, std::vector<QubitId> targets);
    static Gate toffoli(QubitId c1, QubitId c2, QubitId target);
    static Gate temp_and(QubitId c1, QubitId c2, QubitId target);
    static Gate temp_and_uncompute(QubitId c1, QubitId c2, QubitId target);
    static Gate lookup_load(const Register &address, const Register &target,
                            std::shared_ptr<const LookupTable> table);
    static Gate lookup_unload(const Register &address, const Register &target,
                              std::shared_ptr<const LookupTable> table);

    std::span<const QubitId> address() const;
    std::span<const QubitId> lookup_target() const;
    QubitId target() const { return qubits.back(); }

    bool is_lookup() const {
        return kind == GateKind::LookupLoad || kind == GateKind::LookupUnload;
    }

    /// Nominal Toffoli charge: 1 for Toffoli/TempAnd, 2^w for a w-bit lookup
    /// load, 3*2^(w/2) for its unload, 0 otherwise.
    double nominal_toffoli() const;

    /// Inverse primitive: TempAnd <-> TempAndUncompute and
    /// LookupLoad <-> LookupUnload swap; everything else is self-inverse.
    Gate inverse() const;

    bool operator==(const Gate &other) const;
};

/// Qubits that must read zero before the gate at `position` executes.
struct ZeroCheck {
    std::size_t position = 0;
    std::string label;
    std::vector<QubitId> qubits;

    bool operator==(const ZeroCheck &) const = default;
};

struct CircuitData {
    std::size_t qubit_count = 0;
    std::vector<Gate> gates;
    std::map<std::string, Register> registers;
    std::vector<std::string> block_labels;
    /// Block label -> fixed nominal charge replacing the gate-level sum.
    std::map<std::string, double> nominal_overrides;
    /// Roles that must be all-zero on entry.
    std::set<std::string> zero_inputs;
    /// Role -> exclusive upper bound on the input value (tighter than 2^width).
    std::map<std::string, BigUInt> input_limits;
    std::vector<ZeroCheck> zero_checks;
    /// Named gate positions usable as simulation stop points.
    std::map<std::string, std::size_t> checkpoints;

    bool operator==(const CircuitData &) const = default;
};

class CircuitError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Immutable, validated gate sequence plus register map and ledger metadata.
/// Qubits that belong to no named register form the ancilla set: they enter
/// and leave in |0>.
class Circuit {
public:
    Circuit() = default;
    /// Validates `data`; throws CircuitError when malformed.
    explicit Circuit(CircuitData data);

    std::size_t qubit_count() const { return data_.qubit_count; }
    const std::vector<Gate> &gates() const { return data_.gates; }
    const std::map<std::string, Register> &registers() const { return data_.registers; }
    const Register &reg(std::string_view role) const;
    bool has_register(std::string_view role) const;
    const std::vector<QubitId> &ancillas() const { return ancillas_; }
    const std::vector<std::string> &block_labels() const { return data_.block_labels; }
    const std::map<std::string, double> &nominal_overrides() const { return data_.nominal_overrides; }
    const std::set<std::string> &zero_inputs() const { return data_.zero_inputs; }
    const std::map<std::string, BigUInt> &input_limits() const { return data_.input_limits; }
    const std::vector<ZeroCheck> &zero_checks() const { return data_.zero_checks; }
    const std::map<std::string, std::size_t> &checkpoints() const { return data_.checkpoints; }
    const CircuitData &data() const { return data_; }

    std::string_view block_of(const Gate &gate) const;

    bool operator==(const Circuit &other) const { return data_ == other.data_; }

private:
    CircuitData data_;
    std::vector<QubitId> ancillas_;
};

/// Checks operand ranges/distinctness, register disjointness, lookup table
/// shapes and the TempAnd/TempAndUncompute nesting discipline.
void validate(const CircuitData &data);
/// Checks one gate's operands: count, distinctness, range, lookup shape.
void validate_gate(std::size_t index, const Gate &g, std::size_t qubit_count);

/// Gate-by-gate reverse with each gate replaced by its inverse. Zero-input
/// requirements are dropped (the inverse consumes the forward outputs).
Circuit invert(const Circuit &circuit);

enum class Accounting {
    /// TempAndUncompute is free (measurement-based uncomputation).
    Gidney,
    /// Every logical Toffoli, including AND uncomputation, costs 1.
    Strict,
};

struct LedgerEntry {
    std::string label;
    std::int64_t counted = 0;
    double nominal = 0.0;
};

struct ResourceReport {
    std::int64_t counted_toffoli = 0;
    double nominal_toffoli = 0.0;
    std::size_t qubit_count = 0;
    /// One entry per block label in first-appearance order.
    std::vector<LedgerEntry> block_ledger;

    const LedgerEntry *find(std::string_view label) const;
};

ResourceReport count_resources(const Circuit &circuit, Accounting mode = Accounting::Gidney);

/// Incremental circuit construction. Not thread-safe; one builder per thread.
class CircuitBuilder {
public:
    CircuitBuilder() = default;
    /// Continue building on top of an existing circuit.
    explicit CircuitBuilder(const Circuit &base);

    /// Fresh qubits bound to `role`. Throws on zero width or a duplicate role.
    Register allocate_register(std::size_t width, const std::string &role);
    /// Binds already-allocated qubits (e.g. a relabeled slice of a work
    /// register) to `role`.
    void name_register(const std::string &role, const Register &reg);
    /// Zeroed scratch qubits, reused from released ancillas when possible.
    Register acquire_ancillas(std::size_t width);
    /// Returns scratch qubits to the pool; they must be back in |0>.
    void release_ancillas(const Register &reg);

    void mark_zero_input(const std::string &role);
    void set_input_limit(const std::string &role, const BigUInt &limit);

    void add(Gate gate);
    void x(QubitId q) { add(Gate::not_gate(q)); }
    void cx(QubitId c, QubitId t) { add(Gate::cnot(c, t)); }
    void mcx(QubitId c, std::vector<QubitId> targets);
    void ccx(QubitId c1, QubitId c2, QubitId t) { add(Gate::toffoli(c1, c2, t)); }
    void and_compute(QubitId c1, QubitId c2, QubitId t) { add(Gate::temp_and(c1, c2, t)); }
    void and_uncompute(QubitId c1, QubitId c2, QubitId t) { add(Gate::temp_and_uncompute(c1, c2, t)); }

    void assert_zero(const std::string &label, std::vector<QubitId> qubits);
    void checkpoint(const std::string &label);

    /// Appends `sub` with its qubit i mapped to qubit_map[i]; block labels,
    /// zero checks and checkpoints are prefixed with `prefix`.
    void append(const Circuit &sub, std::span<const QubitId> qubit_map, std::string_view prefix = {});

    std::size_t gate_count() const { return data_.gates.size(); }
    std::size_t qubit_count() const { return data_.qubit_count; }

    /// Labels gates emitted during its lifetime. Nested scopes join labels
    /// with '/'. An optional nominal charge replaces the gate-level sum for
    /// exactly this label.
    class Block {
    public:
        Block(CircuitBuilder &builder, std::string label, std::optional<double> nominal = std::nullopt);
        ~Block();
        Block(const Block &) = delete;
        Block &operator=(const Block &) = delete;

    private:
        CircuitBuilder &builder_;
    };

    Circuit build() &&;

private:
    std::int32_t current_block();

    CircuitData data_;
    std::vector<QubitId> free_ancillas_;
    std::vector<std::string> label_stack_;
    std::map<std::string, std::int32_t> label_index_;
};

}  // namespace qmul
