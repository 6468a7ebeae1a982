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

#include "qmul/circuit.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace qmul {

/// Addend bits, least significant first. An empty slot is a constant 0 bit.
using Addend = std::vector<std::optional<QubitId>>;

/// The register's qubits, zero-extended to `width` slots when width > reg.width().
Addend addend_of(const Register &reg, std::size_t width = 0);

// ---------------------------------------------------------------------------
// Emitters. These append gates to a builder and are the building material for
// the multipliers. All of them leave every scratch qubit they use in |0>.

/// target <- (target + addend + carry_in) mod 2^width(target).
///
/// Gidney ripple: one temporary AND per carry, uncomputed for free. The top
/// target qubit absorbs the final carry, so a "carry-out" adder is simply a
/// target window one bit wider than the addend. Toffoli cost is the number
/// of non-constant carries, i.e. width(target) - 1 whenever bit 0 of the
/// addend (or the carry-in) is live.
void emit_add(CircuitBuilder &b, const Addend &addend, const Register &target,
              std::optional<QubitId> carry_in = std::nullopt);

/// target <- (target - addend) mod 2^width(target), as NOT(NOT(target) + addend).
void emit_subtract(CircuitBuilder &b, const Addend &addend, const Register &target);

/// target <- target + ctrl*addend: one AND per live addend bit, then emit_add.
void emit_controlled_add(CircuitBuilder &b, QubitId ctrl, const Addend &addend, const Register &target);

/// Controlled addition with carry-out: `window` is one bit wider than `a`.
/// Realized as an (n+1)-bit controlled addition of `a` padded by a zero
/// scratch qubit, 2n+1 Toffoli.
void emit_controlled_add_carry_out(CircuitBuilder &b, QubitId ctrl, const Register &a, const Register &window);

/// Controlled add-subtract on the window low (+ optional carry qubit):
///   ctrl=1: window + addend
///   ctrl=0: window + 2^m - addend   (m = width(low); with carry)
///           window - addend         (without carry)
/// arithmetic taken mod 2^width(window). Two multi-target CNOTs (active on
/// ctrl=0) conjugate an ordinary adder.
void emit_controlled_addsub(CircuitBuilder &b, QubitId ctrl, const Addend &addend, const Register &low,
                            std::optional<QubitId> carry);

/// target <- target + c (mod 2^width), or + ctrl*c when `ctrl` is given. The
/// constant is staged in scratch qubits (NOT / CNOT, both free).
void emit_add_constant(CircuitBuilder &b, const BigUInt &c, const Register &target,
                       std::optional<QubitId> ctrl = std::nullopt);

void emit_lookup(CircuitBuilder &b, const Register &address, const Register &target,
                 std::shared_ptr<const LookupTable> table);
void emit_unlookup(CircuitBuilder &b, const Register &address, const Register &target,
                   std::shared_ptr<const LookupTable> table);

// ---------------------------------------------------------------------------
// Stand-alone blocks with named registers.

enum class CarryIn { Absent, Qubit, One };
enum class Control { None, Adder, AddSub };

struct AdderSpec {
    std::size_t width = 1;
    bool carry_out = false;
    CarryIn carry_in = CarryIn::Absent;
    Control controlled = Control::None;
};

/// Toffoli count of the adder family: n / n-1 plain, 2n+1 / 2n-1 controlled
/// adder, n / n-1 controlled add-subtract (with / without carry-out).
std::int64_t toffoli_cost(const AdderSpec &spec);

/// Registers: a, b (width n), carry (1, zero on entry) when carry_out,
/// cin (1) for CarryIn::Qubit, ctrl (1) for controlled variants.
Circuit build_adder(const AdderSpec &spec);
Circuit build_adder(std::size_t n, bool carry_out, CarryIn carry_in = CarryIn::Absent);
/// b <- b - a mod 2^n, or b + 2^n - a over n+1 bits (b, carry) with borrow_out.
Circuit build_subtractor(std::size_t n, bool borrow_out);
Circuit build_controlled_adder(std::size_t n, bool carry_out);
Circuit build_controlled_addsub(std::size_t n, bool carry_out);
/// Register b; b <- b + c mod 2^n. c = 0 yields an empty circuit.
Circuit build_const_adder(std::size_t n, const BigUInt &c);

struct LookupSpec {
    std::size_t address_width = 1;
    std::size_t target_width = 1;
    LookupTable table;

    /// Throws std::invalid_argument unless the table has 2^w entries < 2^m.
    void validate() const;
};

/// Registers address (w) and target (m, zero on entry): target <- table[address].
Circuit build_lookup(const LookupSpec &spec);
/// Registers address and target: target <- target XOR table[address] (clears it).
Circuit build_lookup_uncompute(const LookupSpec &spec);

}  // namespace qmul
