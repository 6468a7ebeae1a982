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

#include "qmul/arith_blocks.hpp"

#include <stdexcept>

namespace qmul {

Addend addend_of(const Register &reg, std::size_t width) {
    Addend a(std::max(width, reg.width()));
    for (std::size_t k = 0; k < reg.width(); ++k) {
        a[k] = reg[k];
    }
    return a;
}

void emit_add(CircuitBuilder &b, const Addend &addend, const Register &target, std::optional<QubitId> carry_in) {
    const std::size_t width = target.width();
    if (width == 0) {
        throw CircuitError("adder target must be non-empty");
    }
    if (addend.size() > width) {
        throw CircuitError("addend is wider than the adder target");
    }
    auto bit = [&](std::size_t i) { return i < addend.size() ? addend[i] : std::nullopt; };

    const Register scratch = b.acquire_ancillas(width - 1);
    std::vector<std::optional<QubitId>> carry(width);
    carry[0] = carry_in;

    // Carry chain: carry[i+1] = MAJ(a_i, t_i, carry[i]), computed into a
    // temporary AND as (a_i ^ c)(t_i ^ c) ^ c.
    for (std::size_t i = 0; i + 1 < width; ++i) {
        const auto a = bit(i);
        const auto c = carry[i];
        const QubitId next = scratch[i];
        if (a && c) {
            b.cx(*c, *a);
            b.cx(*c, target[i]);
            b.and_compute(*a, target[i], next);
            b.cx(*c, next);
        } else if (a) {
            b.and_compute(*a, target[i], next);
        } else if (c) {
            b.and_compute(target[i], *c, next);
        } else {
            continue;
        }
        carry[i + 1] = next;
    }

    const std::size_t top = width - 1;
    if (auto a = bit(top)) {
        b.cx(*a, target[top]);
    }
    if (auto c = carry[top]) {
        b.cx(*c, target[top]);
    }

    // Uncompute the chain top-down, writing each sum bit on the way.
    for (std::size_t i = width - 1; i-- > 0;) {
        const auto a = bit(i);
        const auto c = carry[i];
        const QubitId next = scratch[i];
        if (a && c) {
            b.cx(*c, next);
            b.and_uncompute(*a, target[i], next);
            b.cx(*c, *a);
            b.cx(*a, target[i]);
        } else if (a) {
            b.and_uncompute(*a, target[i], next);
            b.cx(*a, target[i]);
        } else if (c) {
            b.and_uncompute(target[i], *c, next);
            b.cx(*c, target[i]);
        }
    }
    b.release_ancillas(scratch);
}

void emit_subtract(CircuitBuilder &b, const Addend &addend, const Register &target) {
    for (QubitId q : target) {
        b.x(q);
    }
    emit_add(b, addend, target);
    for (QubitId q : target) {
        b.x(q);
    }
}

void emit_controlled_add(CircuitBuilder &b, QubitId ctrl, const Addend &addend, const Register &target) {
    const Register gated = b.acquire_ancillas(addend.size());
    Addend masked(addend.size());
    for (std::size_t i = 0; i < addend.size(); ++i) {
        if (addend[i]) {
            b.and_compute(ctrl, *addend[i], gated[i]);
            masked[i] = gated[i];
        }
    }
    emit_add(b, masked, target);
    for (std::size_t i = addend.size(); i-- > 0;) {
        if (addend[i]) {
            b.and_uncompute(ctrl, *addend[i], gated[i]);
        }
    }
    b.release_ancillas(gated);
}

void emit_controlled_add_carry_out(CircuitBuilder &b, QubitId ctrl, const Register &a, const Register &window) {
    if (window.width() != a.width() + 1) {
        throw CircuitError("carry-out window must be one bit wider than the addend");
    }
    const Register pad = b.acquire_ancillas(1);
    Addend addend = addend_of(a);
    addend.push_back(pad[0]);
    emit_controlled_add(b, ctrl, addend, window);
    b.release_ancillas(pad);
}

void emit_controlled_addsub(CircuitBuilder &b, QubitId ctrl, const Addend &addend, const Register &low,
                            std::optional<QubitId> carry) {
    const Register window = carry ? low.concat(Register({*carry})) : low;
    b.x(ctrl);
    b.mcx(ctrl, low.qubits());
    b.x(ctrl);
    emit_add(b, addend, window);
    b.x(ctrl);
    b.mcx(ctrl, window.qubits());
    b.x(ctrl);
}

void emit_add_constant(CircuitBuilder &b, const BigUInt &c, const Register &target, std::optional<QubitId> ctrl) {
    if (c < 0 || bit_length(c) > target.width()) {
        throw std::invalid_argument("constant " + to_string(c) + " does not fit a " + std::to_string(target.width()) +
                                    "-bit adder");
    }
    if (c == 0) {
        return;
    }
    const std::size_t bits = bit_length(c);
    std::size_t ones = 0;
    for (std::size_t k = 0; k < bits; ++k) {
        ones += test_bit(c, k) ? 1 : 0;
    }
    const Register staged = b.acquire_ancillas(ones);
    Addend addend(bits);
    std::vector<QubitId> set_bits;
    for (std::size_t k = 0, j = 0; k < bits; ++k) {
        if (test_bit(c, k)) {
            addend[k] = staged[j];
            set_bits.push_back(staged[j++]);
        }
    }
    auto stage = [&] {
        if (ctrl) {
            b.mcx(*ctrl, set_bits);
        } else {
            for (QubitId q : set_bits) {
                b.x(q);
            }
        }
    };
    stage();
    emit_add(b, addend, target);
    stage();
    b.release_ancillas(staged);
}

void emit_lookup(CircuitBuilder &b, const Register &address, const Register &target,
                 std::shared_ptr<const LookupTable> table) {
    b.add(Gate::lookup_load(address, target, std::move(table)));
}

void emit_unlookup(CircuitBuilder &b, const Register &address, const Register &target,
                   std::shared_ptr<const LookupTable> table) {
    b.add(Gate::lookup_unload(address, target, std::move(table)));
}

// ---------------------------------------------------------------------------

std::int64_t toffoli_cost(const AdderSpec &spec) {
    const auto n = static_cast<std::int64_t>(spec.width);
    switch (spec.controlled) {
        case Control::None:
        case Control::AddSub:
            return spec.carry_out ? n : n - 1;
        case Control::Adder:
            return spec.carry_out ? 2 * n + 1 : 2 * n - 1;
    }
    return 0;
}

namespace {

void require_width(std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("adder width must be positive");
    }
}

}  // namespace

Circuit build_adder(const AdderSpec &spec) {
    require_width(spec.width);
    const std::size_t n = spec.width;
    CircuitBuilder b;
    std::optional<QubitId> ctrl;
    if (spec.controlled != Control::None) {
        if (spec.carry_in != CarryIn::Absent) {
            throw std::invalid_argument("controlled adders take no carry-in");
        }
        ctrl = b.allocate_register(1, "ctrl")[0];
    }
    const Register a = b.allocate_register(n, "a");
    const Register sum = b.allocate_register(n, "b");
    Register window = sum;
    std::optional<QubitId> carry;
    if (spec.carry_out) {
        carry = b.allocate_register(1, "carry")[0];
        b.mark_zero_input("carry");
        window = sum.concat(Register({*carry}));
    }

    switch (spec.controlled) {
        case Control::None: {
            std::optional<QubitId> cin;
            Register one;
            if (spec.carry_in == CarryIn::Qubit) {
                cin = b.allocate_register(1, "cin")[0];
            } else if (spec.carry_in == CarryIn::One) {
                one = b.acquire_ancillas(1);
                cin = one[0];
                b.x(*cin);
            }
            emit_add(b, addend_of(a), window, cin);
            if (spec.carry_in == CarryIn::One) {
                b.x(*cin);
                b.release_ancillas(one);
            }
            break;
        }
        case Control::Adder: {
            if (spec.carry_out) {
                emit_controlled_add_carry_out(b, *ctrl, a, window);
            } else {
                emit_controlled_add(b, *ctrl, addend_of(a), window);
            }
            break;
        }
        case Control::AddSub:
            emit_controlled_addsub(b, *ctrl, addend_of(a), sum, carry);
            break;
    }
    return std::move(b).build();
}

Circuit build_adder(std::size_t n, bool carry_out, CarryIn carry_in) {
    return build_adder(AdderSpec{n, carry_out, carry_in, Control::None});
}

Circuit build_subtractor(std::size_t n, bool borrow_out) {
    require_width(n);
    CircuitBuilder b;
    const Register a = b.allocate_register(n, "a");
    const Register diff = b.allocate_register(n, "b");
    if (!borrow_out) {
        emit_subtract(b, addend_of(a), diff);
        return std::move(b).build();
    }
    const Register carry = b.allocate_register(1, "carry");
    b.mark_zero_input("carry");
    const Register window = diff.concat(carry);
    for (QubitId q : diff) {
        b.x(q);
    }
    emit_add(b, addend_of(a), window);
    for (QubitId q : window) {
        b.x(q);
    }
    return std::move(b).build();
}

Circuit build_controlled_adder(std::size_t n, bool carry_out) {
    return build_adder(AdderSpec{n, carry_out, CarryIn::Absent, Control::Adder});
}

Circuit build_controlled_addsub(std::size_t n, bool carry_out) {
    return build_adder(AdderSpec{n, carry_out, CarryIn::Absent, Control::AddSub});
}

Circuit build_const_adder(std::size_t n, const BigUInt &c) {
    require_width(n);
    if (c < 0 || c >= pow2(n)) {
        throw std::invalid_argument("constant " + to_string(c) + " out of range for width " + std::to_string(n));
    }
    CircuitBuilder b;
    const Register target = b.allocate_register(n, "b");
    emit_add_constant(b, c, target);
    return std::move(b).build();
}

void LookupSpec::validate() const {
    if (address_width == 0 || address_width > 30) {
        throw std::invalid_argument("lookup address width must be in [1, 30]");
    }
    if (target_width == 0) {
        throw std::invalid_argument("lookup target width must be positive");
    }
    if (table.size() != (std::size_t{1} << address_width)) {
        throw std::invalid_argument("lookup table must have 2^w entries");
    }
    const BigUInt bound = pow2(target_width);
    for (const auto &v : table) {
        if (v < 0 || v >= bound) {
            throw std::invalid_argument("lookup entry " + to_string(v) + " does not fit the target");
        }
    }
}

namespace {

Circuit build_lookup_block(const LookupSpec &spec, bool load) {
    spec.validate();
    CircuitBuilder b;
    const Register address = b.allocate_register(spec.address_width, "address");
    const Register target = b.allocate_register(spec.target_width, "target");
    auto table = std::make_shared<const LookupTable>(spec.table);
    if (load) {
        b.mark_zero_input("target");
        emit_lookup(b, address, target, table);
    } else {
        emit_unlookup(b, address, target, table);
    }
    return std::move(b).build();
}

}  // namespace

Circuit build_lookup(const LookupSpec &spec) { return build_lookup_block(spec, true); }

Circuit build_lookup_uncompute(const LookupSpec &spec) { return build_lookup_block(spec, false); }

}  // namespace qmul
