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
#include "qmul/simulator.hpp"

#include <gtest/gtest.h>

#include <random>

namespace qmul {
namespace {

std::int64_t counted(const Circuit &c) { return count_resources(c).counted_toffoli; }

/// b and carry of a carry-out block read as one (n+1)-bit number.
BigUInt wide_b(const RegisterValues &v, std::size_t n) { return v.at("b") + (v.at("carry") << n); }

TEST(AdderCounts, SevenBlockCountsUpTo64) {
    for (std::int64_t n = 1; n <= 64; ++n) {
        const auto w = static_cast<std::size_t>(n);
        EXPECT_EQ(counted(build_adder(w, true)), n);
        EXPECT_EQ(counted(build_adder(w, false)), n - 1);
        EXPECT_EQ(counted(build_controlled_adder(w, true)), 2 * n + 1);
        EXPECT_EQ(counted(build_controlled_adder(w, false)), 2 * n - 1);
        EXPECT_EQ(counted(build_controlled_addsub(w, true)), n);
        EXPECT_EQ(counted(build_controlled_addsub(w, false)), n - 1);
        EXPECT_EQ(counted(build_subtractor(w, true)), n);
        EXPECT_EQ(counted(build_subtractor(w, false)), n - 1);
    }
}

TEST(AdderCounts, CostFunctionMatchesCircuits) {
    for (std::size_t n = 1; n <= 16; ++n) {
        for (bool carry : {false, true}) {
            for (Control c : {Control::None, Control::Adder, Control::AddSub}) {
                const AdderSpec spec{n, carry, CarryIn::Absent, c};
                EXPECT_EQ(toffoli_cost(spec), counted(build_adder(spec))) << n << carry;
            }
        }
    }
}

TEST(Adder, CarryOutExample) {
    const auto v = run(build_adder(5, true), {{"a", 6}, {"b", 11}});
    EXPECT_EQ(wide_b(v, 5), 17);
    EXPECT_EQ(v.at("a"), 6);
}

TEST(Adder, WrapsWithoutCarryOut) { EXPECT_EQ(run(build_adder(4, false), {{"a", 9}, {"b", 9}}).at("b"), 2); }

TEST(Adder, CarryInOne) {
    const Circuit c = build_adder(4, true, CarryIn::One);
    EXPECT_EQ(counted(c), 4);
    for (int a = 0; a < 16; ++a) {
        for (int b = 0; b < 16; ++b) {
            EXPECT_EQ(wide_b(run(c, {{"a", a}, {"b", b}}), 4), a + b + 1);
        }
    }
}

TEST(Adder, CarryInQubit) {
    const Circuit c = build_adder(3, false, CarryIn::Qubit);
    for (int a = 0; a < 8; ++a) {
        for (int b = 0; b < 8; ++b) {
            for (int cin = 0; cin < 2; ++cin) {
                EXPECT_EQ(run(c, {{"a", a}, {"b", b}, {"cin", cin}}).at("b"), (a + b + cin) % 8);
            }
        }
    }
}

TEST(Adder, RejectsDirtyCarry) { EXPECT_THROW(run(build_adder(3, true), {{"carry", 1}}), std::invalid_argument); }

TEST(Adder, RejectsZeroWidth) { EXPECT_THROW(build_adder(0, false), std::invalid_argument); }

TEST(Subtractor, Examples) {
    const Circuit c = build_subtractor(4, false);
    EXPECT_EQ(run(c, {{"a", 3}, {"b", 10}}).at("b"), 7);
    EXPECT_EQ(run(c, {{"a", 10}, {"b", 3}}).at("b"), 9);
    for (int b = 0; b < 16; ++b) {
        EXPECT_EQ(run(c, {{"a", 0}, {"b", b}}).at("b"), b);
    }
}

TEST(Subtractor, BorrowOut) {
    const Circuit c = build_subtractor(4, true);
    for (int a = 0; a < 16; ++a) {
        for (int b = 0; b < 16; ++b) {
            const auto v = run(c, {{"a", a}, {"b", b}});
            EXPECT_EQ(wide_b(v, 4), b + 16 - a);
            EXPECT_EQ(v.at("a"), a);
        }
    }
}

TEST(ControlledAdder, ControlOffIsIdentity) {
    const Circuit c = build_controlled_adder(3, true);
    for (int a = 0; a < 8; ++a) {
        for (int b = 0; b < 8; ++b) {
            const auto v = run(c, {{"ctrl", 0}, {"a", a}, {"b", b}});
            EXPECT_EQ(v.at("a"), a);
            EXPECT_EQ(wide_b(v, 3), b);
        }
    }
}

TEST(ControlledAdder, Examples) {
    const Circuit c = build_controlled_adder(4, true);
    EXPECT_EQ(wide_b(run(c, {{"ctrl", 1}, {"a", 7}, {"b", 8}}), 4), 15);
    EXPECT_EQ(counted(c), 9);
}

TEST(ControlledAddSub, Examples) {
    const Circuit c = build_controlled_addsub(4, true);
    EXPECT_EQ(wide_b(run(c, {{"ctrl", 1}, {"a", 3}, {"b", 2}}), 4), 5);
    EXPECT_EQ(wide_b(run(c, {{"ctrl", 0}, {"a", 3}, {"b", 2}}), 4), 15);
    const auto zero = run(c, {{"ctrl", 0}, {"a", 0}, {"b", 0}});
    EXPECT_EQ(zero.at("b"), 0);
    EXPECT_EQ(zero.at("carry"), 1);
}

TEST(ControlledAddSub, RejectsCarryIn) {
    EXPECT_THROW(build_adder(AdderSpec{3, false, CarryIn::One, Control::AddSub}), std::invalid_argument);
}

/// NOT(ctrl) MultiCnot(ctrl; low) NOT(ctrl), adder, NOT(ctrl) MultiCnot(ctrl; window) NOT(ctrl),
/// assembled by appending the stand-alone adder circuit.
Circuit manual_addsub(std::size_t n, bool carry_out) {
    const Circuit adder = build_adder(n, carry_out);
    CircuitBuilder b;
    const Register ctrl = b.allocate_register(1, "ctrl");
    const Register a = b.allocate_register(n, "a");
    const Register sum = b.allocate_register(n, "b");
    Register window = sum;
    if (carry_out) {
        const Register carry = b.allocate_register(1, "carry");
        b.mark_zero_input("carry");
        window = sum.concat(carry);
    }
    std::vector<QubitId> map(adder.qubit_count());
    for (const auto &[role, reg] : adder.registers()) {
        const Register &mine = role == "a" ? a : role == "b" ? sum : window.slice(n, 1);
        for (std::size_t i = 0; i < reg.width(); ++i) {
            map[reg[i]] = mine[i];
        }
    }
    const Register scratch = b.acquire_ancillas(adder.ancillas().size());
    for (std::size_t i = 0; i < adder.ancillas().size(); ++i) {
        map[adder.ancillas()[i]] = scratch[i];
    }
    b.x(ctrl[0]);
    b.add(Gate::multi_cnot(ctrl[0], sum.qubits()));
    b.x(ctrl[0]);
    b.append(adder, map);
    b.x(ctrl[0]);
    b.add(Gate::multi_cnot(ctrl[0], window.qubits()));
    b.x(ctrl[0]);
    b.release_ancillas(scratch);
    return std::move(b).build();
}

TEST(ControlledAddSub, EqualsMultiCnotConjugatedAdder) {
    for (std::size_t n = 1; n <= 4; ++n) {
        for (bool carry : {false, true}) {
            const Circuit built = build_controlled_addsub(n, carry);
            const Circuit manual = manual_addsub(n, carry);
            for (int ctrl = 0; ctrl < 2; ++ctrl) {
                for (std::uint64_t a = 0; a < (1u << n); ++a) {
                    for (std::uint64_t b = 0; b < (1u << n); ++b) {
                        const RegisterValues in{{"ctrl", ctrl}, {"a", a}, {"b", b}};
                        EXPECT_EQ(run(built, in), run(manual, in)) << n << carry << ctrl << a << b;
                    }
                }
            }
        }
    }
}

TEST(ControlledAddSub, ControlOnMatchesControlledAdder) {
    for (std::size_t n = 1; n <= 4; ++n) {
        for (bool carry : {false, true}) {
            const Circuit addsub = build_controlled_addsub(n, carry);
            const Circuit adder = build_controlled_adder(n, carry);
            for (std::uint64_t a = 0; a < (1u << n); ++a) {
                for (std::uint64_t b = 0; b < (1u << n); ++b) {
                    const RegisterValues in{{"ctrl", 1}, {"a", a}, {"b", b}};
                    EXPECT_EQ(run(addsub, in), run(adder, in));
                }
            }
        }
    }
}

TEST(ConstAdder, ZeroIsEmpty) {
    const Circuit c = build_const_adder(4, 0);
    EXPECT_TRUE(c.gates().empty());
    for (int b = 0; b < 16; ++b) {
        EXPECT_EQ(run(c, {{"b", b}}).at("b"), b);
    }
}

TEST(ConstAdder, Examples) {
    EXPECT_EQ(run(build_const_adder(4, 5), {{"b", 13}}).at("b"), 2);
    EXPECT_EQ(run(build_const_adder(4, 8), {{"b", 1}}).at("b"), 9);
    EXPECT_THROW(build_const_adder(4, 16), std::invalid_argument);
}

TEST(ConstAdder, OddConstantCostsWidthMinusOne) {
    for (std::size_t n = 2; n <= 12; ++n) {
        EXPECT_EQ(counted(build_const_adder(n, pow2(n) - 1)), static_cast<std::int64_t>(n) - 1);
    }
}

TEST(ConstAdder, AssociativityRandomized) {
    std::mt19937_64 gen(11);
    for (std::size_t n : {1, 5, 17, 32}) {
        const Circuit add = build_adder(n, false);
        const BigUInt mod = pow2(n);
        for (int t = 0; t < 50; ++t) {
            const BigUInt a = gen() % mod, b = gen() % mod, c = gen() % mod;
            const BigUInt step = run(add, {{"a", a}, {"b", b}}).at("b");
            const BigUInt twice = run(build_const_adder(n, c), {{"b", step}}).at("b");
            const BigUInt once = run(add, {{"a", (a + c) % mod}, {"b", b}}).at("b");
            EXPECT_EQ(twice, once);
        }
    }
}

TEST(Lookup, Indexing) {
    const LookupSpec spec{2, 6, {0, 13, 26, 39}};
    EXPECT_EQ(run(build_lookup(spec), {{"address", 2}}).at("target"), 26);
}

TEST(Lookup, LoadThenUnloadClears) {
    std::mt19937_64 gen(3);
    for (std::size_t w = 1; w <= 4; ++w) {
        LookupSpec spec{w, 7, LookupTable(std::size_t{1} << w)};
        for (auto &e : spec.table) {
            e = gen() % 128;
        }
        const Circuit load = build_lookup(spec);
        const Circuit unload = build_lookup_uncompute(spec);
        for (std::uint64_t addr = 0; addr < (1u << w); ++addr) {
            const auto loaded = run(load, {{"address", addr}});
            EXPECT_EQ(loaded.at("target"), spec.table[addr]);
            const auto cleared = run(unload, loaded);
            EXPECT_EQ(cleared.at("target"), 0);
            EXPECT_EQ(cleared.at("address"), addr);
        }
    }
}

TEST(Lookup, LoadChargeIsTwoToTheW) {
    EXPECT_DOUBLE_EQ(count_resources(build_lookup(LookupSpec{3, 2, LookupTable(8, 0)})).nominal_toffoli, 8.0);
}

TEST(Lookup, Errors) {
    const LookupSpec spec{2, 6, {0, 13, 26, 39}};
    EXPECT_THROW(run(build_lookup(spec), {{"address", 1}, {"target", 1}}), std::invalid_argument);
    const RunResult bad = run_checked(build_lookup_uncompute(spec), {{"address", 1}, {"target", 12}});
    EXPECT_FALSE(bad.violations.empty());
    EXPECT_THROW(build_lookup(LookupSpec{2, 5, {0, 13, 26, 39}}), std::invalid_argument);
    EXPECT_THROW(build_lookup(LookupSpec{2, 6, {0, 13, 26}}), std::invalid_argument);
}

}  // namespace
}  // namespace qmul
