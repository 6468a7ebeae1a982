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
#include "qmul/circuit_text.hpp"
#include "qmul/multipliers.hpp"
#include "qmul/simulator.hpp"

#include <gtest/gtest.h>

namespace qmul {
namespace {

std::vector<Circuit> sample_circuits() {
    std::vector<Circuit> out;
    for (MultiplierKind kind : kAllKinds) {
        if (is_modp(kind)) {
            out.push_back(build_multiplier(kind, 5, ModPParams{29, 5, 2}));
            out.push_back(build_multiplier(kind, 6, ModPParams{61, 6, 4}));
        } else {
            out.push_back(build_multiplier(kind, 4));
        }
    }
    out.push_back(uncompute_garbage(ModPParams{13, 4, 2}, Variant::AddSub));
    out.push_back(build_modmultstep(ModPParams{13, 4, 2}, 1, Variant::Classic));
    out.push_back(build_controlled_addsub(3, true));
    out.push_back(build_const_adder(5, 19));
    return out;
}

TEST(TextFormat, RoundTrip) {
    for (const Circuit &c : sample_circuits()) {
        const std::string text = emit_text(c);
        const Circuit back = parse_text(text);
        EXPECT_EQ(back, c);
        EXPECT_EQ(emit_text(back), text);
        const Circuit inv = invert(c);
        EXPECT_EQ(parse_text(emit_text(inv)), inv);
    }
}

TEST(TextFormat, RoundTripPreservesResources) {
    const Circuit c = build_multiplier(MultiplierKind::ModPAddSub, 8, ModPParams{251, 8, 2});
    const auto a = count_resources(c);
    const auto b = count_resources(parse_text(emit_text(c)));
    EXPECT_EQ(a.counted_toffoli, b.counted_toffoli);
    EXPECT_EQ(a.nominal_toffoli, b.nominal_toffoli);
    EXPECT_EQ(a.block_ledger.size(), b.block_ledger.size());
}

TEST(TextFormat, HandWrittenCircuit) {
    const Circuit c = parse_text(R"(# qubits: 10
# register a: q0,q1
# register out: q2..q5
# a comment that is not a header
not q6
cnot q6 q7
mcnot q0 q6 q7
tof q0 q1 q8
and q0 q1 q9
unand q0 q1 q9
tof q0 q1 q8
mcnot q0 q6 q7
cnot q6 q7
not q6

lookup q0..q1 -> q2..q5 : 0,13,5,9
)");
    EXPECT_EQ(c.qubit_count(), 10u);
    EXPECT_EQ(c.reg("out").width(), 4u);
    EXPECT_EQ(c.gates().size(), 11u);
    const Gate &g = c.gates().back();
    EXPECT_EQ(g.kind, GateKind::LookupLoad);
    EXPECT_EQ(g.address().size(), 2u);
    EXPECT_EQ(g.lookup_target().size(), 4u);
    for (unsigned a = 0; a < 4; ++a) {
        const auto out = run(c, {{"a", a}});
        EXPECT_EQ(out.at("out"), std::vector<int>({0, 13, 5, 9})[a]);
    }
}

TEST(TextFormat, Blocks) {
    const Circuit c = parse_text(R"(# qubits: 3
# label first
# label second
# nominal second: 4.5
# block first
tof q0 q1 q2
# block second
tof q0 q1 q2
# block
not q0
)");
    const auto r = count_resources(c);
    EXPECT_EQ(r.counted_toffoli, 2);
    EXPECT_DOUBLE_EQ(r.nominal_toffoli, 5.5);
}

void expect_parse_error(const std::string &text, const std::string &line) {
    try {
        parse_text(text);
        ADD_FAILURE() << "accepted: " << text;
    } catch (const CircuitError &e) {
        EXPECT_NE(std::string(e.what()).find("line " + line), std::string::npos) << e.what();
    }
}

TEST(TextFormat, ParseErrors) {
    expect_parse_error("# qubits: 2\nfoo q0\n", "2");
    expect_parse_error("# qubits: 2\ncnot q0 x1\n", "2");
    expect_parse_error("# qubits: 2\n\ncnot q0 q0\n", "3");
    expect_parse_error("# qubits: 2\ncnot q0\n", "2");
    expect_parse_error("# qubits: two\n", "1");
    expect_parse_error("# qubits: 2\n# block missing\n", "2");
    expect_parse_error("# qubits: 4\nlookup q0 -> q1 : 1,0\nlookup q0 q1 : 1\n", "3");
    expect_parse_error("# qubits: 4\nlookup q3..q1 -> q0 : 1,0\n", "2");
    expect_parse_error("# qubits: 2\ncnot q0 q5\n", "2");
    // Nesting of AND pairs is a whole-circuit property, checked after parsing.
    EXPECT_THROW(parse_text("# qubits: 3\nunand q0 q1 q2\n"), CircuitError);
}

TEST(TextFormat, RejectsUnserializableLabels) {
    CircuitBuilder b;
    const Register r = b.allocate_register(3, "r");
    {
        CircuitBuilder::Block block(b, "has space");
        b.ccx(r[0], r[1], r[2]);
    }
    EXPECT_THROW(emit_text(std::move(b).build()), CircuitError);
}

TEST(Json, Shape) {
    const Circuit c = build_multiplier(MultiplierKind::ModPClassic, 4, ModPParams{13, 4, 2});
    const auto j = to_json(c);
    EXPECT_EQ(j["qubits"], c.qubit_count());
    EXPECT_EQ(j["gates"].size(), c.gates().size());
    EXPECT_TRUE(j["registers"].contains("result"));
}

}  // namespace
}  // namespace qmul
