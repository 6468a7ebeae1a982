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

#include "qmul/multipliers.hpp"
#include "qmul/oracle.hpp"
#include "qmul/simulator.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace qmul {
namespace {

std::int64_t counted(const Circuit &c) { return count_resources(c).counted_toffoli; }

const ZeroCheck *find_check(const Circuit &c, std::string_view label) {
    for (const auto &z : c.zero_checks()) {
        if (z.label == label) {
            return &z;
        }
    }
    return nullptr;
}

/// Value of the doubled work register at the "cascade" checkpoint: the low
/// bit and (schoolbook only) the guard bit come from the "halve" check.
BigUInt cascade_value(const Circuit &c, const RegisterValues &input) {
    RunOptions opts;
    opts.stop_at = "cascade";
    BasisState state = prepare(c, input, opts);
    apply(c, state, opts);
    const ZeroCheck *halve = find_check(c, "halve");
    const Register &result = c.reg("result");
    BigUInt v = state.read(result) << 1;
    v += state.get(halve->qubits[0]) ? 1 : 0;
    if (halve->qubits.size() > 1) {
        v += state.get(halve->qubits[1]) ? pow2(result.width() + 1) : BigUInt(0);
    }
    return v;
}

TEST(Schoolbook, Example) {
    for (Variant v : {Variant::Classic, Variant::AddSub}) {
        const auto out = run(build_schoolbook(4, v), {{"x", 13}, {"y", 11}});
        EXPECT_EQ(out.at("result"), 143);
        EXPECT_EQ(out.at("x"), 13);
        EXPECT_EQ(out.at("y"), 11);
    }
    EXPECT_EQ(counted(build_schoolbook(4, Variant::Classic)), 36);
    EXPECT_EQ(counted(build_schoolbook(4, Variant::AddSub)), 35);
}

TEST(Schoolbook, CascadeExample) {
    // n=2, x=1, y=2, term by term: k=0 adds +y = 2; k=1 adds 2^3 - 2*2 = 4.
    std::int64_t direct = 0;
    const int n = 2, x = 1, y = 2;
    for (int k = 0; k < n; ++k) {
        const int xk = (x >> k) & 1;
        direct += (1 - xk) * (1 << (n + k)) + (2 * xk - 1) * (1 << k) * y;
    }
    EXPECT_EQ(direct, 6);
    EXPECT_EQ(2 * x * y + (1 << (2 * n)) - (1 << n) * (x + 1 + y) + y, 6);
    EXPECT_EQ(cascade_value(build_schoolbook(2, Variant::AddSub), {{"x", x}, {"y", y}}), 6);
}

TEST(Schoolbook, CascadeIdentityExhaustive) {
    for (std::size_t n = 1; n <= 4; ++n) {
        const Circuit c = build_schoolbook(n, Variant::AddSub);
        const BigUInt modulus = pow2(2 * n + 2);
        for (std::uint64_t x = 0; x < (1u << n); ++x) {
            for (std::uint64_t y = 0; y < (1u << n); ++y) {
                const BigUInt expected =
                    mod_floor(BigUInt(2 * x * y) + pow2(2 * n) - pow2(n) * (x + 1 + y) + y, modulus);
                EXPECT_EQ(cascade_value(c, {{"x", x}, {"y", y}}), expected) << n << ' ' << x << ' ' << y;
            }
        }
    }
}

TEST(Mod2n, Example) {
    for (Variant v : {Variant::Classic, Variant::AddSub}) {
        EXPECT_EQ(run(build_mod2n(4, v), {{"x", 13}, {"y", 11}}).at("result"), 15);
    }
    EXPECT_EQ(counted(build_mod2n(4, Variant::Classic)), 16);
    EXPECT_EQ(counted(build_mod2n(4, Variant::AddSub)), 14);
    EXPECT_EQ(counted(build_mod2n(6, Variant::Classic)), 36);
    EXPECT_EQ(counted(build_mod2n(6, Variant::AddSub)), 27);
}

TEST(Mod2n, CascadeIdentityExhaustive) {
    for (std::size_t n = 1; n <= 4; ++n) {
        const Circuit c = build_mod2n(n, Variant::AddSub);
        const BigUInt modulus = pow2(n + 1);
        for (std::uint64_t x = 0; x < (1u << n); ++x) {
            for (std::uint64_t y = 0; y < (1u << n); ++y) {
                const BigUInt expected = mod_floor(BigUInt(2 * x * y) - pow2(n) * (x + 1 + y) + y, modulus);
                EXPECT_EQ(cascade_value(c, {{"x", x}, {"y", y}}), expected) << n << ' ' << x << ' ' << y;
            }
        }
    }
}

TEST(Counts, ClosedFormsUpTo64) {
    for (std::int64_t n = 1; n <= 64; ++n) {
        const auto w = static_cast<std::size_t>(n);
        EXPECT_EQ(counted(build_schoolbook(w, Variant::Classic)), 2 * n * n + n);
        EXPECT_EQ(counted(build_schoolbook(w, Variant::AddSub)), n * n + 4 * n + 3);
        EXPECT_EQ(counted(build_mod2n(w, Variant::Classic)), n * n);
        EXPECT_EQ(2 * counted(build_mod2n(w, Variant::AddSub)), n * n + 3 * n);
    }
}

TEST(Counts, AddSubLedgerLabels) {
    const ResourceReport r = count_resources(build_schoolbook(5, Variant::AddSub));
    for (int k = 0; k < 5; ++k) {
        ASSERT_NE(r.find("ctrl-addsub[" + std::to_string(k) + "]"), nullptr);
        EXPECT_EQ(r.find("ctrl-addsub[" + std::to_string(k) + "]")->counted, 5);
    }
    EXPECT_EQ(r.find("correction[0]")->counted, 6);
    EXPECT_EQ(r.find("correction[1]")->counted, 11);
    EXPECT_EQ(r.find("correction[2]")->counted, 6);
}

TEST(Kinds, NamesRoundTrip) {
    for (MultiplierKind k : kAllKinds) {
        EXPECT_EQ(parse_kind(kind_name(k)), k);
        EXPECT_EQ(variant_of(classic_of(k)), Variant::Classic);
    }
    EXPECT_FALSE(parse_kind("karatsuba").has_value());
    EXPECT_EQ(kind_name(MultiplierKind::Mod2nAddSub), "mod2n-addsub");
}

TEST(ModPParams, Validation) {
    EXPECT_THROW((ModPParams{14, 4, 2}.validate()), std::invalid_argument);
    EXPECT_THROW((ModPParams{7, 4, 2}.validate()), std::invalid_argument);
    EXPECT_THROW((ModPParams{13, 4, 5}.validate()), std::invalid_argument);
    EXPECT_THROW((ModPParams{13, 4, 0}.validate()), std::invalid_argument);
    EXPECT_FALSE((ModPParams{13, 4, 2}.validate()).has_value());
    EXPECT_TRUE((ModPParams{15, 4, 2}.validate()).has_value());
    EXPECT_THROW((ModPParams{15, 4, 2, true}.validate()), std::invalid_argument);
    EXPECT_THROW(build_multiplier(MultiplierKind::ModPAddSub, 4), std::invalid_argument);
}

TEST(ModP, Example) {
    for (Variant v : {Variant::Classic, Variant::AddSub}) {
        const Circuit c = build_modp(ModPParams{13, 4, 2}, v);
        const auto out = run(c, {{"x", 3}, {"y", 5}});
        EXPECT_EQ(out.at("result"), 5);
        EXPECT_EQ(out.at("x"), 3);
        EXPECT_EQ(out.at("y"), 5);
        for (int x = 0; x < 13; ++x) {
            EXPECT_EQ(run(c, {{"x", x}, {"y", 0}}).at("result"), 0);
        }
        EXPECT_THROW(run(c, {{"x", 13}, {"y", 1}}), std::invalid_argument);
        EXPECT_EQ(c.reg("garbage").width(), 4u);
    }
}

TEST(ModP, CompositeModulusStillMultiplies) {
    const Circuit c = build_modp(ModPParams{15, 4, 2}, Variant::AddSub);
    const oracle::MontgomeryContext ctx(15, 4);
    for (int x = 0; x < 15; ++x) {
        for (int y = 0; y < 15; ++y) {
            EXPECT_EQ(run(c, {{"x", x}, {"y", y}}).at("result"), ctx.product_direct(x, y));
        }
    }
}

TEST(ModP, TruncatedWindow) {
    const ModPParams params{29, 5, 2};
    const oracle::MontgomeryContext ctx(29, 5);
    for (Variant v : {Variant::Classic, Variant::AddSub}) {
        const Circuit c = build_modp(params, v);
        for (int x = 0; x < 29; ++x) {
            for (int y = 0; y < 29; y += 3) {
                EXPECT_EQ(run(c, {{"x", x}, {"y", y}}).at("result"), ctx.product_direct(x, y));
            }
        }
    }
}

TEST(ModMultStep, ZeroWindowOnZeroAccumulator) {
    for (Variant v : {Variant::Classic, Variant::AddSub}) {
        const Circuit c = build_modmultstep(ModPParams{13, 4, 2}, 0, v);
        for (int y = 0; y < 13; ++y) {
            const auto out = run(c, {{"x_window", 0}, {"y", y}});
            EXPECT_EQ(out.at("acc"), 0);
            EXPECT_EQ(out.at("garbage"), 0);
        }
    }
}

TEST(ModMultStep, Example) {
    const oracle::MontgomeryContext ctx(13, 4);
    const BigUInt expected = ctx.step(5, 3, 7, 2);
    for (Variant v : {Variant::Classic, Variant::AddSub}) {
        const auto out = run(build_modmultstep(ModPParams{13, 4, 2}, 0, v), {{"acc", 5}, {"x_window", 3}, {"y", 7}});
        EXPECT_EQ(out.at("acc"), expected << 2);
        EXPECT_EQ(out.at("garbage"), (5 + 3 * 7) % 4);
    }
}

TEST(ModMultStep, ExhaustiveAgainstOracle) {
    const oracle::MontgomeryContext ctx(11, 4);
    for (Variant v : {Variant::Classic, Variant::AddSub}) {
        for (std::size_t w : {1, 2, 3}) {
            const Circuit c = build_modmultstep(ModPParams{11, 4, w}, 0, v);
            for (int z = 0; z < 22; ++z) {
                for (std::uint64_t xw = 0; xw < (1u << w); ++xw) {
                    for (int y = 0; y < 11; ++y) {
                        const auto out = run(c, {{"acc", z}, {"x_window", xw}, {"y", y}});
                        ASSERT_EQ(out.at("acc"), ctx.step(z, xw, y, w) << w);
                    }
                }
            }
        }
    }
}

TEST(ModPLedger, PerStepCharges) {
    for (std::size_t n : {4, 6, 8, 12}) {
        for (std::size_t w = 1; w <= n; ++w) {
            if (n % w != 0) {
                continue;
            }
            const ModPParams params{oracle::largest_prime_in_width(n), n, w};
            const auto nn = static_cast<std::int64_t>(n), ww = static_cast<std::int64_t>(w);
            for (Variant v : {Variant::Classic, Variant::AddSub}) {
                const ResourceReport r = count_resources(build_modp(params, v));
                for (std::size_t k = 0; k < n / w; ++k) {
                    const std::string step = "step[" + std::to_string(k) + "]/";
                    const LedgerEntry *cascade = r.find(step + "cascade");
                    ASSERT_NE(cascade, nullptr);
                    if (v == Variant::Classic) {
                        EXPECT_DOUBLE_EQ(cascade->nominal, 2.0 * w * (n + 1));
                        EXPECT_EQ(cascade->counted, ww * (2 * nn + 1));
                    } else {
                        EXPECT_DOUBLE_EQ(cascade->nominal, 1.0 * w * (n + 1));
                        EXPECT_EQ(cascade->counted, ww * (nn + 2));
                        EXPECT_DOUBLE_EQ(r.find(step + "correction[0]")->nominal, ww - 1.0);
                        EXPECT_DOUBLE_EQ(r.find(step + "correction[1]")->nominal, 1.0 * (nn + ww));
                        EXPECT_DOUBLE_EQ(r.find(step + "correction[2]")->nominal, nn - 1.0);
                    }
                    EXPECT_NEAR(r.find(step + "lookup")->nominal, std::exp2(ww), 1e-9);
                    EXPECT_EQ(r.find(step + "lookup")->counted, 0);
                    EXPECT_NEAR(r.find(step + "unlookup")->nominal, 3 * std::exp2(ww / 2.0), 1e-9);
                    EXPECT_DOUBLE_EQ(r.find(step + "adder")->nominal, nn + ww - 1.0);
                    EXPECT_EQ(r.find(step + "adder")->counted, nn + ww);
                }
                EXPECT_EQ(r.find("reduction[0]")->counted, nn);
                EXPECT_EQ(r.find("reduction[1]")->counted, nn);
            }
        }
    }
}

TEST(ModPLedger, AddSubCascadeExample) {
    const ResourceReport r = count_resources(build_modp(ModPParams{251, 8, 2}, Variant::AddSub));
    for (int k = 0; k < 4; ++k) {
        EXPECT_DOUBLE_EQ(r.find("step[" + std::to_string(k) + "]/cascade")->nominal, 18.0);
    }
}

TEST(ModPLedger, QuotedChargesHelper) {
    const StepCharges c = quoted_step_charges(Variant::AddSub, 8, 3);
    EXPECT_DOUBLE_EQ(c.cascade, 27);
    EXPECT_EQ(c.corrections, (std::vector<double>{2, 11, 7}));
    EXPECT_DOUBLE_EQ(c.lookup, 8);
    EXPECT_DOUBLE_EQ(c.adder, 10);
    EXPECT_NEAR(c.unlookup, 3 * std::sqrt(8.0), 1e-12);
    EXPECT_NEAR(c.total(), 27 + 20 + 8 + 10 + 3 * std::sqrt(8.0), 1e-12);
}

TEST(UncomputeGarbage, Example) {
    for (Variant v : {Variant::Classic, Variant::AddSub}) {
        const ModPParams params{13, 4, 2};
        const Circuit c = uncompute_garbage(params, v);
        const auto out = run(c, {{"x", 3}, {"y", 5}});
        EXPECT_EQ(out.at("copy"), 5);
        EXPECT_EQ(out.at("garbage"), 0);
        EXPECT_EQ(out.at("result"), 0);
        EXPECT_EQ(out.at("flag"), 0);
        EXPECT_EQ(out.at("x"), 3);
        EXPECT_EQ(out.at("y"), 5);

        const auto zero = run(c, {{"x", 0}, {"y", 0}});
        for (const auto &[role, value] : zero) {
            EXPECT_EQ(value, 0) << role;
        }
        EXPECT_THROW(run(c, {{"x", 1}, {"y", 1}, {"copy", 1}}), std::invalid_argument);

        const double forward = count_resources(build_modp(params, v)).nominal_toffoli;
        EXPECT_NEAR(count_resources(c).nominal_toffoli, 2 * forward, 1e-9);
    }
}

TEST(Parity, HalvingBitIsZeroEverywhere) {
    // The "halve" zero checks are enforced by the simulator; any odd value at
    // the relabeling point would surface as a violation.
    const std::vector<Circuit> circuits = {build_schoolbook(4, Variant::AddSub), build_mod2n(4, Variant::AddSub)};
    for (const Circuit &c : circuits) {
        ASSERT_NE(find_check(c, "halve"), nullptr);
        for (int x = 0; x < 16; ++x) {
            for (int y = 0; y < 16; ++y) {
                EXPECT_TRUE(run_checked(c, {{"x", x}, {"y", y}}).violations.empty());
            }
        }
    }
    for (std::size_t w : {1, 2, 4}) {
        const Circuit c = build_modp(ModPParams{13, 4, w}, Variant::AddSub);
        for (std::size_t k = 0; k < 4 / w; ++k) {
            ASSERT_NE(find_check(c, "step[" + std::to_string(k) + "]/halve"), nullptr);
        }
        for (int x = 0; x < 13; ++x) {
            for (int y = 0; y < 13; ++y) {
                EXPECT_TRUE(run_checked(c, {{"x", x}, {"y", y}}).violations.empty());
            }
        }
    }
}

}  // namespace
}  // namespace qmul
