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

#include "qmul/arith_blocks.hpp"
#include "qmul/oracle.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qmul {

std::string_view kind_name(MultiplierKind kind) {
    switch (kind) {
        case MultiplierKind::SchoolbookClassic: return "schoolbook-classic";
        case MultiplierKind::SchoolbookAddSub: return "schoolbook-addsub";
        case MultiplierKind::Mod2nClassic: return "mod2n-classic";
        case MultiplierKind::Mod2nAddSub: return "mod2n-addsub";
        case MultiplierKind::ModPClassic: return "modp-classic";
        case MultiplierKind::ModPAddSub: return "modp-addsub";
    }
    return "?";
}

std::optional<MultiplierKind> parse_kind(std::string_view name) {
    for (MultiplierKind kind : kAllKinds) {
        if (kind_name(kind) == name) {
            return kind;
        }
    }
    return std::nullopt;
}

Variant variant_of(MultiplierKind kind) {
    switch (kind) {
        case MultiplierKind::SchoolbookAddSub:
        case MultiplierKind::Mod2nAddSub:
        case MultiplierKind::ModPAddSub:
            return Variant::AddSub;
        default:
            return Variant::Classic;
    }
}

bool is_modp(MultiplierKind kind) {
    return kind == MultiplierKind::ModPClassic || kind == MultiplierKind::ModPAddSub;
}

MultiplierKind classic_of(MultiplierKind kind) {
    switch (kind) {
        case MultiplierKind::SchoolbookAddSub: return MultiplierKind::SchoolbookClassic;
        case MultiplierKind::Mod2nAddSub: return MultiplierKind::Mod2nClassic;
        case MultiplierKind::ModPAddSub: return MultiplierKind::ModPClassic;
        default: return kind;
    }
}

std::optional<std::string> ModPParams::validate() const {
    if (n < 2) {
        throw std::invalid_argument("mod-p multiplication needs n >= 2");
    }
    if (!test_bit(p, 0)) {
        throw std::invalid_argument("modulus must be odd");
    }
    if (p <= pow2(n - 1) || p >= pow2(n)) {
        throw std::invalid_argument("modulus must satisfy 2^(n-1) < p < 2^n");
    }
    if (w < 1 || w > n) {
        throw std::invalid_argument("window must satisfy 1 <= w <= n");
    }
    if (!oracle::is_prime(p)) {
        if (strict) {
            throw std::invalid_argument("modulus " + to_string(p) + " is not prime");
        }
        return "modulus " + to_string(p) + " is not prime; Montgomery reduction only needs it odd";
    }
    return std::nullopt;
}

namespace {

std::string indexed(std::string_view name, std::size_t k) {
    return std::string(name) + "[" + std::to_string(k) + "]";
}

void require_n(std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("multiplier width must be positive");
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Schoolbook

Circuit build_schoolbook(std::size_t n, Variant variant) {
    require_n(n);
    CircuitBuilder b;
    const Register x = b.allocate_register(n, "x");
    const Register y = b.allocate_register(n, "y");

    if (variant == Variant::Classic) {
        const Register result = b.allocate_register(2 * n, "result");
        b.mark_zero_input("result");
        for (std::size_t k = 0; k < n; ++k) {
            CircuitBuilder::Block block(b, indexed("ctrl-add", k));
            emit_controlled_add_carry_out(b, x[k], y, result.slice(k, n + 1));
        }
        return std::move(b).build();
    }

    // Work register of 2n+2 bits: bit 0 is dropped by the final halving and
    // the top bit is a guard that keeps every correction exact mod 2^(2n+2).
    const Register work = b.acquire_ancillas(2 * n + 2);
    for (std::size_t k = 0; k < n; ++k) {
        CircuitBuilder::Block block(b, indexed("ctrl-addsub", k));
        emit_controlled_addsub(b, x[k], addend_of(y), work.slice(k, n), work[k + n]);
    }
    // work = 2xy + 2^2n - 2^n(x+1+y) + y
    b.checkpoint("cascade");
    {
        CircuitBuilder::Block block(b, "correction[0]");
        // + 2^n (x + 1)
        const Register one = b.acquire_ancillas(1);
        b.x(one[0]);
        emit_add(b, addend_of(x), work.slice(n, n + 2), one[0]);
        b.x(one[0]);
        b.release_ancillas(one);
    }
    {
        CircuitBuilder::Block block(b, "correction[1]");
        // - (2^2n + y)
        const Register one = b.acquire_ancillas(1);
        Addend addend = addend_of(y, 2 * n);
        addend.push_back(one[0]);
        b.x(one[0]);
        emit_subtract(b, addend, work);
        b.x(one[0]);
        b.release_ancillas(one);
    }
    {
        CircuitBuilder::Block block(b, "correction[2]");
        // + 2^n y
        emit_add(b, addend_of(y), work.slice(n, n + 2));
    }
    b.assert_zero("halve", {work[0], work[2 * n + 1]});
    b.name_register("result", work.slice(1, 2 * n));
    b.mark_zero_input("result");
    return std::move(b).build();
}

// ---------------------------------------------------------------------------
// Mod 2^n

Circuit build_mod2n(std::size_t n, Variant variant) {
    require_n(n);
    CircuitBuilder b;
    const Register x = b.allocate_register(n, "x");
    const Register y = b.allocate_register(n, "y");

    if (variant == Variant::Classic) {
        const Register result = b.allocate_register(n, "result");
        b.mark_zero_input("result");
        for (std::size_t k = 0; k < n; ++k) {
            CircuitBuilder::Block block(b, indexed("ctrl-add", k));
            emit_controlled_add(b, x[k], addend_of(y.slice(0, n - k)), result.slice(k, n - k));
        }
        return std::move(b).build();
    }

    // n+1 working bits: the product is formed doubled, mod 2^(n+1).
    const Register work = b.acquire_ancillas(n + 1);
    const QubitId top = work[n];
    for (std::size_t k = 0; k < n; ++k) {
        CircuitBuilder::Block block(b, indexed("ctrl-addsub", k));
        const std::size_t m = n - k;
        emit_controlled_addsub(b, x[k], addend_of(y.slice(0, m)), work.slice(k, m), top);
        if (k > 0) {
            // The truncated operand drops 2^n*y_m, and the subtract branch adds
            // 2^n where 2^(n+k) = 0 was intended; both only touch the top bit.
            b.cx(y[m], top);
            b.x(top);
            b.cx(x[k], top);
        }
    }
    // work = 2xy - 2^n(x+1+y) + y mod 2^(n+1)
    b.checkpoint("cascade");
    {
        CircuitBuilder::Block block(b, "correction[0]");
        // + 2^n (x_0 + 1)
        b.cx(x[0], top);
        b.x(top);
    }
    {
        CircuitBuilder::Block block(b, "correction[1]");
        emit_subtract(b, addend_of(y), work);
    }
    {
        CircuitBuilder::Block block(b, "correction[2]");
        // + 2^n y_0
        b.cx(y[0], top);
    }
    b.assert_zero("halve", {work[0]});
    b.name_register("result", work.slice(1, n));
    b.mark_zero_input("result");
    return std::move(b).build();
}

// ---------------------------------------------------------------------------
// Mod p

LookupTable montgomery_table(const BigUInt &p, std::size_t w) {
    const BigUInt modulus = pow2(w);
    // Newton iteration for p^-1 mod 2^w; p*p = 1 mod 8 seeds three good bits.
    BigUInt inv = p;
    for (std::size_t good = 3; good < w; good *= 2) {
        inv = mod_floor(inv * (2 - p * inv), modulus);
    }
    inv = mod_floor(inv, modulus);
    LookupTable table(std::size_t{1} << w);
    for (std::size_t t = 0; t < table.size(); ++t) {
        table[t] = mod_floor(-BigUInt(t) * inv, modulus) * p;
    }
    return table;
}

double StepCharges::total() const {
    return cascade + std::accumulate(corrections.begin(), corrections.end(), 0.0) + lookup + adder + unlookup;
}

StepCharges quoted_step_charges(Variant variant, std::size_t n, std::size_t w) {
    const double nn = static_cast<double>(n);
    const double ww = static_cast<double>(w);
    StepCharges c;
    if (variant == Variant::Classic) {
        c.cascade = 2 * ww * (nn + 1);
    } else {
        c.cascade = ww * (nn + 1);
        c.corrections = {ww - 1, nn + ww, nn - 1};
    }
    c.lookup = std::ldexp(1.0, static_cast<int>(w));
    c.adder = nn + ww - 1;
    c.unlookup = 3 * std::exp2(ww / 2);
    return c;
}

namespace {

struct StepContext {
    const BigUInt &p;
    std::size_t n;
    Variant variant;
};

/// Lookup, add and unlookup of m*p into acc (n+w+1 bits), leaving the low w
/// bits of acc zero and their former value in `garbage`.
void emit_montgomery_reduce(CircuitBuilder &b, const StepContext &ctx, const StepCharges &charges,
                            const Register &acc, const Register &garbage) {
    const std::size_t w = garbage.width();
    auto table = std::make_shared<const LookupTable>(montgomery_table(ctx.p, w));
    const Register loaded = b.acquire_ancillas(ctx.n + w);
    {
        CircuitBuilder::Block block(b, "lookup");
        for (std::size_t j = 0; j < w; ++j) {
            b.cx(acc[j], garbage[j]);
        }
        emit_lookup(b, garbage, loaded, table);
    }
    {
        CircuitBuilder::Block block(b, "adder", charges.adder);
        emit_add(b, addend_of(loaded), acc);
    }
    {
        CircuitBuilder::Block block(b, "unlookup");
        emit_unlookup(b, garbage, loaded, table);
    }
    b.release_ancillas(loaded);
    std::vector<QubitId> low(acc.begin(), acc.begin() + static_cast<std::ptrdiff_t>(w));
    b.assert_zero("shift", std::move(low));
}

/// Classic step. acc: n+w+1 bits holding z < 2p. Afterwards acc holds
/// z' * 2^w.
void emit_step_classic(CircuitBuilder &b, const StepContext &ctx, const Register &acc, const Register &window,
                       const Register &y, const Register &garbage) {
    const std::size_t n = ctx.n;
    const std::size_t w = window.width();
    const StepCharges charges = quoted_step_charges(Variant::Classic, n, w);
    {
        CircuitBuilder::Block block(b, "cascade", charges.cascade);
        // Partial sums stay below 2^(n+i+2), so an (n+2)-bit window suffices.
        for (std::size_t i = 0; i < w; ++i) {
            emit_controlled_add(b, window[i], addend_of(y), acc.slice(i, n + 2));
        }
    }
    emit_montgomery_reduce(b, ctx, charges, acc, garbage);
}

/// Add-subtract step. work: n+w+2 bits, bit 0 zero, z < 2p in bits 1..n+1.
/// Afterwards work holds z' * 2^(w+1).
void emit_step_addsub(CircuitBuilder &b, const StepContext &ctx, const Register &work, const Register &window,
                      const Register &y, const Register &garbage, const std::string &checkpoint) {
    const std::size_t n = ctx.n;
    const std::size_t w = window.width();
    // Add-subtract width: 2z < 2^(n+2) must hold for the cascade not to overflow.
    const std::size_t m = n + 2;
    const StepCharges charges = quoted_step_charges(Variant::AddSub, n, w);
    {
        CircuitBuilder::Block block(b, "cascade", charges.cascade);
        for (std::size_t i = 0; i < w; ++i) {
            emit_controlled_addsub(b, window[i], addend_of(y), work.slice(i, m), work[i + m]);
        }
    }
    // work = 2(z + x~ y) - 2^m (x~ + 1) + 2^(m+w) + y - 2^w y
    b.checkpoint(checkpoint);
    {
        CircuitBuilder::Block block(b, "correction[0]", charges.corrections[0]);
        const Register one = b.acquire_ancillas(1);
        b.x(one[0]);
        emit_add(b, addend_of(window), work.slice(m, w), one[0]);
        b.x(one[0]);
        b.release_ancillas(one);
    }
    {
        // 2^(m+w) vanishes modulo the work register.
        CircuitBuilder::Block block(b, "correction[1]", charges.corrections[1]);
        emit_subtract(b, addend_of(y), work);
    }
    {
        CircuitBuilder::Block block(b, "correction[2]", charges.corrections[2]);
        emit_add(b, addend_of(y), work.slice(w, n + 2));
    }
    b.assert_zero("halve", {work[0]});
    emit_montgomery_reduce(b, ctx, charges, work.slice(1, n + w + 1), garbage);
}

/// Runs the windowed steps over x on the (n+1)-bit accumulator `z` (zero on
/// entry). Returns the accumulator's final qubits, holding a value < 2p.
Register emit_steps(CircuitBuilder &b, const StepContext &ctx, Register z, const Register &x, const Register &y,
                    const Register &garbage, std::size_t w) {
    std::size_t offset = 0;
    std::size_t k = 0;
    for (std::size_t width : oracle::window_widths(ctx.n, w)) {
        const Register window = x.slice(offset, width);
        const Register gbits = garbage.slice(offset, width);
        CircuitBuilder::Block block(b, indexed("step", k));
        if (ctx.variant == Variant::Classic) {
            const Register acc = z.concat(b.acquire_ancillas(width));
            emit_step_classic(b, ctx, acc, window, y, gbits);
            z = acc.slice(width, ctx.n + 1);
            b.release_ancillas(acc.slice(0, width));
        } else {
            const Register work = b.acquire_ancillas(1).concat(z).concat(b.acquire_ancillas(width));
            emit_step_addsub(b, ctx, work, window, y, gbits, indexed("step", k) + "/cascade");
            z = work.slice(width + 1, ctx.n + 1);
            b.release_ancillas(work.slice(0, width + 1));
        }
        offset += width;
        ++k;
    }
    return z;
}

}  // namespace

Circuit build_modmultstep(const ModPParams &params, std::size_t k, Variant variant) {
    params.validate();
    const auto widths = oracle::window_widths(params.n, params.w);
    if (k >= widths.size()) {
        throw std::invalid_argument("step index out of range");
    }
    const std::size_t n = params.n;
    const std::size_t w = widths[k];
    const StepContext ctx{params.p, n, variant};

    CircuitBuilder b;
    const Register window = b.allocate_register(w, "x_window");
    const Register y = b.allocate_register(n, "y");
    const Register garbage = b.allocate_register(w, "garbage");
    b.mark_zero_input("garbage");
    b.set_input_limit("y", params.p);

    CircuitBuilder::Block block(b, indexed("step", k));
    if (variant == Variant::Classic) {
        const Register acc = b.allocate_register(n + w + 1, "acc");
        emit_step_classic(b, ctx, acc, window, y, garbage);
    } else {
        const Register low = b.acquire_ancillas(1);
        const Register acc = b.allocate_register(n + w + 1, "acc");
        emit_step_addsub(b, ctx, low.concat(acc), window, y, garbage, "cascade");
    }
    b.set_input_limit("acc", 2 * params.p);
    return std::move(b).build();
}

namespace {

void build_modp_into(CircuitBuilder &b, const ModPParams &params, Variant variant) {
    params.validate();
    const std::size_t n = params.n;
    const StepContext ctx{params.p, n, variant};

    const Register x = b.allocate_register(n, "x");
    const Register y = b.allocate_register(n, "y");
    const Register garbage = b.allocate_register(n, "garbage");
    const Register flag = b.allocate_register(1, "flag");
    b.set_input_limit("x", params.p);
    b.set_input_limit("y", params.p);
    b.mark_zero_input("garbage");
    b.mark_zero_input("flag");

    const Register z = emit_steps(b, ctx, b.acquire_ancillas(n + 1), x, y, garbage, params.w);

    // z < 2p: subtract p, remember the sign, add p back when it went negative.
    {
        CircuitBuilder::Block block(b, "reduction[0]");
        emit_add_constant(b, pow2(n + 1) - params.p, z);
        b.cx(z[n], flag[0]);
    }
    {
        CircuitBuilder::Block block(b, "reduction[1]");
        emit_add_constant(b, params.p, z, flag[0]);
    }
    b.assert_zero("reduction/top", {z[n]});
    b.name_register("result", z.slice(0, n));
    b.mark_zero_input("result");
}

}  // namespace

Circuit build_modp(const ModPParams &params, Variant variant) {
    CircuitBuilder b;
    build_modp_into(b, params, variant);
    return std::move(b).build();
}

Circuit uncompute_garbage(const ModPParams &params, Variant variant) {
    const Circuit forward = build_modp(params, variant);
    CircuitBuilder b(forward);
    const Register result = forward.reg("result");
    const Register copy = b.allocate_register(params.n, "copy");
    b.mark_zero_input("copy");
    {
        CircuitBuilder::Block block(b, "copy");
        for (std::size_t i = 0; i < params.n; ++i) {
            b.cx(result[i], copy[i]);
        }
    }
    std::vector<QubitId> identity(forward.qubit_count());
    std::iota(identity.begin(), identity.end(), QubitId{0});
    b.append(invert(forward), identity, "uncompute/");
    return std::move(b).build();
}

Circuit build_multiplier(MultiplierKind kind, std::size_t n, const std::optional<ModPParams> &params) {
    switch (kind) {
        case MultiplierKind::SchoolbookClassic:
        case MultiplierKind::SchoolbookAddSub:
            return build_schoolbook(n, variant_of(kind));
        case MultiplierKind::Mod2nClassic:
        case MultiplierKind::Mod2nAddSub:
            return build_mod2n(n, variant_of(kind));
        case MultiplierKind::ModPClassic:
        case MultiplierKind::ModPAddSub:
            if (!params) {
                throw std::invalid_argument("mod-p multipliers need p and w");
            }
            if (params->n != n) {
                throw std::invalid_argument("mod-p parameters disagree with n");
            }
            return build_modp(*params, variant_of(kind));
    }
    throw std::invalid_argument("unknown multiplier kind");
}

}  // namespace qmul
