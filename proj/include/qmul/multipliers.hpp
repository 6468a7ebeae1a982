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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qmul {

enum class Variant { Classic, AddSub };

enum class MultiplierKind {
    SchoolbookClassic,
    SchoolbookAddSub,
    Mod2nClassic,
    Mod2nAddSub,
    ModPClassic,
    ModPAddSub,
};

inline constexpr MultiplierKind kAllKinds[] = {
    MultiplierKind::SchoolbookClassic, MultiplierKind::SchoolbookAddSub, MultiplierKind::Mod2nClassic,
    MultiplierKind::Mod2nAddSub,       MultiplierKind::ModPClassic,      MultiplierKind::ModPAddSub,
};

/// Kebab-case CLI name, e.g. "schoolbook-addsub".
std::string_view kind_name(MultiplierKind kind);
std::optional<MultiplierKind> parse_kind(std::string_view name);
Variant variant_of(MultiplierKind kind);
bool is_modp(MultiplierKind kind);
/// The controlled-adder counterpart of an add-subtract kind (identity on classic kinds).
MultiplierKind classic_of(MultiplierKind kind);

struct ModPParams {
    BigUInt p;
    std::size_t n = 0;
    std::size_t w = 1;
    /// Reject composite moduli instead of warning.
    bool strict = false;

    /// Throws std::invalid_argument for even p, p outside (2^(n-1), 2^n) or
    /// w outside [1, n]. Returns a warning for composite p in non-strict mode.
    std::optional<std::string> validate() const;
};

/// |x>|y>|0> -> |x>|y>|xy>. Registers x, y (n), result (2n, zero on entry).
/// Counted Toffoli: 2n^2+n (classic), n^2+4n+3 (add-subtract).
Circuit build_schoolbook(std::size_t n, Variant variant);

/// |x>|y>|0> -> |x>|y>|xy mod 2^n>. Registers x, y, result (all n).
/// Counted Toffoli: n^2 (classic), 0.5n^2+1.5n (add-subtract).
Circuit build_mod2n(std::size_t n, Variant variant);

/// One windowed Montgomery step k on its own. Registers:
///   acc      (n+w+1)  in: z < 2p, out: z' * 2^w with z' = (z + x~*y + m*p) / 2^w
///   x_window (w), y (n, < p), garbage (w, zero on entry)
/// where w is the width of window k.
Circuit build_modmultstep(const ModPParams &params, std::size_t k, Variant variant);

/// |x>|y>|0>|0>|0> -> |x>|y>|x*y*2^-n mod p>|garbage>|flag> for x, y < p.
/// garbage holds the n step byproducts, flag the final-reduction comparison.
Circuit build_modp(const ModPParams &params, Variant variant);

/// build_modp, CNOT-copy of the result into `copy`, then the inverse of the
/// whole multiplication: only x, y and copy are left non-zero.
Circuit uncompute_garbage(const ModPParams &params, Variant variant);

/// Dispatch on kind; `params` is required for the mod-p kinds.
Circuit build_multiplier(MultiplierKind kind, std::size_t n, const std::optional<ModPParams> &params = std::nullopt);

/// The Montgomery reduction table for window width w: entry[t] = m_t * p with
/// m_t * p = -t mod 2^w.
LookupTable montgomery_table(const BigUInt &p, std::size_t w);

/// Charges quoted for one step with window w (per-step nominal ledger).
struct StepCharges {
    double cascade = 0;
    /// Add-subtract only: {w-1, n+w, n-1}.
    std::vector<double> corrections;
    double lookup = 0;
    double adder = 0;
    double unlookup = 0;

    double total() const;
};
StepCharges quoted_step_charges(Variant variant, std::size_t n, std::size_t w);

}  // namespace qmul
