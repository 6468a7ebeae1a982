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

#include "qmul/multipliers.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qmul {

/// Closed-form Toffoli count. Mod-p kinds need w and use n/w as a real
/// quotient; 3*2^(w/2) is real-valued for odd w. Overflows to +inf for
/// very large w rather than throwing.
double formula_toffoli(MultiplierKind kind, std::size_t n, std::optional<std::size_t> w = std::nullopt);

struct WindowChoice {
    std::size_t w = 1;
    double cost = 0;
    /// log2(n / log2 n) + 2, for comparison.
    double approximation = 0;
};

/// Integer w in [1, n] minimizing formula_toffoli; ties go to the smaller w.
/// Throws std::invalid_argument for non-mod-p kinds or n < 2.
WindowChoice optimal_window(MultiplierKind kind, std::size_t n);

enum class Family { Schoolbook, Mod2n, ModP };

std::string_view family_name(Family family);
std::optional<Family> parse_family(std::string_view name);
MultiplierKind classic_kind(Family family);
MultiplierKind addsub_kind(Family family);

/// 1 - addsub/classic from the formulas; mod-p uses each kind's optimal w.
double reduction(Family family, std::size_t n);

/// Smallest n with reduction(family, n) >= threshold, scanning upward from
/// the smallest admissible n to `cap`. Throws std::invalid_argument for a
/// threshold outside [0, 0.5) and std::out_of_range when the cap is hit.
std::size_t crossover(Family family, double threshold, std::size_t cap = 4096);

/// Sum of the quoted per-step charges plus 2n for the final reduction.
double quoted_ledger_total(Variant variant, std::size_t n, std::size_t w);

struct ReconcileReport {
    MultiplierKind kind{};
    std::size_t n = 0;
    std::optional<std::size_t> w;
    std::optional<BigUInt> p;
    double formula = 0;
    std::int64_t counted = 0;
    double nominal = 0;
    std::vector<LedgerEntry> ledger;
    /// Against the classic counterpart at the same parameters; absent for classic kinds.
    std::optional<double> reduction_vs_classic;
    /// Mod-p only: the quoted ledger sum and nominal - formula.
    std::optional<double> quoted_ledger;
    std::optional<double> table_gap;
    /// Lookup-free kinds: counted == formula. Mod-p: nominal == quoted ledger.
    bool exact = false;

    nlohmann::json to_json() const;
};

/// Builds the circuit and compares it with the formulas. Mod-p kinds default
/// to the largest n-bit prime and the optimal window when params is absent.
ReconcileReport reconcile(MultiplierKind kind, std::size_t n, std::optional<ModPParams> params = std::nullopt);

/// Default mod-p parameters at width n: largest prime below 2^n, optimal w.
ModPParams default_modp_params(MultiplierKind kind, std::size_t n);

}  // namespace qmul
