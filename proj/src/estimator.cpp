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

#include "qmul/estimator.hpp"

#include "qmul/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace qmul {

double formula_toffoli(MultiplierKind kind, std::size_t n_in, std::optional<std::size_t> w_in) {
    if (n_in == 0) {
        throw std::invalid_argument("n must be positive");
    }
    const double n = static_cast<double>(n_in);
    switch (kind) {
        case MultiplierKind::SchoolbookClassic: return 2 * n * n + n;
        case MultiplierKind::SchoolbookAddSub: return n * n + 4 * n + 3;
        case MultiplierKind::Mod2nClassic: return n * n;
        case MultiplierKind::Mod2nAddSub: return 0.5 * n * n + 1.5 * n;
        default: break;
    }
    if (!w_in || *w_in == 0) {
        throw std::invalid_argument("mod-p formulas need a window size w >= 1");
    }
    const double w = static_cast<double>(*w_in);
    const double lookups = std::exp2(w) + 3 * std::exp2(w / 2);
    if (kind == MultiplierKind::ModPClassic) {
        return 2 * n * n + 4 * n + (n / w) * (lookups + n - 1);
    }
    return n * n + 6 * n + (n / w) * (lookups + 3 * n - 3);
}

WindowChoice optimal_window(MultiplierKind kind, std::size_t n) {
    if (!is_modp(kind)) {
        throw std::invalid_argument("optimal_window applies to mod-p kinds only");
    }
    if (n < 2) {
        throw std::invalid_argument("optimal_window needs n >= 2");
    }
    WindowChoice best{1, formula_toffoli(kind, n, 1), 0};
    for (std::size_t w = 2; w <= n; ++w) {
        const double cost = formula_toffoli(kind, n, w);
        if (cost < best.cost) {
            best.w = w;
            best.cost = cost;
        }
    }
    const double nn = static_cast<double>(n);
    best.approximation = std::log2(nn / std::log2(nn)) + 2;
    return best;
}

std::string_view family_name(Family family) {
    switch (family) {
        case Family::Schoolbook: return "schoolbook";
        case Family::Mod2n: return "mod2n";
        case Family::ModP: return "modp";
    }
    return "?";
}

std::optional<Family> parse_family(std::string_view name) {
    for (Family f : {Family::Schoolbook, Family::Mod2n, Family::ModP}) {
        if (family_name(f) == name) {
            return f;
        }
    }
    return std::nullopt;
}

MultiplierKind classic_kind(Family family) {
    switch (family) {
        case Family::Schoolbook: return MultiplierKind::SchoolbookClassic;
        case Family::Mod2n: return MultiplierKind::Mod2nClassic;
        case Family::ModP: return MultiplierKind::ModPClassic;
    }
    throw std::invalid_argument("unknown family");
}

MultiplierKind addsub_kind(Family family) {
    switch (family) {
        case Family::Schoolbook: return MultiplierKind::SchoolbookAddSub;
        case Family::Mod2n: return MultiplierKind::Mod2nAddSub;
        case Family::ModP: return MultiplierKind::ModPAddSub;
    }
    throw std::invalid_argument("unknown family");
}

namespace {

double best_cost(MultiplierKind kind, std::size_t n) {
    return is_modp(kind) ? optimal_window(kind, n).cost : formula_toffoli(kind, n);
}

}  // namespace

double reduction(Family family, std::size_t n) {
    const double old_cost = best_cost(classic_kind(family), n);
    const double new_cost = best_cost(addsub_kind(family), n);
    return (old_cost - new_cost) / old_cost;
}

std::size_t crossover(Family family, double threshold, std::size_t cap) {
    if (!(threshold >= 0 && threshold < 0.5)) {
        throw std::invalid_argument("threshold must lie in [0, 0.5)");
    }
    for (std::size_t n = family == Family::ModP ? 2 : 1; n <= cap; ++n) {
        if (reduction(family, n) >= threshold) {
            return n;
        }
    }
    throw std::out_of_range("threshold not reached for n <= " + std::to_string(cap));
}

double quoted_ledger_total(Variant variant, std::size_t n, std::size_t w) {
    double total = 2.0 * static_cast<double>(n);
    for (std::size_t width : oracle::window_widths(n, w)) {
        total += quoted_step_charges(variant, n, width).total();
    }
    return total;
}

ModPParams default_modp_params(MultiplierKind kind, std::size_t n) {
    return ModPParams{oracle::largest_prime_in_width(n), n, optimal_window(kind, n).w};
}

ReconcileReport reconcile(MultiplierKind kind, std::size_t n, std::optional<ModPParams> params) {
    ReconcileReport r;
    r.kind = kind;
    r.n = n;
    if (is_modp(kind) && !params) {
        params = default_modp_params(kind, n);
    }
    const Circuit circuit = build_multiplier(kind, n, is_modp(kind) ? params : std::nullopt);
    const ResourceReport resources = count_resources(circuit);
    r.counted = resources.counted_toffoli;
    r.nominal = resources.nominal_toffoli;
    r.ledger = resources.block_ledger;
    if (is_modp(kind)) {
        r.w = params->w;
        r.p = params->p;
        r.formula = formula_toffoli(kind, n, params->w);
        r.quoted_ledger = quoted_ledger_total(variant_of(kind), n, params->w);
        r.table_gap = r.nominal - r.formula;
        r.exact = std::abs(r.nominal - *r.quoted_ledger) <= 1e-9 * std::max(1.0, *r.quoted_ledger);
    } else {
        r.formula = formula_toffoli(kind, n);
        r.exact = static_cast<double>(r.counted) == r.formula;
    }
    if (variant_of(kind) == Variant::AddSub) {
        const double classic = formula_toffoli(classic_of(kind), n, r.w);
        r.reduction_vs_classic = 1 - r.formula / classic;
    }
    return r;
}

nlohmann::json ReconcileReport::to_json() const {
    using nlohmann::json;
    json j;
    j["kind"] = kind_name(kind);
    j["n"] = n;
    j["w"] = w ? json(*w) : json(nullptr);
    if (p) {
        j["p"] = to_string(*p);
    }
    j["formula"] = formula;
    j["counted"] = counted;
    j["nominal"] = nominal;
    json entries = json::array();
    for (const auto &e : ledger) {
        entries.push_back({{"label", e.label}, {"cost", e.nominal}, {"counted", e.counted}});
    }
    j["ledger"] = entries;
    j["reduction_vs_classic"] = reduction_vs_classic ? json(*reduction_vs_classic) : json(nullptr);
    if (quoted_ledger) {
        j["quoted_ledger"] = *quoted_ledger;
        j["table_gap"] = *table_gap;
    }
    j["exact"] = exact;
    return j;
}

}  // namespace qmul
