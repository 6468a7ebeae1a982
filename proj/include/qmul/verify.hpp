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
#include "qmul/simulator.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace qmul {

/// One swept input register; values range over [0, limit).
struct Axis {
    std::string role;
    BigUInt limit;
};

/// A circuit with the oracle it is checked against. The oracle maps the
/// swept inputs to the expected values of the output roles; swept inputs are
/// additionally required to read back unchanged.
struct Subject {
    std::string kind;
    std::size_t n = 0;
    nlohmann::json params = nlohmann::json::object();
    Circuit circuit;
    std::vector<Axis> axes;
    std::function<RegisterValues(const RegisterValues &)> oracle;
};

/// Multiplier subject. Mod-p kinds need `params` (p, w).
Subject make_subject(MultiplierKind kind, std::size_t n, const std::optional<ModPParams> &params = std::nullopt);

/// Arithmetic block subjects, by name:
///   adder, adder-carry, adder-carry-in, subtractor, subtractor-borrow,
///   controlled-adder, controlled-adder-carry, controlled-addsub, controlled-addsub-carry
Subject make_block_subject(const std::string &name, std::size_t n);

/// Multiplier kind names plus the block names above.
Subject make_subject(const std::string &name, std::size_t n, const std::optional<ModPParams> &params = std::nullopt);

struct Mismatch {
    std::uint64_t case_index = 0;
    RegisterValues input;
    RegisterValues expected;
    RegisterValues actual;
};

struct ViolationRecord {
    std::uint64_t case_index = 0;
    RegisterValues input;
    Violation violation;
};

struct VerificationReport {
    std::string kind;
    std::size_t n = 0;
    nlohmann::json params;
    std::optional<std::uint64_t> seed;
    std::uint64_t cases_run = 0;
    /// Both sorted by case index.
    std::vector<Mismatch> mismatches;
    std::vector<ViolationRecord> ancilla_violations;

    bool passed() const { return mismatches.empty() && ancilla_violations.empty(); }
    nlohmann::json to_json() const;
};

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 24;

struct SweepOptions {
    /// Worker threads; 0 means the OpenMP default.
    int jobs = 0;
    std::uint64_t budget = kDefaultBudget;
};

/// Every input combination. The case index orders inputs lexicographically
/// with the first axis most significant. Throws std::length_error when the
/// input space exceeds the budget.
VerificationReport verify_exhaustive(const Subject &subject, const SweepOptions &options = {});
/// Same sweep on one thread with no OpenMP involvement; the reference
/// implementation the parallel one is tested against.
VerificationReport verify_exhaustive_serial(const Subject &subject, std::uint64_t budget = kDefaultBudget);

/// `trials` inputs drawn uniformly below each axis limit from a mt19937_64
/// seeded with `seed`. Inputs are drawn before the parallel section, so the
/// report does not depend on the thread count.
VerificationReport verify_randomized(const Subject &subject, std::uint64_t trials, std::uint64_t seed,
                                     const SweepOptions &options = {});
VerificationReport verify_randomized_serial(const Subject &subject, std::uint64_t trials, std::uint64_t seed);

/// Uniform value in [0, limit) from `gen`, by rejection on bit_length(limit-1) bits.
BigUInt random_below(const BigUInt &limit, std::mt19937_64 &gen);

}  // namespace qmul
