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
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmul {

/// One classical bit per qubit. Every gate in scope permutes computational
/// basis states, so this is an exact simulation.
class BasisState {
public:
    explicit BasisState(std::size_t qubit_count) : bits_(qubit_count, 0) {}

    std::size_t size() const { return bits_.size(); }
    bool get(QubitId q) const { return bits_[q] != 0; }
    void set(QubitId q, bool v) { bits_[q] = v ? 1 : 0; }
    void flip(QubitId q) { bits_[q] ^= 1; }

    BigUInt read(const Register &reg) const;
    /// Writes the low reg.width() bits of `value`.
    void write(const Register &reg, const BigUInt &value);
    /// Register value as a machine word; the register must be < 64 bits wide.
    std::uint64_t read_word(std::span<const QubitId> qubits) const;

    bool operator==(const BasisState &) const = default;

private:
    std::vector<std::uint8_t> bits_;
};

using RegisterValues = std::map<std::string, BigUInt>;

/// A broken invariant observed while simulating: a TempAnd onto a dirty
/// target, an AND uncompute whose target disagrees with its controls, a lookup
/// unload that finds the wrong value, a failed zero assertion, or an ancilla
/// left dirty. These signal construction bugs, not user errors.
struct Violation {
    std::size_t gate_index = 0;
    std::string what;
};

class AncillaViolation : public std::runtime_error {
public:
    AncillaViolation(const std::vector<Violation> &violations);
    std::vector<Violation> violations;
};

struct RunOptions {
    /// Enforce zero-input roles and input limits.
    bool check_inputs = true;
    /// Record AND/lookup/zero-check/ancilla discipline violations.
    bool check_discipline = true;
    /// Stop before the gate at this checkpoint.
    std::optional<std::string> stop_at;
};

/// Applies gates [0, end) to `state`. Returns the violations observed.
std::vector<Violation> apply(const Circuit &circuit, BasisState &state, const RunOptions &options = {});

/// Loads `input` into a fresh state. Throws std::invalid_argument on unknown
/// roles, values that do not fit, or violated input requirements.
BasisState prepare(const Circuit &circuit, const RegisterValues &input, const RunOptions &options = {});

RegisterValues read_all(const Circuit &circuit, const BasisState &state);

struct RunResult {
    RegisterValues values;
    std::vector<Violation> violations;
};

/// Simulates and reports violations instead of throwing on them.
RunResult run_checked(const Circuit &circuit, const RegisterValues &input, const RunOptions &options = {});

/// Simulates and returns every named register. Throws AncillaViolation when
/// a discipline check fails.
RegisterValues run(const Circuit &circuit, const RegisterValues &input, const RunOptions &options = {});

}  // namespace qmul
