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

#include "qmul/simulator.hpp"

#include <algorithm>

namespace qmul {

BigUInt BasisState::read(const Register &reg) const {
    BigUInt value = 0;
    for (std::size_t k = reg.width(); k-- > 0;) {
        value <<= 1;
        if (bits_[reg[k]]) {
            value |= 1;
        }
    }
    return value;
}

void BasisState::write(const Register &reg, const BigUInt &value) {
    for (std::size_t k = 0; k < reg.width(); ++k) {
        bits_[reg[k]] = test_bit(value, k) ? 1 : 0;
    }
}

std::uint64_t BasisState::read_word(std::span<const QubitId> qubits) const {
    std::uint64_t value = 0;
    for (std::size_t k = 0; k < qubits.size(); ++k) {
        value |= static_cast<std::uint64_t>(bits_[qubits[k]]) << k;
    }
    return value;
}

namespace {

std::string summarize(const std::vector<Violation> &violations) {
    std::string msg = "ancilla discipline violated";
    if (!violations.empty()) {
        msg += " at gate " + std::to_string(violations.front().gate_index) + ": " + violations.front().what;
        if (violations.size() > 1) {
            msg += " (+" + std::to_string(violations.size() - 1) + " more)";
        }
    }
    return msg;
}

void xor_table_entry(BasisState &state, const Gate &g, const BigUInt &entry) {
    auto target = g.lookup_target();
    for (std::size_t k = 0; k < target.size(); ++k) {
        if (test_bit(entry, k)) {
            state.flip(target[k]);
        }
    }
}

bool target_matches(const BasisState &state, const Gate &g, const BigUInt &entry) {
    auto target = g.lookup_target();
    for (std::size_t k = 0; k < target.size(); ++k) {
        if (state.get(target[k]) != test_bit(entry, k)) {
            return false;
        }
    }
    return true;
}

}  // namespace

AncillaViolation::AncillaViolation(const std::vector<Violation> &v)
    : std::runtime_error(summarize(v)), violations(v) {}

std::vector<Violation> apply(const Circuit &circuit, BasisState &state, const RunOptions &options) {
    std::vector<Violation> violations;
    const bool check = options.check_discipline;
    const auto &gates = circuit.gates();

    std::size_t end = gates.size();
    if (options.stop_at) {
        auto it = circuit.checkpoints().find(*options.stop_at);
        if (it == circuit.checkpoints().end()) {
            throw std::invalid_argument("unknown checkpoint '" + *options.stop_at + "'");
        }
        end = it->second;
    }

    if (check) {
        for (QubitId q : circuit.ancillas()) {
            if (state.get(q)) {
                violations.push_back({0, "ancilla q" + std::to_string(q) + " is not zero on entry"});
            }
        }
    }

    const auto &checks = circuit.zero_checks();
    std::size_t next_check = 0;
    auto run_checks_at = [&](std::size_t position) {
        while (next_check < checks.size() && checks[next_check].position <= position) {
            const ZeroCheck &zc = checks[next_check++];
            if (!check || zc.position != position) {
                continue;
            }
            for (QubitId q : zc.qubits) {
                if (state.get(q)) {
                    violations.push_back({position, "zero check '" + zc.label + "' failed on q" + std::to_string(q)});
                    break;
                }
            }
        }
    };

    for (std::size_t i = 0; i < end; ++i) {
        run_checks_at(i);
        const Gate &g = gates[i];
        const auto &q = g.qubits;
        switch (g.kind) {
            case GateKind::Not:
                state.flip(q[0]);
                break;
            case GateKind::Cnot:
                if (state.get(q[0])) {
                    state.flip(q[1]);
                }
                break;
            case GateKind::MultiCnot:
                if (state.get(q[0])) {
                    for (std::size_t k = 1; k < q.size(); ++k) {
                        state.flip(q[k]);
                    }
                }
                break;
            case GateKind::Toffoli:
                if (state.get(q[0]) && state.get(q[1])) {
                    state.flip(q[2]);
                }
                break;
            case GateKind::TempAnd:
                if (check && state.get(q[2])) {
                    violations.push_back({i, "AND target q" + std::to_string(q[2]) + " is not zero"});
                }
                if (state.get(q[0]) && state.get(q[1])) {
                    state.flip(q[2]);
                }
                break;
            case GateKind::TempAndUncompute: {
                const bool product = state.get(q[0]) && state.get(q[1]);
                if (check && state.get(q[2]) != product) {
                    violations.push_back({i, "AND uncompute on q" + std::to_string(q[2]) + " disagrees with its controls"});
                }
                if (product) {
                    state.flip(q[2]);
                }
                break;
            }
            case GateKind::LookupLoad:
            case GateKind::LookupUnload: {
                const std::uint64_t address = state.read_word(g.address());
                const BigUInt &entry = (*g.table)[address];
                if (check) {
                    if (g.kind == GateKind::LookupLoad && !target_matches(state, g, 0)) {
                        violations.push_back({i, "lookup target is not zero before load"});
                    } else if (g.kind == GateKind::LookupUnload && !target_matches(state, g, entry)) {
                        violations.push_back({i, "lookup target does not hold table[address] before unload"});
                    }
                }
                xor_table_entry(state, g, entry);
                break;
            }
        }
    }
    run_checks_at(end);

    if (check && end == gates.size()) {
        for (QubitId q : circuit.ancillas()) {
            if (state.get(q)) {
                violations.push_back({end, "ancilla q" + std::to_string(q) + " is not zero on exit"});
            }
        }
    }
    return violations;
}

BasisState prepare(const Circuit &circuit, const RegisterValues &input, const RunOptions &options) {
    BasisState state(circuit.qubit_count());
    for (const auto &[role, value] : input) {
        const Register &reg = circuit.reg(role);
        if (value < 0 || bit_length(value) > reg.width()) {
            throw std::invalid_argument("value " + to_string(value) + " does not fit register '" + role + "' of width " +
                                        std::to_string(reg.width()));
        }
        if (options.check_inputs) {
            if (value != 0 && circuit.zero_inputs().contains(role)) {
                throw std::invalid_argument("register '" + role + "' must be zero on entry");
            }
            if (auto it = circuit.input_limits().find(role); it != circuit.input_limits().end() && value >= it->second) {
                throw std::invalid_argument("value " + to_string(value) + " for '" + role + "' must be below " +
                                            to_string(it->second));
            }
        }
        state.write(reg, value);
    }
    return state;
}

RegisterValues read_all(const Circuit &circuit, const BasisState &state) {
    RegisterValues out;
    for (const auto &[role, reg] : circuit.registers()) {
        out.emplace(role, state.read(reg));
    }
    return out;
}

RunResult run_checked(const Circuit &circuit, const RegisterValues &input, const RunOptions &options) {
    BasisState state = prepare(circuit, input, options);
    RunResult result;
    result.violations = apply(circuit, state, options);
    result.values = read_all(circuit, state);
    return result;
}

RegisterValues run(const Circuit &circuit, const RegisterValues &input, const RunOptions &options) {
    RunResult result = run_checked(circuit, input, options);
    if (!result.violations.empty()) {
        throw AncillaViolation(result.violations);
    }
    return std::move(result.values);
}

}  // namespace qmul
