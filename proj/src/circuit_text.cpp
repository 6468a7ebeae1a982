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

#include "qmul/circuit_text.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>
#include <unordered_map>

namespace qmul {

namespace {

template <typename Range>
std::string qubit_list(const Range &qubits) {
    std::string out;
    for (QubitId q : qubits) {
        if (!out.empty()) {
            out += ',';
        }
        out += 'q';
        out += std::to_string(q);
    }
    return out;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void check_label(const std::string &label) {
    if (label.empty() || label.find_first_of(" \t\n") != std::string::npos || label.find(':') != std::string::npos) {
        throw CircuitError("label '" + label + "' cannot be written as text");
    }
}

}  // namespace

std::string emit_text(const Circuit &circuit) {
    std::ostringstream out;
    out << "# qubits: " << circuit.qubit_count() << '\n';
    for (const auto &[role, reg] : circuit.registers()) {
        check_label(role);
        out << "# register " << role << ": " << qubit_list(reg) << '\n';
    }
    for (const auto &role : circuit.zero_inputs()) {
        out << "# zero-input: " << role << '\n';
    }
    for (const auto &[role, limit] : circuit.input_limits()) {
        out << "# limit " << role << ": " << to_string(limit) << '\n';
    }
    for (const auto &label : circuit.block_labels()) {
        check_label(label);
        out << "# label " << label << '\n';
    }
    for (const auto &[label, value] : circuit.nominal_overrides()) {
        out << "# nominal " << label << ": " << format_double(value) << '\n';
    }
    for (const auto &check : circuit.zero_checks()) {
        check_label(check.label);
        out << "# assert-zero @" << check.position << ' ' << check.label << ": " << qubit_list(check.qubits) << '\n';
    }
    for (const auto &[label, position] : circuit.checkpoints()) {
        check_label(label);
        out << "# checkpoint @" << position << ' ' << label << '\n';
    }

    std::int32_t block = -1;
    for (const Gate &g : circuit.gates()) {
        if (g.block != block) {
            block = g.block;
            out << "# block";
            if (block >= 0) {
                out << ' ' << circuit.block_labels()[static_cast<std::size_t>(block)];
            }
            out << '\n';
        }
        out << mnemonic(g.kind);
        if (g.is_lookup()) {
            out << ' ' << qubit_list(g.address()) << " -> " << qubit_list(g.lookup_target()) << " : ";
            for (std::size_t i = 0; i < g.table->size(); ++i) {
                out << (i ? "," : "") << to_string((*g.table)[i]);
            }
        } else {
            for (QubitId q : g.qubits) {
                out << " q" << q;
            }
        }
        out << '\n';
    }
    return out.str();
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Circuit run() {
        std::size_t start = 0;
        while (start <= text_.size()) {
            std::size_t end = text_.find('\n', start);
            if (end == std::string_view::npos) {
                end = text_.size();
            }
            ++line_no_;
            line(trim(text_.substr(start, end - start)));
            start = end + 1;
        }
        try {
            return Circuit(std::move(data_));
        } catch (const CircuitError &e) {
            throw CircuitError(std::string("parsed circuit is invalid: ") + e.what());
        }
    }

private:
    [[noreturn]] void fail(const std::string &what) const {
        throw CircuitError("line " + std::to_string(line_no_) + ": " + what);
    }

    static std::string_view trim(std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
            s.remove_prefix(1);
        }
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
            s.remove_suffix(1);
        }
        return s;
    }

    static bool consume(std::string_view &s, std::string_view prefix) {
        if (s.substr(0, prefix.size()) != prefix) {
            return false;
        }
        s.remove_prefix(prefix.size());
        return true;
    }

    std::size_t number(std::string_view s) const {
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
            fail("expected a number, got '" + std::string(s) + "'");
        }
        return v;
    }

    QubitId qubit(std::string_view s) const {
        s = trim(s);
        if (!consume(s, "q")) {
            fail("expected a qubit like q3, got '" + std::string(s) + "'");
        }
        return static_cast<QubitId>(number(s));
    }

    std::vector<QubitId> qubits(std::string_view s) const {
        std::vector<QubitId> out;
        s = trim(s);
        if (s.empty()) {
            return out;
        }
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = s.find(',', start);
            const std::string_view item = s.substr(start, comma - start);
            // Inclusive ascending range, e.g. q4..q7.
            if (const std::size_t dots = item.find(".."); dots != std::string_view::npos) {
                const QubitId first = qubit(item.substr(0, dots));
                const QubitId last = qubit(item.substr(dots + 2));
                if (last < first) {
                    fail("qubit range must ascend");
                }
                for (QubitId q = first; q <= last; ++q) {
                    out.push_back(q);
                }
            } else {
                out.push_back(qubit(item));
            }
            if (comma == std::string_view::npos) {
                return out;
            }
            start = comma + 1;
        }
    }

    /// Splits "name: rest" at the first ':'.
    std::pair<std::string, std::string_view> keyed(std::string_view s) const {
        const std::size_t colon = s.find(':');
        if (colon == std::string_view::npos) {
            fail("expected 'name: value'");
        }
        return {std::string(trim(s.substr(0, colon))), trim(s.substr(colon + 1))};
    }

    std::size_t position(std::string_view &s) const {
        s = trim(s);
        if (!consume(s, "@")) {
            fail("expected @position");
        }
        const std::size_t space = s.find(' ');
        const std::size_t pos = number(s.substr(0, space));
        s = space == std::string_view::npos ? std::string_view{} : trim(s.substr(space));
        return pos;
    }

    void line(std::string_view s) {
        if (s.empty()) {
            return;
        }
        if (consume(s, "#")) {
            header(trim(s));
        } else {
            gate(s);
        }
    }

    void header(std::string_view s) {
        if (consume(s, "qubits:")) {
            data_.qubit_count = number(trim(s));
        } else if (consume(s, "register ")) {
            auto [role, rest] = keyed(s);
            try {
                data_.registers.emplace(role, Register(qubits(rest)));
            } catch (const CircuitError &e) {
                fail(e.what());
            }
        } else if (consume(s, "zero-input:")) {
            data_.zero_inputs.insert(std::string(trim(s)));
        } else if (consume(s, "limit ")) {
            auto [role, rest] = keyed(s);
            try {
                data_.input_limits[role] = parse_biguint(std::string(rest));
            } catch (const std::exception &) {
                fail("bad limit '" + std::string(rest) + "'");
            }
        } else if (consume(s, "label ")) {
            const std::string label(trim(s));
            labels_.emplace(label, static_cast<std::int32_t>(data_.block_labels.size()));
            data_.block_labels.push_back(label);
        } else if (consume(s, "nominal ")) {
            auto [label, rest] = keyed(s);
            const std::string value(rest);
            char *end = nullptr;
            const double v = std::strtod(value.c_str(), &end);
            if (value.empty() || *end != '\0') {
                fail("bad nominal value '" + value + "'");
            }
            data_.nominal_overrides[label] = v;
        } else if (consume(s, "assert-zero")) {
            const std::size_t pos = position(s);
            auto [label, rest] = keyed(s);
            data_.zero_checks.push_back({pos, label, qubits(rest)});
        } else if (consume(s, "checkpoint")) {
            const std::size_t pos = position(s);
            data_.checkpoints[std::string(s)] = pos;
        } else if (consume(s, "block")) {
            s = trim(s);
            if (s.empty()) {
                block_ = -1;
            } else {
                auto it = labels_.find(std::string(s));
                if (it == labels_.end()) {
                    fail("block '" + std::string(s) + "' has no label line");
                }
                block_ = it->second;
            }
        }
        // Any other comment is ignored.
    }

    void gate(std::string_view s) {
        const std::size_t space = s.find(' ');
        const std::string_view op = s.substr(0, space);
        const std::string_view rest = space == std::string_view::npos ? std::string_view{} : trim(s.substr(space));
        Gate g;
        if (op == "lookup" || op == "unlookup") {
            const std::size_t arrow = rest.find("->");
            const std::size_t colon = rest.find(':');
            if (arrow == std::string_view::npos || colon == std::string_view::npos || colon < arrow) {
                fail("expected 'lookup address -> target : entries'");
            }
            const auto address = qubits(rest.substr(0, arrow));
            const auto target = qubits(rest.substr(arrow + 2, colon - arrow - 2));
            auto table = std::make_shared<LookupTable>();
            std::string_view entries = trim(rest.substr(colon + 1));
            std::size_t start = 0;
            while (start <= entries.size()) {
                std::size_t comma = entries.find(',', start);
                if (comma == std::string_view::npos) {
                    comma = entries.size();
                }
                try {
                    table->push_back(parse_biguint(std::string(trim(entries.substr(start, comma - start)))));
                } catch (const std::exception &) {
                    fail("bad lookup entry");
                }
                start = comma + 1;
            }
            g.kind = op == "lookup" ? GateKind::LookupLoad : GateKind::LookupUnload;
            g.address_width = static_cast<std::uint32_t>(address.size());
            g.qubits = address;
            g.qubits.insert(g.qubits.end(), target.begin(), target.end());
            g.table = std::move(table);
        } else {
            static const std::unordered_map<std::string_view, GateKind> kinds = {
                {"not", GateKind::Not},       {"cnot", GateKind::Cnot},   {"mcnot", GateKind::MultiCnot},
                {"tof", GateKind::Toffoli},   {"and", GateKind::TempAnd}, {"unand", GateKind::TempAndUncompute},
            };
            auto it = kinds.find(op);
            if (it == kinds.end()) {
                fail("unknown gate '" + std::string(op) + "'");
            }
            g.kind = it->second;
            std::size_t start = 0;
            while (start < rest.size()) {
                std::size_t next = rest.find(' ', start);
                if (next == std::string_view::npos) {
                    next = rest.size();
                }
                if (next > start) {
                    g.qubits.push_back(qubit(rest.substr(start, next - start)));
                }
                start = next + 1;
            }
        }
        g.block = block_;
        try {
            validate_gate(data_.gates.size(), g, data_.qubit_count);
        } catch (const CircuitError &e) {
            fail(e.what());
        }
        data_.gates.push_back(std::move(g));
    }

    std::string_view text_;
    std::size_t line_no_ = 0;
    CircuitData data_;
    std::unordered_map<std::string, std::int32_t> labels_;
    std::int32_t block_ = -1;
};

}  // namespace

Circuit parse_text(std::string_view text) { return Parser(text).run(); }

nlohmann::json to_json(const Circuit &circuit) {
    using nlohmann::json;
    json j;
    j["qubits"] = circuit.qubit_count();
    json regs = json::object();
    for (const auto &[role, reg] : circuit.registers()) {
        regs[role] = reg.qubits();
    }
    j["registers"] = regs;
    j["ancillas"] = circuit.ancillas();
    j["zero_inputs"] = circuit.zero_inputs();
    json limits = json::object();
    for (const auto &[role, v] : circuit.input_limits()) {
        limits[role] = to_string(v);
    }
    j["input_limits"] = limits;
    j["blocks"] = circuit.block_labels();
    j["nominal_overrides"] = circuit.nominal_overrides();
    json checks = json::array();
    for (const auto &c : circuit.zero_checks()) {
        checks.push_back({{"position", c.position}, {"label", c.label}, {"qubits", c.qubits}});
    }
    j["zero_checks"] = checks;
    j["checkpoints"] = circuit.checkpoints();
    json gates = json::array();
    for (const Gate &g : circuit.gates()) {
        json jg = {{"op", mnemonic(g.kind)}};
        if (g.is_lookup()) {
            jg["address"] = std::vector<QubitId>(g.address().begin(), g.address().end());
            jg["target"] = std::vector<QubitId>(g.lookup_target().begin(), g.lookup_target().end());
            json entries = json::array();
            for (const auto &e : *g.table) {
                entries.push_back(to_string(e));
            }
            jg["table"] = entries;
        } else {
            jg["qubits"] = g.qubits;
        }
        if (g.block >= 0) {
            jg["block"] = circuit.block_of(g);
        }
        gates.push_back(std::move(jg));
    }
    j["gates"] = gates;
    return j;
}

}  // namespace qmul
