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

#include <json.hpp>

#include <string>
#include <string_view>

namespace qmul {

// Line-oriented text form. Metadata lines start with '#', one gate per line:
//
//   # qubits: 9
//   # register x: q0,q1
//   # zero-input: result
//   # limit y: 13
//   # label ctrl-add[0]
//   # nominal ctrl-add[0]: 5
//   # assert-zero @12 halve: q4
//   # checkpoint @10 cascade
//   # block ctrl-add[0]        (a bare "# block" leaves the labeled region)
//   cnot q0 q4
//   and q0 q1 q5
//   lookup q4,q5 -> q6,q7 : 0,13,26,39
//
// parse_text(emit_text(c)) == c for every circuit.

std::string emit_text(const Circuit &circuit);

/// Throws CircuitError with a line number on malformed input.
Circuit parse_text(std::string_view text);

/// JSON rendering of the same content (one object per gate).
nlohmann::json to_json(const Circuit &circuit);

}  // namespace qmul
