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

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <string>

namespace qmul {

/// Unsigned arbitrary-precision integer used for register values.
using BigUInt = boost::multiprecision::cpp_int;

inline BigUInt pow2(std::size_t k) { return BigUInt(1) << k; }

inline bool test_bit(const BigUInt &v, std::size_t k) {
    return boost::multiprecision::bit_test(v, static_cast<unsigned>(k));
}

/// Number of significant bits; 0 for v == 0.
inline std::size_t bit_length(const BigUInt &v) {
    return v == 0 ? 0 : static_cast<std::size_t>(boost::multiprecision::msb(v)) + 1;
}

/// Non-negative residue of v mod m.
inline BigUInt mod_floor(const BigUInt &v, const BigUInt &m) {
    BigUInt r = v % m;
    if (r < 0) {
        r += m;
    }
    return r;
}

inline std::string to_string(const BigUInt &v) { return v.str(); }

BigUInt parse_biguint(const std::string &text);

}  // namespace qmul
