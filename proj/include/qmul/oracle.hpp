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

// Classical reference arithmetic. Nothing in here knows about circuits; it is
// the ground truth the differential tests compare against.

#include "qmul/bigint.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qmul::oracle {

BigUInt school_product(const BigUInt &x, const BigUInt &y);
BigUInt mod2n_product(const BigUInt &x, const BigUInt &y, std::size_t n);

/// a^-1 mod m; throws std::domain_error when gcd(a, m) != 1.
BigUInt mod_inverse(const BigUInt &a, const BigUInt &m);

/// Deterministic Miller-Rabin below 2^64, probabilistic (25 rounds) above.
bool is_prime(const BigUInt &p);

/// Largest prime p with 2^(n-1) < p < 2^n (n >= 2).
BigUInt largest_prime_in_width(std::size_t n);

/// All odd primes with 2^(n-1) < p < 2^n; intended for small n.
std::vector<std::uint64_t> primes_in_width(std::size_t n);

/// Window widths used to consume n bits of x, w at a time; the final window
/// is truncated when w does not divide n.
std::vector<std::size_t> window_widths(std::size_t n, std::size_t w);

class MontgomeryContext {
public:
    /// Requires p odd with 2^(n-1) < p < 2^n. Non-prime moduli are rejected
    /// in strict mode and otherwise recorded in warning().
    MontgomeryContext(BigUInt p, std::size_t n, bool strict = false);

    const BigUInt &modulus() const { return p_; }
    std::size_t width() const { return n_; }
    const BigUInt &r() const { return r_; }
    const BigUInt &r_inverse() const { return r_inv_; }
    const std::optional<std::string> &warning() const { return warning_; }

    /// x*y*R^-1 mod p via R^-1 directly.
    BigUInt product_direct(const BigUInt &x, const BigUInt &y) const;
    /// x*y*R^-1 mod p via the windowed accumulate/reduce loop.
    BigUInt product_windowed(const BigUInt &x, const BigUInt &y, std::size_t w) const;
    /// Both routes; throws std::logic_error if they disagree.
    BigUInt montgomery_product(const BigUInt &x, const BigUInt &y, std::size_t w = 1) const;

    BigUInt to_montgomery(const BigUInt &x) const;
    BigUInt from_montgomery(const BigUInt &x) const;

    /// m_t = (-t * p^-1) mod 2^w for t in [0, 2^w).
    std::vector<BigUInt> reduction_multipliers(std::size_t w) const;
    /// entry[t] = m_t * p, so that t + entry[t] = 0 mod 2^w.
    std::vector<BigUInt> lookup_entries(std::size_t w) const;

    /// One windowed step: (z + window*y + m*p) / 2^w with m chosen to clear
    /// the low w bits.
    BigUInt step(const BigUInt &z, const BigUInt &window, const BigUInt &y, std::size_t w) const;

private:
    void require_residue(const BigUInt &v, const char *what) const;

    BigUInt p_;
    std::size_t n_;
    BigUInt r_;
    BigUInt r_inv_;
    std::optional<std::string> warning_;
};

}  // namespace qmul::oracle
