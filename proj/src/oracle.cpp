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

#include "qmul/oracle.hpp"

#include <boost/multiprecision/miller_rabin.hpp>
#include <boost/random/mersenne_twister.hpp>

#include <stdexcept>

namespace qmul::oracle {

BigUInt school_product(const BigUInt &x, const BigUInt &y) { return x * y; }

BigUInt mod2n_product(const BigUInt &x, const BigUInt &y, std::size_t n) { return (x * y) % pow2(n); }

BigUInt mod_inverse(const BigUInt &a, const BigUInt &m) {
    BigUInt old_r = mod_floor(a, m), r = m;
    BigUInt old_s = 1, s = 0;
    while (r != 0) {
        const BigUInt q = old_r / r;
        BigUInt tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) {
        throw std::domain_error(to_string(a) + " has no inverse mod " + to_string(m));
    }
    return mod_floor(old_s, m);
}

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (e) {
        if (e & 1) {
            result = mul_mod(result, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    return result;
}

// These bases are a deterministic witness set for all n < 2^64.
bool is_prime_u64(std::uint64_t n) {
    if (n < 2) {
        return false;
    }
    for (std::uint64_t small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % small == 0) {
            return n == small;
        }
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) {
            continue;
        }
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) {
            return false;
        }
    }
    return true;
}

}  // namespace

bool is_prime(const BigUInt &p) {
    if (p < 2) {
        return false;
    }
    if (bit_length(p) <= 64) {
        return is_prime_u64(p.convert_to<std::uint64_t>());
    }
    boost::random::mt19937 gen(0x5eed);
    return boost::multiprecision::miller_rabin_test(p, 25, gen);
}

BigUInt largest_prime_in_width(std::size_t n) {
    if (n < 2) {
        throw std::invalid_argument("no odd prime fits in fewer than 2 bits");
    }
    const BigUInt low = pow2(n - 1);
    for (BigUInt p = pow2(n) - 1; p > low; p -= 2) {
        if (is_prime(p)) {
            return p;
        }
    }
    throw std::invalid_argument("no prime of width " + std::to_string(n));
}

std::vector<std::uint64_t> primes_in_width(std::size_t n) {
    if (n < 2 || n > 40) {
        throw std::invalid_argument("primes_in_width supports 2 <= n <= 40");
    }
    std::vector<std::uint64_t> primes;
    for (std::uint64_t p = (std::uint64_t{1} << (n - 1)) + 1; p < (std::uint64_t{1} << n); p += 2) {
        if (is_prime_u64(p)) {
            primes.push_back(p);
        }
    }
    return primes;
}

std::vector<std::size_t> window_widths(std::size_t n, std::size_t w) {
    if (w == 0 || w > n) {
        throw std::invalid_argument("window width must satisfy 1 <= w <= n");
    }
    std::vector<std::size_t> widths;
    for (std::size_t done = 0; done < n; done += w) {
        widths.push_back(std::min(w, n - done));
    }
    return widths;
}

MontgomeryContext::MontgomeryContext(BigUInt p, std::size_t n, bool strict) : p_(std::move(p)), n_(n) {
    if (n < 2) {
        throw std::invalid_argument("modulus width must be at least 2");
    }
    if (!test_bit(p_, 0)) {
        throw std::invalid_argument("modulus must be odd");
    }
    if (p_ <= pow2(n - 1) || p_ >= pow2(n)) {
        throw std::invalid_argument("modulus must satisfy 2^(n-1) < p < 2^n");
    }
    if (!is_prime(p_)) {
        if (strict) {
            throw std::invalid_argument("modulus " + to_string(p_) + " is not prime");
        }
        warning_ = "modulus " + to_string(p_) + " is not prime; Montgomery arithmetic still applies (gcd(p, 2) = 1)";
    }
    r_ = pow2(n_) % p_;
    r_inv_ = mod_inverse(pow2(n_), p_);
}

void MontgomeryContext::require_residue(const BigUInt &v, const char *what) const {
    if (v < 0 || v >= p_) {
        throw std::invalid_argument(std::string(what) + " must be a residue below " + to_string(p_));
    }
}

BigUInt MontgomeryContext::product_direct(const BigUInt &x, const BigUInt &y) const {
    require_residue(x, "x");
    require_residue(y, "y");
    return x * y % p_ * r_inv_ % p_;
}

BigUInt MontgomeryContext::step(const BigUInt &z, const BigUInt &window, const BigUInt &y, std::size_t w) const {
    const BigUInt mask = pow2(w) - 1;
    const BigUInt acc = z + window * y;
    const BigUInt m = mod_floor(-(acc & mask) * mod_inverse(p_, pow2(w)), pow2(w));
    return (acc + m * p_) >> w;
}

BigUInt MontgomeryContext::product_windowed(const BigUInt &x, const BigUInt &y, std::size_t w) const {
    require_residue(x, "x");
    require_residue(y, "y");
    BigUInt z = 0;
    std::size_t shift = 0;
    for (std::size_t width : window_widths(n_, w)) {
        const BigUInt window = (x >> shift) & (pow2(width) - 1);
        z = step(z, window, y, width);
        shift += width;
    }
    while (z >= p_) {
        z -= p_;
    }
    return z;
}

BigUInt MontgomeryContext::montgomery_product(const BigUInt &x, const BigUInt &y, std::size_t w) const {
    const BigUInt direct = product_direct(x, y);
    const BigUInt windowed = product_windowed(x, y, w);
    if (direct != windowed) {
        throw std::logic_error("Montgomery oracle routes disagree for x=" + to_string(x) + " y=" + to_string(y));
    }
    return direct;
}

BigUInt MontgomeryContext::to_montgomery(const BigUInt &x) const {
    require_residue(x, "x");
    return x * r_ % p_;
}

BigUInt MontgomeryContext::from_montgomery(const BigUInt &x) const {
    require_residue(x, "x");
    return x * r_inv_ % p_;
}

std::vector<BigUInt> MontgomeryContext::reduction_multipliers(std::size_t w) const {
    if (w == 0 || w > n_) {
        throw std::invalid_argument("window width must satisfy 1 <= w <= n");
    }
    const BigUInt modulus = pow2(w);
    const BigUInt p_inv = mod_inverse(p_, modulus);
    std::vector<BigUInt> m(std::size_t{1} << w);
    for (std::size_t t = 0; t < m.size(); ++t) {
        m[t] = mod_floor(-BigUInt(t) * p_inv, modulus);
    }
    return m;
}

std::vector<BigUInt> MontgomeryContext::lookup_entries(std::size_t w) const {
    std::vector<BigUInt> entries = reduction_multipliers(w);
    for (auto &e : entries) {
        e *= p_;
    }
    return entries;
}

}  // namespace qmul::oracle
