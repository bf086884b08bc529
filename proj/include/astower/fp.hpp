#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace astower {

using word = std::uint64_t;
using dword = unsigned __int128;

bool is_prime_u64(word n);

// Residue arithmetic modulo a word-size prime p, 2 <= p < 2^62.
// The bound keeps a+b and p*p-free accumulation strategies overflow-safe.
struct PrimeModulus {
    word p = 0;

    PrimeModulus() = default;

    explicit PrimeModulus(word prime) : p(prime) {
        if (prime < 2 || prime >= (word(1) << 62))
            throw std::invalid_argument("PrimeModulus: p must satisfy 2 <= p < 2^62");
        if (!is_prime_u64(prime))
            throw std::invalid_argument("PrimeModulus: " + std::to_string(prime) + " is not prime");
    }

    word reduce(word a) const { return a >= p ? a % p : a; }
    word add(word a, word b) const { word s = a + b; return s >= p ? s - p : s; }
    word sub(word a, word b) const { return a >= b ? a - b : a + (p - b); }
    word neg(word a) const { return a ? p - a : 0; }
    word mul(word a, word b) const { return word(dword(a) * b % p); }

    word pow(word a, word e) const {
        word r = 1 % p, x = a;
        while (e) {
            if (e & 1) r = mul(r, x);
            x = mul(x, x);
            e >>= 1;
        }
        return r;
    }

    word inv(word a) const {
        if (a == 0) throw std::domain_error("PrimeModulus::inv: division by zero");
        return pow(a, p - 2);
    }

    bool operator==(const PrimeModulus&) const = default;
};

} // namespace astower
