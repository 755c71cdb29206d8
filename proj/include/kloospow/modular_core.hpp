#pragma once

/**
 * @file modular_core.hpp
 * @brief Exact modular and valuation arithmetic.
 *
 * Two layers live here. The arbitrary-precision layer works on GMP integers
 * and backs the p-adic machinery, where moduli such as 11^40 are routine.
 * The `word` layer is the 64-bit fast path used by the hot loops
 * (Kloosterman sums, divisor sums, root enumeration); it requires moduli
 * below 2^62 so that sums of two residues and 128-bit products never wrap.
 */

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "kloospow/error.hpp"

namespace kloospow {

using BigInt = mpz_class;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

namespace word {

inline constexpr u64 max_modulus = u64{1} << 62;

inline u64 add_mod(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    return s >= m ? s - m : s;
}

inline u64 sub_mod(u64 a, u64 b, u64 m) {
    return a >= b ? a - b : a + (m - b);
}

inline u64 mul_mod(u64 a, u64 b, u64 m) {
    if (m <= 0xffffffffULL) {
        return (a * b) % m;
    }
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

/// Reduces a signed value into [0, m).
inline u64 reduce(i64 x, u64 m) {
    i64 r = x % static_cast<i64>(m);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

u64 gcd(u64 a, u64 b);
u64 pow_mod(u64 base, u64 exp, u64 m);

/// Throws NotInvertible when gcd(x, m) > 1.
u64 inv_mod(u64 x, u64 m);

/// Euler's criterion; p must be an odd prime.
int legendre(u64 n, u64 p);

/// Least root r <= p/2 of r^2 = a mod p. Throws NotAResidue.
u64 sqrt_mod_prime(u64 a, u64 p);

/// Least root of r^2 = a mod q where q = p^k; `a` must be a unit.
u64 sqrt_mod_prime_power(u64 a, u64 p, unsigned k, u64 q);

/// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime(u64 n);

} // namespace word

/// Deterministic Miller-Rabin. Exact below 3.3e24; beyond that the fixed
/// witness set makes the answer reproducible rather than proven.
bool is_prime(const BigInt& n);

class Valuation {
public:
    static Valuation infinite() { return Valuation(); }
    static Valuation of(u64 order) { return Valuation(order); }

    bool finite() const noexcept { return finite_; }
    /// Only meaningful when finite().
    u64 order() const noexcept { return order_; }

    friend bool operator==(const Valuation&, const Valuation&) = default;

private:
    Valuation() = default;
    explicit Valuation(u64 order) : finite_(true), order_(order) {}

    bool finite_ = false;
    u64 order_ = 0;
};

/// q = p^k with p an odd prime. Construction validates primality and the
/// size ceiling; copies are plain values.
class PrimePowerModulus {
public:
    static constexpr unsigned max_bits = 4096;

    PrimePowerModulus(const BigInt& p, unsigned k);
    PrimePowerModulus(u64 p, unsigned k) : PrimePowerModulus(BigInt(static_cast<unsigned long>(p)), k) {}

    const BigInt& p() const noexcept { return p_; }
    unsigned k() const noexcept { return k_; }
    const BigInt& q() const noexcept { return q_; }
    BigInt phi() const;

    /// True when q < 2^62, i.e. the word layer applies.
    bool fits_word() const noexcept { return q_word_ != 0; }
    /// Throws TooLarge when !fits_word().
    u64 p_word() const;
    u64 q_word() const;

    /// Same prime, different exponent; skips the primality test.
    PrimePowerModulus with_exponent(unsigned k) const;

    std::string to_string() const;

    friend bool operator==(const PrimePowerModulus& x, const PrimePowerModulus& y) {
        return x.k_ == y.k_ && x.p_ == y.p_;
    }

private:
    struct Trusted {};
    PrimePowerModulus(Trusted, const BigInt& p, unsigned k);

    BigInt p_;
    unsigned k_;
    BigInt q_;
    u64 p_word_ = 0;
    u64 q_word_ = 0;
};

class Residue {
public:
    /// Reduces `value` into [0, modulus); modulus must be positive.
    Residue(const BigInt& value, const BigInt& modulus);

    const BigInt& value() const noexcept { return value_; }
    const BigInt& modulus() const noexcept { return modulus_; }

    friend bool operator==(const Residue&, const Residue&) = default;

private:
    BigInt value_;
    BigInt modulus_;
};

/// Floor-mod into [0, m).
BigInt mod_floor(const BigInt& x, const BigInt& m);

Residue mod_pow(const Residue& base, const BigInt& exp);
Residue mod_inverse(const Residue& x);

/// Euler's criterion: 0 when p | n, otherwise +1 or -1.
int legendre_symbol(const BigInt& n, const BigInt& p);

Residue sqrt_mod_prime(const Residue& a);
Residue sqrt_mod_prime_power(const BigInt& a, const PrimePowerModulus& modulus);

Valuation val_p(const BigInt& n, const BigInt& p);

/// Legendre's formula for ord_p(n!).
u64 factorial_valuation(u64 n, const BigInt& p);
u64 factorial_valuation(u64 n, u64 p);

/// n! / p^{ord_p(n!)} mod p^k.
Residue factorial_unit(u64 n, const PrimePowerModulus& modulus);

} // namespace kloospow
