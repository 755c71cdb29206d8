#include "kloospow/modular_core.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace kloospow {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidModulus: return "InvalidModulus";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::NotAResidue: return "NotAResidue";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::NotCoprimeToP: return "NotCoprimeToP";
    case ErrorCode::NeedsBruteForce: return "NeedsBruteForce";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::BadInput: return "BadInput";
    case ErrorCode::BadRange: return "BadRange";
    case ErrorCode::DegreeTooSmall: return "DegreeTooSmall";
    }
    return "Unknown";
}

namespace {

constexpr std::array<unsigned, 13> kWitnesses = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

u64 to_u64(const BigInt& x) {
    // mpz_get_ui is 64-bit on LP64 targets.
    return static_cast<u64>(mpz_get_ui(x.get_mpz_t()));
}

bool fits_u64(const BigInt& x) {
    return sgn(x) >= 0 && mpz_sizeinbase(x.get_mpz_t(), 2) <= 64;
}

BigInt from_u64(u64 x) {
    return BigInt(static_cast<unsigned long>(x));
}

BigInt powm(const BigInt& base, const BigInt& exp, const BigInt& m) {
    BigInt r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
    return r;
}

} // namespace

namespace word {

u64 gcd(u64 a, u64 b) {
    while (b != 0) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

u64 pow_mod(u64 base, u64 exp, u64 m) {
    if (m == 1) {
        return 0;
    }
    u64 result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) {
            result = mul_mod(result, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

u64 inv_mod(u64 x, u64 m) {
    i64 old_r = static_cast<i64>(x % m), r = static_cast<i64>(m);
    i64 old_s = 1, s = 0;
    while (r != 0) {
        i64 quot = old_r / r;
        old_r -= quot * r;
        std::swap(old_r, r);
        old_s -= quot * s;
        std::swap(old_s, s);
    }
    if (old_r != 1) {
        if (m == 1) {
            return 0;
        }
        throw Error(ErrorCode::NotInvertible,
                    std::to_string(x) + " has no inverse modulo " + std::to_string(m));
    }
    return reduce(old_s, m);
}

int legendre(u64 n, u64 p) {
    n %= p;
    if (n == 0) {
        return 0;
    }
    return pow_mod(n, (p - 1) / 2, p) == 1 ? 1 : -1;
}

u64 sqrt_mod_prime(u64 a, u64 p) {
    a %= p;
    if (legendre(a, p) != 1) {
        throw Error(ErrorCode::NotAResidue,
                    std::to_string(a) + " is not a quadratic residue modulo " + std::to_string(p));
    }
    u64 r;
    if (p % 4 == 3) {
        r = pow_mod(a, (p + 1) / 4, p);
    } else {
        // Tonelli-Shanks with the least non-residue as generator.
        u64 odd = p - 1;
        unsigned two_adic = 0;
        while ((odd & 1) == 0) {
            odd >>= 1;
            ++two_adic;
        }
        u64 z = 2;
        while (legendre(z, p) != -1) {
            ++z;
        }
        unsigned m = two_adic;
        u64 c = pow_mod(z, odd, p);
        u64 t = pow_mod(a, odd, p);
        r = pow_mod(a, (odd + 1) / 2, p);
        while (t != 1) {
            unsigned i = 0;
            for (u64 t2 = t; t2 != 1; t2 = mul_mod(t2, t2, p)) {
                ++i;
            }
            u64 b = c;
            for (unsigned j = 0; j + i + 1 < m; ++j) {
                b = mul_mod(b, b, p);
            }
            m = i;
            c = mul_mod(b, b, p);
            t = mul_mod(t, c, p);
            r = mul_mod(r, b, p);
        }
    }
    return std::min(r, p - r);
}

u64 sqrt_mod_prime_power(u64 a, u64 p, unsigned k, u64 q) {
    a %= q;
    if (a % p == 0) {
        throw Error(ErrorCode::NotAUnit, std::to_string(p) + " divides " + std::to_string(a));
    }
    u64 root = sqrt_mod_prime(a % p, p);
    if (k == 1) {
        return root;
    }
    // Newton on the inverse square root: y <- y (3 - a y^2) / 2 doubles the
    // p-adic precision per step and needs no inversion after the first.
    u64 y = inv_mod(root, p);
    const u64 half = (q + 1) / 2;
    for (unsigned precision = 1; precision < k; precision *= 2) {
        u64 ay2 = mul_mod(a, mul_mod(y, y, q), q);
        u64 three_minus = sub_mod(3 % q, ay2, q);
        y = mul_mod(mul_mod(y, three_minus, q), half, q);
    }
    u64 r = mul_mod(a, y, q);
    return std::min(r, q - r);
}

bool is_prime(u64 n) {
    if (n < 2) {
        return false;
    }
    for (unsigned w : kWitnesses) {
        if (n % w == 0) {
            return n == w;
        }
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    auto mulm = [n](u64 x, u64 y) { return static_cast<u64>(static_cast<u128>(x) * y % n); };
    auto powm64 = [&](u64 b, u64 e) {
        u64 r = 1;
        while (e > 0) {
            if (e & 1) {
                r = mulm(r, b);
            }
            b = mulm(b, b);
            e >>= 1;
        }
        return r;
    };
    for (unsigned w : kWitnesses) {
        u64 x = powm64(w, d);
        if (x == 1 || x == n - 1) {
            continue;
        }
        bool composite = true;
        for (unsigned i = 1; i < s; ++i) {
            x = mulm(x, x);
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

} // namespace word

bool is_prime(const BigInt& n) {
    if (sgn(n) <= 0) {
        return false;
    }
    if (fits_u64(n)) {
        return word::is_prime(to_u64(n));
    }
    for (unsigned w : kWitnesses) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), w)) {
            return false;
        }
    }
    BigInt n1 = n - 1;
    BigInt d = n1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    for (unsigned w : kWitnesses) {
        BigInt x = powm(BigInt(w), d, n);
        if (x == 1 || x == n1) {
            continue;
        }
        bool composite = true;
        for (unsigned long i = 1; i < s; ++i) {
            x = x * x % n;
            if (x == n1) {
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

PrimePowerModulus::PrimePowerModulus(const BigInt& p, unsigned k) : p_(p), k_(k) {
    if (k == 0) {
        throw Error(ErrorCode::InvalidModulus, "exponent k must be positive");
    }
    if (p < 3 || mpz_even_p(p.get_mpz_t())) {
        throw Error(ErrorCode::InvalidModulus, "p = " + p.get_str() + " is not an odd prime");
    }
    if (static_cast<unsigned long>(k) * (mpz_sizeinbase(p.get_mpz_t(), 2) - 1) >= max_bits) {
        throw Error(ErrorCode::TooLarge, p.get_str() + "^" + std::to_string(k) + " exceeds " +
                                             std::to_string(max_bits) + " bits");
    }
    if (!is_prime(p)) {
        throw Error(ErrorCode::InvalidModulus, "p = " + p.get_str() + " is not prime");
    }
    *this = PrimePowerModulus(Trusted{}, p, k);
}

PrimePowerModulus::PrimePowerModulus(Trusted, const BigInt& p, unsigned k) : p_(p), k_(k) {
    mpz_pow_ui(q_.get_mpz_t(), p_.get_mpz_t(), k_);
    if (mpz_sizeinbase(q_.get_mpz_t(), 2) > max_bits) {
        throw Error(ErrorCode::TooLarge, p.get_str() + "^" + std::to_string(k) + " exceeds " +
                                             std::to_string(max_bits) + " bits");
    }
    if (q_ < from_u64(word::max_modulus)) {
        p_word_ = to_u64(p_);
        q_word_ = to_u64(q_);
    }
}

BigInt PrimePowerModulus::phi() const {
    return q_ / p_ * (p_ - 1);
}

u64 PrimePowerModulus::p_word() const {
    if (!fits_word()) {
        throw Error(ErrorCode::TooLarge, to_string() + " exceeds the 62-bit word path");
    }
    return p_word_;
}

u64 PrimePowerModulus::q_word() const {
    if (!fits_word()) {
        throw Error(ErrorCode::TooLarge, to_string() + " exceeds the 62-bit word path");
    }
    return q_word_;
}

PrimePowerModulus PrimePowerModulus::with_exponent(unsigned k) const {
    if (k == 0) {
        throw Error(ErrorCode::InvalidModulus, "exponent k must be positive");
    }
    return PrimePowerModulus(Trusted{}, p_, k);
}

std::string PrimePowerModulus::to_string() const {
    return p_.get_str() + "^" + std::to_string(k_);
}

BigInt mod_floor(const BigInt& x, const BigInt& m) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

Residue::Residue(const BigInt& value, const BigInt& modulus) : modulus_(modulus) {
    if (sgn(modulus) <= 0) {
        throw Error(ErrorCode::BadInput, "modulus must be positive");
    }
    value_ = mod_floor(value, modulus);
}

Residue mod_pow(const Residue& base, const BigInt& exp) {
    if (sgn(exp) < 0) {
        throw Error(ErrorCode::BadInput, "negative exponent");
    }
    return Residue(powm(base.value(), exp, base.modulus()), base.modulus());
}

Residue mod_inverse(const Residue& x) {
    if (x.modulus() == 1) {
        return x;
    }
    BigInt inv;
    if (mpz_invert(inv.get_mpz_t(), x.value().get_mpz_t(), x.modulus().get_mpz_t()) == 0) {
        throw Error(ErrorCode::NotInvertible,
                    x.value().get_str() + " has no inverse modulo " + x.modulus().get_str());
    }
    return Residue(inv, x.modulus());
}

int legendre_symbol(const BigInt& n, const BigInt& p) {
    BigInt r = mod_floor(n, p);
    if (r == 0) {
        return 0;
    }
    return powm(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

Residue sqrt_mod_prime(const Residue& a) {
    const BigInt& p = a.modulus();
    if (p < 3 || mpz_even_p(p.get_mpz_t())) {
        throw Error(ErrorCode::BadInput, "sqrt_mod_prime needs an odd prime modulus");
    }
    if (fits_u64(p)) {
        return Residue(from_u64(word::sqrt_mod_prime(to_u64(a.value()), to_u64(p))), p);
    }
    if (legendre_symbol(a.value(), p) != 1) {
        throw Error(ErrorCode::NotAResidue,
                    a.value().get_str() + " is not a quadratic residue modulo " + p.get_str());
    }
    BigInt odd = p - 1;
    unsigned long two_adic = mpz_scan1(odd.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(odd.get_mpz_t(), odd.get_mpz_t(), two_adic);
    BigInt z = 2;
    while (legendre_symbol(z, p) != -1) {
        ++z;
    }
    unsigned long m = two_adic;
    BigInt c = powm(z, odd, p);
    BigInt t = powm(a.value(), odd, p);
    BigInt r = powm(a.value(), (odd + 1) / 2, p);
    while (t != 1) {
        unsigned long i = 0;
        for (BigInt t2 = t; t2 != 1; t2 = t2 * t2 % p) {
            ++i;
        }
        BigInt b = c;
        for (unsigned long j = 0; j + i + 1 < m; ++j) {
            b = b * b % p;
        }
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    BigInt other = p - r;
    return Residue(r < other ? r : other, p);
}

Residue sqrt_mod_prime_power(const BigInt& a, const PrimePowerModulus& modulus) {
    const BigInt& p = modulus.p();
    const BigInt& q = modulus.q();
    BigInt value = mod_floor(a, q);
    if (mpz_divisible_p(value.get_mpz_t(), p.get_mpz_t())) {
        throw Error(ErrorCode::NotAUnit, p.get_str() + " divides " + a.get_str());
    }
    if (modulus.fits_word()) {
        return Residue(from_u64(word::sqrt_mod_prime_power(to_u64(value), modulus.p_word(),
                                                           modulus.k(), modulus.q_word())),
                       q);
    }
    BigInt root = sqrt_mod_prime(Residue(value, p)).value();
    BigInt y = mod_inverse(Residue(root, p)).value();
    const BigInt half = (q + 1) / 2;
    for (unsigned precision = 1; precision < modulus.k(); precision *= 2) {
        BigInt ay2 = value * (y * y % q) % q;
        y = mod_floor(y * (3 - ay2), q) * half % q;
    }
    BigInt r = value * y % q;
    BigInt other = q - r;
    return Residue(r < other ? r : other, q);
}

Valuation val_p(const BigInt& n, const BigInt& p) {
    if (n == 0) {
        return Valuation::infinite();
    }
    BigInt rest = abs(n);
    return Valuation::of(mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t()));
}

u64 factorial_valuation(u64 n, u64 p) {
    u64 total = 0;
    while (n >= p) {
        n /= p;
        total += n;
    }
    return total;
}

u64 factorial_valuation(u64 n, const BigInt& p) {
    if (!fits_u64(p)) {
        return 0;
    }
    return factorial_valuation(n, to_u64(p));
}

Residue factorial_unit(u64 n, const PrimePowerModulus& modulus) {
    // n! = p^v * prod_{i<=n, p!|i} i * (floor(n/p))!_p, and each complete block
    // of p^k consecutive units multiplies to -1 (generalised Wilson, p odd).
    const BigInt& q = modulus.q();
    const bool small_p = fits_u64(modulus.p());
    const u64 p = small_p ? to_u64(modulus.p()) : 0;
    BigInt result = 1;
    u64 m = n;
    while (m > 0) {
        BigInt blocks = from_u64(m) / q;
        if (mpz_odd_p(blocks.get_mpz_t())) {
            result = q - result;
        }
        u64 rem = blocks == 0 ? m : to_u64(from_u64(m) % q);
        if (modulus.fits_word()) {
            const u64 qw = modulus.q_word();
            u64 acc = to_u64(result);
            for (u64 i = 2; i <= rem; ++i) {
                if (i % p != 0) {
                    acc = word::mul_mod(acc, i, qw);
                }
            }
            result = from_u64(acc);
        } else {
            for (u64 i = 2; i <= rem; ++i) {
                if (!small_p || i % p != 0) {
                    result = result * from_u64(i) % q;
                }
            }
        }
        if (!small_p) {
            break;
        }
        m /= p;
    }
    return Residue(result, q);
}

} // namespace kloospow
