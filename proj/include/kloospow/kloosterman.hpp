#pragma once

/**
 * @file kloosterman.hpp
 * @brief Kloosterman sums S(n, a; p^k).
 *
 * S(n, a; q) = sum over units b mod q of e((n b + a b^{-1}) / q).
 *
 * For k >= 2 the sum has a closed form driven by one modular square root:
 * with l^2 = n a mod q,
 *
 *     S = 2 (l/p)^k sqrt(q) Re(theta_q e(2l/q))   if (na/p) = 1,
 *     S = 0                                        if (na/p) = -1,
 *
 * theta_q = 1 for q = 1 mod 4 and i for q = 3 mod 4. It vanishes when p | n.
 * For k = 1 only direct summation is available.
 */

#include <cstdint>
#include <string_view>
#include <vector>

#include "kloospow/modular_core.hpp"

namespace kloospow {

enum class Method { BruteForce, ExplicitFormula, VanishingRule, RamanujanRule };

std::string_view to_string(Method method) noexcept;

struct KloostermanQuery {
    i64 n = 0;
    i64 a = 1;
    PrimePowerModulus modulus;
};

struct KloostermanValue {
    double value = 0.0;
    bool exact_zero = false;
    Method method = Method::BruteForce;
    /// Accumulated imaginary part; only populated by brute force.
    double imag_residual = 0.0;
};

inline constexpr u64 kBruteForceCeiling = 10'000'000;
inline constexpr u64 kTableCeiling = u64{1} << 22;

/// O(q) direct summation for one modulus. Inverse and trig tables are built
/// once at construction (batch inversion, linear time) when q is below
/// kTableCeiling and shared by every call; larger moduli fall back to an
/// extended gcd and a trig call per unit.
class BruteForceEvaluator {
public:
    explicit BruteForceEvaluator(const PrimePowerModulus& modulus, u64 ceiling = kBruteForceCeiling);

    KloostermanValue operator()(i64 n, i64 a) const;

    u64 q() const noexcept { return q_; }

private:
    u64 p_;
    u64 q_;
    bool tables_;
    std::vector<u64> inverse_;  // inverse_[b] for units b, 0 otherwise
    std::vector<double> cos_;
    std::vector<double> sin_;
};

struct WeilCheck {
    double value = 0.0;
    double bound = 0.0;  // (k+1) sqrt(gcd(n,q) q)
    bool ok = false;
    bool sharp_applies = false;  // k >= 2 and gcd(n, q) = 1
    double sharp_bound = 0.0;    // 2 sqrt(q)
    bool sharp_ok = true;
};

/// Closed-form and dispatch paths bound to one modulus. Requires q < 2^62.
class KloostermanEvaluator {
public:
    explicit KloostermanEvaluator(const PrimePowerModulus& modulus);

    KloostermanValue explicit_formula(i64 n, i64 a) const;
    KloostermanValue evaluate(i64 n, i64 a) const;
    WeilCheck weil_check(i64 n, i64 a) const;

    /// The closed form evaluated at an explicitly chosen root l of
    /// l^2 = na mod q; either root gives the same value.
    double formula_at_root(u64 l) const;

    /// Term for a unit product na already reduced mod q. Used by the
    /// averaging loops to skip the dispatch bookkeeping.
    double explicit_term(u64 na) const;

    const PrimePowerModulus& modulus() const noexcept { return modulus_; }
    u64 p() const noexcept { return p_; }
    unsigned k() const noexcept { return k_; }
    u64 q() const noexcept { return q_; }

private:
    PrimePowerModulus modulus_;
    u64 p_;
    unsigned k_;
    u64 q_;
    double sqrt_q_;
};

KloostermanValue brute_force(const KloostermanQuery& query, u64 ceiling = kBruteForceCeiling);
KloostermanValue explicit_formula(const KloostermanQuery& query);
KloostermanValue evaluate(const KloostermanQuery& query);
WeilCheck weil_check(const KloostermanQuery& query);

/// c_q(a) = mu(q/g) phi(q) / phi(q/g), g = gcd(a, q). Factors q by trial
/// division.
double ramanujan(i64 a, u64 q);
double ramanujan(i64 a, const PrimePowerModulus& modulus);

} // namespace kloospow
