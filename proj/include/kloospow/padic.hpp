#pragma once

/**
 * @file padic.hpp
 * @brief Half-binomial coefficients and the square-root reduction polynomial.
 *
 * For t in Z and s >= 1 the p-adic series
 *
 *     (1 + kappa p^s t)^{1/2} = sum_i binom(1/2, i) kappa^i p^{is} t^i
 *
 * truncates modulo p^k after floor(k/s) terms. A ReductionContext packages
 * that truncation together with a square root omega of m a theta alpha, so
 * that omega * f(t) is a square root of m a (theta alpha + p^s t) mod p^k
 * for every integer t.
 */

#include <optional>
#include <string>
#include <vector>

#include "kloospow/modular_core.hpp"

namespace kloospow {

/// Dense integer polynomial a_0 + a_1 x + ... + a_d x^d. The degree is
/// syntactic: a stored leading zero still counts.
class IntPolynomial {
public:
    IntPolynomial() : coeffs_{BigInt(0)} {}
    explicit IntPolynomial(std::vector<BigInt> coeffs);
    IntPolynomial(std::initializer_list<long> coeffs);

    std::size_t degree() const noexcept { return coeffs_.size() - 1; }
    const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }
    const BigInt& operator[](std::size_t i) const { return coeffs_[i]; }

    bool is_zero() const;
    BigInt evaluate(const BigInt& x) const;
    /// Horner evaluation with every coefficient reduced mod m.
    BigInt evaluate_mod(const BigInt& x, const BigInt& m) const;

    /// gcd of the coefficients (0 for the zero polynomial).
    BigInt content() const;

    std::string to_string() const;

    friend IntPolynomial operator+(const IntPolynomial& f, const IntPolynomial& g);
    friend IntPolynomial operator*(const IntPolynomial& f, const IntPolynomial& g);
    /// Equality as polynomials; trailing zero coefficients are ignored.
    friend bool operator==(const IntPolynomial& f, const IntPolynomial& g);

private:
    std::vector<BigInt> coeffs_;
};

/// The u-th formal derivative with exact coefficients a_i i!/(i-u)!.
IntPolynomial derivative(const IntPolynomial& f, u64 u);

/// Minimum p-adic valuation over the nonzero coefficients.
Valuation poly_ord_p(const IntPolynomial& f, const BigInt& p);

/// binom(1/2, i) as p^valuation * unit, the unit known mod p^(k + buffer).
struct HalfBinomial {
    u64 index = 0;
    u64 valuation = 0;
    Residue unit_residue{0, 1};

    /// The representative g(i) in [0, target.q()). The target exponent must
    /// not exceed the precision the unit was computed at.
    BigInt reduced(const PrimePowerModulus& target) const;
};

HalfBinomial half_binom(u64 i, const PrimePowerModulus& modulus, unsigned buffer = 0);

/// g(0..d) through c_i = c_{i-1} (3 - 2i) / (2i), carried at precision
/// k + ord_p(d!) + 1 so the divisions by p never drop below p^k.
std::vector<BigInt> half_binom_series_recursive(u64 d, const PrimePowerModulus& modulus);

struct ValuationBound {
    i64 numerator_order = 0;   // ord_p((2i-3)!)
    i64 denominator_order = 0; // ord_p((i-2)!) + ord_p((i-u)!)
    i64 exact = 0;             // ord_p(binom(1/2,i) i!/(i-u)!)
    double bound = 0.0;        // u/(p-1) + 3 log(2i) / log p
    bool ok = false;
};

/// Requires 3 <= u <= i; throws BadRange otherwise.
ValuationBound valuation_bound_check(u64 i, u64 u, u64 p);

struct ReductionContext {
    PrimePowerModulus modulus;
    BigInt m;
    BigInt a;
    unsigned s = 0;
    BigInt alpha;  // in [1, p^s), (alpha/p) = 1
    BigInt theta;  // in [1, p^s), theta = (ma)^{-1} mod p^s
    BigInt kappa;  // theta alpha kappa = 1 mod q
    BigInt omega;  // least root of omega^2 = m a theta alpha mod q
    unsigned degree = 0;
    std::vector<BigInt> g;        // g(0..degree)
    std::vector<BigInt> f_coeffs; // g(i) kappa^i p^{is} mod q

    IntPolynomial f() const { return IntPolynomial(f_coeffs); }
};

/// Assembles the context for residue class alpha. `extra_terms` extends the
/// series past floor(k/s); those terms vanish mod q.
ReductionContext build_reduction(const BigInt& m, const BigInt& a, const BigInt& alpha,
                                 const PrimePowerModulus& modulus, unsigned s,
                                 unsigned extra_terms = 0);

Residue eval_f(const ReductionContext& ctx, const BigInt& t);

struct ConsistencyResult {
    bool ok = true;
    std::optional<BigInt> witness;
    u64 checked = 0;
};

/// Checks (omega f(t))^2 = m a (theta alpha + p^s t) mod q for t in [t_lo, t_hi].
ConsistencyResult sqrt_consistency(const ReductionContext& ctx, const BigInt& t_lo,
                                   const BigInt& t_hi);

} // namespace kloospow
