#pragma once

/**
 * @file averages.hpp
 * @brief Short averages of Kloosterman sums, polynomial exponential sums and
 * root counts of polynomial congruences modulo prime powers.
 */

#include <vector>

#include "kloospow/kloosterman.hpp"
#include "kloospow/padic.hpp"

namespace kloospow {

struct AverageQuery {
    u64 N = 1;
    i64 m = 1;
    i64 a = 1;
    PrimePowerModulus modulus;
    /// Exponent with N ~ q^lambda; carried for reporting only.
    double lambda_exp = 0.0;
};

struct AverageResult {
    double sum = 0.0;
    u64 terms = 0;
};

/// sum_{1<=n<=N} S(mn, a; q) through the closed form. Reproducible: fixed
/// 2^16-term chunks, compensated within each chunk, merged in order.
AverageResult sum_kloosterman(const AverageQuery& query, unsigned threads = 0);

/// -log(|sum| / (N sqrt q)) / log q; +infinity when the sum is exactly 0.
double empirical_tau(const AverageQuery& query, double sum);

struct ExpSumResult {
    double re = 0.0;
    double im = 0.0;

    double magnitude() const;
    double phase() const;
};

inline constexpr u64 kExpSumCeiling = 100'000'000;

/// sum_{1<=x<=P} e(f(x) / p^mu), phases reduced exactly in integer arithmetic.
ExpSumResult exp_sum(const IntPolynomial& f, const BigInt& p, unsigned mu, u64 P,
                     unsigned threads = 0);

/// x = residue mod p^precision, every lift of which is a root mod p^mu.
struct RootClass {
    BigInt residue;
    unsigned precision = 0;
};

/// Disjoint classes covering exactly the roots of f mod p^mu, found by
/// Hensel lifting with an explicit work stack: simple roots lift uniquely
/// by Newton iteration, singular roots recurse on f(x0 + p y) / p^v.
std::vector<RootClass> root_classes(const IntPolynomial& f, const BigInt& p, unsigned mu);

/// #{x mod m : f(x) = 0 mod m} by direct evaluation; m <= 10^6.
u64 count_roots_enumerate(const IntPolynomial& f, u64 m);

inline constexpr u64 kEnumerationCeiling = 1'000'000;

/// rho(f, m). Prime powers go through root_classes; any other modulus is
/// enumerated. Throws BadInput when the content of f shares a factor with m.
BigInt count_roots_full(const IntPolynomial& f, const BigInt& m);

struct PolyCongruenceQuery {
    IntPolynomial f;
    BigInt p;
    unsigned mu = 1;
    BigInt Q;
};

/// R(Q, p^mu) = #{1 <= x <= Q : f(x) = 0 mod p^mu}, counted exactly from the
/// root classes.
BigInt count_roots_ranged(const PolyCongruenceQuery& query);

struct KorobovRow {
    BigInt p;
    unsigned mu = 0;
    u64 P = 0;
    std::size_t degree = 0;  // deg f = d + 1
    double r = 0.0;          // P^r = p^mu
    unsigned beta = 0;       // floor(mu/10) + 1
    u64 u_lo = 0;
    u64 u_hi = 0;
    BigInt R;                // max over u of #{x <= P : f^(u)(x) = 0 mod p^beta}
    u64 n_factor = 0;        // multiplier of R; taken as d + 1
    double c = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    bool trivial_ok = false;  // lhs <= P
    bool rhs_holds = false;
    bool hyp_degree = false;  // d >= 300
    bool hyp_mu = false;      // mu >= d + 1
    bool hyp_r = false;       // 1 <= r <= d / 300
    bool hyp_size = false;    // mu log p > 1e8 r d log d
    bool hypotheses() const { return hyp_degree && hyp_mu && hyp_r && hyp_size; }
};

inline constexpr double kKorobovDefaultC = 1e-13;

KorobovRow korobov_report(const IntPolynomial& f, const BigInt& p, unsigned mu, u64 P,
                          double c = kKorobovDefaultC, unsigned threads = 0);

struct OrdBound {
    Valuation exact = Valuation::infinite();
    double bound = 0.0;  // 27r/(p-1) + 3 log(54 r) + 27 r s
    bool ok = false;
};

/// ord_p of the u-th derivative of the context polynomial against the
/// uniform bound. Requires 25r <= u <= 27r and u <= degree.
OrdBound ord_bound_check(const ReductionContext& ctx, u64 u, u64 r);

} // namespace kloospow
