#pragma once

/**
 * @file verify.hpp
 * @brief Invariant sweeps shared by `kloospow verify` and the acceptance run.
 *
 * Every suite returns counts plus the first failing witness. Option defaults
 * are the full sweeps; tests shrink them.
 */

#include <string>
#include <vector>

#include "kloospow/modular_core.hpp"
#include "kloospow/padic.hpp"

namespace kloospow {

struct SuiteResult {
    std::string name;
    u64 checks = 0;
    u64 failures = 0;
    std::string first_failure;
    double worst = 0.0;  // suite-specific worst observed ratio or error

    bool ok() const noexcept { return failures == 0 && checks > 0; }
    void record(bool pass, const std::string& witness);
    /// As record(), building the witness text only on failure.
    template <class Witness>
    void check(bool pass, Witness&& witness) {
        ++checks;
        if (!pass) {
            if (failures == 0) {
                first_failure = witness();
            }
            ++failures;
        }
    }
    void merge(const SuiteResult& other);
    std::string summary() const;
};

struct FormulaOptions {
    std::vector<u64> primes{3, 5, 7, 11, 13};
    unsigned k_min = 2;
    unsigned k_max = 6;
    u64 q_max = 50'000;
    double tolerance = 1e-6;         // times sqrt(q)
    double zero_tolerance = 1e-6;    // brute-force value of a vanishing sum
    u64 identity_exhaustive = 729;   // S(n,a) = S(na,1) for every pair when q <= this
    u64 identity_samples = 2'000;    // random pairs per larger q
    u64 seed = 1;
    unsigned threads = 0;
};

struct FormulaSweep {
    SuiteResult explicit_formula;  // |explicit - brute| <= tol sqrt(q), every (n, a)
    SuiteResult vanishing;         // p | n and n = 0 cases
    SuiteResult identity;          // brute-force S(n,a) = S(na,1)
    u64 moduli = 0;
};

FormulaSweep formula_sweep(const FormulaOptions& options = {});

struct HalfBinomialOptions {
    std::vector<u64> primes{3, 5, 7, 11, 13};
    u64 modulus_ceiling = 1'000'000'000;  // p^k <= this
    u64 i_max_exact = 60;
    u64 i_max_recursion = 500;
};

/// Factorial-form g(i) against exact rational C(1/2, i), then against the
/// recursion path.
SuiteResult half_binomial_suite(const HalfBinomialOptions& options = {});

struct ValuationOptions {
    std::vector<u64> primes{3, 5, 7};
    u64 i_max = 200;
};

SuiteResult valuation_suite(const ValuationOptions& options = {});

struct ReductionOptions {
    std::vector<u64> primes{3, 5, 7, 11};
    unsigned k_max = 40;
    u64 contexts = 1'000;
    u64 t_max = 1'000;
    u64 seed = 7;
    unsigned threads = 0;
};

SuiteResult reduction_suite(const ReductionOptions& options = {});

struct RootsOptions {
    u64 polynomials = 1'000;
    unsigned degree_max = 8;
    u64 modulus_ceiling = 1'000'000;
    u64 moduli_per_polynomial = 3;
    bool all_exponents = true;  // first modulus: every p^mu <= ceiling
    u64 seed = 11;
    unsigned threads = 0;
};

struct RootsSweep {
    SuiteResult counts;     // lifting == enumeration, full period and ranged
    SuiteResult konyagin;   // rho <= d m^(1 - 1/d)
    u64 polynomials = 0;
    u64 singular = 0;       // (f, p^mu) pairs with a repeated root mod p
};

RootsSweep roots_sweep(const RootsOptions& options = {});

struct HyperbolaOptions {
    u64 X_max = 100'000;
    u64 staircase = 24;             // X values per modulus besides X_max
    u64 partition_q_max = 729;
    u64 seed = 5;
    unsigned threads = 0;
};

struct HyperbolaSweep {
    SuiteResult sieve;       // progression_sum, coprime_sum against the sieve
    SuiteResult partition;   // sum over all classes = sum d(n)
    SuiteResult examples;    // fixed small values
};

HyperbolaSweep hyperbola_sweep(const HyperbolaOptions& options = {});

/// Random polynomial corpus used by the roots sweep; content is coprime to p.
IntPolynomial random_polynomial(u64 seed, u64 index, unsigned degree_max, u64 p);

} // namespace kloospow
