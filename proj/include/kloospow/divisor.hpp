#pragma once

/**
 * @file divisor.hpp
 * @brief The divisor function in arithmetic progressions modulo p^k.
 *
 *     D(X; q, a) = sum_{n <= X, n = a mod q} d(n)
 *     E(X; q, a) = D(X; q, a) - (1/phi(q)) sum_{n <= X, (n, q) = 1} d(n)
 *
 * Both sums are evaluated exactly in O(sqrt X) with the hyperbola method;
 * the sieve is the O(X) oracle.
 */

#include <cstdint>
#include <string>
#include <vector>

#include "kloospow/modular_core.hpp"

namespace kloospow {

inline constexpr u64 kSieveCeiling = 100'000'000;

/// d(0..X) with d(0) = 0.
std::vector<std::uint32_t> divisor_sieve(u64 X);

struct DivisorQuery {
    u64 X = 2;
    PrimePowerModulus modulus;
    u64 a = 1;
};

/// a must be a unit mod q; throws NotCoprime otherwise.
u64 progression_sum(const DivisorQuery& query);
u64 coprime_sum(u64 X, const PrimePowerModulus& modulus);

struct ErrorTermResult {
    u64 D = 0;
    u64 main_numerator = 0;  // coprime sum; main term = main_numerator / phi
    u64 phi = 0;
    double E = 0.0;
    double normalized = 0.0;  // E q / X
};

/// Throws NotCoprime when gcd(a, q) > 1.
ErrorTermResult error_term(const DivisorQuery& query);

/// Residues to scan: every unit, or `count` distinct units drawn from `seed`.
struct ResidueSelection {
    enum class Mode { AllUnits, Sample, Explicit } mode = Mode::AllUnits;
    u64 count = 0;
    u64 seed = 0;
    std::vector<u64> residues;  // Explicit mode

    static ResidueSelection all_units() { return {}; }
    static ResidueSelection sample(u64 count, u64 seed) { return {Mode::Sample, count, seed, {}}; }
    static ResidueSelection explicit_list(std::vector<u64> residues) {
        return {Mode::Explicit, 0, 0, std::move(residues)};
    }
    std::string describe() const;
};

inline constexpr u64 kScanBudget = 1'000'000;

struct ResidueError {
    u64 a = 0;
    u64 D = 0;
    double E = 0.0;
    double normalized = 0.0;
};

struct ScanResult {
    u64 X = 0;
    u64 p = 0;
    unsigned k = 0;
    u64 q = 0;
    std::string mode;
    std::vector<ResidueError> rows;  // ordered by residue
    double max_abs_E = 0.0;
    double max_normalized = 0.0;
    double delta_hat = 0.0;  // -log(max |E| q / X) / log X
};

/// Units are drawn by a counter-based generator so the sample for a given
/// seed never depends on scheduling. Throws NotCoprime when an explicit
/// residue is not a unit, TooLarge when all units exceed kScanBudget.
ScanResult error_scan(u64 X, const PrimePowerModulus& modulus, const ResidueSelection& selection,
                      unsigned threads = 0);

/// The residues error_scan would visit, in ascending order.
std::vector<u64> select_residues(const PrimePowerModulus& modulus, const ResidueSelection& selection);

/// SplitMix64 keyed by (seed, counter).
u64 splitmix64(u64 seed, u64 counter);

} // namespace kloospow
