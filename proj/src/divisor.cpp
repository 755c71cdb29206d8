#include "kloospow/divisor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "kloospow/parallel.hpp"

namespace kloospow {

namespace {

u64 isqrt(u64 x) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(x)));
    while (r * r > x) {
        --r;
    }
    while ((r + 1) * (r + 1) <= x) {
        ++r;
    }
    return r;
}

// #{1 <= v <= Y : v = r mod q} for r in [1, q).
u64 count_in_class(u64 Y, u64 r, u64 q) {
    return r <= Y ? (Y - r) / q + 1 : 0;
}

u64 require_unit(u64 a, const PrimePowerModulus& modulus) {
    const u64 q = modulus.q_word();
    const u64 ar = a % q;
    if (ar % modulus.p_word() == 0) {
        throw Error(ErrorCode::NotCoprime,
                    "gcd(" + std::to_string(a) + ", " + std::to_string(q) + ") > 1");
    }
    return ar;
}

} // namespace

std::vector<std::uint32_t> divisor_sieve(u64 X) {
    if (X > kSieveCeiling) {
        throw Error(ErrorCode::TooLarge, "sieve bound exceeds 10^8");
    }
    std::vector<std::uint32_t> d(X + 1, 0);
    for (u64 i = 1; i <= X; ++i) {
        for (u64 j = i; j <= X; j += i) {
            ++d[j];
        }
    }
    return d;
}

u64 progression_sum(const DivisorQuery& query) {
    const PrimePowerModulus& modulus = query.modulus;
    const u64 p = modulus.p_word();
    const u64 q = modulus.q_word();
    const u64 a = require_unit(query.a, modulus);
    const u64 X = query.X;
    const u64 s = isqrt(X);
    // #{(u, v) : uv <= X, uv = a mod q}: both u and v are then units, so
    // u runs over units and v over the single class a u^{-1}.
    u64 half = 0;
    u64 overlap = 0;
    for (u64 u = 1; u <= s; ++u) {
        if (u % p == 0) {
            continue;
        }
        const u64 r = word::mul_mod(a, word::inv_mod(u, q), q);
        half += count_in_class(X / u, r, q);
        overlap += count_in_class(s, r, q);
    }
    return 2 * half - overlap;
}

u64 coprime_sum(u64 X, const PrimePowerModulus& modulus) {
    const u64 p = modulus.p_word();
    const u64 s = isqrt(X);
    auto coprime_upto = [p](u64 Y) { return Y - Y / p; };
    u64 half = 0;
    for (u64 u = 1; u <= s; ++u) {
        if (u % p != 0) {
            half += coprime_upto(X / u);
        }
    }
    const u64 c = coprime_upto(s);
    return 2 * half - c * c;
}

ErrorTermResult error_term(const DivisorQuery& query) {
    require_unit(query.a, query.modulus);
    const u64 p = query.modulus.p_word();
    const u64 q = query.modulus.q_word();
    ErrorTermResult out;
    out.D = progression_sum(query);
    out.main_numerator = coprime_sum(query.X, query.modulus);
    out.phi = q / p * (p - 1);
    // E = (D - floor(S/phi)) - (S mod phi)/phi keeps the cancellation exact.
    const i64 whole = static_cast<i64>(out.D) - static_cast<i64>(out.main_numerator / out.phi);
    const long double frac = static_cast<long double>(out.main_numerator % out.phi) /
                             static_cast<long double>(out.phi);
    out.E = static_cast<double>(static_cast<long double>(whole) - frac);
    out.normalized = out.E * static_cast<double>(q) / static_cast<double>(query.X);
    return out;
}

std::string ResidueSelection::describe() const {
    switch (mode) {
    case Mode::AllUnits: return "all-units";
    case Mode::Sample: return "sample(" + std::to_string(count) + ",seed=" + std::to_string(seed) + ")";
    case Mode::Explicit: return "explicit(" + std::to_string(residues.size()) + ")";
    }
    return "unknown";
}

u64 splitmix64(u64 seed, u64 counter) {
    u64 z = seed + (counter + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<u64> select_residues(const PrimePowerModulus& modulus, const ResidueSelection& selection) {
    const u64 p = modulus.p_word();
    const u64 q = modulus.q_word();
    const u64 phi = q / p * (p - 1);
    std::vector<u64> out;
    switch (selection.mode) {
    case ResidueSelection::Mode::Explicit:
        for (u64 a : selection.residues) {
            out.push_back(require_unit(a, modulus));
        }
        break;
    case ResidueSelection::Mode::Sample:
        if (selection.count < phi) {
            std::unordered_set<u64> seen;
            for (u64 counter = 0; out.size() < selection.count; ++counter) {
                const u64 x = splitmix64(selection.seed, counter) % q;
                if (x % p != 0 && seen.insert(x).second) {
                    out.push_back(x);
                }
            }
            break;
        }
        [[fallthrough]];
    case ResidueSelection::Mode::AllUnits:
        if (phi > kScanBudget) {
            throw Error(ErrorCode::TooLarge, "phi(q) exceeds the scan budget; use sampling");
        }
        for (u64 a = 1; a < q; ++a) {
            if (a % p != 0) {
                out.push_back(a);
            }
        }
        break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ScanResult error_scan(u64 X, const PrimePowerModulus& modulus, const ResidueSelection& selection,
                      unsigned threads) {
    ScanResult out;
    out.X = X;
    out.p = modulus.p_word();
    out.k = modulus.k();
    out.q = modulus.q_word();
    out.mode = selection.describe();

    const std::vector<u64> residues = select_residues(modulus, selection);
    const u64 main_numerator = coprime_sum(X, modulus);
    const u64 phi = out.q / out.p * (out.p - 1);
    out.rows.resize(residues.size());
    parallel_for(residues.size(), threads, [&](std::size_t i) {
        ResidueError& row = out.rows[i];
        row.a = residues[i];
        row.D = progression_sum(DivisorQuery{X, modulus, row.a});
        const i64 whole = static_cast<i64>(row.D) - static_cast<i64>(main_numerator / phi);
        const long double frac =
            static_cast<long double>(main_numerator % phi) / static_cast<long double>(phi);
        row.E = static_cast<double>(static_cast<long double>(whole) - frac);
        row.normalized = row.E * static_cast<double>(out.q) / static_cast<double>(X);
    });
    for (const auto& row : out.rows) {
        out.max_abs_E = std::max(out.max_abs_E, std::fabs(row.E));
    }
    out.max_normalized = out.max_abs_E * static_cast<double>(out.q) / static_cast<double>(X);
    out.delta_hat = out.max_normalized > 0.0
                        ? -std::log(out.max_normalized) / std::log(static_cast<double>(X))
                        : std::numeric_limits<double>::infinity();
    return out;
}

} // namespace kloospow
