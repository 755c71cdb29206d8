#include "kloospow/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "kloospow/averages.hpp"
#include "kloospow/divisor.hpp"
#include "kloospow/kloosterman.hpp"
#include "kloospow/parallel.hpp"
#include "kloospow/report.hpp"

namespace kloospow {

namespace {

u64 ipow(u64 p, unsigned k) {
    u64 q = 1;
    while (k-- > 0) {
        q *= p;
    }
    return q;
}

// Draws from a (seed, stream) pair; successive calls advance the counter.
class Draws {
public:
    Draws(u64 seed, u64 stream) : seed_(seed ^ (stream * 0xd1342543de82ef95ULL)) {}
    u64 next() { return splitmix64(seed_, counter_++); }
    u64 below(u64 bound) { return next() % bound; }
    i64 between(i64 lo, i64 hi) { return lo + static_cast<i64>(below(static_cast<u64>(hi - lo + 1))); }

private:
    u64 seed_;
    u64 counter_ = 0;
};

BigInt random_big(Draws& draws, const BigInt& bound) {
    BigInt x = 0;
    const std::size_t limbs = mpz_sizeinbase(bound.get_mpz_t(), 2) / 64 + 2;
    for (std::size_t i = 0; i < limbs; ++i) {
        x <<= 64;
        x += BigInt(std::to_string(draws.next()));
    }
    return x % bound;
}

// Per-index slots merged in index order keep the first witness independent
// of scheduling.
SuiteResult merge_slots(std::string name, const std::vector<SuiteResult>& slots) {
    SuiteResult out;
    out.name = std::move(name);
    for (const auto& s : slots) {
        out.merge(s);
    }
    return out;
}

std::vector<u64> small_primes(u64 limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<u64> out;
    for (u64 i = 2; i <= limit; ++i) {
        if (!composite[i]) {
            out.push_back(i);
            for (u64 j = i * i; j <= limit; j += i) {
                composite[j] = true;
            }
        }
    }
    return out;
}

// ord_p of a nonzero rational.
i64 rational_valuation(const mpq_class& x, u64 p) {
    const BigInt pb(static_cast<unsigned long>(p));
    i64 v = 0;
    BigInt num = x.get_num();
    BigInt den = x.get_den();
    while (num % pb == 0) {
        num /= pb;
        ++v;
    }
    while (den % pb == 0) {
        den /= pb;
        --v;
    }
    return v;
}

std::string format_worst(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

} // namespace

void SuiteResult::record(bool pass, const std::string& witness) {
    ++checks;
    if (!pass) {
        if (failures == 0) {
            first_failure = witness;
        }
        ++failures;
    }
}

void SuiteResult::merge(const SuiteResult& other) {
    if (failures == 0 && other.failures > 0) {
        first_failure = other.first_failure;
    }
    checks += other.checks;
    failures += other.failures;
    worst = std::max(worst, other.worst);
}

std::string SuiteResult::summary() const {
    std::ostringstream os;
    os << "suite=" << name << " checks=" << checks << " failures=" << failures
       << " worst=" << format_worst(worst)
       << " first_failure=" << (first_failure.empty() ? "-" : first_failure);
    return os.str();
}

FormulaSweep formula_sweep(const FormulaOptions& options) {
    FormulaSweep out;
    out.explicit_formula.name = "formula";
    out.vanishing.name = "vanishing";
    out.identity.name = "identity";
    for (u64 p : options.primes) {
        for (unsigned k = options.k_min; k <= options.k_max; ++k) {
            const u64 q = ipow(p, k);
            if (q > options.q_max) {
                break;
            }
            ++out.moduli;
            const PrimePowerModulus modulus(p, k);
            const BruteForceEvaluator brute(modulus);
            const KloostermanEvaluator formula(modulus);
            const double root_q = std::sqrt(static_cast<double>(q));
            const double tol = options.tolerance * root_q;
            const std::string tag = "q=" + std::to_string(p) + "^" + std::to_string(k);

            // One brute-force sum per class r = na mod q.
            std::vector<double> by_class(q);
            parallel_for(q, options.threads, [&](std::size_t r) {
                by_class[r] = brute(static_cast<i64>(r), 1).value;
            });

            std::vector<SuiteResult> fslots(q), vslots(q);
            parallel_for(q, options.threads, [&](std::size_t n) {
                SuiteResult& fs = fslots[n];
                SuiteResult& vs = vslots[n];
                for (u64 a = 1; a < q; ++a) {
                    if (a % p == 0) {
                        continue;
                    }
                    const KloostermanValue v = formula.evaluate(static_cast<i64>(n), static_cast<i64>(a));
                    const double ref = by_class[word::mul_mod(n, a, q)];
                    auto who = [&] { return tag + " n=" + std::to_string(n) + " a=" + std::to_string(a); };
                    if (n % p == 0) {
                        const bool zero = v.exact_zero && v.value == 0.0;
                        vs.check(zero && std::fabs(ref) <= options.zero_tolerance,
                                 [&] { return who() + " brute=" + format_number(ref); });
                        vs.worst = std::max(vs.worst, std::fabs(ref));
                    }
                    if (n == 0) {
                        continue;
                    }
                    const double diff = std::fabs(v.value - ref);
                    fs.worst = std::max(fs.worst, diff / root_q);
                    fs.check(diff <= tol, [&] {
                        return who() + " explicit=" + format_number(v.value) + " brute=" + format_number(ref);
                    });
                }
            });
            out.explicit_formula.merge(merge_slots("formula", fslots));
            out.vanishing.merge(merge_slots("vanishing", vslots));

            SuiteResult ids;
            const double id_tol = 1e-9 * root_q;
            auto check_identity = [&](u64 n, u64 a, SuiteResult& slot) {
                const double direct = brute(static_cast<i64>(n), static_cast<i64>(a)).value;
                const double folded = by_class[word::mul_mod(n, a, q)];
                slot.worst = std::max(slot.worst, std::fabs(direct - folded) / root_q);
                slot.check(std::fabs(direct - folded) <= id_tol,
                           [&] { return tag + " n=" + std::to_string(n) + " a=" + std::to_string(a); });
            };
            if (q <= options.identity_exhaustive) {
                std::vector<SuiteResult> slots(q);
                parallel_for(q, options.threads, [&](std::size_t n) {
                    for (u64 a = 1; a < q; ++a) {
                        if (a % p != 0) {
                            check_identity(n, a, slots[n]);
                        }
                    }
                });
                ids = merge_slots("identity", slots);
            } else {
                std::vector<std::pair<u64, u64>> pairs;
                Draws draws(options.seed, q);
                while (pairs.size() < options.identity_samples) {
                    const u64 n = draws.below(q);
                    const u64 a = draws.below(q);
                    if (a % p != 0) {
                        pairs.emplace_back(n, a);
                    }
                }
                std::vector<SuiteResult> slots(pairs.size());
                parallel_for(pairs.size(), options.threads, [&](std::size_t i) {
                    check_identity(pairs[i].first, pairs[i].second, slots[i]);
                });
                ids = merge_slots("identity", slots);
            }
            out.identity.merge(ids);
        }
    }
    return out;
}

SuiteResult half_binomial_suite(const HalfBinomialOptions& options) {
    SuiteResult out;
    out.name = "half-binomial";
    const u64 i_max = std::max(options.i_max_exact, options.i_max_recursion);
    // Exact C(1/2, i) by the product formula.
    std::vector<mpq_class> exact(options.i_max_exact + 1);
    exact[0] = 1;
    for (u64 i = 1; i <= options.i_max_exact; ++i) {
        mpq_class factor(1 - 2 * static_cast<long>(i - 1), 2 * static_cast<long>(i));
        factor.canonicalize();
        exact[i] = exact[i - 1] * factor;
    }
    for (u64 p : options.primes) {
        for (unsigned k = 1; ipow(p, k) <= options.modulus_ceiling; ++k) {
            const PrimePowerModulus modulus(p, k);
            const BigInt& q = modulus.q();
            const std::string tag = "q=" + std::to_string(p) + "^" + std::to_string(k);
            std::vector<BigInt> factorial_form(i_max + 1);
            for (u64 i = 1; i <= i_max; ++i) {
                factorial_form[i] = half_binom(i, modulus).reduced(modulus);
            }
            for (u64 i = 1; i <= options.i_max_exact; ++i) {
                const BigInt den_inv = mod_inverse(Residue(exact[i].get_den(), q)).value();
                const BigInt want = mod_floor(exact[i].get_num() * den_inv, q);
                out.check(want == factorial_form[i], [&] { return tag + " i=" + std::to_string(i) + " exact"; });
            }
            const std::vector<BigInt> recursive =
                half_binom_series_recursive(options.i_max_recursion, modulus);
            for (u64 i = 1; i <= options.i_max_recursion; ++i) {
                out.check(mod_floor(recursive[i], q) == factorial_form[i],
                          [&] { return tag + " i=" + std::to_string(i) + " recursion"; });
            }
        }
    }
    return out;
}

SuiteResult valuation_suite(const ValuationOptions& options) {
    SuiteResult out;
    out.name = "valuation";
    for (u64 p : options.primes) {
        // ord_p C(1/2, i) from the exact rational; ord_p(j) by division.
        std::vector<i64> binom_ord(options.i_max + 1, 0);
        mpq_class c = 1;
        for (u64 i = 1; i <= options.i_max; ++i) {
            mpq_class factor(1 - 2 * static_cast<long>(i - 1), 2 * static_cast<long>(i));
            factor.canonicalize();
            c *= factor;
            binom_ord[i] = rational_valuation(c, p);
        }
        std::vector<i64> ord_prefix(options.i_max + 1, 0);
        for (u64 j = 1; j <= options.i_max; ++j) {
            i64 v = 0;
            for (u64 x = j; x % p == 0; x /= p) {
                ++v;
            }
            ord_prefix[j] = ord_prefix[j - 1] + v;
        }
        for (u64 i = 3; i <= options.i_max; ++i) {
            for (u64 u = 3; u <= i; ++u) {
                const ValuationBound vb = valuation_bound_check(i, u, p);
                const i64 oracle = binom_ord[i] + ord_prefix[i] - ord_prefix[i - u];
                const double bound = static_cast<double>(u) / static_cast<double>(p - 1) +
                                     3.0 * std::log(2.0 * static_cast<double>(i)) /
                                         std::log(static_cast<double>(p));
                out.worst = std::max(out.worst, static_cast<double>(oracle) - bound);
                out.record(vb.exact == oracle && static_cast<double>(oracle) <= bound && vb.ok,
                           "p=" + std::to_string(p) + " i=" + std::to_string(i) + " u=" +
                               std::to_string(u) + " exact=" + std::to_string(oracle));
            }
        }
    }
    return out;
}

SuiteResult reduction_suite(const ReductionOptions& options) {
    std::vector<SuiteResult> slots(options.contexts);
    parallel_for(options.contexts, options.threads, [&](std::size_t index) {
        SuiteResult& slot = slots[index];
        Draws draws(options.seed, index);
        const u64 p = options.primes[draws.below(options.primes.size())];
        const unsigned k = 4 + static_cast<unsigned>(draws.below(options.k_max - 3));
        const unsigned s = 1 + static_cast<unsigned>(draws.below(k / 4));
        const PrimePowerModulus modulus(p, k);
        const BigInt& q = modulus.q();
        const BigInt pb(static_cast<unsigned long>(p));
        auto unit = [&] {
            BigInt x = random_big(draws, q);
            if (x % pb == 0) {
                x += 1;
            }
            return x;
        };
        const BigInt m = unit();
        const BigInt a = unit();
        BigInt ps = 1;
        for (unsigned j = 0; j < s; ++j) {
            ps *= pb;
        }
        BigInt alpha;
        do {
            alpha = random_big(draws, ps);
        } while (alpha % pb == 0 || legendre_symbol(alpha, pb) != 1);

        const std::string tag = "p=" + std::to_string(p) + " k=" + std::to_string(k) +
                                " s=" + std::to_string(s) + " m=" + m.get_str() +
                                " a=" + a.get_str() + " alpha=" + alpha.get_str();
        const ReductionContext ctx = build_reduction(m, a, alpha, modulus, s);
        const ConsistencyResult cr = sqrt_consistency(ctx, BigInt(0), BigInt(std::to_string(options.t_max)));
        slot.record(cr.ok && cr.checked == options.t_max + 1,
                    tag + (cr.witness ? " t=" + cr.witness->get_str() : std::string()));
        // Independent recomputation of both sides.
        const IntPolynomial f = ctx.f();
        const BigInt ma = m * a;
        for (u64 t = 0; t <= options.t_max; ++t) {
            const BigInt tb(static_cast<unsigned long>(t));
            const BigInt w = ctx.omega * f.evaluate_mod(tb, q);
            const BigInt lhs = mod_floor(w * w, q);
            const BigInt rhs = mod_floor(ma * (ctx.theta * ctx.alpha + ps * tb), q);
            slot.check(lhs == rhs, [&] { return tag + " t=" + std::to_string(t); });
        }
    });
    return merge_slots("reduction", slots);
}

IntPolynomial random_polynomial(u64 seed, u64 index, unsigned degree_max, u64 p) {
    Draws draws(seed, index);
    const unsigned d = 1 + static_cast<unsigned>(draws.below(degree_max));
    const u64 shape = draws.below(4);
    std::vector<BigInt> coeffs(d + 1);
    if (shape == 0 || d == 1) {
        for (auto& c : coeffs) {
            c = draws.between(-60, 60);
        }
    } else {
        // Repeated linear factor times a random cofactor, optionally
        // perturbed by a multiple of p: forces singular roots mod p.
        const unsigned e = 2 + static_cast<unsigned>(draws.below(d - 1));
        const i64 r = draws.between(-20, 20);
        IntPolynomial h{1};
        for (unsigned j = 0; j < e; ++j) {
            h = h * IntPolynomial{-r, 1};
        }
        std::vector<BigInt> rest(d - e + 1);
        for (auto& c : rest) {
            c = draws.between(-9, 9);
        }
        if (rest.back() == 0) {
            rest.back() = 1;
        }
        h = h * IntPolynomial(rest);
        if (shape == 2) {
            std::vector<BigInt> bump(d + 1);
            for (auto& c : bump) {
                c = draws.between(-3, 3) * static_cast<i64>(p);
            }
            bump[d] = 0;
            h = h + IntPolynomial(bump);
        } else if (shape == 3) {
            std::vector<BigInt> bump(d + 1);
            for (auto& c : bump) {
                c = draws.between(-3, 3) * static_cast<i64>(p * p);
            }
            bump[d] = 0;
            h = h + IntPolynomial(bump);
        }
        coeffs = h.coeffs();
        coeffs.resize(d + 1);
    }
    if (coeffs[d] == 0) {
        coeffs[d] = 1;
    }
    BigInt g = 0;
    for (const auto& c : coeffs) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    }
    if (g > 1) {
        for (auto& c : coeffs) {
            c /= g;
        }
    }
    return IntPolynomial(std::move(coeffs));
}

RootsSweep roots_sweep(const RootsOptions& options) {
    static const std::vector<u64> primary{2, 3, 5, 7, 11, 13};
    const std::vector<u64> others = small_primes(1000);
    std::vector<SuiteResult> count_slots(options.polynomials), bound_slots(options.polynomials);
    std::vector<u64> singular(options.polynomials, 0);

    parallel_for(options.polynomials, options.threads, [&](std::size_t index) {
        Draws draws(options.seed ^ 0x5bd1e995ULL, index);
        const u64 p0 = primary[draws.below(primary.size())];
        const IntPolynomial f = random_polynomial(options.seed, index, options.degree_max, p0);
        const std::size_t d = f.degree();
        for (u64 j = 0; j < options.moduli_per_polynomial; ++j) {
            const u64 p = j + 1 < options.moduli_per_polynomial ? p0 : others[draws.below(others.size())];
            unsigned mu_max = 0;
            for (u64 m = p; m <= options.modulus_ceiling; m *= p) {
                ++mu_max;
            }
            // The first pass enumerates mod p^mu_max once and checks every
            // exponent below it; later passes draw one exponent.
            const bool every_mu = j == 0 && options.all_exponents;
            const unsigned mu = every_mu ? mu_max : 1 + static_cast<unsigned>(draws.below(mu_max));
            const u64 m = ipow(p, mu);

            std::vector<u64> c(d + 1);
            for (std::size_t i = 0; i <= d; ++i) {
                c[i] = mod_floor(f[i], BigInt(static_cast<unsigned long>(m))).get_ui();
            }
            std::vector<u64> roots;
            std::vector<u64> low_counts(mu + 1, 0);
            u64 next_power = p;
            unsigned live = 1;  // exponents nu >= live still have x < p^nu
            for (u64 x = 0; x < m; ++x) {
                if (x == next_power) {
                    ++live;
                    next_power *= p;
                }
                u64 acc = 0;
                for (std::size_t i = d + 1; i-- > 0;) {
                    acc = (acc * x + c[i]) % m;
                }
                if (acc == 0) {
                    roots.push_back(x);
                }
                if (every_mu) {
                    u64 pk = 1;
                    for (unsigned nu = 1; nu < mu; ++nu) {
                        pk *= p;
                        if (acc % pk != 0) {
                            break;
                        }
                        low_counts[nu] += nu >= live ? 1 : 0;
                    }
                }
            }
            low_counts[mu] = roots.size();

            for (unsigned nu = every_mu ? 1 : mu; nu <= mu; ++nu) {
                const u64 mn = ipow(p, nu);
                const std::string tag = "f=" + f.to_string() + " m=" + std::to_string(p) + "^" +
                                        std::to_string(nu);
                const BigInt lifted = count_roots_full(f, BigInt(static_cast<unsigned long>(mn)));
                count_slots[index].check(lifted == low_counts[nu], [&] {
                    return tag + " lifted=" + lifted.get_str() +
                           " enumerated=" + std::to_string(low_counts[nu]);
                });
                const double dd = static_cast<double>(d);
                const double bound = dd * std::pow(static_cast<double>(mn), 1.0 - 1.0 / dd);
                const double ratio = static_cast<double>(low_counts[nu]) / bound;
                bound_slots[index].worst = std::max(bound_slots[index].worst, ratio);
                bound_slots[index].check(ratio <= 1.0 + 1e-12,
                                         [&] { return tag + " rho=" + std::to_string(low_counts[nu]); });
            }

            const std::string tag = "f=" + f.to_string() + " m=" + std::to_string(p) + "^" +
                                    std::to_string(mu);
            const u64 Q = 1 + draws.below(2 * m);
            u64 ranged = (Q / m) * roots.size();
            for (u64 x : roots) {
                const u64 rep = x == 0 ? m : x;
                ranged += rep <= Q % m ? 1 : 0;
            }
            const BigInt ranged_lifted = count_roots_ranged(PolyCongruenceQuery{
                f, BigInt(static_cast<unsigned long>(p)), mu, BigInt(static_cast<unsigned long>(Q))});
            count_slots[index].check(ranged_lifted == ranged, [&] {
                return tag + " Q=" + std::to_string(Q) + " ranged=" + ranged_lifted.get_str() +
                       " enumerated=" + std::to_string(ranged);
            });

            if (j == 0) {
                // Any root mod p where f' also vanishes.
                const IntPolynomial df = derivative(f, 1);
                const BigInt pb(static_cast<unsigned long>(p));
                for (u64 x = 0; x < p; ++x) {
                    const BigInt xb(static_cast<unsigned long>(x));
                    if (f.evaluate_mod(xb, pb) == 0 && df.evaluate_mod(xb, pb) == 0) {
                        singular[index] = 1;
                        break;
                    }
                }
            }
        }
    });

    RootsSweep out;
    out.counts = merge_slots("roots", count_slots);
    out.konyagin = merge_slots("konyagin", bound_slots);
    out.polynomials = options.polynomials;
    out.singular = std::accumulate(singular.begin(), singular.end(), u64{0});
    return out;
}

HyperbolaSweep hyperbola_sweep(const HyperbolaOptions& options) {
    HyperbolaSweep out;
    out.sieve.name = "hyperbola";
    out.partition.name = "partition";
    out.examples.name = "divisor-examples";

    const u64 X_max = options.X_max;
    const std::vector<std::uint32_t> d = divisor_sieve(X_max);
    std::vector<u64> prefix(X_max + 1, 0);
    for (u64 n = 1; n <= X_max; ++n) {
        prefix[n] = prefix[n - 1] + d[n];
    }

    const std::vector<std::pair<u64, unsigned>> grid = {
        {3, 1}, {3, 2}, {3, 3}, {3, 4}, {3, 5}, {3, 6}, {3, 7}, {3, 8},
        {5, 1}, {5, 2}, {5, 3}, {7, 1}, {7, 2}, {7, 3}};

    for (const auto& [p, k] : grid) {
        const PrimePowerModulus modulus(p, k);
        const u64 q = ipow(p, k);
        const std::string tag = "q=" + std::to_string(p) + "^" + std::to_string(k);

        std::vector<u64> stair{1, 2, 20, q - 1 > 0 ? q - 1 : 1, q, q + 1, X_max};
        Draws draws(options.seed, q);
        for (u64 i = 0; i < options.staircase; ++i) {
            stair.push_back(1 + draws.below(X_max));
        }
        std::sort(stair.begin(), stair.end());
        stair.erase(std::unique(stair.begin(), stair.end()), stair.end());
        stair.erase(std::remove_if(stair.begin(), stair.end(), [&](u64 x) { return x > X_max; }),
                    stair.end());

        // Class sums at each staircase point, by one pass over the sieve.
        std::vector<std::vector<u64>> oracle(stair.size(), std::vector<u64>(q, 0));
        std::vector<u64> running(q, 0);
        std::vector<u64> coprime_oracle(stair.size(), 0);
        u64 coprime_running = 0;
        std::size_t next = 0;
        for (u64 n = 1; n <= X_max && next < stair.size(); ++n) {
            running[n % q] += d[n];
            if (n % p != 0) {
                coprime_running += d[n];
            }
            while (next < stair.size() && stair[next] == n) {
                oracle[next] = running;
                coprime_oracle[next] = coprime_running;
                ++next;
            }
        }

        u64 units = 0;
        for (u64 a = 1; a < q; ++a) {
            units += a % p != 0;
        }
        out.examples.record(units == modulus.phi().get_ui(), tag + " phi");

        std::vector<SuiteResult> slots(stair.size());
        parallel_for(stair.size(), options.threads, [&](std::size_t i) {
            const u64 X = stair[i];
            const std::string at = tag + " X=" + std::to_string(X);
            slots[i].record(coprime_sum(X, modulus) == coprime_oracle[i], at + " coprime");
            for (u64 a = 1; a < q; ++a) {
                if (a % p == 0) {
                    continue;
                }
                const u64 D = progression_sum(DivisorQuery{X, modulus, a});
                slots[i].check(D == oracle[i][a % q], [&] { return at + " a=" + std::to_string(a); });
            }
        });
        out.sieve.merge(merge_slots("hyperbola", slots));

        // Monotone in X along the staircase, for a handful of units.
        for (u64 a : {u64{1}, q - 1, 2 % q}) {
            if (a == 0 || a % p == 0) {
                continue;
            }
            u64 prev = 0;
            bool monotone = true;
            for (u64 X : stair) {
                const u64 D = progression_sum(DivisorQuery{X, modulus, a});
                monotone = monotone && D >= prev;
                prev = D;
            }
            out.sieve.record(monotone, tag + " monotone a=" + std::to_string(a));
        }

        if (q <= options.partition_q_max) {
            u64 total = 0;
            for (u64 a = 0; a < q; ++a) {
                total += a % p != 0 ? progression_sum(DivisorQuery{X_max, modulus, a})
                                    : oracle.back()[a];
            }
            out.partition.record(total == prefix[X_max], tag + " total=" + std::to_string(total));
        }
    }

    const PrimePowerModulus three(3, 1);
    const std::vector<std::uint32_t> small = divisor_sieve(20);
    out.examples.record(small[1] == 1, "d(1)");
    out.examples.record(small[12] == 6, "d(12)");
    out.examples.record(std::accumulate(small.begin(), small.begin() + 11, 0u) == 27, "sum d(n), n <= 10");
    out.examples.record(progression_sum(DivisorQuery{20, three, 1}) == 19, "D(20;3,1)");
    out.examples.record(coprime_sum(20, three) == 41, "coprime_sum(20, 3)");
    out.examples.record(coprime_sum(0, three) == 0, "coprime_sum(0, 3)");
    const ErrorTermResult e = error_term(DivisorQuery{20, three, 1});
    out.examples.record(e.E == -1.5, "E(20;3,1)=" + format_number(e.E));
    out.examples.record(progression_sum(DivisorQuery{50, PrimePowerModulus(3, 4), 70}) == 0,
                        "D(50;81,70)");
    return out;
}

} // namespace kloospow
