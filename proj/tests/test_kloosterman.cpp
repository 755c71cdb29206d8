#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numeric>
#include <numbers>
#include <random>

#include "kloospow/kloosterman.hpp"
#include "kloospow/verify.hpp"

using namespace kloospow;

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::BadInput;
}

i64 inverse_by_euclid(i64 x, i64 m) {
    i64 r0 = m, r1 = x % m, s0 = 0, s1 = 1;
    while (r1 != 0) {
        const i64 t = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, r0 - t * r1);
        std::tie(s0, s1) = std::make_pair(s1, s0 - t * s1);
    }
    return ((s0 % m) + m) % m;
}

// Direct complex sum over units of any modulus, in long double.
std::complex<long double> kloosterman_oracle(i64 n, i64 a, i64 q) {
    std::complex<long double> s = 0;
    for (i64 b = 1; b < q; ++b) {
        if (std::gcd(b, q) != 1) {
            continue;
        }
        const i64 phase = ((n % q + q) % q * b + (a % q + q) % q * inverse_by_euclid(b, q)) % q;
        s += std::polar(1.0L, 2 * kPi * phase / q);
    }
    return s;
}

} // namespace

TEST(BruteForce, Examples) {
    EXPECT_NEAR(brute_force({1, 1, PrimePowerModulus(3, 1)}).value, -1.0, 1e-12);
    EXPECT_NEAR(brute_force({0, 1, PrimePowerModulus(3, 2)}).value, 0.0, 1e-12);
    EXPECT_NEAR(brute_force({1, 1, PrimePowerModulus(3, 2)}).value, 6 * std::cos(4 * M_PI / 9), 1e-12);
    EXPECT_NEAR(6 * std::cos(4 * M_PI / 9), 1.04189, 1e-5);
}

TEST(BruteForce, MatchesIndependentOracle) {
    std::mt19937_64 rng(1);
    for (auto [p, k] : std::vector<std::pair<u64, unsigned>>{{3, 1}, {3, 5}, {5, 3}, {7, 2}, {11, 2}, {13, 3}, {101, 1}}) {
        const PrimePowerModulus modulus(p, k);
        const BruteForceEvaluator brute(modulus);
        const i64 q = static_cast<i64>(modulus.q_word());
        for (int trial = 0; trial < 20; ++trial) {
            const i64 n = static_cast<i64>(rng() % (3 * q)) - q;
            i64 a = static_cast<i64>(rng() % q);
            if (a % static_cast<i64>(p) == 0) {
                ++a;
            }
            const auto want = kloosterman_oracle(n, a, q);
            const KloostermanValue got = brute(n, a);
            ASSERT_NEAR(got.value, static_cast<double>(want.real()), 1e-9) << n << "," << a << " mod " << q;
            ASSERT_LE(std::fabs(got.imag_residual), 1e-6);
        }
    }
}

TEST(BruteForce, RealnessAndSymmetry) {
    for (auto [p, k] : std::vector<std::pair<u64, unsigned>>{{3, 8}, {7, 4}, {97, 2}}) {
        const PrimePowerModulus modulus(p, k);
        const BruteForceEvaluator brute(modulus);
        const u64 q = modulus.q_word();
        std::mt19937_64 rng(q);
        for (int trial = 0; trial < 60; ++trial) {
            const i64 n = static_cast<i64>(1 + rng() % (q - 1));
            const i64 a = static_cast<i64>(1 + rng() % (q - 1));
            const KloostermanValue x = brute(n, a);
            EXPECT_LE(std::fabs(x.imag_residual), 1e-6);
            if (n % static_cast<i64>(p) != 0 && a % static_cast<i64>(p) != 0) {
                EXPECT_NEAR(x.value, brute(a, n).value, 1e-9);
            }
        }
    }
}

TEST(BruteForce, Ceiling) {
    EXPECT_EQ(code_of([] { BruteForceEvaluator(PrimePowerModulus(3, 15)); }), ErrorCode::TooLarge);
    EXPECT_EQ(code_of([] { BruteForceEvaluator(PrimePowerModulus(3, 9), 1000); }), ErrorCode::TooLarge);
}

TEST(BruteForce, UntabulatedPathAgrees) {
    // 3^14 > 2^22 takes the per-element inverse path.
    const PrimePowerModulus modulus(3, 14);
    const BruteForceEvaluator brute(modulus);
    const KloostermanEvaluator formula(modulus);
    for (i64 n : {1, 2, 5, 1000, 4782968}) {
        EXPECT_NEAR(brute(n, 1).value, formula.evaluate(n, 1).value, 1e-6 * std::sqrt(4782969.0));
    }
}

TEST(Ramanujan, Examples) {
    EXPECT_EQ(ramanujan(1, 9), 0.0);
    EXPECT_EQ(ramanujan(1, 3), -1.0);
    EXPECT_EQ(ramanujan(9, 9), 6.0);
    EXPECT_EQ(ramanujan(1, PrimePowerModulus(3, 2)), 0.0);
    EXPECT_EQ(ramanujan(9, PrimePowerModulus(3, 2)), 6.0);
    EXPECT_EQ(ramanujan(3, PrimePowerModulus(3, 2)), -3.0);
}

TEST(Ramanujan, MatchesDefinition) {
    for (i64 q = 1; q <= 120; ++q) {
        for (i64 a = -3; a <= q + 3; ++a) {
            long double s = 0;
            for (i64 b = 1; b <= q; ++b) {
                if (std::gcd(b, q) == 1) {
                    s += std::cos(2 * kPi * static_cast<long double>(((a * b) % q + q) % q) / q);
                }
            }
            ASSERT_NEAR(ramanujan(a, static_cast<u64>(q)), static_cast<double>(s), 1e-9) << a << " " << q;
        }
    }
}

TEST(ExplicitFormula, Examples) {
    const KloostermanValue v = explicit_formula({1, 1, PrimePowerModulus(3, 2)});
    EXPECT_EQ(v.method, Method::ExplicitFormula);
    EXPECT_NEAR(v.value, brute_force({1, 1, PrimePowerModulus(3, 2)}).value, 1e-9);

    const KloostermanValue zero = explicit_formula({2, 1, PrimePowerModulus(3, 2)});
    EXPECT_TRUE(zero.exact_zero);
    EXPECT_EQ(zero.value, 0.0);

    EXPECT_NEAR(explicit_formula({1, 1, PrimePowerModulus(7, 2)}).value,
                static_cast<double>(kloosterman_oracle(1, 1, 49).real()), 1e-9);
    EXPECT_EQ(code_of([] { explicit_formula({1, 1, PrimePowerModulus(7, 1)}); }), ErrorCode::NeedsBruteForce);
    EXPECT_EQ(code_of([] { explicit_formula({7, 1, PrimePowerModulus(7, 2)}); }), ErrorCode::NotCoprimeToP);
}

TEST(Evaluate, Dispatch) {
    const KloostermanValue v = evaluate({3, 1, PrimePowerModulus(3, 2)});
    EXPECT_TRUE(v.exact_zero);
    EXPECT_EQ(v.value, 0.0);
    EXPECT_EQ(v.method, Method::VanishingRule);

    const KloostermanValue prime = evaluate({5, 2, PrimePowerModulus(7, 1)});
    EXPECT_EQ(prime.method, Method::BruteForce);
    EXPECT_NEAR(prime.value, static_cast<double>(kloosterman_oracle(5, 2, 7).real()), 1e-12);

    const KloostermanValue mod27 = evaluate({1, 1, PrimePowerModulus(3, 3)});
    EXPECT_EQ(mod27.method, Method::ExplicitFormula);
    EXPECT_NEAR(mod27.value, brute_force({1, 1, PrimePowerModulus(3, 3)}).value, 1e-9);

    const KloostermanValue zero_n = evaluate({0, 4, PrimePowerModulus(5, 3)});
    EXPECT_EQ(zero_n.method, Method::RamanujanRule);
    EXPECT_TRUE(zero_n.exact_zero);

    EXPECT_EQ(code_of([] { evaluate({1, 3, PrimePowerModulus(3, 2)}); }), ErrorCode::NotCoprimeToP);
}

TEST(Evaluate, LargeModulusFormulaPath) {
    // q = 13^16 is far beyond brute force; the closed form still obeys 2 sqrt(q).
    const PrimePowerModulus modulus(13, 16);
    const KloostermanEvaluator ev(modulus);
    for (i64 n = 1; n < 200; ++n) {
        const WeilCheck w = ev.weil_check(n, 7);
        ASSERT_TRUE(w.ok);
        ASSERT_TRUE(w.sharp_ok);
    }
}

TEST(Evaluate, RootChoiceInvariance) {
    for (auto [p, k] : std::vector<std::pair<u64, unsigned>>{{3, 3}, {3, 4}, {5, 5}, {7, 3}, {11, 4}, {13, 2}}) {
        const KloostermanEvaluator ev(PrimePowerModulus(p, k));
        const u64 q = ev.q();
        for (u64 l = 1; l < q; ++l) {
            if (l % p == 0) {
                continue;
            }
            const double x = ev.formula_at_root(l);
            const double y = ev.formula_at_root(q - l);
            ASSERT_LE(std::fabs(x - y), 1e-12 * 2 * std::sqrt(static_cast<double>(q))) << l << " mod " << q;
        }
    }
}

TEST(Evaluate, MultiplierShiftIsExact) {
    const KloostermanEvaluator ev(PrimePowerModulus(5, 4));
    for (i64 m : {2, 3, 7, 624}) {
        for (i64 n = 1; n < 625; n += 7) {
            for (i64 a : {1, 2, 13}) {
                ASSERT_EQ(ev.evaluate(m * n, a).value, ev.evaluate(n, a * m).value);
            }
        }
    }
}

TEST(Weil, Examples) {
    const WeilCheck w = weil_check({1, 1, PrimePowerModulus(3, 2)});
    EXPECT_TRUE(w.ok);
    EXPECT_DOUBLE_EQ(w.bound, 9.0);
    EXPECT_TRUE(w.sharp_applies);
    EXPECT_TRUE(w.sharp_ok);
    EXPECT_TRUE(weil_check({0, 1, PrimePowerModulus(3, 2)}).ok);
    for (u64 p = 3; p <= 997; p += 2) {
        if (!is_prime(BigInt(static_cast<unsigned long>(p)))) {
            continue;
        }
        const double s = brute_force({1, 1, PrimePowerModulus(p, 1)}).value;
        ASSERT_LE(std::fabs(s), 2 * std::sqrt(static_cast<double>(p))) << p;
    }
}

TEST(FormulaSweep, SmallGrid) {
    FormulaOptions o;
    o.q_max = 3'000;
    o.identity_exhaustive = 300;
    o.identity_samples = 300;
    const FormulaSweep s = formula_sweep(o);
    EXPECT_TRUE(s.explicit_formula.ok()) << s.explicit_formula.summary();
    EXPECT_TRUE(s.vanishing.ok()) << s.vanishing.summary();
    EXPECT_TRUE(s.identity.ok()) << s.identity.summary();
    // 3^2..3^6, 5^2..5^4, 7^2..7^4, 11^2, 11^3, 13^2, 13^3.
    EXPECT_EQ(s.moduli, 15u);
}

TEST(FormulaSweep, DetectsWrongReference) {
    // A sweep with an impossible tolerance must report failures with a witness.
    FormulaOptions o;
    o.primes = {3};
    o.q_max = 81;
    o.tolerance = -1.0;
    const FormulaSweep s = formula_sweep(o);
    EXPECT_FALSE(s.explicit_formula.ok());
    EXPECT_NE(s.explicit_formula.first_failure.find("q=3^2"), std::string::npos);
}
