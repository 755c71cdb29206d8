#include "kloospow/averages.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "kloospow/parallel.hpp"

namespace kloospow {

namespace {

constexpr long double kTwoPiL = 2.0L * std::numbers::pi_v<long double>;

BigInt pow_big(const BigInt& base, u64 exp) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

BigInt big(u64 x) {
    return BigInt(static_cast<unsigned long>(x));
}

u64 to_u64(const BigInt& x) {
    return static_cast<u64>(mpz_get_ui(x.get_mpz_t()));
}

bool fits_word(const BigInt& x) {
    return sgn(x) >= 0 && x < big(word::max_modulus);
}

// Coefficients of g(y0 + w) by repeated synthetic division.
std::vector<BigInt> taylor_shift(std::vector<BigInt> coeffs, const BigInt& y0) {
    const std::size_t n = coeffs.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = n - 1; j > i; --j) {
            coeffs[j - 1] += y0 * coeffs[j];
        }
    }
    return coeffs;
}

BigInt eval_mod(const std::vector<BigInt>& coeffs, const BigInt& x, const BigInt& m) {
    BigInt acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = mod_floor(acc * x + *it, m);
    }
    return acc;
}

std::vector<BigInt> derivative_coeffs(const std::vector<BigInt>& coeffs) {
    std::vector<BigInt> out;
    for (std::size_t i = 1; i < coeffs.size(); ++i) {
        out.push_back(coeffs[i] * big(i));
    }
    if (out.empty()) {
        out.emplace_back(0);
    }
    return out;
}

// Returns (p, e) when m = p^e for a prime p, else nullopt.
std::optional<std::pair<BigInt, unsigned>> prime_power_decomposition(const BigInt& m) {
    if (m < 2) {
        return std::nullopt;
    }
    const std::size_t bits = mpz_sizeinbase(m.get_mpz_t(), 2);
    for (unsigned e = static_cast<unsigned>(bits); e >= 1; --e) {
        BigInt root;
        if (mpz_root(root.get_mpz_t(), m.get_mpz_t(), e) != 0 && is_prime(root)) {
            return std::make_pair(root, e);
        }
    }
    return std::nullopt;
}

} // namespace

AverageResult sum_kloosterman(const AverageQuery& query, unsigned threads) {
    const PrimePowerModulus& modulus = query.modulus;
    if (modulus.k() < 2) {
        throw Error(ErrorCode::Unsupported, "average sums need k >= 2");
    }
    const KloostermanEvaluator eval(modulus);
    const u64 p = eval.p();
    const u64 q = eval.q();
    const u64 ma = word::mul_mod(word::reduce(query.m, q), word::reduce(query.a, q), q);
    if (ma % p == 0) {
        throw Error(ErrorCode::NotCoprimeToP, "m a must be coprime to p");
    }
    if (query.N < 1 || query.N > q) {
        throw Error(ErrorCode::BadRange, "need 1 <= N <= q");
    }
    AverageResult out;
    out.terms = query.N;
    out.sum = deterministic_sum(1, static_cast<std::size_t>(query.N) + 1, threads, [&](std::size_t n) {
        if (n % p == 0) {
            return 0.0;
        }
        return eval.explicit_term(word::mul_mod(static_cast<u64>(n) % q, ma, q));
    });
    return out;
}

double empirical_tau(const AverageQuery& query, double sum) {
    if (sum == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    const double q = query.modulus.q().get_d();
    const double normalized = std::fabs(sum) / (static_cast<double>(query.N) * std::sqrt(q));
    return -std::log(normalized) / std::log(q);
}

double ExpSumResult::magnitude() const {
    return std::hypot(re, im);
}

double ExpSumResult::phase() const {
    return std::atan2(im, re);
}

ExpSumResult exp_sum(const IntPolynomial& f, const BigInt& p, unsigned mu, u64 P, unsigned threads) {
    if (P < 1) {
        throw Error(ErrorCode::BadRange, "need P >= 1");
    }
    if (P > kExpSumCeiling) {
        throw Error(ErrorCode::TooLarge, "exponential sum length exceeds 10^8");
    }
    const BigInt M = pow_big(p, mu);
    const bool word_path = fits_word(M);
    std::vector<u64> reduced;
    if (word_path) {
        for (const auto& c : f.coeffs()) {
            reduced.push_back(to_u64(mod_floor(c, M)));
        }
    }
    const u64 Mw = word_path ? to_u64(M) : 0;

    const std::size_t chunks = (P + kReductionChunk - 1) / kReductionChunk;
    std::vector<CompensatedSum> re_part(chunks);
    std::vector<CompensatedSum> im_part(chunks);
    parallel_for(chunks, threads, [&](std::size_t chunk) {
        const u64 lo = 1 + chunk * kReductionChunk;
        const u64 hi = std::min<u64>(P, lo + kReductionChunk - 1);
        CompensatedSum re;
        CompensatedSum im;
        for (u64 x = lo; x <= hi; ++x) {
            long double frac;
            if (word_path) {
                const u64 xr = x % Mw;
                u64 acc = 0;
                for (auto it = reduced.rbegin(); it != reduced.rend(); ++it) {
                    acc = word::add_mod(word::mul_mod(acc, xr, Mw), *it, Mw);
                }
                frac = static_cast<long double>(acc) / static_cast<long double>(Mw);
            } else {
                // 64-bit fixed-point fraction of f(x) / p^mu.
                BigInt scaled = f.evaluate_mod(big(x), M);
                mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 64);
                scaled /= M;
                frac = std::ldexp(static_cast<long double>(to_u64(scaled)), -64);
            }
            if (frac > 0.5L) {
                frac -= 1.0L;
            }
            const long double angle = kTwoPiL * frac;
            re.add(static_cast<double>(std::cos(angle)));
            im.add(static_cast<double>(std::sin(angle)));
        }
        re_part[chunk] = re;
        im_part[chunk] = im;
    });
    CompensatedSum re;
    CompensatedSum im;
    for (std::size_t c = 0; c < chunks; ++c) {
        re.add(re_part[c]);
        im.add(im_part[c]);
    }
    return {re.value(), im.value()};
}

std::vector<RootClass> root_classes(const IntPolynomial& f, const BigInt& p, unsigned mu) {
    if (mu == 0) {
        return {RootClass{BigInt(0), 0}};
    }
    if (!fits_word(p) || p > big(10'000'000)) {
        throw Error(ErrorCode::TooLarge, "root finding mod p enumerates residues; p too large");
    }
    const u64 pw = to_u64(p);

    struct Item {
        std::vector<BigInt> coeffs;  // reduced mod p^target
        unsigned target;             // need g(y) = 0 mod p^target
        BigInt base;                 // x = base + p^shift y
        unsigned shift;
    };

    std::vector<RootClass> out;
    std::vector<Item> stack;
    {
        const BigInt M = pow_big(p, mu);
        std::vector<BigInt> start;
        for (const auto& c : f.coeffs()) {
            start.push_back(mod_floor(c, M));
        }
        stack.push_back(Item{std::move(start), mu, BigInt(0), 0});
    }
    while (!stack.empty()) {
        Item item = std::move(stack.back());
        stack.pop_back();
        const BigInt Pe = pow_big(p, item.target);
        const BigInt p_shift = pow_big(p, item.shift);
        const std::vector<BigInt> deriv = derivative_coeffs(item.coeffs);
        for (u64 y0 = 0; y0 < pw; ++y0) {
            const BigInt y0b = big(y0);
            if (eval_mod(item.coeffs, y0b, p) != 0) {
                continue;
            }
            const BigInt base = item.base + p_shift * y0b;
            const BigInt slope = eval_mod(deriv, y0b, p);
            if (slope != 0) {
                // Simple root: Newton converges to the unique lift mod p^target.
                BigInt y = y0b;
                for (unsigned iter = 0; iter <= item.target; ++iter) {
                    BigInt value = eval_mod(item.coeffs, y, Pe);
                    if (value == 0) {
                        break;
                    }
                    BigInt d = eval_mod(deriv, y, Pe);
                    y = mod_floor(y - value * mod_inverse(Residue(d, Pe)).value(), Pe);
                }
                const unsigned precision = item.shift + item.target;
                out.push_back(RootClass{mod_floor(item.base + p_shift * y, pow_big(p, precision)),
                                        precision});
                continue;
            }
            // Singular root: h(w) = g(y0 + p w), then strip the common p-power.
            std::vector<BigInt> h = taylor_shift(item.coeffs, y0b);
            BigInt scale = 1;
            for (auto& c : h) {
                c = mod_floor(c * scale, Pe);
                scale *= p;
            }
            Valuation v = poly_ord_p(IntPolynomial(h), p);
            if (!v.finite() || v.order() >= item.target) {
                out.push_back(RootClass{mod_floor(base, p_shift * p), item.shift + 1});
                continue;
            }
            const unsigned vo = static_cast<unsigned>(v.order());
            const BigInt pv = pow_big(p, vo);
            const BigInt next_mod = pow_big(p, item.target - vo);
            for (auto& c : h) {
                c = mod_floor(c / pv, next_mod);
            }
            stack.push_back(Item{std::move(h), item.target - vo, base, item.shift + 1});
        }
    }
    std::sort(out.begin(), out.end(), [](const RootClass& x, const RootClass& y) {
        return x.precision != y.precision ? x.precision < y.precision : x.residue < y.residue;
    });
    return out;
}

u64 count_roots_enumerate(const IntPolynomial& f, u64 m) {
    if (m == 0 || m > kEnumerationCeiling) {
        throw Error(ErrorCode::TooLarge, "enumeration needs 1 <= m <= 10^6");
    }
    std::vector<u64> reduced;
    for (const auto& c : f.coeffs()) {
        reduced.push_back(to_u64(mod_floor(c, big(m))));
    }
    u64 count = 0;
    for (u64 x = 0; x < m; ++x) {
        u64 acc = 0;
        for (auto it = reduced.rbegin(); it != reduced.rend(); ++it) {
            acc = (acc * x + *it) % m;
        }
        count += acc == 0;
    }
    return count;
}

BigInt count_roots_full(const IntPolynomial& f, const BigInt& m) {
    if (m < 1) {
        throw Error(ErrorCode::BadInput, "modulus must be positive");
    }
    BigInt g;
    const BigInt content = f.content();
    mpz_gcd(g.get_mpz_t(), content.get_mpz_t(), m.get_mpz_t());
    if (g != 1) {
        throw Error(ErrorCode::BadInput, "coefficient content shares a factor with the modulus");
    }
    if (m == 1) {
        return 1;
    }
    if (auto pp = prime_power_decomposition(m)) {
        const auto& [p, mu] = *pp;
        BigInt total = 0;
        for (const auto& cls : root_classes(f, p, mu)) {
            total += pow_big(p, mu - cls.precision);
        }
        return total;
    }
    if (m > big(kEnumerationCeiling)) {
        throw Error(ErrorCode::TooLarge, "composite moduli above 10^6 are not supported");
    }
    return big(count_roots_enumerate(f, to_u64(m)));
}

BigInt count_roots_ranged(const PolyCongruenceQuery& query) {
    const Valuation ord = poly_ord_p(query.f, query.p);
    if (!ord.finite() || ord.order() != 0) {
        throw Error(ErrorCode::BadInput, "coefficients must not all be divisible by p");
    }
    BigInt total = 0;
    if (query.Q < 1) {
        return total;
    }
    for (const auto& cls : root_classes(query.f, query.p, query.mu)) {
        const BigInt step = pow_big(query.p, cls.precision);
        const BigInt first = cls.residue == 0 ? step : cls.residue;
        if (first <= query.Q) {
            total += (query.Q - first) / step + 1;
        }
    }
    return total;
}

KorobovRow korobov_report(const IntPolynomial& f, const BigInt& p, unsigned mu, u64 P, double c,
                          unsigned threads) {
    KorobovRow row;
    row.p = p;
    row.mu = mu;
    row.P = P;
    row.degree = f.degree();
    row.c = c;
    row.beta = mu / 10 + 1;
    const double d = static_cast<double>(f.degree()) - 1.0;
    row.n_factor = f.degree();

    const double log_pmu = static_cast<double>(mu) * std::log(p.get_d());
    row.r = P >= 2 ? log_pmu / std::log(static_cast<double>(P))
                   : std::numeric_limits<double>::infinity();
    row.lhs = exp_sum(f, p, mu, P, threads).magnitude();
    row.trivial_ok = row.lhs <= static_cast<double>(P) * (1.0 + 1e-12);

    row.R = 0;
    if (std::isfinite(row.r)) {
        row.u_lo = static_cast<u64>(std::ceil(25.0 * row.r));
        row.u_hi = static_cast<u64>(std::floor(27.0 * row.r));
        // Every u beyond deg f gives the zero polynomial; one of them suffices.
        const u64 last = std::min<u64>(row.u_hi, f.degree() + 1);
        for (u64 u = row.u_lo; u <= last; ++u) {
            const IntPolynomial fu = derivative(f, u);
            const Valuation ord = poly_ord_p(fu, p);
            BigInt count;
            if (!ord.finite() || ord.order() >= row.beta) {
                count = big(P);
            } else {
                const BigInt scale = pow_big(p, ord.order());
                std::vector<BigInt> normalized;
                for (const auto& coeff : fu.coeffs()) {
                    normalized.push_back(coeff / scale);
                }
                count = count_roots_ranged(PolyCongruenceQuery{
                    IntPolynomial(std::move(normalized)), p,
                    row.beta - static_cast<unsigned>(ord.order()), big(P)});
            }
            if (count > row.R) {
                row.R = count;
            }
        }
    }
    const double rterm = std::isfinite(row.r) && row.r > 0
                             ? 3.0 * std::pow(static_cast<double>(P), 1.0 - c / (row.r * row.r))
                             : 3.0 * static_cast<double>(P);
    row.rhs = rterm + static_cast<double>(row.n_factor) * row.R.get_d();
    row.rhs_holds = row.lhs <= row.rhs;

    row.hyp_degree = d >= 300.0;
    row.hyp_mu = static_cast<double>(mu) >= d + 1.0;
    row.hyp_r = row.r >= 1.0 && row.r <= d / 300.0;
    row.hyp_size = d > 1.0 && log_pmu > 1e8 * row.r * d * std::log(d);
    return row;
}

OrdBound ord_bound_check(const ReductionContext& ctx, u64 u, u64 r) {
    if (r < 1 || u < 25 * r || u > 27 * r) {
        throw Error(ErrorCode::BadRange, "need 25r <= u <= 27r with r >= 1");
    }
    if (u > ctx.degree) {
        throw Error(ErrorCode::DegreeTooSmall,
                    "u = " + std::to_string(u) + " exceeds degree " + std::to_string(ctx.degree));
    }
    const BigInt& p = ctx.modulus.p();
    OrdBound out;
    out.exact = poly_ord_p(derivative(ctx.f(), u), p);
    const double rd = static_cast<double>(r);
    out.bound = 27.0 * rd / (p.get_d() - 1.0) + 3.0 * std::log(54.0 * rd) +
                27.0 * rd * static_cast<double>(ctx.s);
    out.ok = out.exact.finite() && static_cast<double>(out.exact.order()) <= out.bound;
    return out;
}

} // namespace kloospow
