#include "kloospow/padic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kloospow {

namespace {

BigInt pow_big(const BigInt& base, u64 exp) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

BigInt big(u64 x) {
    return BigInt(static_cast<unsigned long>(x));
}

} // namespace

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) {
        coeffs_.emplace_back(0);
    }
}

IntPolynomial::IntPolynomial(std::initializer_list<long> coeffs) {
    for (long c : coeffs) {
        coeffs_.emplace_back(c);
    }
    if (coeffs_.empty()) {
        coeffs_.emplace_back(0);
    }
}

bool IntPolynomial::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const BigInt& c) { return c == 0; });
}

BigInt IntPolynomial::evaluate(const BigInt& x) const {
    BigInt acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

BigInt IntPolynomial::evaluate_mod(const BigInt& x, const BigInt& m) const {
    const BigInt xr = mod_floor(x, m);
    BigInt acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = mod_floor(acc * xr + *it, m);
    }
    return acc;
}

BigInt IntPolynomial::content() const {
    BigInt g = 0;
    for (const auto& c : coeffs_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    }
    return g;
}

std::string IntPolynomial::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        if (coeffs_[i] == 0) {
            continue;
        }
        BigInt c = coeffs_[i];
        if (!first) {
            os << (c < 0 ? " - " : " + ");
            c = abs(c);
        }
        if (i == 0 || c != 1) {
            os << c.get_str();
        }
        if (i >= 1) {
            os << "x";
        }
        if (i >= 2) {
            os << "^" << i;
        }
        first = false;
    }
    if (first) {
        os << "0";
    }
    return os.str();
}

IntPolynomial operator+(const IntPolynomial& f, const IntPolynomial& g) {
    std::vector<BigInt> out(std::max(f.coeffs_.size(), g.coeffs_.size()), BigInt(0));
    for (std::size_t i = 0; i < f.coeffs_.size(); ++i) {
        out[i] += f.coeffs_[i];
    }
    for (std::size_t i = 0; i < g.coeffs_.size(); ++i) {
        out[i] += g.coeffs_[i];
    }
    return IntPolynomial(std::move(out));
}

IntPolynomial operator*(const IntPolynomial& f, const IntPolynomial& g) {
    std::vector<BigInt> out(f.coeffs_.size() + g.coeffs_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < f.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < g.coeffs_.size(); ++j) {
            out[i + j] += f.coeffs_[i] * g.coeffs_[j];
        }
    }
    return IntPolynomial(std::move(out));
}

bool operator==(const IntPolynomial& f, const IntPolynomial& g) {
    const std::size_t n = std::max(f.coeffs_.size(), g.coeffs_.size());
    for (std::size_t i = 0; i < n; ++i) {
        const BigInt zero = 0;
        const BigInt& x = i < f.coeffs_.size() ? f.coeffs_[i] : zero;
        const BigInt& y = i < g.coeffs_.size() ? g.coeffs_[i] : zero;
        if (x != y) {
            return false;
        }
    }
    return true;
}

IntPolynomial derivative(const IntPolynomial& f, u64 u) {
    if (u == 0) {
        return f;
    }
    if (u > f.degree()) {
        return IntPolynomial();
    }
    std::vector<BigInt> out;
    out.reserve(f.degree() - u + 1);
    for (u64 j = 0; j + u <= f.degree(); ++j) {
        // (j+u)! / j! as a falling factorial.
        BigInt falling = 1;
        for (u64 t = j + 1; t <= j + u; ++t) {
            falling *= big(t);
        }
        out.push_back(f[j + u] * falling);
    }
    return IntPolynomial(std::move(out));
}

Valuation poly_ord_p(const IntPolynomial& f, const BigInt& p) {
    Valuation best = Valuation::infinite();
    for (const auto& c : f.coeffs()) {
        Valuation v = val_p(c, p);
        if (v.finite() && (!best.finite() || v.order() < best.order())) {
            best = v;
        }
    }
    return best;
}

BigInt HalfBinomial::reduced(const PrimePowerModulus& target) const {
    if (valuation >= target.k()) {
        return 0;
    }
    return unit_residue.value() * pow_big(target.p(), valuation) % target.q();
}

HalfBinomial half_binom(u64 i, const PrimePowerModulus& modulus, unsigned buffer) {
    if (i == 0) {
        throw Error(ErrorCode::BadRange, "half_binom needs i >= 1");
    }
    const PrimePowerModulus work = modulus.with_exponent(modulus.k() + buffer);
    const BigInt& q = work.q();
    HalfBinomial out;
    out.index = i;
    if (i == 1) {
        out.unit_residue = mod_inverse(Residue(2, q));
        return out;
    }
    if (i == 2) {
        out.unit_residue = Residue(-mod_inverse(Residue(8, q)).value(), q);
        return out;
    }
    // binom(1/2, i) = (-1)^{i-1} (2i-3)! / (2^{2i-2} i! (i-2)!)
    const BigInt& p = modulus.p();
    out.valuation = factorial_valuation(2 * i - 3, p) - factorial_valuation(i, p) -
                    factorial_valuation(i - 2, p);
    BigInt numerator = factorial_unit(2 * i - 3, work).value();
    BigInt denominator = mod_pow(Residue(2, q), big(2 * i - 2)).value();
    denominator = denominator * factorial_unit(i, work).value() % q;
    denominator = denominator * factorial_unit(i - 2, work).value() % q;
    BigInt unit = numerator * mod_inverse(Residue(denominator, q)).value();
    if (i % 2 == 0) {
        unit = -unit;
    }
    out.unit_residue = Residue(unit, q);
    return out;
}

std::vector<BigInt> half_binom_series_recursive(u64 d, const PrimePowerModulus& modulus) {
    const BigInt& p = modulus.p();
    const u64 buffer = factorial_valuation(d, p) + 1;
    u64 precision = modulus.k() + buffer;
    BigInt c = 1;
    std::vector<BigInt> out{BigInt(1)};
    out.reserve(d + 1);
    for (u64 i = 1; i <= d; ++i) {
        BigInt denom = big(2 * i);
        u64 e = mpz_remove(denom.get_mpz_t(), denom.get_mpz_t(), p.get_mpz_t());
        BigInt mod = pow_big(p, precision);
        BigInt numer = BigInt(3) - big(2 * i);
        c = mod_floor(c * numer * mod_inverse(Residue(denom, mod)).value(), mod);
        if (e > 0) {
            BigInt pe = pow_big(p, e);
            if (!mpz_divisible_p(c.get_mpz_t(), pe.get_mpz_t())) {
                throw Error(ErrorCode::BadInput, "precision underflow in half-binomial recursion");
            }
            c /= pe;
            precision -= e;
        }
        out.push_back(c % modulus.q());
    }
    return out;
}

ValuationBound valuation_bound_check(u64 i, u64 u, u64 p) {
    if (u < 3 || u > i) {
        throw Error(ErrorCode::BadRange, "valuation_bound_check needs 3 <= u <= i");
    }
    // binom(1/2,i) i!/(i-u)! = (-1)^{i-1} (2i-3)! / (2^{2i-2} (i-2)! (i-u)!)
    ValuationBound out;
    out.numerator_order = static_cast<i64>(factorial_valuation(2 * i - 3, p));
    out.denominator_order =
        static_cast<i64>(factorial_valuation(i - 2, p) + factorial_valuation(i - u, p));
    out.exact = out.numerator_order - out.denominator_order;
    out.bound = static_cast<double>(u) / static_cast<double>(p - 1) +
                3.0 * std::log(2.0 * static_cast<double>(i)) / std::log(static_cast<double>(p));
    out.ok = static_cast<double>(out.exact) <= out.bound;
    return out;
}

ReductionContext build_reduction(const BigInt& m, const BigInt& a, const BigInt& alpha,
                                 const PrimePowerModulus& modulus, unsigned s,
                                 unsigned extra_terms) {
    const BigInt& p = modulus.p();
    const BigInt& q = modulus.q();
    const unsigned k = modulus.k();
    if (s < 1 || s >= k) {
        throw Error(ErrorCode::BadRange, "need 1 <= s < k");
    }
    const BigInt ma = mod_floor(m * a, q);
    if (mpz_divisible_p(ma.get_mpz_t(), p.get_mpz_t())) {
        throw Error(ErrorCode::NotAUnit, "m a must be coprime to p");
    }
    const BigInt ps = pow_big(p, s);
    const BigInt alpha_r = mod_floor(alpha, ps);
    if (legendre_symbol(alpha_r, p) != 1) {
        throw Error(ErrorCode::NotAResidue,
                    "alpha = " + alpha.get_str() + " is not a quadratic residue mod p");
    }

    ReductionContext ctx{.modulus = modulus};
    ctx.m = m;
    ctx.a = a;
    ctx.s = s;
    ctx.alpha = alpha_r;
    const BigInt xi = mod_inverse(Residue(ma, q)).value();
    ctx.theta = xi % ps;
    ctx.kappa = mod_inverse(Residue(ctx.theta * ctx.alpha, q)).value();
    ctx.omega = sqrt_mod_prime_power(ma * ctx.theta * ctx.alpha, modulus).value();
    ctx.degree = k / s + extra_terms;

    ctx.g.reserve(ctx.degree + 1);
    ctx.f_coeffs.reserve(ctx.degree + 1);
    ctx.g.emplace_back(1);
    ctx.f_coeffs.emplace_back(1);
    BigInt step = ctx.kappa * ps % q; // kappa p^s
    BigInt power = 1;
    for (unsigned i = 1; i <= ctx.degree; ++i) {
        power = power * step % q;
        BigInt gi = half_binom(i, modulus).reduced(modulus);
        ctx.f_coeffs.push_back(gi * power % q);
        ctx.g.push_back(std::move(gi));
    }
    return ctx;
}

Residue eval_f(const ReductionContext& ctx, const BigInt& t) {
    return Residue(ctx.f().evaluate_mod(t, ctx.modulus.q()), ctx.modulus.q());
}

ConsistencyResult sqrt_consistency(const ReductionContext& ctx, const BigInt& t_lo,
                                   const BigInt& t_hi) {
    const BigInt& q = ctx.modulus.q();
    const IntPolynomial f = ctx.f();
    const BigInt ps = pow_big(ctx.modulus.p(), ctx.s);
    const BigInt ma = mod_floor(ctx.m * ctx.a, q);
    const BigInt base = ctx.theta * ctx.alpha;
    ConsistencyResult out;
    for (BigInt t = t_lo; t <= t_hi; ++t) {
        BigInt root = ctx.omega * f.evaluate_mod(t, q) % q;
        BigInt lhs = root * root % q;
        BigInt rhs = mod_floor(ma * (base + ps * t), q);
        ++out.checked;
        if (lhs != rhs) {
            out.ok = false;
            out.witness = t;
            return out;
        }
    }
    return out;
}

} // namespace kloospow
