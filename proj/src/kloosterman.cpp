#include "kloospow/kloosterman.hpp"

#include <cmath>
#include <numbers>

#include "kloospow/parallel.hpp"

namespace kloospow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Units are accumulated in plain blocks of this length before being folded
// into the compensated total.
constexpr unsigned kBlock = 1024;

void require_unit_a(i64 a, u64 p) {
    if (word::reduce(a, p) == 0) {
        throw Error(ErrorCode::NotCoprimeToP, "a must be coprime to p");
    }
}

} // namespace

std::string_view to_string(Method method) noexcept {
    switch (method) {
    case Method::BruteForce: return "BruteForce";
    case Method::ExplicitFormula: return "ExplicitFormula";
    case Method::VanishingRule: return "VanishingRule";
    case Method::RamanujanRule: return "RamanujanRule";
    }
    return "Unknown";
}

BruteForceEvaluator::BruteForceEvaluator(const PrimePowerModulus& modulus, u64 ceiling) {
    if (!modulus.fits_word() || modulus.q_word() > ceiling) {
        throw Error(ErrorCode::TooLarge, "brute force over " + modulus.to_string() +
                                             " exceeds the ceiling " + std::to_string(ceiling));
    }
    p_ = modulus.p_word();
    q_ = modulus.q_word();
    tables_ = q_ <= kTableCeiling;
    if (!tables_) {
        return;
    }
    // Batch inversion: one extended gcd for the whole unit group.
    inverse_.assign(q_, 0);
    std::vector<u64> prefix;
    prefix.reserve(q_);
    u64 acc = 1;
    for (u64 b = 1; b < q_; ++b) {
        if (b % p_ != 0) {
            acc = word::mul_mod(acc, b, q_);
            prefix.push_back(acc);
        }
    }
    u64 inv_acc = word::inv_mod(acc, q_);
    std::size_t idx = prefix.size();
    for (u64 b = q_ - 1; b >= 1; --b) {
        if (b % p_ == 0) {
            continue;
        }
        --idx;
        const u64 before = idx == 0 ? 1 : prefix[idx - 1];
        inverse_[b] = word::mul_mod(inv_acc, before, q_);
        inv_acc = word::mul_mod(inv_acc, b, q_);
    }
    cos_.resize(q_);
    sin_.resize(q_);
    const double scale = kTwoPi / static_cast<double>(q_);
    for (u64 j = 0; j < q_; ++j) {
        cos_[j] = std::cos(scale * static_cast<double>(j));
        sin_[j] = std::sin(scale * static_cast<double>(j));
    }
}

KloostermanValue BruteForceEvaluator::operator()(i64 n, i64 a) const {
    const u64 nr = word::reduce(n, q_);
    const u64 ar = word::reduce(a, q_);
    CompensatedSum re_total;
    CompensatedSum im_total;
    double re = 0.0;
    double im = 0.0;
    unsigned in_block = 0;
    u64 nb = 0;
    u64 residue_p = 0;  // b mod p, tracked incrementally
    for (u64 b = 1; b < q_; ++b) {
        nb = word::add_mod(nb, nr, q_);
        if (++residue_p == p_) {
            residue_p = 0;
        }
        if (residue_p == 0) {
            continue;
        }
        if (tables_) {
            const u64 phase = word::add_mod(nb, word::mul_mod(ar, inverse_[b], q_), q_);
            re += cos_[phase];
            im += sin_[phase];
        } else {
            const u64 phase = word::add_mod(nb, word::mul_mod(ar, word::inv_mod(b, q_), q_), q_);
            const double angle = kTwoPi * static_cast<double>(phase) / static_cast<double>(q_);
            re += std::cos(angle);
            im += std::sin(angle);
        }
        if (++in_block == kBlock) {
            re_total.add(re);
            im_total.add(im);
            re = im = 0.0;
            in_block = 0;
        }
    }
    re_total.add(re);
    im_total.add(im);
    KloostermanValue out;
    out.value = re_total.value();
    out.imag_residual = im_total.value();
    out.method = Method::BruteForce;
    return out;
}

KloostermanEvaluator::KloostermanEvaluator(const PrimePowerModulus& modulus)
    : modulus_(modulus),
      p_(modulus.p_word()),
      k_(modulus.k()),
      q_(modulus.q_word()),
      sqrt_q_(std::sqrt(static_cast<double>(q_))) {}

double KloostermanEvaluator::formula_at_root(u64 l) const {
    l %= q_;
    const int symbol = word::legendre(l, p_);
    const int sign = (k_ % 2 == 1 && symbol == -1) ? -1 : 1;
    // Fold the phase 2l/q onto [0, 1/2] so that l and q - l take the same
    // trigonometric path.
    const u64 r = word::add_mod(l, l, q_);
    const bool folded = r > q_ - r;
    const u64 r_near = folded ? q_ - r : r;
    const double angle = kTwoPi * static_cast<double>(r_near) / static_cast<double>(q_);
    double re;
    if (q_ % 4 == 1) {
        re = std::cos(angle);
    } else {
        // Re(i e(x)) = -sin(2 pi x)
        re = folded ? std::sin(angle) : -std::sin(angle);
    }
    return 2.0 * sign * sqrt_q_ * re;
}

double KloostermanEvaluator::explicit_term(u64 na) const {
    if (word::legendre(na, p_) != 1) {
        return 0.0;
    }
    return formula_at_root(word::sqrt_mod_prime_power(na, p_, k_, q_));
}

KloostermanValue KloostermanEvaluator::explicit_formula(i64 n, i64 a) const {
    if (k_ < 2) {
        throw Error(ErrorCode::NeedsBruteForce, "no closed form for k = 1");
    }
    const u64 na = word::mul_mod(word::reduce(n, q_), word::reduce(a, q_), q_);
    if (na % p_ == 0) {
        throw Error(ErrorCode::NotCoprimeToP, "p divides n a");
    }
    KloostermanValue out;
    out.method = Method::ExplicitFormula;
    if (word::legendre(na, p_) == -1) {
        out.exact_zero = true;
        return out;
    }
    out.value = formula_at_root(word::sqrt_mod_prime_power(na, p_, k_, q_));
    return out;
}

KloostermanValue KloostermanEvaluator::evaluate(i64 n, i64 a) const {
    require_unit_a(a, p_);
    if (k_ == 1) {
        return BruteForceEvaluator(modulus_)(n, a);
    }
    const u64 nr = word::reduce(n, q_);
    if (nr == 0) {
        KloostermanValue out;
        out.value = ramanujan(a, modulus_);
        out.exact_zero = out.value == 0.0;
        out.method = Method::RamanujanRule;
        return out;
    }
    if (nr % p_ == 0) {
        KloostermanValue out;
        out.exact_zero = true;
        out.method = Method::VanishingRule;
        return out;
    }
    return explicit_formula(n, a);
}

WeilCheck KloostermanEvaluator::weil_check(i64 n, i64 a) const {
    const KloostermanValue value = evaluate(n, a);
    const u64 g = word::gcd(word::reduce(n, q_), q_);  // gcd(0, q) = q
    WeilCheck out;
    out.value = value.value;
    out.bound = static_cast<double>(k_ + 1) *
                std::sqrt(static_cast<double>(g) * static_cast<double>(q_));
    out.ok = std::fabs(out.value) <= out.bound;
    out.sharp_applies = k_ >= 2 && g == 1;
    out.sharp_bound = 2.0 * sqrt_q_;
    if (out.sharp_applies) {
        // The closed form has modulus at most 2 sqrt(q); allow for rounding.
        out.sharp_ok = std::fabs(out.value) <= out.sharp_bound * (1.0 + 1e-12);
    }
    return out;
}

KloostermanValue brute_force(const KloostermanQuery& query, u64 ceiling) {
    return BruteForceEvaluator(query.modulus, ceiling)(query.n, query.a);
}

KloostermanValue explicit_formula(const KloostermanQuery& query) {
    return KloostermanEvaluator(query.modulus).explicit_formula(query.n, query.a);
}

KloostermanValue evaluate(const KloostermanQuery& query) {
    return KloostermanEvaluator(query.modulus).evaluate(query.n, query.a);
}

WeilCheck weil_check(const KloostermanQuery& query) {
    return KloostermanEvaluator(query.modulus).weil_check(query.n, query.a);
}

double ramanujan(i64 a, u64 q) {
    if (q == 0) {
        throw Error(ErrorCode::BadInput, "q must be positive");
    }
    const u64 g = word::gcd(word::reduce(a, q), q);
    u64 rest = q / g;
    // mu(q/g) and phi(q)/phi(q/g) from the factorisation of q.
    int mu = 1;
    double phi_ratio = 1.0;
    u64 qq = q;
    for (u64 f = 2; f * f <= qq; ++f) {
        if (qq % f != 0) {
            continue;
        }
        unsigned e_q = 0;
        while (qq % f == 0) {
            qq /= f;
            ++e_q;
        }
        unsigned e_rest = 0;
        while (rest % f == 0) {
            rest /= f;
            ++e_rest;
        }
        if (e_rest >= 2) {
            mu = 0;
        } else if (e_rest == 1) {
            mu = -mu;
        }
        // phi(f^e) = f^(e-1) (f-1)
        const double phi_q = std::pow(static_cast<double>(f), e_q - 1) * static_cast<double>(f - 1);
        const double phi_r = e_rest == 0 ? 1.0
                                         : std::pow(static_cast<double>(f), e_rest - 1) *
                                               static_cast<double>(f - 1);
        phi_ratio *= phi_q / phi_r;
    }
    if (qq > 1) {
        // one remaining prime factor with exponent 1
        if (rest % qq == 0) {
            mu = -mu;
        } else {
            phi_ratio *= static_cast<double>(qq - 1);
        }
    }
    return mu == 0 ? 0.0 : mu * phi_ratio;
}

double ramanujan(i64 a, const PrimePowerModulus& modulus) {
    const u64 p = modulus.p_word();
    const u64 q = modulus.q_word();
    const unsigned k = modulus.k();
    u64 g = word::gcd(word::reduce(a, q), q);
    unsigned j = 0;
    while (g % p == 0) {
        g /= p;
        ++j;
    }
    const unsigned rest = k - j;  // q/g = p^rest
    if (rest >= 2) {
        return 0.0;
    }
    const double phi_q = static_cast<double>(q / p) * static_cast<double>(p - 1);
    return rest == 0 ? phi_q : -phi_q / static_cast<double>(p - 1);
}

} // namespace kloospow
