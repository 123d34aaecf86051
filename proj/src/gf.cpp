#include "yuanlab/gf.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace yl {

const char* errc_name(errc c) {
    switch (c) {
    case errc::not_prime: return "NotPrime";
    case errc::too_large: return "TooLarge";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::improper_ideal: return "ImproperIdeal";
    case errc::not_free: return "NotFree";
    case errc::not_local: return "NotLocal";
    case errc::not_truncated_ambient: return "NotTruncatedAmbient";
    case errc::not_exponent_one: return "NotExponentOne";
    case errc::not_local_base: return "NotLocalBase";
    case errc::not_diff_simple: return "NotDiffSimple";
    case errc::non_split_residue_field: return "NonSplitResidueField";
    case errc::constraint_mismatch: return "ConstraintMismatch";
    case errc::unsolvable: return "Unsolvable";
    case errc::internal_disagreement: return "InternalDisagreement";
    case errc::bad_parameters: return "BadParameters";
    }
    return "UnknownError";
}

namespace {

constexpr std::uint32_t kMaxQ = 1u << 16;
constexpr std::uint32_t kTableLimit = 1024;

bool is_prime(unsigned n) {
    if (n < 2)
        return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

using Poly = std::vector<unsigned>; // coefficient of T^i at index i

void poly_trim(Poly& f) {
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

// remainder of f modulo monic g
Poly poly_rem(Poly f, const Poly& g, unsigned p) {
    poly_trim(f);
    const std::size_t dg = g.size() - 1;
    while (f.size() > dg) {
        unsigned lead = f.back();
        std::size_t shift = f.size() - 1 - dg;
        if (lead != 0)
            for (std::size_t i = 0; i <= dg; ++i) {
                unsigned t = (f[shift + i] + p - (lead * g[i]) % p) % p;
                f[shift + i] = t;
            }
        f.pop_back();
        poly_trim(f);
    }
    return f;
}

// no monic divisor of degree 1..e/2 (exhaustive trial division)
bool is_irreducible(const Poly& f, unsigned p, unsigned e) {
    for (unsigned d = 1; 2 * d <= e; ++d) {
        std::uint64_t count = 1;
        for (unsigned i = 0; i < d; ++i)
            count *= p;
        for (std::uint64_t v = 0; v < count; ++v) {
            Poly g(d + 1, 0);
            std::uint64_t t = v;
            for (unsigned i = 0; i < d; ++i) {
                g[i] = unsigned(t % p);
                t /= p;
            }
            g[d] = 1;
            if (poly_rem(f, g, p).empty())
                return false;
        }
    }
    return true;
}

Poly least_irreducible(unsigned p, unsigned e) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < e; ++i)
        count *= p;
    for (std::uint64_t v = 0; v < count; ++v) {
        Poly f(e + 1, 0);
        std::uint64_t t = v;
        for (unsigned i = 0; i < e; ++i) {
            f[i] = unsigned(t % p);
            t /= p;
        }
        f[e] = 1;
        if (is_irreducible(f, p, e))
            return f;
    }
    fail(errc::internal_disagreement, "no irreducible polynomial found");
}

} // namespace

FiniteField::FiniteField(unsigned p, unsigned e) : p_(p), e_(e) {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < e; ++i)
        q *= p;
    q_ = std::uint32_t(q);
    modulus_ = least_irreducible(p, e);
    root_exp_ = 1;
    for (unsigned i = 0; i + 1 < e; ++i)
        root_exp_ *= p;

    if (q_ <= kTableLimit) {
        add_tab_.resize(std::size_t(q_) * q_);
        mul_tab_.resize(std::size_t(q_) * q_);
        neg_tab_.resize(q_);
        inv_tab_.resize(q_);
        root_tab_.resize(q_);
        for (std::uint32_t a = 0; a < q_; ++a) {
            neg_tab_[a] = neg_slow(fq(a));
            for (std::uint32_t b = 0; b < q_; ++b) {
                add_tab_[std::size_t(a) * q_ + b] = add_slow(fq(a), fq(b));
                mul_tab_[std::size_t(a) * q_ + b] = mul_slow(fq(a), fq(b));
            }
        }
        inv_tab_[0] = 0;
        for (std::uint32_t a = 1; a < q_; ++a)
            inv_tab_[a] = inv_euclid(fq(a));
        for (std::uint32_t a = 0; a < q_; ++a)
            root_tab_[a] = pow(fq(a), root_exp_);
    }
}

FieldPtr FiniteField::make(unsigned p, unsigned e) {
    require(is_prime(p), errc::not_prime, "p = " + std::to_string(p));
    require(e >= 1, errc::bad_parameters, "e must be positive");
    long double qd = 1;
    for (unsigned i = 0; i < e; ++i)
        qd *= p;
    require(qd <= kMaxQ, errc::too_large,
            "p^e exceeds 2^16 (p=" + std::to_string(p) + ", e=" + std::to_string(e) + ")");

    static std::mutex mtx;
    static std::map<std::pair<unsigned, unsigned>, FieldPtr> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(p, e);
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second;
    FieldPtr f(new FiniteField(p, e));
    cache.emplace(key, f);
    return f;
}

fq FiniteField::add_slow(fq a, fq b) const {
    if (e_ == 1)
        return fq((std::uint32_t(a) + b) % p_);
    std::uint32_t out = 0, mult = 1;
    std::uint32_t x = a, y = b;
    for (unsigned i = 0; i < e_; ++i) {
        out += ((x % p_ + y % p_) % p_) * mult;
        x /= p_;
        y /= p_;
        mult *= p_;
    }
    return fq(out);
}

fq FiniteField::neg_slow(fq a) const {
    if (e_ == 1)
        return fq((p_ - a) % p_);
    std::uint32_t out = 0, mult = 1, x = a;
    for (unsigned i = 0; i < e_; ++i) {
        out += ((p_ - x % p_) % p_) * mult;
        x /= p_;
        mult *= p_;
    }
    return fq(out);
}

fq FiniteField::mul_slow(fq a, fq b) const {
    if (e_ == 1)
        return fq((std::uint32_t(a) * b) % p_);
    unsigned da[16], db[16];
    std::uint32_t x = a, y = b;
    for (unsigned i = 0; i < e_; ++i) {
        da[i] = x % p_;
        db[i] = y % p_;
        x /= p_;
        y /= p_;
    }
    unsigned prod[31] = {0};
    for (unsigned i = 0; i < e_; ++i) {
        if (da[i] == 0)
            continue;
        for (unsigned j = 0; j < e_; ++j)
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    }
    // reduce modulo the monic modulus, top degree down
    for (unsigned d = 2 * e_ - 2; d + 1 > e_; --d) {
        unsigned lead = prod[d];
        if (lead == 0)
            continue;
        prod[d] = 0;
        for (unsigned i = 0; i < e_; ++i)
            prod[d - e_ + i] = (prod[d - e_ + i] + p_ * p_ - lead * modulus_[i] % p_) % p_;
    }
    std::uint32_t out = 0, mult = 1;
    for (unsigned i = 0; i < e_; ++i) {
        out += prod[i] * mult;
        mult *= p_;
    }
    return fq(out);
}

fq FiniteField::inv(fq a) const {
    require(a != 0, errc::bad_parameters, "inverse of zero");
    return inv_tab_.empty() ? inv_euclid(a) : inv_tab_[a];
}

fq FiniteField::inv_euclid(fq a) const {
    if (e_ == 1) {
        // extended Euclid on integers
        long long t = 0, nt = 1, r = p_, nr = a;
        while (nr != 0) {
            long long qq = r / nr;
            std::swap(t -= qq * nt, nt);
            std::swap(r -= qq * nr, nr);
        }
        return fq((t % p_ + p_) % p_);
    }
    // extended Euclid on polynomials: r = modulus, nr = a
    auto decode = [&](fq v) {
        Poly f(e_, 0);
        std::uint32_t x = v;
        for (unsigned i = 0; i < e_; ++i) {
            f[i] = x % p_;
            x /= p_;
        }
        poly_trim(f);
        return f;
    };
    auto pinv = [&](unsigned c) {
        long long t = 0, nt = 1, r = p_, nr = c;
        while (nr != 0) {
            long long qq = r / nr;
            std::swap(t -= qq * nt, nt);
            std::swap(r -= qq * nr, nr);
        }
        return unsigned((t % p_ + p_) % p_);
    };
    Poly r = modulus_, nr = decode(a);
    Poly t, nt = {1};
    while (!nr.empty()) {
        // divide r by nr
        Poly quo(r.size() > nr.size() - 1 ? r.size() - nr.size() + 1 : 1, 0);
        Poly rem = r;
        unsigned lead_inv = pinv(nr.back());
        while (rem.size() >= nr.size() && !rem.empty()) {
            unsigned c = (rem.back() * lead_inv) % p_;
            std::size_t shift = rem.size() - nr.size();
            quo[shift] = c;
            for (std::size_t i = 0; i < nr.size(); ++i)
                rem[shift + i] = (rem[shift + i] + p_ * p_ - c * nr[i] % p_) % p_;
            poly_trim(rem);
        }
        // (r, nr) = (nr, rem); (t, nt) = (nt, t - quo * nt)
        Poly prod(quo.size() + nt.size(), 0);
        for (std::size_t i = 0; i < quo.size(); ++i)
            for (std::size_t j = 0; j < nt.size(); ++j)
                prod[i + j] = (prod[i + j] + quo[i] * nt[j]) % p_;
        Poly t2(std::max(t.size(), prod.size()), 0);
        for (std::size_t i = 0; i < t.size(); ++i)
            t2[i] = t[i];
        for (std::size_t i = 0; i < prod.size(); ++i)
            t2[i] = (t2[i] + p_ - prod[i] % p_) % p_;
        poly_trim(t2);
        r = nr;
        nr = rem;
        t = nt;
        nt = t2;
    }
    // r is now the gcd (a nonzero constant); scale t by its inverse
    unsigned scale = pinv(r.empty() ? 1 : r[0]);
    std::uint32_t out = 0, mult = 1;
    for (unsigned i = 0; i < e_; ++i) {
        unsigned c = i < t.size() ? t[i] : 0;
        out += (c * scale % p_) * mult;
        mult *= p_;
    }
    return fq(out);
}

fq FiniteField::pow(fq a, std::uint64_t n) const {
    fq out = 1, base = a;
    while (n) {
        if (n & 1)
            out = mul(out, base);
        base = mul(base, base);
        n >>= 1;
    }
    return out;
}

} // namespace yl
