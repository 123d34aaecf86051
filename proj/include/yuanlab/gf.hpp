#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "yuanlab/errors.hpp"

namespace yl {

/// Element of F_q in packed form: the integer sum c_i * p^i of its
/// polynomial-basis coordinates, 0 <= value < q. This integer is also the
/// serialized representation.
using fq = std::uint16_t;

class FiniteField;
using FieldPtr = std::shared_ptr<const FiniteField>;

/// Exact arithmetic in F_q, q = p^e <= 2^16, on the polynomial basis
/// F_p[T]/(modulus). The modulus is fixed per (p, e): the monic irreducible
/// polynomial of degree e whose non-leading coefficient vector has the least
/// packed integer value, so serialized elements are stable across runs.
/// Inversion runs extended Euclid on the polynomial representation; full
/// add/mul/inv tables are cached for q <= 1024.
class FiniteField {
  public:
    static FieldPtr make(unsigned p, unsigned e);

    unsigned p() const { return p_; }
    unsigned e() const { return e_; }
    std::uint32_t q() const { return q_; }

    // monic modulus; coefficient of T^i at index i, size e+1
    const std::vector<unsigned>& modulus() const { return modulus_; }

    fq add(fq a, fq b) const {
        return add_tab_.empty() ? add_slow(a, b) : add_tab_[std::size_t(a) * q_ + b];
    }
    fq sub(fq a, fq b) const { return add(a, neg(b)); }
    fq neg(fq a) const { return neg_tab_.empty() ? neg_slow(a) : neg_tab_[a]; }
    fq mul(fq a, fq b) const {
        return mul_tab_.empty() ? mul_slow(a, b) : mul_tab_[std::size_t(a) * q_ + b];
    }
    fq inv(fq a) const; // a != 0
    fq pow(fq a, std::uint64_t n) const;
    fq frobenius(fq a) const { return pow(a, p_); }
    /// Unique b with b^p = a (F_q is perfect, so b = a^{p^{e-1}}).
    fq p_th_root(fq a) const {
        return root_tab_.empty() ? pow(a, root_exp_) : root_tab_[a];
    }
    /// n mod p, embedded in the prime subfield.
    fq from_int(std::uint64_t n) const { return static_cast<fq>(n % p_); }

    bool has_tables() const { return !mul_tab_.empty(); }

  private:
    FiniteField(unsigned p, unsigned e);

    fq add_slow(fq a, fq b) const;
    fq neg_slow(fq a) const;
    fq mul_slow(fq a, fq b) const;
    fq inv_euclid(fq a) const;

    unsigned p_ = 0;
    unsigned e_ = 0;
    std::uint32_t q_ = 0;
    std::uint64_t root_exp_ = 1; // p^{e-1}
    std::vector<unsigned> modulus_;
    std::vector<fq> add_tab_, mul_tab_, neg_tab_, inv_tab_, root_tab_;
};

} // namespace yl
