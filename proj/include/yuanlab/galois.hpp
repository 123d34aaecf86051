#pragma once

#include "yuanlab/kaehler.hpp"

namespace yl {

/// Certificate that base <= parent is a Galois extension of exponent one:
/// the parent is free over the base of rank p^(differential rank), the
/// verified p-basis generates, and the witness monomials (products of the
/// p-basis elements, the unit first) form a base-module basis of the parent.
struct GaloisCertificate {
    Subalgebra base;
    AlgebraPtr total;
    std::size_t rank = 0;              // p^r
    std::size_t differential_rank = 0; // r
    PBasis p_basis;
    std::vector<Vec> witness;
};

/// C^p <= B, tested on the span of basis p-th powers.
bool is_exponent_one(const Subalgebra& b);

/// Full Galois test for b.parent over b. Requires exponent one (error
/// otherwise) and a local base (error otherwise). Returns nullopt when the
/// parent is not a free base-module of p-power rank or the fiber modulo the
/// base's maximal ideal is not differentiably simple. The p-basis comes from
/// the differential module when the parent carries a monomial presentation
/// and from lifting the fiber's normal-form generators otherwise; either way
/// it is verified against the definition.
std::optional<GaloisCertificate> is_galois(const Subalgebra& b);

/// r = |p_basis|, re-checked against the free rank of the differential module
/// when the parent has a monomial presentation.
std::size_t differential_rank(const GaloisCertificate& cert);

struct SplitBaseChange {
    AlgebraPtr tensor;      // C (x)_A C
    Subalgebra right_base;  // 1 (x) C
    std::vector<Vec> z;     // x_i (x) 1 - 1 (x) x_i
    PBasis splitting;       // verified splitting p-basis over the right base
};

/// Base change along A -> C itself: z_i = x_i (x) 1 - 1 (x) x_i has zero p-th
/// power and the z form a verified splitting p-basis.
SplitBaseChange split_after_base_change(const GaloisCertificate& cert);

/// The fiber C/m_A C is differentiably simple (expected true on every
/// certified pair).
bool fiber_check(const Subalgebra& a);

/// Completes minimal generators of the base's maximal ideal to minimal
/// generators of the parent's; the base generators come first.
std::vector<Vec> extend_generators(const GaloisCertificate& cert);

} // namespace yl
