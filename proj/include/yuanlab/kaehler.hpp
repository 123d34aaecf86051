#pragma once

#include "yuanlab/derivations.hpp"

namespace yl {

/// Finitely presented module over a FiniteAlgebra: M = ring^g / (row space of
/// the relations over the ring).
struct ModulePresentation {
    AlgebraPtr ring;
    std::size_t n_generators = 0;
    std::vector<std::vector<Vec>> relations; // each row: n_generators ring elements
};

struct PBasis {
    std::vector<Vec> elements;
    bool verified = false;
};

/// Presentation of the relative differential module of C over B for a C with
/// a monomial presentation: generators dx_1..dx_n, one relation row per
/// nonzero d(x_i^p) and per basis element of B (zero rows dropped).
ModulePresentation kaehler_presentation(AlgebraPtr c, const Subalgebra& b);

/// d of an element: the vector of partials on the ambient variables.
std::vector<Vec> differential(AlgebraPtr c, const Vec& v);

/// Fitt_i = ideal of (g-i)-minors, i = 0..g; Fitt_i = (1) for i >= g. The
/// chain is increasing, which is asserted.
std::vector<Ideal> fitting_ideals(const ModulePresentation& p);

/// Rank m with Fitt_{m-1} = 0 and Fitt_m = (1), or nullopt when the module is
/// not free. Cross-checked against the Nakayama generator count over a local
/// ring; a disagreement between the two routes raises InternalDisagreement.
std::optional<std::size_t> module_free_rank(const ModulePresentation& p);

/// Direct definition check: the p^r monomials in the given elements form a
/// basis of C as a module over B.
bool verify_p_basis(AlgebraPtr c, const Subalgebra& b, const std::vector<Vec>& elems);

/// All products elems^alpha with exponents < p, in odometer order (the unit
/// first).
std::vector<Vec> p_monomials(const FiniteAlgebra& c, const std::vector<Vec>& elems);

/// Do the products base_row * monomial span all of C? (The module-basis part
/// of the definition check, with the monomials precomputed.)
bool base_spans_with_monomials(const FiniteAlgebra& c, const std::vector<Vec>& base_rows,
                               const std::vector<Vec>& monomials);

/// p-basis of C over B extracted from the differential module: candidates are
/// scanned in graded-lex label order (then two-element combinations), and the
/// result is verified against the definition before it is returned. Returns
/// nullopt exactly when the differential module is not free.
std::optional<PBasis> find_p_basis(AlgebraPtr c, const Subalgebra& b);

struct AlgebraIsomorphism {
    AlgebraPtr source; // the split model
    AlgebraPtr target;
    Matrix forward;  // source coords -> target coords
    Matrix inverse;  // target coords -> source coords
};

/// Normal form of a differentiably simple algebra with residue field k: picks
/// minimal generators x_1..x_n of the maximal ideal and returns the verified
/// isomorphism from the split model on n variables sending each monomial
/// to the matching product of the x_i.
AlgebraIsomorphism harper_normal_form(AlgebraPtr r);

/// Presentation of a concrete module over a local ring: Nakayama generators
/// and one relation row per generator of the kernel submodule.
ModulePresentation present_module(const ConcreteModule& m);

} // namespace yl
