#pragma once

#include "yuanlab/algebra.hpp"

namespace yl {

/// A finite module over a FiniteAlgebra, given concretely as an F_q-space
/// with one action matrix per algebra basis element.
struct ConcreteModule {
    AlgebraPtr ring;
    std::size_t dim = 0;
    std::vector<Matrix> action;

    Vec act(const Vec& ring_elem, const Vec& v) const;
};
using ModulePtr = std::shared_ptr<const ConcreteModule>;

/// Verifies that the action respects unit and multiplication.
ModulePtr make_module(AlgebraPtr ring, std::vector<Matrix> action);
/// C/S as a C-module (coordinates: complement of the echelon pivots of S).
ModulePtr quotient_module(AlgebraPtr c, const Subspace& s);

/// A single derivation D: source -> target (target null means the source
/// algebra itself), stored as the matrix of D on coordinates. Leibniz on all
/// basis pairs and D(1) = 0 are asserted at construction.
struct Derivation {
    AlgebraPtr source;
    ModulePtr target; // null: the algebra itself
    Matrix matrix;    // target_dim x source_dim

    Vec operator()(const Vec& v) const { return matrix.apply(v); }
};

Derivation make_derivation(AlgebraPtr source, Matrix m, ModulePtr target = nullptr);

/// Solution space of the Leibniz system with D|_B = 0, as a canonical echelon
/// basis of flattened matrices (schedule- and solver-independent).
struct DerivationSpace {
    AlgebraPtr source;
    Subspace annihilated;
    ModulePtr target; // null: the algebra itself
    std::vector<Derivation> basis;

    std::size_t dim() const { return basis.size(); }
};

/// All F_q-linear derivations of C into M (default M = C) vanishing on B.
/// Over a perfect base every ring derivation is F_q-linear, so this is the
/// full derivation module. Uses the free-presentation shortcut when C carries
/// a split-type monomial presentation and M = C; the generic Leibniz solver
/// is kept as the reference path and both are cross-checked in the tests.
DerivationSpace der_space(AlgebraPtr c, const Subalgebra& b, ModulePtr m = nullptr);
DerivationSpace der_space_general(AlgebraPtr c, const Subspace& annihilated,
                                  ModulePtr m = nullptr);

/// Greatest ideal V inside the maximal ideal with D(V) <= V for every
/// derivation: decreasing fixed-point iteration filtering by ideal closure,
/// then derivation stability, re-canonicalizing each pass.
Ideal largest_differential_ideal(AlgebraPtr r);

struct DiffSimpleResult {
    bool simple = false;
    /// zero when simple; otherwise a nonzero proper differential ideal
    Ideal certificate;
};

/// Differential simplicity; when the ring has exponent one over its residue
/// field the independent monomial-basis criterion must agree, and a
/// disagreement raises InternalDisagreement.
DiffSimpleResult is_diff_simple(AlgebraPtr r);

/// Independent criterion: a local ring with residue field k whose maximal
/// ideal has minimal generators x_1..x_s with x_i^p = 0 and whose monomials
/// x^alpha, alpha_i < p, form a k-basis. Shares only the linear algebra with
/// the differential-ideal route.
bool has_p_basis_over_field(AlgebraPtr r);

/// Lift of a derivation of C/I to C along the projection, for C with a
/// split-type monomial presentation (free absolute differentials). The
/// returned D satisfies proj . D = delta . proj; free unknowns are zero, so
/// delta = 0 lifts to 0.
Derivation lift_derivation(AlgebraPtr c, const Ideal& i, const Derivation& delta);

Derivation bracket(const Derivation& d1, const Derivation& d2);
Derivation p_power(const Derivation& d);

/// Joint kernel, verified to be a subalgebra.
Subalgebra kernel_of(const DerivationSpace& ds);

/// The derivation space as a concrete module over its source algebra
/// (basis = the space's canonical basis).
ConcreteModule der_space_as_module(const DerivationSpace& ds);

} // namespace yl
