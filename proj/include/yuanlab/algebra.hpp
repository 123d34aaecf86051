#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "yuanlab/linalg.hpp"

namespace yl {

struct SparseTerm {
    std::uint32_t idx;
    fq c;
    bool operator==(const SparseTerm&) const = default;
};
using SparseVec = std::vector<SparseTerm>;

class FiniteAlgebra;
using AlgebraPtr = std::shared_ptr<const FiniteAlgebra>;

/// Monomial presentation of a truncated algebra: the basis is labeled by
/// exponent vectors on n variables in graded-lex order, and x_i^p rewrites to
/// pth_power[i], an element supported on strictly later variables (or a
/// scalar). split means every p-th power is zero; scalar_powers means every
/// p-th power lies in k*1, which is exactly when the formal partials d/dx_i
/// are honest derivations and the absolute differential module is free.
struct TruncatedAmbient {
    std::size_t n_vars = 0;
    std::vector<std::vector<std::uint8_t>> exponents; // per basis index
    std::vector<Vec> pth_powers;                      // per variable
    bool split = true;
    bool scalar_powers = true;
    std::map<std::vector<std::uint8_t>, std::size_t> index_of;
};

struct Subalgebra {
    AlgebraPtr parent;
    Subspace space;                  // canonical echelon basis containing the unit
    std::vector<Vec> generators;     // optional distinguished generating set
};

struct Ideal {
    AlgebraPtr parent;
    Subspace space;
};

/// Finite-dimensional commutative unital F_q-algebra given by structure
/// constants on a labeled basis. Commutativity, associativity and the unit
/// law are verified at construction (associativity on all triples up to
/// dim 256, on a fixed deterministic sample beyond). Local data (nilradical,
/// residue dimension, span of p-th powers) is precomputed; instances are
/// immutable and safe to share across threads.
class FiniteAlgebra : public std::enable_shared_from_this<FiniteAlgebra> {
  public:
    static AlgebraPtr make(FieldPtr f, std::size_t dim, std::vector<SparseVec> mul,
                           Vec unit, std::vector<std::string> labels = {},
                           std::optional<TruncatedAmbient> ambient = std::nullopt);

    const FieldPtr& field() const { return field_; }
    std::size_t dim() const { return dim_; }
    const Vec& unit() const { return unit_; }
    const std::string& label(std::size_t i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }
    const SparseVec& basis_product(std::size_t i, std::size_t j) const {
        return mul_[i * dim_ + j];
    }
    const std::optional<TruncatedAmbient>& ambient() const { return ambient_; }

    Vec mul(const Vec& a, const Vec& b) const;
    void mul_into(const Vec& a, const Vec& b, Vec& out) const; // out overwritten
    Vec mul_basis(std::size_t i, const Vec& b) const;
    Matrix mult_matrix(const Vec& a) const; // v -> a*v
    Vec power(const Vec& a, std::uint64_t k) const;
    Vec pth_power(const Vec& a) const { return power(a, field_->p()); }
    Vec scalar(fq c) const;
    Vec basis_vec(std::size_t i) const;
    bool is_unit_element(const Vec& a) const; // multiplication by a invertible

    // precomputed structure
    const Subspace& nilradical() const { return nilradical_; }
    bool is_local() const { return is_local_; }
    std::size_t residue_dim() const { return residue_dim_; }
    /// Span of the basis p-th powers; closed under multiplication, so this is
    /// the subalgebra k-generated by all p-th powers.
    const Subspace& frobenius_span() const { return frobenius_span_; }

  private:
    FiniteAlgebra() = default;
    void verify_laws() const;
    void compute_structure();

    FieldPtr field_;
    std::size_t dim_ = 0;
    std::vector<SparseVec> mul_;
    Vec unit_;
    std::vector<std::string> labels_;
    std::optional<TruncatedAmbient> ambient_;
    Subspace nilradical_;
    Subspace frobenius_span_;
    bool is_local_ = false;
    std::size_t residue_dim_ = 0;
};

/// k[X_1..X_n] / (X_i^p - a_i) on the monomial basis x^alpha, 0 <= alpha_i < p,
/// in graded-lex order. Each a_i is either omitted (zero: the split form) or a
/// coordinate vector supported on the unit and on monomials in variables of
/// index > i, which keeps the rewriting triangular.
AlgebraPtr truncated_algebra(FieldPtr f, std::size_t n,
                             const std::vector<Vec>& pth_powers = {});

/// k[t]/(t^N) on the basis {1, t, .., t^{N-1}}; no monomial p-presentation is
/// attached. Used for first-order test rings and chain algebras like F_2[x]/(x^4).
AlgebraPtr univariate_truncated(FieldPtr f, std::size_t N);

/// k[eps]/(eps^2).
AlgebraPtr dual_numbers(FieldPtr f);

Subalgebra subalgebra_generate(AlgebraPtr a, const std::vector<Vec>& gens);
Subalgebra trivial_subalgebra(AlgebraPtr a); // k*1
Ideal ideal_generate(AlgebraPtr a, const std::vector<Vec>& gens);
Ideal zero_ideal(AlgebraPtr a);

/// Verifies closure and unit membership of an explicit subspace.
Subalgebra subalgebra_from_space(AlgebraPtr a, Subspace s);
Ideal ideal_from_space(AlgebraPtr a, Subspace s);

struct QuotientResult {
    AlgebraPtr algebra;
    Matrix projection; // dim(quotient) x dim(parent)
    Matrix section;    // dim(parent) x dim(quotient), projection * section = id
};

QuotientResult quotient(AlgebraPtr a, const Ideal& i);

/// A subalgebra reified as a standalone algebra, with the embedding that maps
/// its basis back into the parent (rows of the subspace's echelon basis).
struct ReifiedSubalgebra {
    AlgebraPtr algebra;
    Matrix embedding; // dim(parent) x dim(sub): columns are the basis rows
    Subalgebra origin;
};

ReifiedSubalgebra subalgebra_as_algebra(const Subalgebra& b);

/// The subalgebra generated by all p-th powers (exact: the k-span of basis
/// p-th powers is already multiplicatively closed in characteristic p).
Subalgebra frobenius_image(AlgebraPtr a);

struct LocalStructure {
    Ideal max_ideal;
    std::size_t residue_dim;
};

/// Maximal ideal = nilradical and residue dimension; errors with NotLocal when
/// the quotient by the nilradical is not a field.
LocalStructure local_structure(AlgebraPtr a);

Ideal annihilator(AlgebraPtr a, const Vec& f);

/// Lifts of a basis of I/mI (Nakayama); the parent must be local.
std::vector<Vec> minimal_generators(const Ideal& i);

/// Tensor product over the base field on the basis e_i (x) f_j.
AlgebraPtr tensor_product(AlgebraPtr c1, AlgebraPtr c2,
                          Matrix* left_embed = nullptr, Matrix* right_embed = nullptr);

struct TensorOverResult {
    AlgebraPtr algebra;
    Matrix left_embed;  // dim(T) x dim(C)
    Matrix right_embed; // dim(T) x dim(C)
    std::vector<Vec> module_basis; // the B-module basis of C used on the left
};

/// C (x)_B C for a subalgebra B over which C is a free module. Errors with
/// NotFree when no free module basis exists.
TensorOverResult tensor_over(const Subalgebra& b);

/// B-module basis of C by Nakayama lifting (greedy over the fiber C/m_B C,
/// the unit first); nullopt when C is not free over B. B must be local.
std::optional<std::vector<Vec>> free_module_basis(const Subalgebra& b);

/// Determinant of a square matrix with entries in the algebra (Laplace
/// expansion; intended for the small minors of Fitting computations).
Vec algebra_det(const FiniteAlgebra& a, const std::vector<Vec>& entries, std::size_t n);

} // namespace yl
