#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "yuanlab/gf.hpp"

namespace yl {

using Vec = std::vector<fq>;

struct Matrix {
    FieldPtr field;
    std::size_t rows = 0, cols = 0;
    std::vector<fq> a; // row-major

    Matrix() = default;
    Matrix(FieldPtr f, std::size_t r, std::size_t c)
        : field(std::move(f)), rows(r), cols(c), a(r * c, 0) {}

    static Matrix identity(FieldPtr f, std::size_t n);
    static Matrix from_rows(FieldPtr f, const std::vector<Vec>& rs, std::size_t cols);

    fq at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
    fq& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    Vec row(std::size_t i) const { return Vec(a.begin() + i * cols, a.begin() + (i + 1) * cols); }
    std::vector<Vec> row_list() const;

    Matrix mul(const Matrix& other) const;
    Vec apply(const Vec& v) const; // matrix * column vector

    bool operator==(const Matrix& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }
};

/// A subspace of F_q^ambient held by its reduced-row-echelon basis; the
/// canonical form used for equality and deduplication everywhere.
struct Subspace {
    std::size_t ambient = 0;
    Matrix basis; // RREF, nonzero rows only
    std::vector<std::size_t> pivots;

    std::size_t dim() const { return basis.rows; }
    bool operator==(const Subspace& o) const {
        return ambient == o.ambient && basis == o.basis;
    }
    bool contains(const Vec& v) const;
    bool contains(const Subspace& other) const;
    /// Residual of v after eliminating against the echelon rows (linear in v).
    Vec reduce(Vec v) const;
    /// Coefficients of v on the basis rows, or nullopt if v is outside.
    std::optional<Vec> coordinates(const Vec& v) const;
    /// Canonical comparison key (dim descending would be ambiguous; this is
    /// plain lexicographic on the flattened echelon entries, rows first).
    bool before(const Subspace& o) const;
};

Subspace canonical_echelon(const Matrix& m);
Subspace rref_generic(const Matrix& m);
/// q == 2 fast path, 64 columns per machine word. Produces entrywise the
/// same echelon basis as rref_generic; the equality is asserted in tests.
Subspace rref_gf2(const Matrix& m);

Subspace kernel(const Matrix& m);
/// Particular solution of m x = rhs with all free variables zero.
std::optional<Vec> solve(const Matrix& m, const Vec& rhs);

Subspace zero_subspace(FieldPtr f, std::size_t ambient);
Subspace full_space(FieldPtr f, std::size_t ambient);
Subspace span_of(FieldPtr f, const std::vector<Vec>& vecs, std::size_t ambient);
Subspace sum(const Subspace& s1, const Subspace& s2);
Subspace intersect(const Subspace& s1, const Subspace& s2);

/// Incremental echelon accumulator: feed vectors, track rank.
class SpanBuilder {
  public:
    SpanBuilder(FieldPtr f, std::size_t ambient);
    /// Returns true if v was independent of the current span.
    bool add(Vec v);
    bool contains(const Vec& v) const;
    std::size_t rank() const { return rows_.size(); }
    std::size_t ambient() const { return ambient_; }
    Subspace to_subspace() const;

  private:
    FieldPtr field_;
    std::size_t ambient_;
    std::vector<Vec> rows_;          // echelon rows, pivot scaled to 1
    std::vector<std::size_t> pivots_; // sorted together with rows_
};

/// Enumeration of all reduced-echelon bases of rank-dimensional subspaces of
/// F_q^dim: pivot patterns in lexicographic order, free entries in odometer
/// order (least significant digit = first free slot in row-major order). The
/// global candidate index offsets[pattern] + k is schedule-independent.
struct RrefWalker {
    FieldPtr field;
    std::size_t dim = 0, rank = 0;
    std::vector<std::vector<std::size_t>> patterns;
    std::vector<std::uint64_t> pattern_counts;
    std::vector<std::uint64_t> offsets; // prefix sums, size patterns+1
    std::uint64_t total = 0;

    RrefWalker(FieldPtr f, std::size_t dim, std::size_t rank);
    void decode(std::size_t pattern_idx, std::uint64_t k, Matrix& out) const;
};

/// Number of rank-dimensional subspaces of F_q^dim, saturating at cap.
std::uint64_t gaussian_binomial(std::size_t dim, std::size_t rank, std::uint32_t q,
                                std::uint64_t cap);

} // namespace yl
