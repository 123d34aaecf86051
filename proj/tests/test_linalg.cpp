#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "yuanlab/linalg.hpp"

using namespace yl;

namespace {

Matrix random_matrix(FieldPtr f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
    Matrix m(f, r, c);
    for (auto& x : m.a)
        x = fq(rng() % f->q());
    return m;
}

} // namespace

TEST_CASE("canonical echelon examples") {
    auto f2 = FiniteField::make(2, 1);

    Matrix z(f2, 2, 3);
    CHECK(canonical_echelon(z).dim() == 0);

    Subspace full = canonical_echelon(Matrix::identity(f2, 3));
    CHECK(full.dim() == 3);
    CHECK(full.pivots == std::vector<std::size_t>{0, 1, 2});

    // rows {(1,1,0),(0,1,1)} -> basis {(1,0,1),(0,1,1)}
    Matrix m = Matrix::from_rows(f2, {{1, 1, 0}, {0, 1, 1}}, 3);
    Subspace s = canonical_echelon(m);
    REQUIRE(s.dim() == 2);
    CHECK(s.basis.row(0) == Vec{1, 0, 1});
    CHECK(s.basis.row(1) == Vec{0, 1, 1});
}

TEST_CASE("echelon is idempotent and equality is entrywise") {
    auto f3 = FiniteField::make(3, 1);
    std::mt19937_64 rng(42);
    for (int it = 0; it < 50; ++it) {
        Matrix m = random_matrix(f3, 4, 6, rng);
        Subspace s = canonical_echelon(m);
        Subspace s2 = canonical_echelon(s.basis);
        CHECK(s == s2);
    }
}

TEST_CASE("kernel and solve") {
    auto f2 = FiniteField::make(2, 1);
    CHECK(kernel(Matrix::identity(f2, 4)).dim() == 0);

    Matrix m = Matrix::from_rows(f2, {{1, 1}}, 2);
    Subspace k = kernel(m);
    REQUIRE(k.dim() == 1);
    CHECK(k.basis.row(0) == Vec{1, 1});

    auto f5 = FiniteField::make(5, 1);
    Matrix a = Matrix::from_rows(f5, {{1, 2, 3}, {0, 1, 4}}, 3);
    Vec rhs{3, 2};
    auto x = solve(a, rhs);
    REQUIRE(x.has_value());
    CHECK(a.apply(*x) == rhs);
    CHECK(!solve(Matrix::from_rows(f5, {{1, 0}, {1, 0}}, 2), Vec{1, 2}).has_value());
}

TEST_CASE("rank-nullity on random matrices") {
    std::mt19937_64 rng(7);
    for (auto [p, e] : {std::pair<unsigned, unsigned>{2, 1}, {3, 1}, {2, 2}}) {
        auto f = FiniteField::make(p, e);
        for (int it = 0; it < 40; ++it) {
            std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
            Matrix m = random_matrix(f, r, c, rng);
            CHECK(canonical_echelon(m).dim() + kernel(m).dim() == c);
        }
    }
}

TEST_CASE("sum, intersection, containment") {
    auto f2 = FiniteField::make(2, 1);
    Subspace s1 = span_of(f2, {{1, 0}, {0, 1}}, 2);
    Subspace s2 = span_of(f2, {{1, 1}}, 2);
    Subspace i = intersect(s1, s2);
    REQUIRE(i.dim() == 1);
    CHECK(i.basis.row(0) == Vec{1, 1});
    CHECK(sum(s1, s2) == s1);
    CHECK(s1.contains(s2));
    CHECK(!s2.contains(s1));

    std::mt19937_64 rng(11);
    for (int it = 0; it < 60; ++it) {
        std::size_t n = 4 + rng() % 5;
        Subspace a = canonical_echelon(random_matrix(f2, 1 + rng() % n, n, rng));
        Subspace b = canonical_echelon(random_matrix(f2, 1 + rng() % n, n, rng));
        CHECK(sum(a, b).dim() + intersect(a, b).dim() == a.dim() + b.dim());
    }
}

TEST_CASE("modular law spot-checks, ambient dim <= 8 over F_2") {
    auto f2 = FiniteField::make(2, 1);
    std::mt19937_64 rng(13);
    for (int it = 0; it < 60; ++it) {
        std::size_t n = 4 + rng() % 5;
        Subspace b = canonical_echelon(random_matrix(f2, 1 + rng() % 3, n, rng));
        Subspace c = canonical_echelon(random_matrix(f2, 1 + rng() % n, n, rng));
        Subspace d = sum(b, canonical_echelon(random_matrix(f2, 1 + rng() % 3, n, rng)));
        // b <= d implies b + (c /\ d) = (b + c) /\ d
        Subspace lhs = sum(b, intersect(c, d));
        Subspace rhs = intersect(sum(b, c), d);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("bit-packed GF(2) path equals the generic path") {
    auto f2 = FiniteField::make(2, 1);
    std::mt19937_64 rng(99);
    for (int it = 0; it < 200; ++it) {
        std::size_t r = 1 + rng() % 8, c = 1 + rng() % 90; // exercise >64 columns
        Matrix m = random_matrix(f2, r, c, rng);
        Subspace a = rref_generic(m);
        Subspace b = rref_gf2(m);
        CHECK(a == b);
        CHECK(a.pivots == b.pivots);
    }
}

TEST_CASE("rref walker hits every subspace exactly once") {
    for (auto [p, dim, rank] : {std::tuple<unsigned, std::size_t, std::size_t>{2, 5, 2},
                                {3, 4, 2}, {2, 6, 3}, {2, 4, 0}, {2, 4, 4}}) {
        auto f = FiniteField::make(p, 1);
        RrefWalker w(f, dim, rank);
        CHECK(w.total == gaussian_binomial(dim, rank, f->q(), std::uint64_t(1) << 62));
        std::set<std::vector<fq>> seen;
        Matrix out;
        for (std::size_t pi = 0; pi < w.patterns.size(); ++pi)
            for (std::uint64_t k = 0; k < w.pattern_counts[pi]; ++k) {
                w.decode(pi, k, out);
                Subspace s = canonical_echelon(out);
                CHECK(s.dim() == rank);
                CHECK(s.basis.a == out.a); // already canonical
                seen.insert(out.a);
            }
        CHECK(seen.size() == w.total);
    }
}

TEST_CASE("gaussian binomial saturates") {
    CHECK(gaussian_binomial(3, 1, 2, 1000) == 7);
    CHECK(gaussian_binomial(7, 3, 2, 1u << 20) == 11811);
    CHECK(gaussian_binomial(8, 2, 3, 10000000) == 896260);
    CHECK(gaussian_binomial(80, 40, 2, 1000000) > 1000000);
}
