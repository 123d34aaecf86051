#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "yuanlab/algebra.hpp"

using namespace yl;

namespace {

AlgebraPtr split22() { return truncated_algebra(FiniteField::make(2, 1), 2); }

// F_2[x]/(x^4) presented on two variables with x^2 = y, y^2 = 0
AlgebraPtr chain4() {
    auto f2 = FiniteField::make(2, 1);
    Vec y(4, 0);
    // graded-lex basis of (p=2, n=2): 1, x, y, xy
    y[2] = 1;
    return truncated_algebra(f2, 2, {y, Vec{}});
}

} // namespace

TEST_CASE("truncated algebra shapes") {
    auto c = split22();
    CHECK(c->dim() == 4);
    CHECK(c->labels() == std::vector<std::string>{"1", "x", "y", "x*y"});
    Vec x = c->basis_vec(1), y = c->basis_vec(2);
    CHECK(c->mul(x, x) == Vec{0, 0, 0, 0});
    CHECK(c->mul(x, y) == c->basis_vec(3));

    auto f3 = FiniteField::make(3, 1);
    auto c3 = truncated_algebra(f3, 1);
    CHECK(c3->dim() == 3);
    CHECK(c3->labels() == std::vector<std::string>{"1", "x", "x^2"});
    CHECK(c3->mul(c3->basis_vec(2), c3->basis_vec(1)) == Vec{0, 0, 0});

    auto k = truncated_algebra(FiniteField::make(2, 1), 0);
    CHECK(k->dim() == 1);

    // the chain F_2[x]/(x^4): x*y = x^3 and x*x = y
    auto c4 = chain4();
    CHECK(c4->mul(c4->basis_vec(1), c4->basis_vec(1)) == c4->basis_vec(2));
    CHECK(c4->mul(c4->basis_vec(2), c4->basis_vec(2)) == Vec{0, 0, 0, 0});
    CHECK(c4->power(c4->basis_vec(1), 3) == c4->basis_vec(3));
    CHECK(c4->power(c4->basis_vec(1), 4) == Vec{0, 0, 0, 0});
    CHECK_FALSE(c4->ambient()->split);
    CHECK_FALSE(c4->ambient()->scalar_powers);
}

TEST_CASE("construction rejects bad structure constants") {
    auto f2 = FiniteField::make(2, 1);
    // e1*e1 = e0 but e0 not acting as unit on e1
    std::vector<SparseVec> mul(4);
    mul[0] = {{0, 1}};
    mul[1] = {};
    mul[2] = {};
    mul[3] = {{0, 1}};
    CHECK_THROWS_AS(FiniteAlgebra::make(f2, 2, mul, Vec{1, 0}), engine_error);
}

TEST_CASE("subalgebra generation") {
    auto c = split22();
    Subalgebra k = subalgebra_generate(c, {});
    CHECK(k.space.dim() == 1);
    CHECK(k.space.contains(c->unit()));

    Subalgebra ky = subalgebra_generate(c, {c->basis_vec(2)});
    CHECK(ky.space.dim() == 2);

    Vec xy = c->basis_vec(1);
    for (std::size_t i = 0; i < 4; ++i)
        xy[i] = c->field()->add(xy[i], c->basis_vec(2)[i]);
    Subalgebra s = subalgebra_generate(c, {xy});
    CHECK(s.space.dim() == 2); // (x+y)^2 = 0 at p = 2
}

TEST_CASE("ideals and quotients") {
    auto c = split22();
    Ideal zero = zero_ideal(c);
    QuotientResult q0 = quotient(c, zero);
    CHECK(q0.algebra->dim() == 4);

    Ideal ix = ideal_generate(c, {c->basis_vec(1)});
    CHECK(ix.space.dim() == 2); // (x) = {x, xy}
    QuotientResult q = quotient(c, ix);
    CHECK(q.algebra->dim() == 2);
    // isomorphic to F_2[y]/(y^2): the image of y squares to zero
    Vec ybar = q.projection.apply(c->basis_vec(2));
    CHECK(q.algebra->mul(ybar, ybar) == Vec{0, 0});

    Ideal ixy = ideal_generate(c, {c->basis_vec(3)});
    CHECK(ixy.space.dim() == 1);
    CHECK(quotient(c, ixy).algebra->dim() == 3);

    Ideal full = ideal_generate(c, {c->unit()});
    CHECK_THROWS_AS(quotient(c, full), engine_error);

    // projection is multiplicative on all basis pairs
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(q.projection.apply(c->mul(c->basis_vec(i), c->basis_vec(j))) ==
                  q.algebra->mul(q.projection.apply(c->basis_vec(i)),
                                 q.projection.apply(c->basis_vec(j))));
}

TEST_CASE("frobenius image") {
    auto c = split22();
    CHECK(frobenius_image(c).space.dim() == 1); // all squares constant

    auto c4 = chain4();
    Subalgebra fr = frobenius_image(c4);
    CHECK(fr.space.dim() == 2); // span{1, x^2}
    CHECK(fr.space.contains(c4->basis_vec(2)));

    auto f4 = FiniteField::make(2, 2);
    auto k = truncated_algebra(f4, 0);
    CHECK(frobenius_image(k).space.dim() == 1); // perfect field
}

TEST_CASE("local structure") {
    auto c = split22();
    LocalStructure ls = local_structure(c);
    CHECK(ls.max_ideal.space.dim() == 3);
    CHECK(ls.residue_dim == 1);
    CHECK(!ls.max_ideal.space.contains(c->unit()));

    // F_4 as an algebra over itself: maximal ideal 0
    auto f4 = FiniteField::make(2, 2);
    auto k4 = truncated_algebra(f4, 0);
    CHECK(local_structure(k4).max_ideal.space.dim() == 0);

    // F_2 x F_2 has two idempotent factors
    auto f2 = FiniteField::make(2, 1);
    std::vector<SparseVec> mul(4);
    mul[0] = {{0, 1}};
    mul[3] = {{1, 1}};
    auto pair = FiniteAlgebra::make(f2, 2, mul, Vec{1, 1});
    CHECK(!pair->is_local());
    CHECK_THROWS_AS(local_structure(pair), engine_error);

    // F_4 as an F_2-algebra is local with residue dimension 2
    std::vector<SparseVec> m4(4);
    m4[0] = {{0, 1}};
    m4[1] = {{1, 1}};
    m4[2] = {{1, 1}};
    m4[3] = {{0, 1}, {1, 1}}; // w^2 = 1 + w
    auto f4_over_f2 = FiniteAlgebra::make(f2, 2, m4, Vec{1, 0});
    CHECK(f4_over_f2->is_local());
    CHECK(f4_over_f2->residue_dim() == 2);
}

TEST_CASE("annihilators") {
    auto c = split22();
    CHECK(annihilator(c, c->unit()).space.dim() == 0);

    Ideal ax = annihilator(c, c->basis_vec(1));
    CHECK(ax.space.dim() == 2); // ann(x) = xC = {x, xy}
    CHECK(ax.space.contains(c->basis_vec(1)));
    CHECK(ax.space.contains(c->basis_vec(3)));

    Ideal axy = annihilator(c, c->basis_vec(3));
    CHECK(axy.space.dim() == 3); // the maximal ideal
}

TEST_CASE("minimal generators") {
    auto c = split22();
    LocalStructure ls = local_structure(c);
    auto gens = minimal_generators(ls.max_ideal);
    CHECK(gens.size() == 2);

    Ideal ixy = ideal_generate(c, {c->basis_vec(3)});
    CHECK(minimal_generators(ixy).size() == 1);

    auto f3 = FiniteField::make(3, 1);
    auto c3 = truncated_algebra(f3, 1);
    CHECK(minimal_generators(local_structure(c3).max_ideal).size() == 1);
}

TEST_CASE("tensor product over the base field") {
    auto f2 = FiniteField::make(2, 1);
    auto c1 = truncated_algebra(f2, 1);
    Matrix le, re;
    auto t = tensor_product(c1, c1, &le, &re);
    CHECK(t->dim() == 4);
    // x(x)1 and 1(x)x both square to zero and multiply to x(x)x
    Vec a = le.apply(c1->basis_vec(1)), b = re.apply(c1->basis_vec(1));
    CHECK(t->mul(a, a) == Vec(4, 0));
    Vec ab = t->mul(a, b);
    CHECK(ab != Vec(4, 0));

    auto k = truncated_algebra(f2, 0);
    auto t2 = tensor_product(k, c1);
    CHECK(t2->dim() == 2);
}

TEST_CASE("free module bases and tensor over a subalgebra") {
    auto c4 = chain4();
    // A = span{1, x^2}
    Subalgebra a = subalgebra_generate(c4, {c4->basis_vec(2)});
    CHECK(a.space.dim() == 2);
    auto w = free_module_basis(a);
    REQUIRE(w.has_value());
    CHECK(w->size() == 2);
    CHECK((*w)[0] == c4->unit());

    TensorOverResult t = tensor_over(a);
    CHECK(t.algebra->dim() == 8);
    // z = x(x)1 - 1(x)x squares to zero in C (x)_A C
    Vec x = c4->basis_vec(1);
    Vec z = t.left_embed.apply(x);
    Vec rx = t.right_embed.apply(x);
    for (std::size_t i = 0; i < 8; ++i)
        z[i] = c4->field()->sub(z[i], rx[i]);
    CHECK(t.algebra->mul(z, z) == Vec(8, 0));

    // over the whole algebra the tensor collapses
    Subalgebra whole = subalgebra_generate(c4, {c4->basis_vec(1)});
    CHECK(whole.space.dim() == 4);
    CHECK(tensor_over(whole).algebra->dim() == 4);

    // k + k*xy in the split (2,2) algebra is not a free base
    auto c = split22();
    Subalgebra bad = subalgebra_generate(c, {c->basis_vec(3)});
    CHECK(!free_module_basis(bad).has_value());
}

TEST_CASE("reified subalgebras multiply like their parent") {
    auto c = split22();
    Subalgebra ky = subalgebra_generate(c, {c->basis_vec(2)});
    ReifiedSubalgebra r = subalgebra_as_algebra(ky);
    CHECK(r.algebra->dim() == 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            Vec prod = r.algebra->mul(r.algebra->basis_vec(i), r.algebra->basis_vec(j));
            Vec lifted = r.embedding.apply(prod);
            Vec direct = c->mul(r.embedding.apply(r.algebra->basis_vec(i)),
                                r.embedding.apply(r.algebra->basis_vec(j)));
            CHECK(lifted == direct);
        }
}

TEST_CASE("algebra determinants") {
    auto c = split22();
    // identity 2x2 has determinant 1
    std::vector<Vec> id = {c->unit(), Vec(4, 0), Vec(4, 0), c->unit()};
    CHECK(algebra_det(*c, id, 2) == c->unit());
    // [[x, y], [y, x]] -> x^2 - y^2 = 0
    std::vector<Vec> m = {c->basis_vec(1), c->basis_vec(2), c->basis_vec(2), c->basis_vec(1)};
    CHECK(algebra_det(*c, m, 2) == Vec(4, 0));
}
