#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "yuanlab/kaehler.hpp"

using namespace yl;

namespace {

AlgebraPtr split22() { return truncated_algebra(FiniteField::make(2, 1), 2); }

AlgebraPtr chain4() {
    auto f2 = FiniteField::make(2, 1);
    Vec y(4, 0);
    y[2] = 1;
    return truncated_algebra(f2, 2, {y, Vec{}});
}

Matrix random_invertible(FieldPtr f, std::size_t n, std::mt19937_64& rng) {
    while (true) {
        Matrix m(f, n, n);
        for (auto& x : m.a)
            x = fq(rng() % f->q());
        if (canonical_echelon(m).dim() == n)
            return m;
    }
}

// the same algebra expressed on a twisted basis
AlgebraPtr rebase(const AlgebraPtr& a, const Matrix& t, const Matrix& tinv) {
    const std::size_t m = a->dim();
    std::vector<SparseVec> mul(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            // new basis f_i = sum_k t[k][i] e_k; product back in new coords
            Vec fi(m), fj(m);
            for (std::size_t k = 0; k < m; ++k) {
                fi[k] = t.at(k, i);
                fj[k] = t.at(k, j);
            }
            Vec prod = tinv.apply(a->mul(fi, fj));
            SparseVec sp;
            for (std::size_t k = 0; k < m; ++k)
                if (prod[k] != 0)
                    sp.push_back({std::uint32_t(k), prod[k]});
            mul[i * m + j] = sp;
            mul[j * m + i] = std::move(sp);
        }
    return FiniteAlgebra::make(a->field(), m, std::move(mul), tinv.apply(a->unit()));
}

} // namespace

TEST_CASE("kaehler presentations") {
    auto c = split22();
    ModulePresentation p0 = kaehler_presentation(c, trivial_subalgebra(c));
    CHECK(p0.n_generators == 2);
    CHECK(p0.relations.empty()); // free of rank n over the split model

    Subalgebra ky = subalgebra_generate(c, {c->basis_vec(2)});
    ModulePresentation p1 = kaehler_presentation(c, ky);
    REQUIRE(p1.relations.size() == 1);
    CHECK(p1.relations[0][0] == Vec(4, 0));
    CHECK(p1.relations[0][1] == c->unit()); // dy = (0, 1)

    Subalgebra whole = subalgebra_generate(c, {c->basis_vec(1), c->basis_vec(2)});
    ModulePresentation p2 = kaehler_presentation(c, whole);
    auto rank = module_free_rank(p2);
    REQUIRE(rank.has_value());
    CHECK(*rank == 0); // the differential module vanishes
}

TEST_CASE("fitting ideals") {
    auto c = split22();

    // no relations, 2 generators
    ModulePresentation zero{c, 2, {}};
    auto fz = fitting_ideals(zero);
    CHECK(fz[0].space.dim() == 0);
    CHECK(fz[1].space.dim() == 0);
    CHECK(fz[2].space.dim() == 4);

    // one relation (0, 1)
    ModulePresentation one{c, 2, {{Vec(4, 0), c->unit()}}};
    auto fo = fitting_ideals(one);
    CHECK(fo[0].space.dim() == 0);
    CHECK(fo[1].space.dim() == 4);

    // identity relations
    ModulePresentation idp{c, 2, {{c->unit(), Vec(4, 0)}, {Vec(4, 0), c->unit()}}};
    auto fi = fitting_ideals(idp);
    CHECK(fi[0].space.dim() == 4);

    // non-unit relation row (y, x): Fitt_1 = (x, y) != (1)
    ModulePresentation bad{c, 2, {{c->basis_vec(2), c->basis_vec(1)}}};
    auto fb = fitting_ideals(bad);
    CHECK(fb[0].space.dim() == 0);
    CHECK(fb[1].space.dim() == 3); // (x, y) = span{x, y, xy}
    CHECK(!module_free_rank(bad).has_value());
}

TEST_CASE("free ranks of differential modules") {
    auto c = split22();
    CHECK(module_free_rank(kaehler_presentation(c, trivial_subalgebra(c))) == 2);
    Subalgebra ky = subalgebra_generate(c, {c->basis_vec(2)});
    CHECK(module_free_rank(kaehler_presentation(c, ky)) == 1);
    Subalgebra kxy = subalgebra_generate(c, {c->basis_vec(3)});
    CHECK(!module_free_rank(kaehler_presentation(c, kxy)).has_value());

    // chain algebra: absolute differentials free of rank 1 despite two variables
    auto c4 = chain4();
    CHECK(module_free_rank(kaehler_presentation(c4, trivial_subalgebra(c4))) == 1);
}

TEST_CASE("p-basis search") {
    auto c = split22();
    auto pb = find_p_basis(c, trivial_subalgebra(c));
    REQUIRE(pb.has_value());
    CHECK(pb->verified);
    REQUIRE(pb->elements.size() == 2);
    CHECK(pb->elements[0] == c->basis_vec(1)); // graded-lex prefers x then y
    CHECK(pb->elements[1] == c->basis_vec(2));

    Subalgebra ky = subalgebra_generate(c, {c->basis_vec(2)});
    auto pb1 = find_p_basis(c, ky);
    REQUIRE(pb1.has_value());
    CHECK(pb1->elements == std::vector<Vec>{c->basis_vec(1)});

    Subalgebra kxy = subalgebra_generate(c, {c->basis_vec(3)});
    CHECK(!find_p_basis(c, kxy).has_value());

    // non-exponent-one pair is a precondition violation
    auto c4 = chain4();
    CHECK_THROWS_AS(find_p_basis(c4, trivial_subalgebra(c4)), engine_error);

    // non-split base inside the chain algebra
    Subalgebra a = subalgebra_generate(c4, {c4->basis_vec(2)});
    auto pba = find_p_basis(c4, a);
    REQUIRE(pba.has_value());
    CHECK(pba->elements == std::vector<Vec>{c4->basis_vec(1)});
}

TEST_CASE("direct definition check") {
    auto c = split22();
    CHECK(verify_p_basis(c, trivial_subalgebra(c), {c->basis_vec(1), c->basis_vec(2)}));
    CHECK(!verify_p_basis(c, trivial_subalgebra(c), {c->basis_vec(1), c->basis_vec(3)}));
    CHECK(!verify_p_basis(c, trivial_subalgebra(c), {c->basis_vec(1)}));
    Subalgebra ky = subalgebra_generate(c, {c->basis_vec(2)});
    CHECK(verify_p_basis(c, ky, {c->basis_vec(1)}));
}

TEST_CASE("harper normal form on model algebras") {
    auto c = split22();
    AlgebraIsomorphism iso = harper_normal_form(c);
    CHECK(iso.forward.mul(iso.inverse) == Matrix::identity(c->field(), 4));

    auto c3 = truncated_algebra(FiniteField::make(3, 1), 1);
    AlgebraIsomorphism iso3 = harper_normal_form(c3);
    CHECK(iso3.source->dim() == 3);

    CHECK_THROWS_AS(harper_normal_form(chain4()), engine_error);
}

TEST_CASE("harper normal form recovers twisted algebras") {
    std::mt19937_64 rng(2024);
    for (int it = 0; it < 30; ++it) {
        AlgebraPtr model = (it % 2 == 0) ? split22()
                                         : truncated_algebra(FiniteField::make(3, 1), 1);
        const std::size_t m = model->dim();
        Matrix t = random_invertible(model->field(), m, rng);
        Matrix aug(model->field(), m, 2 * m);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j)
                aug.at(i, j) = t.at(i, j);
            aug.at(i, m + i) = 1;
        }
        Subspace ech = rref_generic(aug);
        Matrix tinv(model->field(), m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                tinv.at(i, j) = ech.basis.at(i, m + j);
        AlgebraPtr twisted = rebase(model, t, tinv);
        AlgebraIsomorphism iso = harper_normal_form(twisted);
        CHECK(iso.forward.mul(iso.inverse) == Matrix::identity(model->field(), m));
        CHECK(iso.inverse.mul(iso.forward) == Matrix::identity(model->field(), m));
        // multiplicativity of the recovered isomorphism
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                Vec lhs = iso.forward.apply(
                    iso.source->mul(iso.source->basis_vec(i), iso.source->basis_vec(j)));
                Vec rhs = twisted->mul(iso.forward.apply(iso.source->basis_vec(i)),
                                       iso.forward.apply(iso.source->basis_vec(j)));
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("vanishing differential module forces equality") {
    auto c = split22();
    // for every subalgebra b with Omega_{C/b} = 0 we must have b = C
    RrefWalker w(c->field(), 3, 2);
    Matrix out;
    for (std::size_t pi = 0; pi < w.patterns.size(); ++pi)
        for (std::uint64_t k = 0; k < w.pattern_counts[pi]; ++k) {
            w.decode(pi, k, out);
            std::vector<Vec> rows = {c->unit()};
            for (std::size_t i = 0; i < 2; ++i) {
                Vec v(4, 0);
                for (std::size_t j = 0; j < 3; ++j)
                    v[j + 1] = out.at(i, j);
                rows.push_back(std::move(v));
            }
            Subspace s = span_of(c->field(), rows, 4);
            bool closed = true;
            for (std::size_t i = 0; i < s.dim() && closed; ++i)
                for (std::size_t j = i; j < s.dim() && closed; ++j)
                    closed = s.contains(c->mul(s.basis.row(i), s.basis.row(j)));
            if (!closed)
                continue;
            Subalgebra b = subalgebra_from_space(c, s);
            auto rank = module_free_rank(kaehler_presentation(c, b));
            if (rank.has_value() && *rank == 0)
                CHECK(s.dim() == 4);
        }
}

TEST_CASE("presentations of concrete modules") {
    auto c = split22();
    // the derivation space Der_k(C) is free of rank 2 over C
    DerivationSpace full = der_space(c, trivial_subalgebra(c));
    ConcreteModule dm = der_space_as_module(full);
    ModulePresentation pres = present_module(dm);
    auto rank = module_free_rank(pres);
    REQUIRE(rank.has_value());
    CHECK(*rank == 2);

    // C/(k + k*xy) is not free: minimal generators 2, dimension 2 over k
    Subalgebra kxy = subalgebra_generate(c, {c->basis_vec(3)});
    ModulePtr qm = quotient_module(c, kxy.space);
    ModulePresentation qp = present_module(*qm);
    CHECK(!module_free_rank(qp).has_value());
}
