#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "yuanlab/galois.hpp"

using namespace yl;

namespace {

AlgebraPtr split22() { return truncated_algebra(FiniteField::make(2, 1), 2); }

AlgebraPtr chain4() {
    auto f2 = FiniteField::make(2, 1);
    Vec y(4, 0);
    y[2] = 1;
    return truncated_algebra(f2, 2, {y, Vec{}});
}

Vec add_vecs(const FieldPtr& f, const Vec& a, const Vec& b) {
    Vec out = a;
    for (std::size_t i = 0; i < b.size(); ++i)
        out[i] = f->add(out[i], b[i]);
    return out;
}

} // namespace

TEST_CASE("exponent-one predicate") {
    auto c = split22();
    CHECK(is_exponent_one(trivial_subalgebra(c)));
    Subalgebra whole = subalgebra_generate(c, {c->basis_vec(1), c->basis_vec(2)});
    CHECK(is_exponent_one(whole));

    auto c4 = chain4();
    CHECK(!is_exponent_one(trivial_subalgebra(c4))); // x^2 is not scalar
    Subalgebra a = subalgebra_generate(c4, {c4->basis_vec(2)});
    CHECK(is_exponent_one(a));
}

TEST_CASE("galois certificates in the split (2,2) algebra") {
    auto c = split22();
    auto f = c->field();

    // B = k + k(x+y): certificate with rank 2, differential rank 1
    Vec xpy = add_vecs(f, c->basis_vec(1), c->basis_vec(2));
    Subalgebra b = subalgebra_generate(c, {xpy});
    auto cert = is_galois(b);
    REQUIRE(cert.has_value());
    CHECK(cert->rank == 2);
    CHECK(cert->differential_rank == 1);
    CHECK(cert->p_basis.verified);
    CHECK(cert->p_basis.elements == std::vector<Vec>{c->basis_vec(1)});
    CHECK(differential_rank(*cert) == 1);
    CHECK(cert->witness[0] == c->unit()); // the base is a visible direct summand

    // B = k + k*xy is not Galois
    Subalgebra bad = subalgebra_generate(c, {c->basis_vec(3)});
    CHECK(!is_galois(bad).has_value());

    // the whole algebra over k: rank 4, differential rank 2
    Subalgebra k = trivial_subalgebra(c);
    auto certk = is_galois(k);
    REQUIRE(certk.has_value());
    CHECK(certk->rank == 4);
    CHECK(certk->differential_rank == 2);

    // B = C: rank 1, empty p-basis
    Subalgebra whole = subalgebra_generate(c, {c->basis_vec(1), c->basis_vec(2)});
    auto certw = is_galois(whole);
    REQUIRE(certw.has_value());
    CHECK(certw->rank == 1);
    CHECK(certw->differential_rank == 0);

    // non-exponent-one input is a precondition violation
    auto c4 = chain4();
    CHECK_THROWS_AS(is_galois(trivial_subalgebra(c4)), engine_error);
}

TEST_CASE("intermediate extension: certified top implies certified bottom") {
    auto c = split22();
    Vec xpy = add_vecs(c->field(), c->basis_vec(1), c->basis_vec(2));
    for (const Vec& gen : {c->basis_vec(1), c->basis_vec(2), xpy}) {
        Subalgebra b = subalgebra_generate(c, {gen});
        auto cert = is_galois(b);
        REQUIRE(cert.has_value());
        // reify B and test k <= B through the general (no-presentation) route
        ReifiedSubalgebra rb = subalgebra_as_algebra(b);
        auto cert_base = is_galois(trivial_subalgebra(rb.algebra));
        REQUIRE(cert_base.has_value());
        CHECK(cert_base->differential_rank == 1);
        // rank multiplicativity: dim C = rank * dim B
        CHECK(c->dim() == cert->rank * b.space.dim());
    }
}

TEST_CASE("tower rank additivity") {
    auto c = split22();
    Subalgebra ky = subalgebra_generate(c, {c->basis_vec(2)});
    auto cert_top = is_galois(ky);          // C over k[y]: rank 1
    auto cert_all = is_galois(trivial_subalgebra(c)); // C over k: rank 2
    REQUIRE(cert_top.has_value());
    REQUIRE(cert_all.has_value());
    ReifiedSubalgebra rb = subalgebra_as_algebra(ky);
    auto cert_bot = is_galois(trivial_subalgebra(rb.algebra)); // k[y] over k
    REQUIRE(cert_bot.has_value());
    CHECK(cert_all->differential_rank ==
          cert_top->differential_rank + cert_bot->differential_rank);
}

TEST_CASE("non-field base: A = k + k x^2 inside the chain algebra") {
    auto c4 = chain4();
    Subalgebra a = subalgebra_generate(c4, {c4->basis_vec(2)});
    auto cert = is_galois(a);
    REQUIRE(cert.has_value());
    CHECK(cert->rank == 2);
    CHECK(cert->differential_rank == 1);
    CHECK(cert->p_basis.elements == std::vector<Vec>{c4->basis_vec(1)});

    CHECK(fiber_check(a));

    SplitBaseChange sp = split_after_base_change(*cert);
    CHECK(sp.tensor->dim() == 8);
    REQUIRE(sp.z.size() == 1);
    CHECK(sp.tensor->mul(sp.z[0], sp.z[0]) == Vec(8, 0));
    CHECK(sp.splitting.verified);
}

TEST_CASE("split base change over the scalars") {
    auto c = split22();
    auto cert = is_galois(trivial_subalgebra(c));
    REQUIRE(cert.has_value());
    SplitBaseChange sp = split_after_base_change(*cert);
    CHECK(sp.tensor->dim() == 16);
    const Vec zero(16, 0);
    for (const auto& z : sp.z)
        CHECK(sp.tensor->power(z, 2) == zero);
    CHECK(sp.splitting.verified);

    // B = C: the tensor collapses and the splitting basis is empty
    Subalgebra whole = subalgebra_generate(c, {c->basis_vec(1), c->basis_vec(2)});
    auto certw = is_galois(whole);
    REQUIRE(certw.has_value());
    SplitBaseChange spw = split_after_base_change(*certw);
    CHECK(spw.tensor->dim() == 4);
    CHECK(spw.z.empty());
}

TEST_CASE("generator extension along certified pairs") {
    auto c = split22();
    Subalgebra ky = subalgebra_generate(c, {c->basis_vec(2)});
    auto cert = is_galois(ky);
    REQUIRE(cert.has_value());
    std::vector<Vec> gens = extend_generators(*cert);
    REQUIRE(gens.size() == 2);
    CHECK(gens[0] == c->basis_vec(2)); // {y} extends to {y, x}

    Vec xpy = add_vecs(c->field(), c->basis_vec(1), c->basis_vec(2));
    Subalgebra b = subalgebra_generate(c, {xpy});
    auto cert2 = is_galois(b);
    REQUIRE(cert2.has_value());
    std::vector<Vec> gens2 = extend_generators(*cert2);
    REQUIRE(gens2.size() == 2);
    CHECK(gens2[0] == xpy);

    // B = C: generators unchanged
    Subalgebra whole = subalgebra_generate(c, {c->basis_vec(1), c->basis_vec(2)});
    auto certw = is_galois(whole);
    std::vector<Vec> gensw = extend_generators(*certw);
    CHECK(gensw.size() == 2);
}

TEST_CASE("fiber check on certified pairs") {
    auto c = split22();
    for (const Vec& gen : {c->basis_vec(1), c->basis_vec(2)}) {
        Subalgebra b = subalgebra_generate(c, {gen});
        REQUIRE(is_galois(b).has_value());
        CHECK(fiber_check(b));
    }
    CHECK(fiber_check(trivial_subalgebra(c)));
}
