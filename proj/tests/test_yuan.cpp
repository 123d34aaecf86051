#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "yuanlab/yuan.hpp"

using namespace yl;

namespace {

AlgebraPtr split(unsigned p, unsigned e, std::size_t n) {
    return truncated_algebra(FiniteField::make(p, e), n);
}

} // namespace

TEST_CASE("point counts on the worked example") {
    auto c = split(2, 1, 2);
    auto pts = enumerate_yuan_points(c, 1);
    REQUIRE(pts.size() == 6);
    for (const auto& pt : pts) {
        CHECK(pt.b.space.dim() == 2);
        Vec row = pt.b.space.basis.row(1);
        CHECK((row[1] != 0 || row[2] != 0)); // a or b nonzero
        CHECK(pt.cert.differential_rank == 1);
        CHECK(pt.cert.rank == 2);
    }
    CHECK(enumerate_yuan_points(c, 2).size() == 1);
    CHECK(enumerate_yuan_points(c, 0).size() == 1); // only B = C

    auto c4 = split(2, 2, 2);
    CHECK(enumerate_yuan_points(c4, 1).size() == 20);
}

TEST_CASE("points are duplicate-free, sorted, certified") {
    auto c = split(2, 1, 3);
    auto pts = enumerate_yuan_points(c, 1);
    CHECK(pts.size() == 448);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        CHECK(pts[i].b.space.before(pts[i + 1].b.space));
    // spot re-verification
    for (std::size_t i = 0; i < pts.size(); i += 97) {
        auto cert = is_galois(pts[i].b);
        REQUIRE(cert.has_value());
        CHECK(cert->differential_rank == 1);
    }
    CHECK(enumerate_yuan_points(c, 2).size() == 112);
}

TEST_CASE("serial reference equals the parallel kernel") {
    for (auto [p, e, n, r] : {std::tuple<unsigned, unsigned, std::size_t, std::size_t>
                                  {2, 1, 2, 1}, {2, 2, 2, 1}, {2, 1, 3, 2}}) {
        auto c = split(p, e, n);
        auto a = enumerate_yuan_points_serial(c, r);
        auto b = enumerate_yuan_points(c, r);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            CHECK(a[i].b.space == b[i].b.space);
    }
}

TEST_CASE("budget guard") {
    auto c = split(3, 1, 3);
    CHECK_THROWS_AS(enumerate_yuan_points(c, 1), engine_error);
    EnumOptions tight;
    tight.max_candidates = 3;
    CHECK_THROWS_AS(enumerate_yuan_points(split(2, 1, 2), 1, tight), engine_error);
}

TEST_CASE("tangent dimensions by both methods") {
    auto c = split(2, 1, 2);
    auto pts = enumerate_yuan_points(c, 1);
    auto reps = tangent_all(c, pts);
    for (const auto& r : reps) {
        CHECK(r.der_dim == 2);
        CHECK(r.lift_count == 4);
        CHECK(r.expected_lifts == 4);
        CHECK(r.formula_dim == 2);
        CHECK(r.ok);
    }
    // single-point variant agrees
    TangentReport one = tangent_dimension(c, pts[0]);
    CHECK(one.der_dim == 2);
    CHECK(one.ok);

    // r = n: the point B = k is rigid
    auto rigid = enumerate_yuan_points(c, 2);
    auto rig_rep = tangent_all(c, rigid);
    CHECK(rig_rep[0].der_dim == 0);
    CHECK(rig_rep[0].lift_count == 1);
    CHECK(rig_rep[0].ok);
}

TEST_CASE("automorphism counts against the closed form") {
    auto c = split(2, 1, 2);
    auto base = truncated_algebra(c->field(), 0);
    auto dual = dual_numbers(c->field());

    CHECK(count_aut(c, base, AutConstraints{1, true}) == 4);
    CHECK(count_aut(c, base, AutConstraints{std::nullopt, true}) == 24);
    CHECK(count_aut(c, dual, AutConstraints{1, false}) == 256);

    CHECK(aut_count_formula(2, 2, 1, 2, AutFlavor::subring_and_max_ideal) == 4);
    CHECK(aut_count_formula(2, 2, 1, 2, AutFlavor::max_ideal) == 24);
    CHECK(aut_count_formula(2, 2, 1, 2, AutFlavor::subring, TestRingKind::dual_numbers) ==
          256);
    CHECK(aut_count_formula(2, 3, 1, 2, AutFlavor::max_ideal) == 688128);
    CHECK(aut_count_formula(2, 3, 1, 2, AutFlavor::subring_and_max_ideal) == 1536);
    CHECK(aut_count_formula(2, 3, 2, 2, AutFlavor::subring_and_max_ideal) == 6144);
    // degenerate r = 0 (the subring is everything): GL_0 is trivial and the
    // count collapses to the max-ideal flavor
    CHECK(aut_count_formula(2, 3, 0, 2, AutFlavor::subring_and_max_ideal) ==
          aut_count_formula(2, 3, 0, 2, AutFlavor::max_ideal));

    // brute force matches the formula on the moderate (2,3) cases
    auto c3 = split(2, 1, 3);
    CHECK(count_aut(c3, base, AutConstraints{1, true}) == 1536);
    CHECK(count_aut(c3, base, AutConstraints{2, true}) == 6144);
}

TEST_CASE("materialized automorphism lists") {
    auto c = split(2, 1, 2);
    auto base = truncated_algebra(c->field(), 0);
    auto pts = enumerate_aut(c, base, AutConstraints{1, true});
    CHECK(pts.size() == 4);
    for (const auto& a : pts) {
        CHECK(a.preserves_subring);
        CHECK(a.preserves_max_ideal);
        CHECK(a.images.size() == 2);
    }
    auto full = enumerate_aut(c, base, AutConstraints{std::nullopt, false});
    CHECK(full.size() == 24); // over a field the constants must vanish
}

TEST_CASE("orbit of the standard point") {
    auto c = split(2, 1, 2);
    YuanPoint seed = standard_point(c, 1);
    CHECK(seed.b.space.contains(c->basis_vec(2))); // k[y]
    OrbitResult orb = orbit(c, seed);
    CHECK(orb.group_order == 24);
    CHECK(orb.stabilizer_order == 4);
    CHECK(orb.index == 6);
    CHECK(orb.orbit.size() == 6);
    auto pts = enumerate_yuan_points(c, 1);
    REQUIRE(pts.size() == orb.orbit.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        CHECK(pts[i].b.space == orb.orbit[i].b.space);

    // the rank-n point is fixed by everything
    YuanPoint rigid = standard_point(c, 2);
    OrbitResult orb2 = orbit(c, rigid);
    CHECK(orb2.index == 1);
    CHECK(orb2.orbit.size() == 1);
}

TEST_CASE("correspondence laws at enumerated points") {
    auto c = split(2, 1, 2);
    for (const auto& pt : enumerate_yuan_points(c, 1)) {
        DerivationSpace g = der_space(c, pt.b);
        CHECK(kernel_of(g).space == pt.b.space);
        CHECK(g.dim() == pt.cert.differential_rank * c->dim()); // free of rank r over C
        auto rank = module_free_rank(present_module(der_space_as_module(g)));
        REQUIRE(rank.has_value());
        CHECK(*rank == pt.cert.differential_rank);
    }
}

TEST_CASE("count table rows") {
    auto rows = point_count_table(2, 2, 1, 2, 2);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].count == 6);
    CHECK(rows[0].orbit_predicted == 6);
    CHECK(rows[0].status == "OK");
    CHECK(rows[1].count == 20);
    CHECK(rows[1].orbit_predicted == 20);
    CHECK(rows[1].status == "OK");
    CHECK(rows[0].tangent_dims.at(2) == 6);

    // a row beyond the budget is skipped, not failed
    auto skipped = point_count_table(3, 3, 1, 3, 1);
    REQUIRE(skipped.size() == 1);
    CHECK(skipped[0].status == "SKIPPED");
}

TEST_CASE("identical options give identical results") {
    auto c = split(2, 1, 3);
    EnumOptions o1;
    o1.jobs = 1;
    EnumOptions o2;
    o2.jobs = 2;
    auto a = enumerate_yuan_points(c, 2, o1);
    auto b = enumerate_yuan_points(c, 2, o2);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a[i].b.space == b[i].b.space);
}
