#include "yuanlab/checks.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "yuanlab/serialize.hpp"

namespace yl {

namespace {

AlgebraPtr split22() { return truncated_algebra(FiniteField::make(2, 1), 2); }

AlgebraPtr chain4() {
    auto f2 = FiniteField::make(2, 1);
    Vec y(4, 0);
    y[2] = 1;
    return truncated_algebra(f2, 2, {y, Vec{}});
}

std::string repro(const std::string& what, const json& data) {
    json j{{"instance", what}, {"data", data}};
    return j.dump();
}

void add(std::vector<CheckResult>& out, const std::string& name, bool pass,
         const std::string& detail = "") {
    out.push_back({name, pass, pass ? "" : detail});
}

// all subalgebras of a small algebra whose unit is the first basis vector
std::vector<Subalgebra> all_subalgebras(const AlgebraPtr& c) {
    const std::size_t m = c->dim();
    std::vector<Subalgebra> out;
    Matrix buf;
    for (std::size_t w = 0; w + 1 <= m; ++w) {
        RrefWalker walker(c->field(), m - 1, w);
        for (std::size_t pi = 0; pi < walker.patterns.size(); ++pi)
            for (std::uint64_t k = 0; k < walker.pattern_counts[pi]; ++k) {
                walker.decode(pi, k, buf);
                std::vector<Vec> rows = {c->unit()};
                for (std::size_t i = 0; i < w; ++i) {
                    Vec v(m, 0);
                    for (std::size_t j = 0; j + 1 < m; ++j)
                        v[j + 1] = buf.at(i, j);
                    rows.push_back(std::move(v));
                }
                Subspace s = span_of(c->field(), rows, m);
                bool closed = true;
                for (std::size_t i = 0; i < s.dim() && closed; ++i)
                    for (std::size_t j = i; j < s.dim() && closed; ++j)
                        closed = s.contains(c->mul(s.basis.row(i), s.basis.row(j)));
                if (!closed)
                    continue;
                Subalgebra b;
                b.parent = c;
                b.space = std::move(s);
                out.push_back(std::move(b));
            }
    }
    return out;
}

// all ideals of a small algebra
std::vector<Ideal> all_ideals(const AlgebraPtr& c) {
    const std::size_t m = c->dim();
    std::vector<Ideal> out;
    Matrix buf;
    for (std::size_t w = 0; w <= m; ++w) {
        RrefWalker walker(c->field(), m, w);
        for (std::size_t pi = 0; pi < walker.patterns.size(); ++pi)
            for (std::uint64_t k = 0; k < walker.pattern_counts[pi]; ++k) {
                walker.decode(pi, k, buf);
                Subspace s = canonical_echelon(buf);
                bool closed = true;
                for (std::size_t i = 0; i < s.dim() && closed; ++i)
                    for (std::size_t j = 0; j < m && closed; ++j)
                        closed = s.contains(c->mul_basis(j, s.basis.row(i)));
                if (!closed)
                    continue;
                Ideal id;
                id.parent = c;
                id.space = std::move(s);
                out.push_back(std::move(id));
            }
    }
    return out;
}

Matrix random_invertible(const FieldPtr& f, std::size_t n, std::mt19937_64& rng) {
    while (true) {
        Matrix m(f, n, n);
        for (auto& x : m.a)
            x = fq(rng() % f->q());
        if (canonical_echelon(m).dim() == n)
            return m;
    }
}

Matrix invert(const Matrix& t) {
    const std::size_t n = t.rows;
    Matrix aug(t.field, n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug.at(i, j) = t.at(i, j);
        aug.at(i, n + i) = 1;
    }
    Subspace ech = rref_generic(aug);
    Matrix inv(t.field, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv.at(i, j) = ech.basis.at(i, n + j);
    return inv;
}

AlgebraPtr rebase(const AlgebraPtr& a, const Matrix& t, const Matrix& tinv) {
    const std::size_t m = a->dim();
    std::vector<SparseVec> mul(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
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

AlgebraPtr random_twist(const AlgebraPtr& model, std::mt19937_64& rng) {
    Matrix t = random_invertible(model->field(), model->dim(), rng);
    return rebase(model, t, invert(t));
}

std::vector<AlgebraPtr> twist_models() {
    return {truncated_algebra(FiniteField::make(2, 1), 1),
            truncated_algebra(FiniteField::make(2, 1), 2),
            truncated_algebra(FiniteField::make(3, 1), 1),
            truncated_algebra(FiniteField::make(3, 1), 2)};
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> suite_diffsimple(std::uint64_t seed) {
    std::vector<CheckResult> out;
    auto c = split22();

    // dual-algorithm agreement over all subalgebras of the (2,2) algebra
    bool agree = true;
    std::string bad;
    for (const auto& b : all_subalgebras(c)) {
        ReifiedSubalgebra rb = subalgebra_as_algebra(b);
        DiffSimpleResult ds = is_diff_simple(rb.algebra); // internal cross-check too
        bool pb = has_p_basis_over_field(rb.algebra);
        if (ds.simple != pb) {
            agree = false;
            bad = repro("subalgebra", subspace_to_json(b.space));
            break;
        }
    }
    add(out, "diffsimple: dual algorithms agree on all (2,2) subalgebras", agree, bad);

    // quotients of the (2,2) algebra
    bool q_ok = true;
    std::string q_bad;
    for (const auto& id : all_ideals(c)) {
        if (id.space.dim() == c->dim())
            continue;
        AlgebraPtr quo = quotient(c, id).algebra;
        DiffSimpleResult ds = is_diff_simple(quo);
        bool pb = has_p_basis_over_field(quo);
        if (ds.simple != pb) {
            q_ok = false;
            q_bad = repro("ideal", subspace_to_json(id.space));
            break;
        }
    }
    add(out, "diffsimple: dual algorithms agree on all (2,2) quotients", q_ok, q_bad);

    auto c3 = truncated_algebra(FiniteField::make(3, 1), 1);
    add(out, "diffsimple: F_3[x]/(x^3) is simple", is_diff_simple(c3).simple);

    auto c4 = chain4();
    DiffSimpleResult r4 = is_diff_simple(c4);
    Ideal xsq = ideal_generate(c4, {c4->basis_vec(2)});
    add(out, "diffsimple: F_2[x]/(x^4) fails with certificate (x^2)",
        !r4.simple && r4.certificate.space == xsq.space,
        repro("certificate", subspace_to_json(r4.certificate.space)));

    // seeded twists preserve simplicity
    std::mt19937_64 rng(seed ^ 0x5eed);
    bool twist_ok = true;
    for (int it = 0; it < 20 && twist_ok; ++it)
        for (const auto& model : twist_models())
            twist_ok = twist_ok && is_diff_simple(random_twist(model, rng)).simple;
    add(out, "diffsimple: 80 seeded twists of split models stay simple", twist_ok);
    return out;
}

std::vector<CheckResult> suite_harper(std::uint64_t seed, std::size_t count) {
    std::vector<CheckResult> out;
    std::mt19937_64 rng(seed);
    auto models = twist_models();
    bool ok = true;
    std::string bad;
    for (std::size_t it = 0; it < count && ok; ++it) {
        const auto& model = models[it % models.size()];
        AlgebraPtr twisted = random_twist(model, rng);
        AlgebraIsomorphism iso = harper_normal_form(twisted);
        const std::size_t m = model->dim();
        ok = iso.forward.mul(iso.inverse) == Matrix::identity(model->field(), m) &&
             iso.inverse.mul(iso.forward) == Matrix::identity(model->field(), m) &&
             iso.source->dim() == m;
        if (!ok)
            bad = repro("twisted algebra", algebra_to_json(*twisted));
    }
    add(out, "harper: " + std::to_string(count) + " seeded twists recover the model", ok,
        bad);
    return out;
}

std::vector<CheckResult> suite_annihilator() {
    std::vector<CheckResult> out;

    // exhaustively over m \ m^2 of the (2,2) algebra: ann(f) = f^{p-1} R = f R
    auto c = split22();
    const Subspace& m = c->nilradical();
    SpanBuilder msq(c->field(), c->dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = i; j < m.dim(); ++j)
            msq.add(c->mul(m.basis.row(i), m.basis.row(j)));
    bool ok = true;
    std::string bad;
    const std::uint32_t q = c->field()->q();
    std::vector<std::size_t> dims(m.dim(), 0);
    // walk all elements of the maximal ideal
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < m.dim(); ++i)
        total *= q;
    for (std::uint64_t v = 1; v < total && ok; ++v) {
        Vec f(c->dim(), 0);
        std::uint64_t t = v;
        for (std::size_t i = 0; i < m.dim(); ++i) {
            fq coef = fq(t % q);
            t /= q;
            if (coef == 0)
                continue;
            for (std::size_t j = 0; j < c->dim(); ++j)
                f[j] = c->field()->add(f[j], c->field()->mul(coef, m.basis.at(i, j)));
        }
        if (msq.contains(f))
            continue; // only f outside m^2
        Vec fp = c->power(f, c->field()->p() - 1);
        Ideal lhs = annihilator(c, f);
        Ideal rhs = ideal_generate(c, {fp});
        if (!(lhs.space == rhs.space)) {
            ok = false;
            bad = repro("f", vec_to_json(f));
        }
    }
    add(out, "annihilator: ann(f) = f^{p-1} R on all f in m minus m^2 of (2,2)", ok, bad);

    // the p = 3 chain: ann(f) = f^2 R
    auto c3 = truncated_algebra(FiniteField::make(3, 1), 1);
    bool ok3 = true;
    for (fq a = 1; a < 3 && ok3; ++a)
        for (fq b = 0; b < 3 && ok3; ++b) {
            Vec f(3, 0);
            f[1] = a;
            f[2] = b;
            Ideal lhs = annihilator(c3, f);
            Ideal rhs = ideal_generate(c3, {c3->mul(f, f)});
            ok3 = lhs.space == rhs.space;
        }
    add(out, "annihilator: ann(f) = f^2 R on F_3[x]/(x^3)", ok3);
    return out;
}

std::vector<CheckResult> suite_quotients(std::uint64_t seed) {
    std::vector<CheckResult> out;
    auto c = split22();
    const FiniteField& f = *c->field();

    // independent oracle: ideals generated by part of a minimal generating
    // set, collected exhaustively over all candidate generator pairs
    std::set<std::vector<fq>> good;
    good.insert(zero_ideal(c).space.basis.a); // empty part
    const Subspace& m = c->nilradical();
    SpanBuilder msq_b(c->field(), c->dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = i; j < m.dim(); ++j)
            msq_b.add(c->mul(m.basis.row(i), m.basis.row(j)));
    Subspace msq = msq_b.to_subspace();
    std::vector<Vec> m_elems;
    for (std::uint64_t v = 1; v < 8; ++v) {
        Vec g(c->dim(), 0);
        std::uint64_t t = v;
        for (std::size_t i = 0; i < 3; ++i) {
            if (t & 1)
                for (std::size_t j = 0; j < 4; ++j)
                    g[j] = f.add(g[j], m.basis.at(i, j));
            t >>= 1;
        }
        m_elems.push_back(std::move(g));
    }
    for (const auto& g1 : m_elems) {
        if (msq.contains(g1))
            continue;
        good.insert(ideal_generate(c, {g1}).space.basis.a);
        for (const auto& g2 : m_elems) {
            // independent modulo m^2
            Subspace mod = msq;
            SpanBuilder sb(c->field(), c->dim());
            for (std::size_t i = 0; i < msq.dim(); ++i)
                sb.add(msq.basis.row(i));
            if (!sb.add(g1) || !sb.add(g2))
                continue;
            good.insert(ideal_generate(c, {g1, g2}).space.basis.a);
            (void)mod;
        }
    }

    bool ok = true;
    std::string bad;
    for (const auto& id : all_ideals(c)) {
        if (id.space.dim() == c->dim())
            continue;
        bool simple = is_diff_simple(quotient(c, id).algebra).simple;
        bool part = good.count(id.space.basis.a) > 0;
        if (simple != part) {
            ok = false;
            bad = repro("ideal", subspace_to_json(id.space));
            break;
        }
    }
    add(out, "quotients: R/I simple iff I generated by part of a minimal system", ok, bad);

    // seeded derivation lifts: proj . D = delta . proj
    std::mt19937_64 rng(seed ^ 0x11f7);
    bool lift_ok = true;
    std::string lift_bad;
    std::vector<AlgebraPtr> cs = {c, truncated_algebra(FiniteField::make(3, 1), 1),
                                  truncated_algebra(FiniteField::make(2, 1), 3)};
    for (int it = 0; it < 50 && lift_ok; ++it) {
        const AlgebraPtr& cc = cs[it % cs.size()];
        // random proper ideal from one or two random maximal-ideal elements
        const Subspace& mm = cc->nilradical();
        auto rand_m_elem = [&]() {
            Vec g(cc->dim(), 0);
            for (std::size_t i = 0; i < mm.dim(); ++i) {
                fq coef = fq(rng() % cc->field()->q());
                if (coef == 0)
                    continue;
                for (std::size_t j = 0; j < cc->dim(); ++j)
                    g[j] = cc->field()->add(g[j], cc->field()->mul(coef, mm.basis.at(i, j)));
            }
            return g;
        };
        std::vector<Vec> gens = {rand_m_elem()};
        if (rng() & 1)
            gens.push_back(rand_m_elem());
        Ideal id = ideal_generate(cc, gens);
        if (id.space.dim() == cc->dim())
            continue;
        QuotientResult qr = quotient(cc, id);
        DerivationSpace dq = der_space(qr.algebra, trivial_subalgebra(qr.algebra));
        if (dq.dim() == 0)
            continue;
        // random element of the derivation space
        Matrix dm(cc->field(), qr.algebra->dim(), qr.algebra->dim());
        for (const auto& d : dq.basis) {
            fq coef = fq(rng() % cc->field()->q());
            if (coef == 0)
                continue;
            for (std::size_t a = 0; a < dm.a.size(); ++a)
                dm.a[a] = cc->field()->add(dm.a[a], cc->field()->mul(coef, d.matrix.a[a]));
        }
        Derivation delta = make_derivation(qr.algebra, dm);
        Derivation lifted = lift_derivation(cc, id, delta);
        if (!(qr.projection.mul(lifted.matrix) == delta.matrix.mul(qr.projection))) {
            lift_ok = false;
            lift_bad = repro("ideal", subspace_to_json(id.space));
        }
    }
    add(out, "quotients: 50 seeded derivation lifts commute with the projection", lift_ok,
        lift_bad);
    return out;
}

std::vector<CheckResult> suite_galois() {
    std::vector<CheckResult> out;
    auto c = split22();

    // expected Galois subalgebras of the (2,2) algebra: k, C, and the six
    // planes k + k(ax + by + cxy) with (a,b) nonzero
    bool class_ok = true;
    std::string bad;
    std::size_t n_galois = 0;
    for (const auto& b : all_subalgebras(c)) {
        auto cert = is_galois(b);
        bool expected;
        if (b.space.dim() == 1 || b.space.dim() == 4)
            expected = true;
        else if (b.space.dim() == 2) {
            Vec row = b.space.basis.row(1);
            expected = row[1] != 0 || row[2] != 0;
        } else {
            expected = false; // dimension 3 cannot divide 4
        }
        if (cert.has_value() != expected) {
            class_ok = false;
            bad = repro("subalgebra", subspace_to_json(b.space));
            break;
        }
        if (!cert.has_value())
            continue;
        ++n_galois;
        // rank multiplicativity and the split-exactness witness
        class_ok = class_ok && c->dim() == cert->rank * b.space.dim() &&
                   cert->witness[0] == c->unit() && fiber_check(b);
        // certified top implies certified bottom
        ReifiedSubalgebra rb = subalgebra_as_algebra(b);
        class_ok = class_ok && is_galois(trivial_subalgebra(rb.algebra)).has_value();
        // generator extension
        std::vector<Vec> gens = extend_generators(*cert);
        SpanBuilder sb(c->field(), c->dim());
        const Subspace& mm = c->nilradical();
        SpanBuilder msq(c->field(), c->dim());
        for (std::size_t i = 0; i < mm.dim(); ++i)
            for (std::size_t j = i; j < mm.dim(); ++j)
                msq.add(c->mul(mm.basis.row(i), mm.basis.row(j)));
        Subspace msq_s = msq.to_subspace();
        for (std::size_t i = 0; i < msq_s.dim(); ++i)
            sb.add(msq_s.basis.row(i));
        bool indep = true;
        for (const auto& g : gens)
            indep = indep && sb.add(g);
        class_ok = class_ok && indep && gens.size() == 2;
        if (!class_ok) {
            bad = repro("subalgebra", subspace_to_json(b.space));
            break;
        }
    }
    add(out, "galois: (2,2) subalgebra classification and certificate laws",
        class_ok && n_galois == 8, bad);

    // non-field base
    auto c4 = chain4();
    Subalgebra a = subalgebra_generate(c4, {c4->basis_vec(2)});
    auto cert = is_galois(a);
    bool nf = cert.has_value() && cert->differential_rank == 1 &&
              cert->p_basis.elements == std::vector<Vec>{c4->basis_vec(1)} &&
              fiber_check(a);
    if (nf) {
        SplitBaseChange sp = split_after_base_change(*cert);
        nf = sp.tensor->dim() == 8 && sp.splitting.verified &&
             sp.tensor->mul(sp.z[0], sp.z[0]) == Vec(8, 0);
    }
    add(out, "galois: non-field base k + k x^2 in F_2[x]/(x^4) splits after base change",
        nf);
    return out;
}

std::vector<CheckResult> suite_yuan(const EnumOptions& opts) {
    std::vector<CheckResult> out;
    auto f2 = FiniteField::make(2, 1);
    auto c = truncated_algebra(f2, 2);

    auto pts = enumerate_yuan_points(c, 1, opts);
    bool forms = pts.size() == 6;
    for (const auto& pt : pts) {
        if (pt.b.space.dim() != 2) {
            forms = false;
            break;
        }
        Vec row = pt.b.space.basis.row(1);
        forms = forms && (row[1] != 0 || row[2] != 0);
    }
    add(out, "yuan: (2,2,1) over F_2 has the six planes k+k(ax+by+cxy)", forms);

    auto f4 = FiniteField::make(2, 2);
    auto c44 = truncated_algebra(f4, 2);
    add(out, "yuan: (2,2,1) over F_4 has 20 = q^2 + q points",
        enumerate_yuan_points(c44, 1, opts).size() == 20);
    add(out, "yuan: (2,2,2) has the single point k",
        enumerate_yuan_points(c, 2, opts).size() == 1);

    // serial reference equals the parallel kernel
    auto serial = enumerate_yuan_points_serial(c44, 1, opts);
    auto parallel = enumerate_yuan_points(c44, 1, opts);
    bool same = serial.size() == parallel.size();
    for (std::size_t i = 0; same && i < serial.size(); ++i)
        same = serial[i].b.space == parallel[i].b.space;
    add(out, "yuan: serial reference equals the parallel enumeration", same);

    auto c3 = truncated_algebra(f2, 3);
    add(out, "yuan: (2,3,1) count 448", enumerate_yuan_points(c3, 1, opts).size() == 448);
    add(out, "yuan: (2,3,2) count 112", enumerate_yuan_points(c3, 2, opts).size() == 112);

    // the correspondence at every (2,2,1) point
    bool corr = true;
    std::string bad;
    for (const auto& pt : pts) {
        DerivationSpace g = der_space(c, pt.b);
        corr = kernel_of(g).space == pt.b.space;
        std::vector<Vec> flats;
        for (const auto& d : g.basis)
            flats.push_back(d.matrix.a);
        Subspace span = span_of(f2, flats, 16);
        for (const auto& d1 : g.basis)
            for (const auto& d2 : g.basis)
                corr = corr && span.contains(bracket(d1, d2).matrix.a) &&
                       span.contains(p_power(d1).matrix.a);
        for (std::size_t i = 0; i < c->dim() && corr; ++i)
            for (const auto& d : g.basis)
                corr = corr &&
                       span.contains(c->mult_matrix(c->basis_vec(i)).mul(d.matrix).a);
        auto rank = module_free_rank(present_module(der_space_as_module(g)));
        corr = corr && rank.has_value() && *rank == pt.cert.differential_rank;
        if (!corr) {
            bad = repro("point", subspace_to_json(pt.b.space));
            break;
        }
    }
    add(out, "yuan: correspondence laws at every (2,2,1) point", corr, bad);

    // tangent methods agree
    auto reps = tangent_all(c, pts, opts);
    bool tan = true;
    for (const auto& r : reps)
        tan = tan && r.ok && r.der_dim == 2 && r.lift_count == 4;
    add(out, "yuan: tangent dimension 2 by both methods at every (2,2,1) point", tan);

    // count table with the exact law
    auto rows = point_count_table(2, 2, 1, 2, 2, opts);
    bool table = rows.size() == 2 && rows[0].status == "OK" && rows[1].status == "OK" &&
                 rows[0].count == 6 && rows[1].count == 20;
    add(out, "yuan: count table (2,2,1) over F_2 and F_4 follows q^2 + q", table);
    return out;
}

std::vector<CheckResult> suite_aut(const EnumOptions& opts) {
    std::vector<CheckResult> out;
    auto f2 = FiniteField::make(2, 1);
    auto c = truncated_algebra(f2, 2);
    auto base = truncated_algebra(f2, 0);
    auto dual = dual_numbers(f2);

    auto check_case = [&](const std::string& name, AlgebraPtr cc, AlgebraPtr ring,
                          AutConstraints cons, std::uint64_t formula) {
        std::uint64_t brute = count_aut(cc, ring, cons, opts);
        add(out, "aut: " + name + " brute " + std::to_string(brute) + " = formula " +
                     std::to_string(formula),
            brute == formula);
    };
    check_case("(2,2,1) {B,m} over F_2", c, base, AutConstraints{1, true},
               aut_count_formula(2, 2, 1, 2, AutFlavor::subring_and_max_ideal));
    check_case("(2,2,1) {m} over F_2", c, base, AutConstraints{std::nullopt, true},
               aut_count_formula(2, 2, 1, 2, AutFlavor::max_ideal));
    check_case("(2,2,1) {B} over F_2[eps]", c, dual, AutConstraints{1, false},
               aut_count_formula(2, 2, 1, 2, AutFlavor::subring,
                                 TestRingKind::dual_numbers));
    auto c3 = truncated_algebra(f2, 3);
    check_case("(2,3,1) {B,m} over F_2", c3, base, AutConstraints{1, true},
               aut_count_formula(2, 3, 1, 2, AutFlavor::subring_and_max_ideal));
    check_case("(2,3,2) {B,m} over F_2", c3, base, AutConstraints{2, true},
               aut_count_formula(2, 3, 2, 2, AutFlavor::subring_and_max_ideal));
    auto f4 = FiniteField::make(2, 2);
    auto c44 = truncated_algebra(f4, 2);
    auto base4 = truncated_algebra(f4, 0);
    check_case("(2,2,1) {B,m} over F_4", c44, base4, AutConstraints{1, true},
               aut_count_formula(2, 2, 1, 4, AutFlavor::subring_and_max_ideal));

    // orbit consistency at (2,2,1)
    auto seed_pt = standard_point(c, 1);
    OrbitResult orb = orbit(c, seed_pt, opts);
    auto pts = enumerate_yuan_points(c, 1, opts);
    add(out, "aut: (2,2,1) orbit index equals the enumerated count",
        orb.index == pts.size() && orb.orbit.size() == pts.size());
    add(out, "aut: (2,2,1) stabilizer order equals the {B,m} count",
        orb.stabilizer_order ==
            aut_count_formula(2, 2, 1, 2, AutFlavor::subring_and_max_ideal));
    return out;
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "diffsimple", "harper", "annihilator", "quotients", "galois", "yuan", "aut", "all"};
    return names;
}

std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed,
                                   const EnumOptions& opts) {
    std::vector<CheckResult> out;
    bool known = false;
    auto want = [&](const char* name) {
        bool w = suite == name || suite == "all";
        known = known || suite == name;
        return w;
    };
    if (want("diffsimple")) {
        auto r = suite_diffsimple(seed);
        out.insert(out.end(), r.begin(), r.end());
    }
    if (want("harper")) {
        auto r = suite_harper(seed, 100);
        out.insert(out.end(), r.begin(), r.end());
    }
    if (want("annihilator")) {
        auto r = suite_annihilator();
        out.insert(out.end(), r.begin(), r.end());
    }
    if (want("quotients")) {
        auto r = suite_quotients(seed);
        out.insert(out.end(), r.begin(), r.end());
    }
    if (want("galois")) {
        auto r = suite_galois();
        out.insert(out.end(), r.begin(), r.end());
    }
    if (want("yuan")) {
        auto r = suite_yuan(opts);
        out.insert(out.end(), r.begin(), r.end());
    }
    if (want("aut")) {
        auto r = suite_aut(opts);
        out.insert(out.end(), r.begin(), r.end());
    }
    require(known || suite == "all", errc::bad_parameters, "unknown suite " + suite);
    return out;
}

} // namespace yl
