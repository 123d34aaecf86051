#include "yuanlab/yuan.hpp"

#include <algorithm>
#include <map>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace yl {

namespace {

int worker_count(const EnumOptions& opts) {
#ifdef _OPENMP
    return opts.jobs > 0 ? opts.jobs : omp_get_max_threads();
#else
    (void)opts;
    return 1;
#endif
}

void check_split_base(const FiniteAlgebra& c) {
    const auto& amb = c.ambient();
    require(amb.has_value() && amb->split, errc::bad_parameters,
            "enumeration needs a split monomial presentation");
    Vec e0(c.dim(), 0);
    e0[0] = 1;
    require(c.unit() == e0, errc::bad_parameters, "unit must be the first basis vector");
}

std::uint64_t int_pow(std::uint64_t b, std::uint64_t e) {
    std::uint64_t out = 1;
    for (std::uint64_t i = 0; i < e; ++i)
        out *= b;
    return out;
}

// subspace spanned by the unit and the lifted walker rows; already canonical
Subspace lift_through_unit(const FieldPtr& f, const Matrix& rref,
                           const std::vector<std::size_t>& pattern, std::size_t m) {
    Subspace s;
    s.ambient = m;
    s.basis = Matrix(f, rref.rows + 1, m);
    s.basis.at(0, 0) = 1;
    s.pivots.push_back(0);
    for (std::size_t i = 0; i < rref.rows; ++i) {
        for (std::size_t j = 0; j < m - 1; ++j)
            s.basis.at(i + 1, j + 1) = rref.at(i, j);
        s.pivots.push_back(pattern[i] + 1);
    }
    return s;
}

bool multiplicatively_closed(const FiniteAlgebra& c, const Subspace& s, Vec& work) {
    for (std::size_t i = 1; i < s.dim(); ++i)
        for (std::size_t j = i; j < s.dim(); ++j) {
            c.mul_into(s.basis.row(i), s.basis.row(j), work);
            Vec red = s.reduce(work);
            if (!std::all_of(red.begin(), red.end(), [](fq x) { return x == 0; }))
                return false;
        }
    return true;
}

std::vector<YuanPoint> enumerate_impl(AlgebraPtr c, std::size_t r, const EnumOptions& opts,
                                      bool parallel) {
    check_split_base(*c);
    const auto& amb = *c->ambient();
    const std::size_t n = amb.n_vars, m = c->dim();
    require(r <= n, errc::bad_parameters, "differential rank out of range");
    const unsigned p = c->field()->p();
    const std::size_t dim_b = std::size_t(int_pow(p, n - r));
    const std::size_t w = dim_b - 1;

    std::uint64_t total = gaussian_binomial(m - 1, w, c->field()->q(), opts.max_candidates);
    require(total <= opts.max_candidates, errc::too_large,
            "candidate count exceeds the budget");

    RrefWalker walker(c->field(), m - 1, w);
    const std::size_t npat = walker.patterns.size();
    std::vector<std::vector<YuanPoint>> per_pattern(npat);

    auto scan_pattern = [&](std::size_t pi) {
        Matrix out;
        Vec work(m, 0);
        auto& local = per_pattern[pi];
        for (std::uint64_t k = 0; k < walker.pattern_counts[pi]; ++k) {
            walker.decode(pi, k, out);
            Subspace s = lift_through_unit(c->field(), out, walker.patterns[pi], m);
            if (!multiplicatively_closed(*c, s, work))
                continue;
            Subalgebra b;
            b.parent = c;
            b.space = std::move(s);
            auto cert = is_galois(b);
            if (!cert.has_value())
                continue;
            require(cert->differential_rank == r, errc::internal_disagreement,
                    "certified rank differs from the requested rank");
            local.push_back(YuanPoint{std::move(b), std::move(*cert)});
        }
    };

    if (parallel) {
#ifdef _OPENMP
        const int nt = worker_count(opts);
#pragma omp parallel for schedule(dynamic) num_threads(nt)
        for (std::size_t pi = 0; pi < npat; ++pi)
            scan_pattern(pi);
#else
        for (std::size_t pi = 0; pi < npat; ++pi)
            scan_pattern(pi);
#endif
    } else {
        for (std::size_t pi = 0; pi < npat; ++pi)
            scan_pattern(pi);
    }

    std::vector<YuanPoint> points;
    for (auto& bucket : per_pattern)
        for (auto& pt : bucket)
            points.push_back(std::move(pt));
    std::stable_sort(points.begin(), points.end(), [](const YuanPoint& a, const YuanPoint& b) {
        return a.b.space.before(b.b.space);
    });
    return points;
}

} // namespace

std::vector<YuanPoint> enumerate_yuan_points(AlgebraPtr c, std::size_t r,
                                             const EnumOptions& opts) {
    return enumerate_impl(std::move(c), r, opts, opts.parallel);
}

std::vector<YuanPoint> enumerate_yuan_points_serial(AlgebraPtr c, std::size_t r,
                                                    const EnumOptions& opts) {
    return enumerate_impl(std::move(c), r, opts, false);
}

// ---------------------------------------------------------------------------
// tangent spaces

namespace {

struct TangentContext {
    AlgebraPtr c;
    AlgebraPtr dual;
    AlgebraPtr t; // c (x) k[eps]
    Matrix left;  // c -> t
    Matrix right; // dual -> t
};

// derivations of B into C/B: the embedded first-order deformations
DerivationSpace deformation_space(const AlgebraPtr& c, const YuanPoint& pt,
                                  const ReifiedSubalgebra& rb,
                                  const std::vector<std::size_t>& comp,
                                  const Matrix& proj) {
    const std::size_t db = pt.b.space.dim(), md = comp.size();
    std::vector<Matrix> action;
    for (std::size_t i = 0; i < db; ++i) {
        Vec bi = pt.b.space.basis.row(i);
        Matrix act(c->field(), md, md);
        for (std::size_t t2 = 0; t2 < md; ++t2) {
            Vec col = proj.apply(c->mul(bi, c->basis_vec(comp[t2])));
            for (std::size_t s = 0; s < md; ++s)
                act.at(s, t2) = col[s];
        }
        action.push_back(std::move(act));
    }
    ModulePtr mod = make_module(rb.algebra, std::move(action));
    Subspace unit_line = span_of(c->field(), {rb.algebra->unit()}, db);
    return der_space_general(rb.algebra, unit_line, mod);
}

// complement coordinates of C modulo the subalgebra and the projection onto them
void quotient_coords(const AlgebraPtr& c, const Subspace& s, std::vector<std::size_t>& comp,
                     Matrix& proj) {
    const std::size_t m = c->dim();
    std::vector<bool> is_pivot(m, false);
    for (std::size_t piv : s.pivots)
        is_pivot[piv] = true;
    comp.clear();
    for (std::size_t j = 0; j < m; ++j)
        if (!is_pivot[j])
            comp.push_back(j);
    proj = Matrix(c->field(), comp.size(), m);
    for (std::size_t j = 0; j < m; ++j) {
        Vec red = s.reduce(c->basis_vec(j));
        for (std::size_t t2 = 0; t2 < comp.size(); ++t2)
            proj.at(t2, j) = red[comp[t2]];
    }
}

TangentContext make_tangent_context(AlgebraPtr c) {
    TangentContext ctx;
    ctx.c = c;
    ctx.dual = dual_numbers(c->field());
    Matrix le, re;
    ctx.t = tensor_product(c, ctx.dual, &le, &re);
    ctx.left = std::move(le);
    ctx.right = std::move(re);
    // p-th powers of the doubled algebra live in the scalars, so exponent one
    // holds over every lifted subalgebra
    Subspace k1 = span_of(c->field(), {ctx.t->unit()}, ctx.t->dim());
    require(k1.contains(ctx.t->frobenius_span()), errc::internal_disagreement,
            "doubled algebra is not exponent one over the scalars");
    return ctx;
}

TangentReport tangent_one(const TangentContext& ctx, const YuanPoint& pt,
                          const EnumOptions& opts, bool parallel) {
    const AlgebraPtr& c = ctx.c;
    const FiniteField& f = *c->field();
    const unsigned p = f.p();
    const std::size_t n = c->ambient()->n_vars;
    const std::size_t m = c->dim();
    const std::size_t r = pt.cert.differential_rank;
    const std::size_t db = pt.b.space.dim();

    TangentReport rep;
    rep.formula_dim = std::size_t((int_pow(p, n) - int_pow(p, n - r)) * (n - r));

    // method (a): derivations of B into C/B
    ReifiedSubalgebra rb = subalgebra_as_algebra(pt.b);
    std::vector<std::size_t> comp;
    Matrix proj;
    quotient_coords(c, pt.b.space, comp, proj);
    const std::size_t md = comp.size();
    DerivationSpace ds = deformation_space(c, pt, rb, comp, proj);
    rep.der_dim = ds.dim();
    rep.expected_lifts = int_pow(f.q(), rep.der_dim);
    require(rep.expected_lifts <= opts.max_candidates, errc::too_large,
            "first-order lift budget");

    // first-order data shared by all lifts of this point
    const std::size_t mt = ctx.t->dim();
    std::vector<Vec> base_c(db), base_eps(db);
    for (std::size_t i = 0; i < db; ++i) {
        Vec row = pt.b.space.basis.row(i);
        Vec vc(mt, 0), ve(mt, 0);
        for (std::size_t a = 0; a < m; ++a) {
            vc[a * 2] = row[a];
            ve[a * 2 + 1] = row[a];
        }
        base_c[i] = std::move(vc);
        base_eps[i] = std::move(ve);
    }
    // the extended maximal ideal of a lifted subalgebra is independent of the
    // lift (the generators differ by elements of eps*C, which it contains);
    // verify that once on the product lift and check the fiber
    {
        std::vector<Vec> gens;
        for (std::size_t i = 1; i < db; ++i)
            gens.push_back(base_c[i]);
        for (std::size_t i = 0; i < db; ++i)
            gens.push_back(base_eps[i]);
        Ideal ext = ideal_generate(ctx.t, gens);
        std::vector<Vec> expect_rows;
        const Subspace& mb = rb.algebra->nilradical();
        std::vector<Vec> mb_c;
        for (std::size_t i = 0; i < mb.dim(); ++i)
            mb_c.push_back(rb.embedding.apply(mb.basis.row(i)));
        Ideal mbc = ideal_generate(c, mb_c);
        for (std::size_t i = 0; i < mbc.space.dim(); ++i) {
            Vec row = mbc.space.basis.row(i);
            Vec vc(mt, 0);
            for (std::size_t a = 0; a < m; ++a)
                vc[a * 2] = row[a];
            expect_rows.push_back(std::move(vc));
        }
        for (std::size_t a = 0; a < m; ++a) {
            Vec ve(mt, 0);
            ve[a * 2 + 1] = 1;
            expect_rows.push_back(std::move(ve));
        }
        Subspace expect = span_of(c->field(), expect_rows, mt);
        require(ext.space == expect, errc::internal_disagreement,
                "extended maximal ideal of a lift has an unexpected shape");
        QuotientResult fiber = quotient(ctx.t, ext);
        require(is_diff_simple(fiber.algebra).simple, errc::internal_disagreement,
                "first-order fiber of a certified point is not simple");
    }

    // p-basis monomials of the point, doubled
    std::vector<Vec> monos_t;
    {
        std::vector<Vec> xi_t;
        for (const auto& xi : pt.cert.p_basis.elements)
            xi_t.push_back(ctx.left.apply(xi));
        monos_t = p_monomials(*ctx.t, xi_t);
    }

    // method (b): count the graph lifts that stay Galois
    const std::uint64_t n_lifts = rep.expected_lifts;
    const std::size_t da = rep.der_dim;
    const std::uint32_t q = f.q();
    const Vec zero_t(mt, 0);

    auto lift_passes = [&](std::uint64_t idx) {
        // L = sum lambda_i D_i on B-coordinates, valued in C/B
        Matrix L(c->field(), md, db);
        std::uint64_t t2 = idx;
        for (std::size_t i = 0; i < da; ++i) {
            fq lam = fq(t2 % q);
            t2 /= q;
            if (lam == 0)
                continue;
            for (std::size_t a = 0; a < L.a.size(); ++a)
                L.a[a] = f.add(L.a[a], f.mul(lam, ds.basis[i].matrix.a[a]));
        }
        std::vector<Vec> rows;
        rows.reserve(2 * db);
        for (std::size_t i = 0; i < db; ++i) {
            Vec bcoord(db, 0);
            bcoord[i] = 1;
            Vec img = L.apply(bcoord); // class in C/B
            Vec row = base_c[i];
            for (std::size_t s = 0; s < md; ++s)
                if (img[s] != 0)
                    row[comp[s] * 2 + 1] = f.add(row[comp[s] * 2 + 1], img[s]);
            rows.push_back(std::move(row));
        }
        for (std::size_t i = 0; i < db; ++i)
            rows.push_back(base_eps[i]);
        // local: every non-unit basis element is nilpotent of exponent one
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == 0)
                continue; // the unit row
            if (ctx.t->power(rows[i], p) != zero_t)
                return false;
        }
        // free of rank p^r on the doubled witness monomials
        return base_spans_with_monomials(*ctx.t, rows, monos_t);
    };

    std::uint64_t count = 0;
    if (parallel) {
#ifdef _OPENMP
        const int nt = worker_count(opts);
#pragma omp parallel for schedule(static) num_threads(nt) reduction(+ : count)
        for (std::uint64_t idx = 0; idx < n_lifts; ++idx)
            count += lift_passes(idx) ? 1 : 0;
#else
        for (std::uint64_t idx = 0; idx < n_lifts; ++idx)
            count += lift_passes(idx) ? 1 : 0;
#endif
    } else {
        for (std::uint64_t idx = 0; idx < n_lifts; ++idx)
            count += lift_passes(idx) ? 1 : 0;
    }
    rep.lift_count = count;
    rep.ok = rep.der_dim == rep.formula_dim && rep.lift_count == rep.expected_lifts;
    return rep;
}

} // namespace

TangentReport tangent_dimension(AlgebraPtr c, const YuanPoint& pt, const EnumOptions& opts) {
    TangentContext ctx = make_tangent_context(std::move(c));
    return tangent_one(ctx, pt, opts, opts.parallel);
}

std::vector<TangentReport> tangent_all(AlgebraPtr c, const std::vector<YuanPoint>& pts,
                                       const EnumOptions& opts) {
    TangentContext ctx = make_tangent_context(std::move(c));
    std::vector<TangentReport> out(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        out[i] = tangent_one(ctx, pts[i], opts, opts.parallel);
    return out;
}

// ---------------------------------------------------------------------------
// automorphism groups

namespace {

struct AutSpace {
    AlgebraPtr c, r_ring, t;
    Matrix right_embed; // r -> t
    std::size_t n = 0, m = 0, dr = 0, mt = 0, rsub = 0;
    bool fix_m = false;

    std::vector<Vec> r_elems;          // all elements of R by flat index
    std::vector<std::size_t> nilp;     // flat indices with x^p = 0
    struct Slot {
        std::size_t var;
        std::size_t mono;   // basis index of the monomial; 0 means constant term
        std::uint64_t range; // number of admissible values
    };
    std::vector<Slot> slots;
    std::uint64_t total = 1;
    std::vector<std::vector<std::size_t>> lin_slot; // slot index of (i, e_j) or npos
    std::vector<std::size_t> var_mono;              // basis index of e_j
};

AutSpace make_aut_space(AlgebraPtr c, AlgebraPtr r_ring, const AutConstraints& cons,
                        const EnumOptions& opts) {
    check_split_base(*c);
    AutSpace sp;
    sp.c = c;
    sp.r_ring = r_ring;
    const auto& amb = *c->ambient();
    sp.n = amb.n_vars;
    sp.m = c->dim();
    sp.dr = r_ring->dim();
    sp.rsub = cons.subring_rank.value_or(sp.n);
    require(sp.rsub <= sp.n, errc::bad_parameters, "subring rank out of range");
    sp.fix_m = cons.fix_max_ideal;

    Matrix le;
    sp.t = tensor_product(c, r_ring, &le, &sp.right_embed);
    sp.mt = sp.t->dim();

    const FiniteField& f = *c->field();
    const std::uint64_t card = int_pow(f.q(), sp.dr);
    require(card <= (std::uint64_t(1) << 24), errc::too_large, "test ring too large");
    const unsigned p = f.p();
    for (std::uint64_t v = 0; v < card; ++v) {
        Vec coords(sp.dr, 0);
        std::uint64_t t2 = v;
        for (std::size_t i = 0; i < sp.dr; ++i) {
            coords[i] = fq(t2 % f.q());
            t2 /= f.q();
        }
        sp.r_elems.push_back(std::move(coords));
    }
    const Vec zero_r(sp.dr, 0);
    for (std::size_t v = 0; v < sp.r_elems.size(); ++v)
        if (r_ring->power(sp.r_elems[v], p) == zero_r)
            sp.nilp.push_back(v);

    sp.var_mono.assign(sp.n, 0);
    for (std::size_t a = 0; a < sp.m; ++a) {
        int deg = 0;
        for (std::size_t v2 = 0; v2 < sp.n; ++v2)
            deg += amb.exponents[a][v2];
        if (deg == 1)
            for (std::size_t v2 = 0; v2 < sp.n; ++v2)
                if (amb.exponents[a][v2] == 1)
                    sp.var_mono[v2] = a;
    }

    sp.lin_slot.assign(sp.n, std::vector<std::size_t>(sp.n, std::size_t(-1)));
    auto sat_mul = [&](std::uint64_t a, std::uint64_t b) {
        if (a != 0 && b > (opts.max_candidates + 1) / a)
            return opts.max_candidates + 1;
        return a * b;
    };
    for (std::size_t i = 0; i < sp.n; ++i) {
        if (!sp.fix_m) {
            sp.slots.push_back({i, 0, std::uint64_t(sp.nilp.size())});
            sp.total = sat_mul(sp.total, sp.nilp.size());
        }
        for (std::size_t a = 1; a < sp.m; ++a) {
            if (i >= sp.rsub) {
                bool in_subring = true;
                for (std::size_t v2 = 0; v2 < sp.rsub && in_subring; ++v2)
                    in_subring = amb.exponents[a][v2] == 0;
                if (!in_subring)
                    continue;
            }
            sp.slots.push_back({i, a, card});
            sp.total = sat_mul(sp.total, card);
        }
    }
    // record which slot carries each linear coefficient
    for (std::size_t s = 0; s < sp.slots.size(); ++s)
        for (std::size_t j = 0; j < sp.n; ++j)
            if (sp.slots[s].mono == sp.var_mono[j] && sp.slots[s].mono != 0)
                sp.lin_slot[sp.slots[s].var][j] = s;
    require(sp.total <= opts.max_candidates, errc::too_large,
            "automorphism candidate space exceeds the budget");
    return sp;
}

// invertibility of the block-triangular linear part over the local test ring
bool linear_part_invertible(const AutSpace& sp, const std::vector<std::size_t>& state) {
    const AlgebraPtr& r = sp.r_ring;
    auto entry = [&](std::size_t i, std::size_t j) -> Vec {
        std::size_t s = sp.lin_slot[i][j];
        if (s == std::size_t(-1))
            return Vec(sp.dr, 0);
        std::size_t v = sp.slots[s].mono == 0 ? sp.nilp[state[s]] : state[s];
        return sp.r_elems[v];
    };
    auto block_ok = [&](std::size_t lo, std::size_t hi) {
        const std::size_t k = hi - lo;
        if (k == 0)
            return true;
        std::vector<Vec> sub(k * k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                sub[i * k + j] = entry(lo + i, lo + j);
        Vec det = algebra_det(*r, sub, k);
        if (r->is_local())
            return !r->nilradical().contains(det);
        return r->is_unit_element(det);
    };
    return block_ok(0, sp.rsub) && block_ok(sp.rsub, sp.n);
}

// images, full matrix and the multiplicativity re-verification
bool materialize(const AutSpace& sp, const std::vector<std::size_t>& state,
                 std::vector<Vec>& images, std::vector<Vec>& consts, Matrix& tau) {
    const AlgebraPtr& t = sp.t;
    const FiniteField& f = *sp.c->field();
    images.assign(sp.n, Vec(sp.mt, 0));
    consts.assign(sp.n, Vec(sp.dr, 0));
    for (std::size_t s = 0; s < sp.slots.size(); ++s) {
        const auto& slot = sp.slots[s];
        const Vec& val = sp.r_elems[slot.mono == 0 ? sp.nilp[state[s]] : state[s]];
        if (slot.mono == 0)
            consts[slot.var] = val;
        for (std::size_t j = 0; j < sp.dr; ++j)
            if (val[j] != 0)
                images[slot.var][slot.mono * sp.dr + j] =
                    f.add(images[slot.var][slot.mono * sp.dr + j], val[j]);
    }

    // monomial images in graded order, then the full matrix
    const auto& amb = *sp.c->ambient();
    std::vector<Vec> mono_img(sp.m);
    mono_img[0] = t->unit();
    for (std::size_t a = 1; a < sp.m; ++a) {
        std::size_t v = 0;
        while (amb.exponents[a][v] == 0)
            ++v;
        auto e2 = amb.exponents[a];
        --e2[v];
        mono_img[a] = t->mul(mono_img[amb.index_of.at(e2)], images[v]);
    }
    tau = Matrix(sp.c->field(), sp.mt, sp.mt);
    for (std::size_t a = 0; a < sp.m; ++a)
        for (std::size_t j = 0; j < sp.dr; ++j) {
            Vec col = t->mul_basis(j, mono_img[a]); // (1 (x) r_j) * tau(x^a)
            for (std::size_t row = 0; row < sp.mt; ++row)
                tau.at(row, a * sp.dr + j) = col[row];
        }

    // re-verify multiplicativity on all basis pairs
    std::vector<Vec> cols(sp.mt);
    for (std::size_t j2 = 0; j2 < sp.mt; ++j2) {
        Vec col(sp.mt);
        for (std::size_t row = 0; row < sp.mt; ++row)
            col[row] = tau.at(row, j2);
        cols[j2] = std::move(col);
    }
    for (std::size_t s = 0; s < sp.mt; ++s)
        for (std::size_t u = s; u < sp.mt; ++u) {
            Vec lhs(sp.mt, 0);
            for (const auto& term : t->basis_product(s, u))
                for (std::size_t row = 0; row < sp.mt; ++row)
                    lhs[row] = f.add(lhs[row], f.mul(term.c, cols[term.idx][row]));
            if (lhs != t->mul(cols[s], cols[u]))
                return false;
        }
    return true;
}

template <typename Sink>
std::uint64_t stream_aut(const AutSpace& sp, const EnumOptions& opts, bool parallel,
                         Sink&& sink) {
    const std::size_t ns = sp.slots.size();
    auto decode = [&](std::uint64_t idx, std::vector<std::size_t>& state) {
        for (std::size_t s = 0; s < ns; ++s) {
            state[s] = std::size_t(idx % sp.slots[s].range);
            idx /= sp.slots[s].range;
        }
    };
    auto scan_range = [&](std::uint64_t lo, std::uint64_t hi, int thread) {
        std::vector<std::size_t> state(ns, 0);
        std::vector<Vec> images, consts;
        Matrix tau;
        std::uint64_t found = 0;
        decode(lo, state);
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
            if (linear_part_invertible(sp, state)) {
                require(materialize(sp, state, images, consts, tau),
                        errc::internal_disagreement,
                        "invertible linear part but non-multiplicative images");
                ++found;
                sink(thread, tau, images, consts);
            }
            // odometer step
            for (std::size_t s = 0; s < ns; ++s) {
                if (++state[s] < sp.slots[s].range)
                    break;
                state[s] = 0;
            }
        }
        return found;
    };

    std::uint64_t total_found = 0;
    if (parallel && sp.total > 4096) {
#ifdef _OPENMP
        const int nt = worker_count(opts);
        const std::uint64_t chunk = (sp.total + nt - 1) / nt;
#pragma omp parallel num_threads(nt) reduction(+ : total_found)
        {
            const int tid = omp_get_thread_num();
            const std::uint64_t lo = std::uint64_t(tid) * chunk;
            const std::uint64_t hi = std::min(sp.total, lo + chunk);
            if (lo < hi)
                total_found += scan_range(lo, hi, tid);
        }
#else
        total_found = scan_range(0, sp.total, 0);
#endif
    } else {
        total_found = scan_range(0, sp.total, 0);
    }
    return total_found;
}

} // namespace

std::uint64_t count_aut(AlgebraPtr c, AlgebraPtr test_ring, const AutConstraints& cons,
                        const EnumOptions& opts) {
    AutSpace sp = make_aut_space(std::move(c), std::move(test_ring), cons, opts);
    return stream_aut(sp, opts, opts.parallel,
                      [](int, const Matrix&, const std::vector<Vec>&,
                         const std::vector<Vec>&) {});
}

std::vector<AutPoint> enumerate_aut(AlgebraPtr c, AlgebraPtr test_ring,
                                    const AutConstraints& cons, const EnumOptions& opts) {
    AutSpace sp = make_aut_space(std::move(c), std::move(test_ring), cons, opts);
    std::vector<AutPoint> out;
    const Vec zero_r(sp.dr, 0);
    // serial scan: the materialized list is in candidate order
    stream_aut(sp, opts, false,
               [&](int, const Matrix&, const std::vector<Vec>& images,
                   const std::vector<Vec>& consts) {
                   AutPoint pt;
                   pt.images = images;
                   pt.constants = consts;
                   pt.preserves_subring = cons.subring_rank.has_value();
                   pt.preserves_max_ideal = true;
                   for (const auto& cv : consts)
                       if (cv != zero_r)
                           pt.preserves_max_ideal = false;
                   out.push_back(std::move(pt));
               });
    return out;
}

std::uint64_t aut_count_formula(unsigned p, std::size_t n, std::size_t r, std::uint32_t q,
                                AutFlavor flavor, TestRingKind ring) {
    require(r <= n, errc::bad_parameters, "rank out of range");
    if (flavor == AutFlavor::max_ideal)
        r = n;
    using u128 = unsigned __int128;
    auto gl_order = [&](std::size_t s) {
        u128 out = 1;
        u128 qs = 1;
        for (std::size_t i = 0; i < s; ++i)
            qs *= q;
        u128 qi = 1;
        for (std::size_t i = 0; i < s; ++i) {
            out *= (qs - qi);
            qi *= q;
        }
        return out;
    };
    const std::uint64_t pn = int_pow(p, n), pnr = int_pow(p, n - r);
    const std::uint64_t dim = (pn - 1) * r + (pnr - 1) * (n - r);
    const std::uint64_t t = dim - r * r - (n - r) * (n - r);

    u128 total = gl_order(r) * gl_order(n - r);
    std::size_t ring_deg = ring == TestRingKind::dual_numbers ? 2 : 1;
    // |GL_s(R)| = |GL_s(F_q)| * |m_R|^{s*s}; |R|^t = q^{deg * t}
    if (ring_deg == 2) {
        for (std::size_t i = 0; i < r * r + (n - r) * (n - r); ++i)
            total *= q;
    }
    for (std::size_t i = 0; i < std::size_t(ring_deg) * t; ++i)
        total *= q;
    if (flavor == AutFlavor::subring) {
        // times |Hom(C, R)| = |{c : c^p = 0}|^n
        const u128 hom = ring_deg == 2 ? int_pow(q, n) : 1;
        total *= hom;
    }
    require(total <= u128(~std::uint64_t(0)), errc::too_large, "formula overflow");
    return std::uint64_t(total);
}

// ---------------------------------------------------------------------------
// orbits

YuanPoint standard_point(AlgebraPtr c, std::size_t r) {
    check_split_base(*c);
    const auto& amb = *c->ambient();
    require(r <= amb.n_vars, errc::bad_parameters, "rank out of range");
    std::vector<Vec> gens;
    for (std::size_t v = r; v < amb.n_vars; ++v) {
        std::vector<std::uint8_t> e(amb.n_vars, 0);
        e[v] = 1;
        gens.push_back(c->basis_vec(amb.index_of.at(e)));
    }
    Subalgebra b = subalgebra_generate(c, gens);
    auto cert = is_galois(b);
    require(cert.has_value() && cert->differential_rank == r, errc::internal_disagreement,
            "standard subalgebra is not Galois of the requested rank");
    return YuanPoint{std::move(b), std::move(*cert)};
}

OrbitResult orbit(AlgebraPtr c, const YuanPoint& seed, const EnumOptions& opts) {
    AutConstraints cons;
    cons.fix_max_ideal = true;
    AlgebraPtr base_ring = truncated_algebra(c->field(), 0);
    AutSpace sp = make_aut_space(c, base_ring, cons, opts);
    require(sp.mt == c->dim(), errc::internal_disagreement, "field tensor must not grow");

    const std::size_t db = seed.b.space.dim();
    const int nt = std::max(1, worker_count(opts)) + 1;
    std::vector<std::map<std::vector<fq>, Subspace>> seen{std::size_t(nt)};
    std::vector<std::uint64_t> stab(std::size_t(nt), 0);
    const std::vector<fq> seed_key = seed.b.space.basis.a;

    std::uint64_t group_order = stream_aut(
        sp, opts, opts.parallel,
        [&](int thread, const Matrix& tau, const std::vector<Vec>&,
            const std::vector<Vec>&) {
            std::vector<Vec> rows;
            rows.reserve(db);
            for (std::size_t i = 0; i < db; ++i)
                rows.push_back(tau.apply(seed.b.space.basis.row(i)));
            Subspace img = span_of(c->field(), rows, c->dim());
            require(img.dim() == db, errc::internal_disagreement,
                    "automorphism image dropped rank");
            if (img.basis.a == seed_key)
                ++stab[std::size_t(thread)];
            seen[std::size_t(thread)].emplace(img.basis.a, std::move(img));
        });

    std::map<std::vector<fq>, Subspace> all;
    std::uint64_t stab_total = 0;
    for (int t2 = 0; t2 < nt; ++t2) {
        for (auto& kv : seen[std::size_t(t2)])
            all.emplace(kv.first, std::move(kv.second));
        stab_total += stab[std::size_t(t2)];
    }

    OrbitResult out;
    out.group_order = group_order;
    out.stabilizer_order = stab_total;
    require(stab_total > 0 && group_order % stab_total == 0, errc::internal_disagreement,
            "stabilizer order must divide the group order");
    out.index = group_order / stab_total;
    for (auto& kv : all) {
        Subalgebra b;
        b.parent = c;
        b.space = kv.second;
        auto cert = is_galois(b);
        require(cert.has_value(), errc::internal_disagreement,
                "orbit image of a certified point is not certified");
        out.orbit.push_back(YuanPoint{std::move(b), std::move(*cert)});
    }
    std::stable_sort(out.orbit.begin(), out.orbit.end(),
                     [](const YuanPoint& a, const YuanPoint& b) {
                         return a.b.space.before(b.b.space);
                     });
    require(out.orbit.size() == out.index, errc::internal_disagreement,
            "orbit size differs from the group-theoretic index");
    return out;
}

// ---------------------------------------------------------------------------
// count tables

std::vector<CountRow> point_count_table(unsigned p, std::size_t n, std::size_t r,
                                        std::uint32_t q, std::size_t e_max,
                                        const EnumOptions& opts) {
    // q must be a power of p
    std::size_t e0 = 0;
    {
        std::uint32_t t = q;
        while (t > 1) {
            require(t % p == 0, errc::bad_parameters, "q must be a power of p");
            t /= p;
            ++e0;
        }
        require(e0 >= 1, errc::bad_parameters, "q must be at least p");
    }
    std::vector<CountRow> rows;
    for (std::size_t e = 1; e <= e_max; ++e) {
        CountRow row;
        row.p = p;
        row.n = n;
        row.r = r;
        row.q = q;
        row.e = e;
        row.formula_dim = std::size_t((int_pow(p, n) - int_pow(p, n - r)) * (n - r));
        try {
            auto field = FiniteField::make(p, unsigned(e0 * e));
            const std::uint32_t qe = field->q();
            AlgebraPtr c = truncated_algebra(field, n);
            std::vector<YuanPoint> pts = enumerate_yuan_points(c, r, opts);
            row.count = pts.size();
            row.orbit_predicted =
                aut_count_formula(p, n, n, qe, AutFlavor::max_ideal) /
                aut_count_formula(p, n, r, qe, AutFlavor::subring_and_max_ideal);
            for (const auto& pt : pts) {
                ReifiedSubalgebra rb = subalgebra_as_algebra(pt.b);
                std::vector<std::size_t> comp;
                Matrix proj;
                quotient_coords(c, pt.b.space, comp, proj);
                DerivationSpace ds = deformation_space(c, pt, rb, comp, proj);
                ++row.tangent_dims[ds.dim()];
            }
            bool ok = row.orbit_predicted == row.count;
            for (const auto& kv : row.tangent_dims)
                ok = ok && kv.first == row.formula_dim;
            if (p == 2 && n == 2 && r == 1) {
                std::uint64_t law = std::uint64_t(qe) * qe + qe;
                ok = ok && row.count == law;
                row.note = "law q^2+q";
            }
            row.status = ok ? "OK" : "FAILED";
        } catch (const engine_error& err) {
            if (err.code() == errc::too_large) {
                row.status = "SKIPPED";
                row.note = err.what();
            } else {
                throw;
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace yl
