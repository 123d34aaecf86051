#include "yuanlab/kaehler.hpp"

#include <algorithm>
#include <numeric>

namespace yl {

namespace {

bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](fq x) { return x == 0; });
}

Vec residue_of(const FiniteAlgebra& a, const Vec& v) {
    // class modulo the maximal ideal, as a scalar times the unit; valid for
    // residue dimension 1
    Vec red = a.nilradical().reduce(v);
    // red is a multiple of the reduced unit
    Vec ru = a.nilradical().reduce(a.unit());
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (ru[i] != 0)
            return {a.field()->mul(red[i], a.field()->inv(ru[i]))};
    fail(errc::internal_disagreement, "unit inside the maximal ideal");
}

} // namespace

std::vector<Vec> differential(AlgebraPtr c, const Vec& v) {
    const auto& amb = c->ambient();
    require(amb.has_value(), errc::not_truncated_ambient, "differential needs labels");
    const std::size_t n = amb->n_vars, m = c->dim();
    const FiniteField& f = *c->field();
    std::vector<Vec> out(n, Vec(m, 0));
    for (std::size_t a = 0; a < m; ++a) {
        if (v[a] == 0)
            continue;
        const auto& e = amb->exponents[a];
        for (std::size_t i = 0; i < n; ++i) {
            if (e[i] == 0)
                continue;
            auto e2 = e;
            --e2[i];
            std::size_t idx = amb->index_of.at(e2);
            out[i][idx] = f.add(out[i][idx], f.mul(v[a], f.from_int(e[i])));
        }
    }
    return out;
}

ModulePresentation kaehler_presentation(AlgebraPtr c, const Subalgebra& b) {
    const auto& amb = c->ambient();
    require(amb.has_value(), errc::not_truncated_ambient,
            "differential presentations need a monomial presentation");
    require(b.parent.get() == c.get(), errc::bad_parameters, "base of a different algebra");
    ModulePresentation p;
    p.ring = c;
    p.n_generators = amb->n_vars;
    for (std::size_t i = 0; i < amb->n_vars; ++i) {
        if (is_zero(amb->pth_powers[i]))
            continue;
        std::vector<Vec> row = differential(c, amb->pth_powers[i]);
        if (std::all_of(row.begin(), row.end(), is_zero))
            continue;
        p.relations.push_back(std::move(row));
    }
    for (std::size_t r = 0; r < b.space.dim(); ++r) {
        std::vector<Vec> row = differential(c, b.space.basis.row(r));
        if (std::all_of(row.begin(), row.end(), is_zero))
            continue;
        p.relations.push_back(std::move(row));
    }
    return p;
}

std::vector<Ideal> fitting_ideals(const ModulePresentation& p) {
    const AlgebraPtr& c = p.ring;
    const std::size_t g = p.n_generators, nrel = p.relations.size();
    std::vector<Ideal> out;
    for (std::size_t i = 0; i <= g; ++i) {
        const std::size_t s = g - i;
        if (s == 0 || s > nrel) {
            out.push_back(s == 0 ? ideal_generate(c, {c->unit()}) : zero_ideal(c));
            continue;
        }
        // all s x s minors of the relation matrix
        std::vector<Vec> gens;
        std::vector<std::size_t> rsel(s), csel(s);
        std::iota(rsel.begin(), rsel.end(), 0);
        auto next_comb = [](std::vector<std::size_t>& sel, std::size_t n) {
            std::size_t k = sel.size(), j = k;
            while (j-- > 0) {
                if (sel[j] + (k - j) < n) {
                    ++sel[j];
                    for (std::size_t t = j + 1; t < k; ++t)
                        sel[t] = sel[t - 1] + 1;
                    return true;
                }
            }
            return false;
        };
        do {
            std::iota(csel.begin(), csel.end(), 0);
            do {
                std::vector<Vec> sub(s * s);
                for (std::size_t a = 0; a < s; ++a)
                    for (std::size_t b2 = 0; b2 < s; ++b2)
                        sub[a * s + b2] = p.relations[rsel[a]][csel[b2]];
                Vec det = algebra_det(*c, sub, s);
                if (!is_zero(det))
                    gens.push_back(std::move(det));
            } while (next_comb(csel, g));
        } while (next_comb(rsel, nrel));
        out.push_back(ideal_generate(c, gens));
    }
    for (std::size_t i = 0; i + 1 < out.size(); ++i)
        require(out[i + 1].space.contains(out[i].space), errc::internal_disagreement,
                "Fitting chain not increasing");
    return out;
}

std::optional<std::size_t> module_free_rank(const ModulePresentation& p) {
    const AlgebraPtr& c = p.ring;
    require(c->is_local(), errc::not_local, "free rank over a local ring only");
    const std::size_t g = p.n_generators, m = c->dim();
    std::vector<Ideal> fitt = fitting_ideals(p);

    std::size_t first_full = g + 1;
    for (std::size_t i = 0; i <= g; ++i)
        if (fitt[i].space.dim() == m) {
            first_full = i;
            break;
        }
    require(first_full <= g, errc::internal_disagreement, "Fitt_g must be the unit ideal");
    bool free_fitting = first_full == 0 || fitt[first_full - 1].space.dim() == 0;

    // Nakayama cross-check when the residue field is k itself
    if (c->residue_dim() == 1) {
        const FiniteField& f = *c->field();
        Matrix rel_bar(c->field(), p.relations.size(), g);
        for (std::size_t r = 0; r < p.relations.size(); ++r)
            for (std::size_t j = 0; j < g; ++j)
                rel_bar.at(r, j) = residue_of(*c, p.relations[r][j])[0];
        const std::size_t rho = canonical_echelon(rel_bar).dim();
        const std::size_t g0 = g - rho;

        SpanBuilder rowspan(c->field(), g * m);
        for (const auto& row : p.relations)
            for (std::size_t i = 0; i < m; ++i) {
                Vec flat(g * m, 0);
                for (std::size_t j = 0; j < g; ++j) {
                    Vec prod = c->mul_basis(i, row[j]);
                    std::copy(prod.begin(), prod.end(), flat.begin() + j * m);
                }
                rowspan.add(std::move(flat));
                (void)f;
            }
        const std::size_t dim_m = g * m - rowspan.rank();
        const bool free_nakayama = dim_m == g0 * m;
        require(free_nakayama == free_fitting &&
                    (!free_fitting || g0 == first_full),
                errc::internal_disagreement,
                "Fitting and Nakayama freeness verdicts disagree");
    }
    if (!free_fitting)
        return std::nullopt;
    return first_full;
}

std::vector<Vec> p_monomials(const FiniteAlgebra& c, const std::vector<Vec>& elems) {
    const unsigned p = c.field()->p();
    const std::size_t r = elems.size();
    std::vector<Vec> monos;
    std::vector<unsigned> alpha(r, 0);
    while (true) {
        Vec mono = c.unit();
        for (std::size_t i = 0; i < r; ++i)
            for (unsigned k = 0; k < alpha[i]; ++k)
                mono = c.mul(mono, elems[i]);
        monos.push_back(std::move(mono));
        std::size_t i = 0;
        for (; i < r; ++i) {
            if (++alpha[i] < p)
                break;
            alpha[i] = 0;
        }
        if (i == r)
            break;
    }
    return monos;
}

bool base_spans_with_monomials(const FiniteAlgebra& c, const std::vector<Vec>& base_rows,
                               const std::vector<Vec>& monomials) {
    SpanBuilder span(c.field(), c.dim());
    Vec work(c.dim(), 0);
    for (const auto& mono : monomials)
        for (const auto& row : base_rows) {
            c.mul_into(row, mono, work);
            span.add(work);
            if (span.rank() == c.dim())
                return true;
        }
    return span.rank() == c.dim();
}

bool verify_p_basis(AlgebraPtr c, const Subalgebra& b, const std::vector<Vec>& elems) {
    const unsigned p = c->field()->p();
    std::uint64_t pr = 1;
    for (std::size_t i = 0; i < elems.size(); ++i)
        pr *= p;
    if (pr * b.space.dim() != c->dim())
        return false;
    return base_spans_with_monomials(*c, b.space.basis.row_list(),
                                     p_monomials(*c, elems));
}

std::optional<PBasis> find_p_basis(AlgebraPtr c, const Subalgebra& b) {
    require(b.space.contains(c->frobenius_span()), errc::not_exponent_one,
            "p-th powers do not land in the base");
    ModulePresentation pres = kaehler_presentation(c, b);
    auto rank = module_free_rank(pres);
    if (!rank.has_value())
        return std::nullopt;
    const std::size_t r = *rank;
    const std::size_t n = pres.n_generators, m = c->dim();

    // differential classes modulo the maximal ideal: k^n / (relations mod m)
    Matrix rel_bar(c->field(), pres.relations.size(), n);
    for (std::size_t row = 0; row < pres.relations.size(); ++row)
        for (std::size_t j = 0; j < n; ++j)
            rel_bar.at(row, j) = residue_of(*c, pres.relations[row][j])[0];
    Subspace rel_span = canonical_echelon(rel_bar);

    auto d_class = [&](const Vec& v) {
        std::vector<Vec> dv = differential(c, v);
        Vec cls(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            cls[i] = residue_of(*c, dv[i])[0];
        return rel_span.reduce(cls);
    };

    // graded-lex scan of single monomials, then two-element combinations
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    const auto& amb = *c->ambient();
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b2) {
        int da = std::accumulate(amb.exponents[a].begin(), amb.exponents[a].end(), 0);
        int db = std::accumulate(amb.exponents[b2].begin(), amb.exponents[b2].end(), 0);
        if (da != db)
            return da < db;
        return amb.exponents[a] > amb.exponents[b2];
    });

    SpanBuilder picked_span(c->field(), n);
    std::vector<Vec> picked;
    for (std::size_t idx : order) {
        if (picked.size() == r)
            break;
        if (idx == 0)
            continue; // the unit has zero differential
        Vec cand = c->basis_vec(idx);
        if (picked_span.add(d_class(cand)))
            picked.push_back(std::move(cand));
    }
    if (picked.size() < r) {
        const FiniteField& f = *c->field();
        for (std::size_t a = 1; a < m && picked.size() < r; ++a)
            for (std::size_t b2 = a + 1; b2 < m && picked.size() < r; ++b2)
                for (std::uint32_t lam = 1; lam < f.q() && picked.size() < r; ++lam) {
                    Vec cand = c->basis_vec(order[a]);
                    for (std::size_t t = 0; t < m; ++t)
                        cand[t] = f.add(cand[t],
                                        f.mul(fq(lam), c->basis_vec(order[b2])[t]));
                    if (picked_span.add(d_class(cand)))
                        picked.push_back(std::move(cand));
                }
    }
    require(picked.size() == r, errc::internal_disagreement,
            "differential classes do not span a free module of the computed rank");
    require(verify_p_basis(c, b, picked), errc::internal_disagreement,
            "selected differential basis fails the direct definition check");
    PBasis out;
    out.elements = std::move(picked);
    out.verified = true;
    return out;
}

AlgebraIsomorphism harper_normal_form(AlgebraPtr r) {
    DiffSimpleResult ds = is_diff_simple(r);
    require(ds.simple, errc::not_diff_simple, "normal form of a non-simple ring");
    require(r->residue_dim() == 1, errc::non_split_residue_field,
            "residue field strictly larger than the base field");
    const unsigned p = r->field()->p();
    const std::size_t m = r->dim();

    Ideal mx = ideal_from_space(r, r->nilradical());
    std::vector<Vec> gens = minimal_generators(mx);
    const std::size_t n = gens.size();
    std::uint64_t pn = 1;
    for (std::size_t i = 0; i < n; ++i)
        pn *= p;
    require(pn == m, errc::dimension_mismatch,
            "dimension is not p^(number of minimal generators)");
    const Vec zero(m, 0);
    for (const auto& g : gens)
        require(r->power(g, p) == zero, errc::internal_disagreement,
                "maximal-ideal generator with nonzero p-th power");

    AlgebraPtr model = truncated_algebra(r->field(), n);
    Matrix fwd(r->field(), m, m);
    for (std::size_t a = 0; a < m; ++a) {
        const auto& e = model->ambient()->exponents[a];
        Vec img = r->unit();
        for (std::size_t i = 0; i < n; ++i)
            for (unsigned k = 0; k < e[i]; ++k)
                img = r->mul(img, gens[i]);
        for (std::size_t row = 0; row < m; ++row)
            fwd.at(row, a) = img[row];
    }
    // invert via [fwd | I]
    Matrix aug(r->field(), m, 2 * m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j)
            aug.at(i, j) = fwd.at(i, j);
        aug.at(i, m + i) = 1;
    }
    Subspace ech = rref_generic(aug);
    require(ech.dim() == m, errc::internal_disagreement,
            "monomial images are not linearly independent");
    Matrix inv(r->field(), m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            inv.at(i, j) = ech.basis.at(i, m + j);

    // the map is multiplicative and the round trips are identities
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            Vec lhs = fwd.apply(model->mul(model->basis_vec(i), model->basis_vec(j)));
            Vec rhs = r->mul(fwd.apply(model->basis_vec(i)), fwd.apply(model->basis_vec(j)));
            require(lhs == rhs, errc::internal_disagreement, "normal form not multiplicative");
        }
    require(fwd.mul(inv) == Matrix::identity(r->field(), m), errc::internal_disagreement,
            "normal form round trip");
    require(inv.mul(fwd) == Matrix::identity(r->field(), m), errc::internal_disagreement,
            "normal form round trip");

    AlgebraIsomorphism out;
    out.source = model;
    out.target = r;
    out.forward = std::move(fwd);
    out.inverse = std::move(inv);
    return out;
}

ModulePresentation present_module(const ConcreteModule& mod) {
    const AlgebraPtr& c = mod.ring;
    require(c->is_local(), errc::not_local, "presentations need a local ring");
    const std::size_t m = c->dim(), d = mod.dim;

    // Nakayama generators: lifts of a basis of M/mM
    const Subspace& mx = c->nilradical();
    SpanBuilder mm(c->field(), d);
    for (std::size_t i = 0; i < mx.dim(); ++i) {
        Vec x = mx.basis.row(i);
        for (std::size_t j = 0; j < d; ++j)
            mm.add(mod.act(x, Matrix::identity(c->field(), d).row(j)));
    }
    std::vector<Vec> gens;
    for (std::size_t j = 0; j < d; ++j) {
        Vec e(d, 0);
        e[j] = 1;
        if (mm.add(e))
            gens.push_back(std::move(e));
    }
    const std::size_t g = gens.size();

    // kernel of C^g -> M as an F_q-space, then its Nakayama generators
    Matrix sys(c->field(), d, g * m);
    for (std::size_t l = 0; l < g; ++l)
        for (std::size_t i = 0; i < m; ++i) {
            Vec col = mod.act(c->basis_vec(i), gens[l]);
            for (std::size_t r = 0; r < d; ++r)
                sys.at(r, l * m + i) = col[r];
        }
    Subspace ker = kernel(sys);

    // the kernel is a C-submodule of C^g; pick generators modulo m*ker
    SpanBuilder mker(c->field(), g * m);
    const FiniteField& f = *c->field();
    for (std::size_t i = 0; i < ker.dim(); ++i) {
        Vec v = ker.basis.row(i);
        for (std::size_t x = 0; x < mx.dim(); ++x) {
            Vec mxr = mx.basis.row(x);
            Vec w(g * m, 0);
            for (std::size_t l = 0; l < g; ++l) {
                Vec comp(v.begin() + l * m, v.begin() + (l + 1) * m);
                Vec prod = c->mul(mxr, comp);
                std::copy(prod.begin(), prod.end(), w.begin() + l * m);
            }
            mker.add(std::move(w));
        }
        (void)f;
    }
    ModulePresentation out;
    out.ring = c;
    out.n_generators = g;
    for (std::size_t i = 0; i < ker.dim(); ++i) {
        Vec v = ker.basis.row(i);
        if (!mker.add(v))
            continue;
        std::vector<Vec> row(g);
        for (std::size_t l = 0; l < g; ++l)
            row[l] = Vec(v.begin() + l * m, v.begin() + (l + 1) * m);
        out.relations.push_back(std::move(row));
    }
    return out;
}

} // namespace yl
