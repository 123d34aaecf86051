#include "yuanlab/algebra.hpp"

#include <algorithm>
#include <numeric>

namespace yl {

namespace {

SparseVec normalize_sparse(SparseVec v) {
    std::sort(v.begin(), v.end(),
              [](const SparseTerm& a, const SparseTerm& b) { return a.idx < b.idx; });
    SparseVec out;
    for (const auto& t : v) {
        if (t.c == 0)
            continue;
        if (!out.empty() && out.back().idx == t.idx)
            out.back().c = t.c; // caller merged already; keep last
        else
            out.push_back(t);
    }
    return out;
}

SparseVec to_sparse(const Vec& v) {
    SparseVec out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0)
            out.push_back({std::uint32_t(i), v[i]});
    return out;
}

std::string var_name(std::size_t n_vars, std::size_t i) {
    static const char* xyz[3] = {"x", "y", "z"};
    if (n_vars <= 3)
        return xyz[i];
    return "x" + std::to_string(i + 1);
}

} // namespace

AlgebraPtr FiniteAlgebra::make(FieldPtr f, std::size_t dim, std::vector<SparseVec> mul,
                               Vec unit, std::vector<std::string> labels,
                               std::optional<TruncatedAmbient> ambient) {
    require(dim >= 1, errc::bad_parameters, "algebra dimension must be positive");
    require(mul.size() == dim * dim, errc::dimension_mismatch, "structure tensor size");
    require(unit.size() == dim, errc::dimension_mismatch, "unit vector size");
    auto a = std::shared_ptr<FiniteAlgebra>(new FiniteAlgebra());
    a->field_ = std::move(f);
    a->dim_ = dim;
    a->mul_.resize(dim * dim);
    for (std::size_t i = 0; i < dim * dim; ++i)
        a->mul_[i] = normalize_sparse(std::move(mul[i]));
    a->unit_ = std::move(unit);
    if (labels.empty()) {
        labels.resize(dim);
        for (std::size_t i = 0; i < dim; ++i)
            labels[i] = "e" + std::to_string(i);
    }
    require(labels.size() == dim, errc::dimension_mismatch, "label count");
    a->labels_ = std::move(labels);
    a->ambient_ = std::move(ambient);
    a->verify_laws();
    a->compute_structure();
    return a;
}

void FiniteAlgebra::verify_laws() const {
    const FiniteField& f = *field_;
    // commutativity
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i + 1; j < dim_; ++j)
            require(mul_[i * dim_ + j] == mul_[j * dim_ + i], errc::bad_parameters,
                    "structure constants not commutative at (" + std::to_string(i) + "," +
                        std::to_string(j) + ")");
    // unit law
    for (std::size_t i = 0; i < dim_; ++i) {
        Vec ei(dim_, 0);
        ei[i] = 1;
        require(mul(unit_, ei) == ei, errc::bad_parameters,
                "unit does not act as identity on basis " + std::to_string(i));
    }
    // associativity; all triples up to dim 256, a fixed strided sample beyond
    Vec lhs(dim_, 0), rhs(dim_, 0);
    auto check_triple = [&](std::size_t i, std::size_t j, std::size_t l) {
        std::fill(lhs.begin(), lhs.end(), fq(0));
        std::fill(rhs.begin(), rhs.end(), fq(0));
        for (const auto& t : mul_[i * dim_ + j])
            for (const auto& u : mul_[t.idx * dim_ + l])
                lhs[u.idx] = f.add(lhs[u.idx], f.mul(t.c, u.c));
        for (const auto& t : mul_[j * dim_ + l])
            for (const auto& u : mul_[i * dim_ + t.idx])
                rhs[u.idx] = f.add(rhs[u.idx], f.mul(t.c, u.c));
        require(lhs == rhs, errc::bad_parameters,
                "structure constants not associative at (" + std::to_string(i) + "," +
                    std::to_string(j) + "," + std::to_string(l) + ")");
    };
    if (dim_ <= 256) {
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = i; j < dim_; ++j)
                for (std::size_t l = 0; l < dim_; ++l)
                    check_triple(i, j, l);
    } else {
        const std::size_t stride = dim_ * dim_ * dim_ / 2000000 + 1;
        for (std::size_t t = 0; t < dim_ * dim_ * dim_; t += stride) {
            std::size_t i = t / (dim_ * dim_);
            std::size_t j = (t / dim_) % dim_;
            std::size_t l = t % dim_;
            check_triple(i, j, l);
        }
    }
}

void FiniteAlgebra::compute_structure() {
    const FiniteField& f = *field_;
    const unsigned p = f.p();

    // nilradical: kernel of x -> x^{p^l} with p^l >= dim, pulled back through
    // the coordinatewise p^l-th root (a semilinear bijection)
    unsigned l = 0;
    std::uint64_t pl = 1;
    while (pl < dim_) {
        pl *= p;
        ++l;
    }
    Matrix phi(field_, dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        Vec e(dim_, 0);
        e[i] = 1;
        Vec pw = power(e, pl);
        for (std::size_t r = 0; r < dim_; ++r)
            phi.at(r, i) = pw[r];
    }
    Subspace ker = kernel(phi);
    std::vector<Vec> rooted;
    for (std::size_t i = 0; i < ker.dim(); ++i) {
        Vec v = ker.basis.row(i);
        for (auto& c : v)
            for (unsigned step = 0; step < l; ++step)
                c = f.p_th_root(c);
        rooted.push_back(std::move(v));
    }
    nilradical_ = span_of(field_, rooted, dim_);

    // residue algebra legality: the quotient modulo the nilradical is reduced,
    // so x -> x^q is F_q-linear there; its fixed space has one dimension per
    // local factor
    std::vector<bool> is_pivot(dim_, false);
    for (std::size_t pcol : nilradical_.pivots)
        is_pivot[pcol] = true;
    std::vector<std::size_t> comp;
    for (std::size_t j = 0; j < dim_; ++j)
        if (!is_pivot[j])
            comp.push_back(j);
    const std::size_t t = comp.size();
    residue_dim_ = t;
    Matrix fix(field_, t, t);
    for (std::size_t s = 0; s < t; ++s) {
        Vec w(dim_, 0);
        w[comp[s]] = 1;
        Vec pw = nilradical_.reduce(power(w, f.q()));
        for (std::size_t r = 0; r < t; ++r)
            fix.at(r, s) = pw[comp[r]];
        fix.at(s, s) = f.sub(fix.at(s, s), 1);
    }
    is_local_ = kernel(fix).dim() == 1;

    // span of basis p-th powers (multiplicatively closed in characteristic p)
    std::vector<Vec> pows;
    for (std::size_t i = 0; i < dim_; ++i) {
        Vec e(dim_, 0);
        e[i] = 1;
        pows.push_back(power(e, p));
    }
    pows.push_back(unit_);
    frobenius_span_ = span_of(field_, pows, dim_);
}

Vec FiniteAlgebra::mul(const Vec& a, const Vec& b) const {
    Vec out(dim_, 0);
    mul_into(a, b, out);
    return out;
}

void FiniteAlgebra::mul_into(const Vec& a, const Vec& b, Vec& out) const {
    const FiniteField& f = *field_;
    out.assign(dim_, 0);
    for (std::size_t i = 0; i < dim_; ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (b[j] == 0)
                continue;
            fq c = f.mul(a[i], b[j]);
            for (const auto& term : mul_[i * dim_ + j])
                out[term.idx] = f.add(out[term.idx], f.mul(c, term.c));
        }
    }
}

Vec FiniteAlgebra::mul_basis(std::size_t i, const Vec& b) const {
    const FiniteField& f = *field_;
    Vec out(dim_, 0);
    for (std::size_t j = 0; j < dim_; ++j) {
        if (b[j] == 0)
            continue;
        for (const auto& term : mul_[i * dim_ + j])
            out[term.idx] = f.add(out[term.idx], f.mul(b[j], term.c));
    }
    return out;
}

Matrix FiniteAlgebra::mult_matrix(const Vec& a) const {
    Matrix m(field_, dim_, dim_);
    const FiniteField& f = *field_;
    for (std::size_t i = 0; i < dim_; ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < dim_; ++j)
            for (const auto& term : mul_[i * dim_ + j])
                m.at(term.idx, j) = f.add(m.at(term.idx, j), f.mul(a[i], term.c));
    }
    return m;
}

Vec FiniteAlgebra::power(const Vec& a, std::uint64_t k) const {
    Vec out = unit_;
    Vec base = a;
    while (k) {
        if (k & 1)
            out = mul(out, base);
        if (k >>= 1)
            base = mul(base, base);
    }
    return out;
}

Vec FiniteAlgebra::scalar(fq c) const {
    const FiniteField& f = *field_;
    Vec out(dim_, 0);
    for (std::size_t i = 0; i < dim_; ++i)
        out[i] = f.mul(c, unit_[i]);
    return out;
}

Vec FiniteAlgebra::basis_vec(std::size_t i) const {
    Vec out(dim_, 0);
    out[i] = 1;
    return out;
}

bool FiniteAlgebra::is_unit_element(const Vec& a) const {
    return canonical_echelon(mult_matrix(a)).dim() == dim_;
}

// ---------------------------------------------------------------------------
// constructions

AlgebraPtr truncated_algebra(FieldPtr f, std::size_t n, const std::vector<Vec>& pth_powers) {
    const unsigned p = f->p();
    std::uint64_t dim = 1;
    for (std::size_t i = 0; i < n; ++i) {
        dim *= p;
        require(dim <= 4096, errc::too_large, "truncated algebra dimension exceeds 4096");
    }
    const std::size_t m = std::size_t(dim);

    // monomial basis in graded-lex order (degree ascending, earlier variables
    // preceding: 1, x, y, xy for p = 2, n = 2)
    std::vector<std::vector<std::uint8_t>> exps;
    std::vector<std::uint8_t> cur(n, 0);
    for (std::size_t i = 0; i < m; ++i) {
        exps.push_back(cur);
        for (std::size_t j = n; j-- > 0;) {
            if (++cur[j] < p)
                break;
            cur[j] = 0;
        }
    }
    std::sort(exps.begin(), exps.end(),
              [](const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
                  int da = std::accumulate(a.begin(), a.end(), 0);
                  int db = std::accumulate(b.begin(), b.end(), 0);
                  if (da != db)
                      return da < db;
                  return a > b; // same degree: earlier variables first
              });

    TruncatedAmbient amb;
    amb.n_vars = n;
    amb.exponents = exps;
    for (std::size_t i = 0; i < m; ++i)
        amb.index_of[exps[i]] = i;

    amb.pth_powers.assign(n, Vec(m, 0));
    require(pth_powers.empty() || pth_powers.size() == n, errc::dimension_mismatch,
            "need one p-th power per variable");
    for (std::size_t i = 0; i < pth_powers.size(); ++i) {
        const Vec& a = pth_powers[i];
        if (a.empty())
            continue;
        require(a.size() == m, errc::dimension_mismatch, "p-th power coordinate length");
        for (std::size_t idx = 0; idx < m; ++idx) {
            if (a[idx] == 0)
                continue;
            for (std::size_t v = 0; v <= i; ++v)
                require(exps[idx][v] == 0, errc::bad_parameters,
                        "p-th power of variable " + std::to_string(i) +
                            " must involve only later variables");
        }
        amb.pth_powers[i] = a;
    }
    for (std::size_t i = 0; i < n; ++i) {
        bool zero = true, scalar_only = true;
        for (std::size_t idx = 0; idx < m; ++idx)
            if (amb.pth_powers[i][idx] != 0) {
                zero = false;
                if (idx != 0)
                    scalar_only = false;
            }
        amb.split = amb.split && zero;
        amb.scalar_powers = amb.scalar_powers && scalar_only;
    }

    // monomial product with x_i^p -> pth_powers[i] rewriting; the later-variable
    // restriction makes the rewriting terminate (lex measure decreases)
    const FiniteField& ff = *f;
    auto reduce = [&](std::vector<int> e0) {
        Vec out(m, 0);
        std::vector<std::pair<fq, std::vector<int>>> work;
        work.emplace_back(fq(1), std::move(e0));
        while (!work.empty()) {
            auto [c, e] = std::move(work.back());
            work.pop_back();
            std::size_t bad = n;
            for (std::size_t i = 0; i < n; ++i)
                if (e[i] >= int(p)) {
                    bad = i;
                    break;
                }
            if (bad == n) {
                std::vector<std::uint8_t> key(e.begin(), e.end());
                std::size_t idx = amb.index_of.at(key);
                out[idx] = ff.add(out[idx], c);
                continue;
            }
            e[bad] -= int(p);
            const Vec& a = amb.pth_powers[bad];
            for (std::size_t idx = 0; idx < m; ++idx) {
                if (a[idx] == 0)
                    continue;
                std::vector<int> e2 = e;
                for (std::size_t v = 0; v < n; ++v)
                    e2[v] += exps[idx][v];
                work.emplace_back(ff.mul(c, a[idx]), std::move(e2));
            }
        }
        return out;
    };

    std::vector<SparseVec> mul(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            std::vector<int> e(n);
            for (std::size_t v = 0; v < n; ++v)
                e[v] = int(exps[i][v]) + int(exps[j][v]);
            SparseVec s = to_sparse(reduce(std::move(e)));
            mul[i * m + j] = s;
            mul[j * m + i] = std::move(s);
        }

    std::vector<std::string> labels(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::string lab;
        for (std::size_t v = 0; v < n; ++v) {
            if (exps[i][v] == 0)
                continue;
            if (!lab.empty())
                lab += "*";
            lab += var_name(n, v);
            if (exps[i][v] > 1)
                lab += "^" + std::to_string(int(exps[i][v]));
        }
        labels[i] = lab.empty() ? "1" : lab;
    }

    Vec unit(m, 0);
    unit[0] = 1;
    return FiniteAlgebra::make(std::move(f), m, std::move(mul), std::move(unit),
                               std::move(labels), std::move(amb));
}

AlgebraPtr univariate_truncated(FieldPtr f, std::size_t N) {
    require(N >= 1 && N <= 4096, errc::too_large, "univariate truncation order");
    std::vector<SparseVec> mul(N * N);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            if (i + j < N)
                mul[i * N + j] = {{std::uint32_t(i + j), fq(1)}};
    std::vector<std::string> labels(N);
    labels[0] = "1";
    for (std::size_t i = 1; i < N; ++i)
        labels[i] = i == 1 ? "t" : "t^" + std::to_string(i);
    Vec unit(N, 0);
    unit[0] = 1;
    return FiniteAlgebra::make(std::move(f), N, std::move(mul), std::move(unit),
                               std::move(labels));
}

AlgebraPtr dual_numbers(FieldPtr f) {
    std::vector<SparseVec> mul(4);
    mul[0] = {{0, 1}};
    mul[1] = {{1, 1}};
    mul[2] = {{1, 1}};
    mul[3] = {};
    return FiniteAlgebra::make(std::move(f), 2, std::move(mul), Vec{1, 0},
                               {"1", "eps"});
}

// ---------------------------------------------------------------------------
// subobjects

Subalgebra subalgebra_generate(AlgebraPtr a, const std::vector<Vec>& gens) {
    SpanBuilder sb(a->field(), a->dim());
    sb.add(a->unit());
    for (const auto& g : gens)
        sb.add(g);
    // fixed-point closure; terminates since the dimension is bounded
    bool grew = true;
    while (grew) {
        grew = false;
        Subspace s = sb.to_subspace();
        for (std::size_t i = 0; i < s.dim() && !grew; ++i)
            for (std::size_t j = i; j < s.dim(); ++j)
                if (sb.add(a->mul(s.basis.row(i), s.basis.row(j)))) {
                    grew = true;
                    break;
                }
    }
    Subalgebra out;
    out.parent = std::move(a);
    out.space = sb.to_subspace();
    out.generators = gens;
    return out;
}

Subalgebra trivial_subalgebra(AlgebraPtr a) { return subalgebra_generate(std::move(a), {}); }

Subalgebra subalgebra_from_space(AlgebraPtr a, Subspace s) {
    require(s.contains(a->unit()), errc::bad_parameters, "subalgebra must contain the unit");
    for (std::size_t i = 0; i < s.dim(); ++i)
        for (std::size_t j = i; j < s.dim(); ++j)
            require(s.contains(a->mul(s.basis.row(i), s.basis.row(j))), errc::bad_parameters,
                    "subspace is not multiplicatively closed");
    Subalgebra out;
    out.parent = std::move(a);
    out.space = std::move(s);
    return out;
}

Ideal ideal_generate(AlgebraPtr a, const std::vector<Vec>& gens) {
    SpanBuilder sb(a->field(), a->dim());
    for (const auto& g : gens)
        sb.add(g);
    bool grew = true;
    while (grew) {
        grew = false;
        Subspace s = sb.to_subspace();
        for (std::size_t i = 0; i < s.dim() && !grew; ++i)
            for (std::size_t j = 0; j < a->dim(); ++j)
                if (sb.add(a->mul_basis(j, s.basis.row(i)))) {
                    grew = true;
                    break;
                }
    }
    Ideal out;
    out.parent = std::move(a);
    out.space = sb.to_subspace();
    return out;
}

Ideal zero_ideal(AlgebraPtr a) {
    Ideal out;
    out.space = zero_subspace(a->field(), a->dim());
    out.parent = std::move(a);
    return out;
}

Ideal ideal_from_space(AlgebraPtr a, Subspace s) {
    for (std::size_t i = 0; i < s.dim(); ++i)
        for (std::size_t j = 0; j < a->dim(); ++j)
            require(s.contains(a->mul_basis(j, s.basis.row(i))), errc::bad_parameters,
                    "subspace is not an ideal");
    Ideal out;
    out.parent = std::move(a);
    out.space = std::move(s);
    return out;
}

QuotientResult quotient(AlgebraPtr a, const Ideal& i) {
    require(i.parent.get() == a.get(), errc::bad_parameters, "ideal of a different algebra");
    require(i.space.dim() < a->dim(), errc::improper_ideal, "quotient by the unit ideal");
    const std::size_t m = a->dim();
    std::vector<bool> is_pivot(m, false);
    for (std::size_t p : i.space.pivots)
        is_pivot[p] = true;
    std::vector<std::size_t> comp;
    for (std::size_t j = 0; j < m; ++j)
        if (!is_pivot[j])
            comp.push_back(j);
    const std::size_t t = comp.size();

    Matrix proj(a->field(), t, m);
    for (std::size_t j = 0; j < m; ++j) {
        Vec e(m, 0);
        e[j] = 1;
        Vec r = i.space.reduce(std::move(e));
        for (std::size_t s = 0; s < t; ++s)
            proj.at(s, j) = r[comp[s]];
    }
    Matrix sect(a->field(), m, t);
    for (std::size_t s = 0; s < t; ++s)
        sect.at(comp[s], s) = 1;

    std::vector<SparseVec> mul(t * t);
    for (std::size_t s1 = 0; s1 < t; ++s1)
        for (std::size_t s2 = s1; s2 < t; ++s2) {
            Vec prod = proj.apply(a->mul(a->basis_vec(comp[s1]), a->basis_vec(comp[s2])));
            SparseVec sp = to_sparse(prod);
            mul[s1 * t + s2] = sp;
            mul[s2 * t + s1] = std::move(sp);
        }
    std::vector<std::string> labels(t);
    for (std::size_t s = 0; s < t; ++s)
        labels[s] = a->label(comp[s]);
    QuotientResult out;
    out.algebra = FiniteAlgebra::make(a->field(), t, std::move(mul), proj.apply(a->unit()),
                                      std::move(labels));
    out.projection = std::move(proj);
    out.section = std::move(sect);
    return out;
}

ReifiedSubalgebra subalgebra_as_algebra(const Subalgebra& b) {
    const AlgebraPtr& c = b.parent;
    const std::size_t d = b.space.dim();
    require(d >= 1, errc::bad_parameters, "empty subalgebra");
    std::vector<SparseVec> mul(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            Vec prod = c->mul(b.space.basis.row(i), b.space.basis.row(j));
            auto coords = b.space.coordinates(prod);
            require(coords.has_value(), errc::bad_parameters,
                    "subalgebra space is not multiplicatively closed");
            SparseVec sp = to_sparse(*coords);
            mul[i * d + j] = sp;
            mul[j * d + i] = std::move(sp);
        }
    auto unit_coords = b.space.coordinates(c->unit());
    require(unit_coords.has_value(), errc::bad_parameters, "subalgebra misses the unit");

    std::vector<std::string> labels(d);
    for (std::size_t i = 0; i < d; ++i) {
        Vec row = b.space.basis.row(i);
        std::size_t nnz = 0, last = 0;
        for (std::size_t j = 0; j < row.size(); ++j)
            if (row[j] != 0) {
                ++nnz;
                last = j;
            }
        labels[i] = (nnz == 1 && row[last] == 1) ? c->label(last) : "b" + std::to_string(i);
    }

    ReifiedSubalgebra out;
    out.algebra = FiniteAlgebra::make(c->field(), d, std::move(mul), *unit_coords,
                                      std::move(labels));
    out.embedding = Matrix(c->field(), c->dim(), d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < c->dim(); ++j)
            out.embedding.at(j, i) = b.space.basis.at(i, j);
    out.origin = b;
    return out;
}

Subalgebra frobenius_image(AlgebraPtr a) {
    std::vector<Vec> gens = a->frobenius_span().basis.row_list();
    return subalgebra_generate(std::move(a), gens);
}

LocalStructure local_structure(AlgebraPtr a) {
    require(a->is_local(), errc::not_local,
            "nilpotent complement does not form a single residue field");
    LocalStructure out;
    out.max_ideal = ideal_from_space(a, a->nilradical());
    out.residue_dim = a->residue_dim();
    return out;
}

Ideal annihilator(AlgebraPtr a, const Vec& f) {
    Subspace ker = kernel(a->mult_matrix(f));
    return ideal_from_space(std::move(a), std::move(ker));
}

std::vector<Vec> minimal_generators(const Ideal& i) {
    const AlgebraPtr& a = i.parent;
    require(a->is_local(), errc::not_local, "minimal generators need a local parent");
    const Subspace& m = a->nilradical();
    SpanBuilder mi(a->field(), a->dim());
    for (std::size_t r = 0; r < m.dim(); ++r)
        for (std::size_t s = 0; s < i.space.dim(); ++s)
            mi.add(a->mul(m.basis.row(r), i.space.basis.row(s)));
    std::vector<Vec> gens;
    for (std::size_t s = 0; s < i.space.dim(); ++s) {
        Vec row = i.space.basis.row(s);
        if (mi.add(row))
            gens.push_back(std::move(row));
    }
    return gens;
}

// ---------------------------------------------------------------------------
// tensors and free module bases

AlgebraPtr tensor_product(AlgebraPtr c1, AlgebraPtr c2, Matrix* left_embed,
                          Matrix* right_embed) {
    require(c1->field() == c2->field(), errc::bad_parameters,
            "tensor factors over different fields");
    const std::size_t d1 = c1->dim(), d2 = c2->dim(), m = d1 * d2;
    require(m <= 4096, errc::too_large, "tensor dimension exceeds 4096");
    const FiniteField& f = *c1->field();

    std::vector<SparseVec> mul(m * m);
    for (std::size_t i = 0; i < d1; ++i)
        for (std::size_t k = 0; k < d1; ++k) {
            const SparseVec& left = c1->basis_product(i, k);
            for (std::size_t j = 0; j < d2; ++j)
                for (std::size_t l = 0; l < d2; ++l) {
                    const SparseVec& right = c2->basis_product(j, l);
                    SparseVec out;
                    for (const auto& t1 : left)
                        for (const auto& t2 : right)
                            out.push_back({std::uint32_t(t1.idx * d2 + t2.idx),
                                           f.mul(t1.c, t2.c)});
                    mul[(i * d2 + j) * m + (k * d2 + l)] = normalize_sparse(std::move(out));
                }
        }

    Vec unit(m, 0);
    const Vec &u1 = c1->unit(), &u2 = c2->unit();
    for (std::size_t i = 0; i < d1; ++i)
        for (std::size_t j = 0; j < d2; ++j)
            unit[i * d2 + j] = f.mul(u1[i], u2[j]);

    std::vector<std::string> labels(m);
    for (std::size_t i = 0; i < d1; ++i)
        for (std::size_t j = 0; j < d2; ++j) {
            const std::string &l1 = c1->label(i), &l2 = c2->label(j);
            labels[i * d2 + j] = l1 == "1" ? l2 : (l2 == "1" ? l1 : l1 + "(x)" + l2);
        }

    if (left_embed) {
        *left_embed = Matrix(c1->field(), m, d1);
        for (std::size_t i = 0; i < d1; ++i)
            for (std::size_t j = 0; j < d2; ++j)
                left_embed->at(i * d2 + j, i) = u2[j];
    }
    if (right_embed) {
        *right_embed = Matrix(c1->field(), m, d2);
        for (std::size_t j = 0; j < d2; ++j)
            for (std::size_t i = 0; i < d1; ++i)
                right_embed->at(i * d2 + j, j) = u1[i];
    }
    return FiniteAlgebra::make(c1->field(), m, std::move(mul), std::move(unit),
                               std::move(labels));
}

std::optional<std::vector<Vec>> free_module_basis(const Subalgebra& b) {
    const AlgebraPtr& c = b.parent;
    ReifiedSubalgebra rb = subalgebra_as_algebra(b);
    require(rb.algebra->is_local(), errc::not_local_base, "base of a free-basis computation");
    const std::size_t m = c->dim();
    const std::size_t f_deg = rb.algebra->residue_dim();

    // m_B C and the linear quotient by it
    std::vector<Vec> mb_rows;
    const Subspace& mb = rb.algebra->nilradical();
    for (std::size_t i = 0; i < mb.dim(); ++i)
        mb_rows.push_back(rb.embedding.apply(mb.basis.row(i)));
    Ideal mbc = ideal_generate(c, mb_rows);
    const Subspace& den = mbc.space;

    auto project = [&](const Vec& v) { return den.reduce(v); };

    // greedy Nakayama lift over the fiber, unit first, then the basis order;
    // the span is kept closed under the residue field action by inserting all
    // products with the rows of B
    SpanBuilder span(c->field(), m);
    std::vector<Vec> chosen;
    auto try_add = [&](const Vec& cand) {
        if (span.contains(project(cand)))
            return;
        chosen.push_back(cand);
        for (std::size_t r = 0; r < b.space.dim(); ++r)
            span.add(project(c->mul(b.space.basis.row(r), cand)));
    };
    const std::size_t fiber_dim = m - den.dim();
    try_add(c->unit());
    for (std::size_t i = 0; i < m && span.rank() < fiber_dim; ++i)
        try_add(c->basis_vec(i));
    require(span.rank() == fiber_dim, errc::internal_disagreement,
            "fiber generators do not span the fiber");
    const std::size_t g0 = chosen.size();
    require(fiber_dim == g0 * f_deg, errc::internal_disagreement,
            "fiber dimension is not a multiple of the residue degree");

    // freeness: dimension count plus the spanning of the lifted basis
    if (m != g0 * b.space.dim())
        return std::nullopt;
    SpanBuilder full(c->field(), m);
    for (const auto& w : chosen)
        for (std::size_t r = 0; r < b.space.dim(); ++r)
            full.add(c->mul(b.space.basis.row(r), w));
    if (full.rank() != m)
        return std::nullopt;
    return chosen;
}

TensorOverResult tensor_over(const Subalgebra& b) {
    const AlgebraPtr& c = b.parent;
    auto wopt = free_module_basis(b);
    require(wopt.has_value(), errc::not_free, "total algebra is not free over the base");
    const std::vector<Vec>& w = *wopt;
    const std::size_t g = w.size(), m = c->dim(), dim_t = g * m;
    require(dim_t <= 4096, errc::too_large, "tensor dimension exceeds 4096");
    const FiniteField& f = *c->field();

    // Phi: (l, t) -> b_t * w_l, the coordinate matrix of the free module basis
    const std::size_t db = b.space.dim();
    Matrix phi(c->field(), m, g * db);
    for (std::size_t l = 0; l < g; ++l)
        for (std::size_t t = 0; t < db; ++t) {
            Vec col = c->mul(b.space.basis.row(t), w[l]);
            for (std::size_t r = 0; r < m; ++r)
                phi.at(r, l * db + t) = col[r];
        }
    // invert phi by eliminating the augmented [phi | I]
    Matrix aug(c->field(), m, 2 * m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j)
            aug.at(i, j) = phi.at(i, j);
        aug.at(i, m + i) = 1;
    }
    Subspace ech = rref_generic(aug);
    require(ech.dim() == m, errc::internal_disagreement, "free-basis matrix not invertible");
    Matrix phi_inv(c->field(), m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            phi_inv.at(i, j) = ech.basis.at(i, m + j);

    // B-coordinates of an element of C: x with sum_l psi_l w_l = v
    auto b_coords = [&](const Vec& v) {
        Vec x = phi_inv.apply(v);
        std::vector<Vec> psi(g, Vec(m, 0));
        for (std::size_t l = 0; l < g; ++l)
            for (std::size_t t = 0; t < db; ++t) {
                fq ct = x[l * db + t];
                if (ct == 0)
                    continue;
                for (std::size_t r = 0; r < m; ++r)
                    psi[l][r] = f.add(psi[l][r], f.mul(ct, b.space.basis.at(t, r)));
            }
        return psi;
    };

    // products of the module basis expressed over B
    std::vector<std::vector<Vec>> wprod(g * g);
    for (std::size_t a1 = 0; a1 < g; ++a1)
        for (std::size_t a2 = a1; a2 < g; ++a2) {
            wprod[a1 * g + a2] = b_coords(c->mul(w[a1], w[a2]));
            wprod[a2 * g + a1] = wprod[a1 * g + a2];
        }

    std::vector<SparseVec> mul(dim_t * dim_t);
    Vec u(m, 0), v(m, 0);
    for (std::size_t a1 = 0; a1 < g; ++a1)
        for (std::size_t s = 0; s < m; ++s)
            for (std::size_t a2 = 0; a2 < g; ++a2)
                for (std::size_t t = 0; t < m; ++t) {
                    const std::size_t idx1 = a1 * m + s, idx2 = a2 * m + t;
                    if (idx2 < idx1)
                        continue;
                    // (w_a1 (x) e_s)(w_a2 (x) e_t) = sum_l w_l (x) psi_l e_s e_t
                    u.assign(m, 0);
                    for (const auto& term : c->basis_product(s, t))
                        u[term.idx] = term.c;
                    SparseVec out;
                    const auto& psi = wprod[a1 * g + a2];
                    for (std::size_t l = 0; l < g; ++l) {
                        bool zero = std::all_of(psi[l].begin(), psi[l].end(),
                                                [](fq x) { return x == 0; });
                        if (zero)
                            continue;
                        c->mul_into(psi[l], u, v);
                        for (std::size_t r = 0; r < m; ++r)
                            if (v[r] != 0)
                                out.push_back({std::uint32_t(l * m + r), v[r]});
                    }
                    SparseVec norm = normalize_sparse(std::move(out));
                    mul[idx2 * dim_t + idx1] = norm;
                    mul[idx1 * dim_t + idx2] = std::move(norm);
                }

    Vec unit(dim_t, 0);
    for (std::size_t r = 0; r < m; ++r)
        unit[r] = c->unit()[r]; // w_0 = 1

    std::vector<std::string> labels(dim_t);
    for (std::size_t l = 0; l < g; ++l)
        for (std::size_t s = 0; s < m; ++s) {
            std::string ll = l == 0 ? "1" : "w" + std::to_string(l);
            const std::string& rl = c->label(s);
            labels[l * m + s] = ll == "1" ? rl : (rl == "1" ? ll : ll + "(x)" + rl);
        }

    TensorOverResult out;
    out.algebra = FiniteAlgebra::make(c->field(), dim_t, std::move(mul), std::move(unit),
                                      std::move(labels));
    out.module_basis = w;
    out.left_embed = Matrix(c->field(), dim_t, m);
    for (std::size_t i = 0; i < m; ++i) {
        Vec e(m, 0);
        e[i] = 1;
        auto psi = b_coords(e);
        for (std::size_t l = 0; l < g; ++l)
            for (std::size_t r = 0; r < m; ++r)
                out.left_embed.at(l * m + r, i) = psi[l][r];
    }
    out.right_embed = Matrix(c->field(), dim_t, m);
    for (std::size_t i = 0; i < m; ++i)
        out.right_embed.at(i, i) = 1; // 1 (x) e_i lives in block 0
    return out;
}

Vec algebra_det(const FiniteAlgebra& a, const std::vector<Vec>& entries, std::size_t n) {
    require(entries.size() == n * n, errc::dimension_mismatch, "determinant shape");
    if (n == 0)
        return a.unit();
    if (n == 1)
        return entries[0];
    const FiniteField& f = *a.field();
    Vec acc(a.dim(), 0);
    std::vector<Vec> sub((n - 1) * (n - 1));
    for (std::size_t col = 0; col < n; ++col) {
        bool zero = std::all_of(entries[col].begin(), entries[col].end(),
                                [](fq x) { return x == 0; });
        if (zero)
            continue;
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t jj = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == col)
                    continue;
                sub[(i - 1) * (n - 1) + jj] = entries[i * n + j];
                ++jj;
            }
        }
        Vec minor = algebra_det(a, sub, n - 1);
        Vec term = a.mul(entries[col], minor);
        const bool negate = col % 2 == 1;
        for (std::size_t r = 0; r < a.dim(); ++r)
            acc[r] = negate ? f.sub(acc[r], term[r]) : f.add(acc[r], term[r]);
    }
    return acc;
}

} // namespace yl
