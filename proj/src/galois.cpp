#include "yuanlab/galois.hpp"

#include <algorithm>

namespace yl {

bool is_exponent_one(const Subalgebra& b) {
    return b.space.contains(b.parent->frobenius_span());
}

std::optional<GaloisCertificate> is_galois(const Subalgebra& b) {
    const AlgebraPtr& c = b.parent;
    require(is_exponent_one(b), errc::not_exponent_one, "p-th powers leave the base");
    ReifiedSubalgebra rb = subalgebra_as_algebra(b);
    require(rb.algebra->is_local(), errc::not_local_base, "Galois test over a local base");

    auto wopt = free_module_basis(b);
    if (!wopt.has_value())
        return std::nullopt;
    const std::size_t g0 = wopt->size();
    const unsigned p = c->field()->p();
    std::size_t r = 0;
    {
        std::size_t t = g0;
        while (t > 1 && t % p == 0) {
            t /= p;
            ++r;
        }
        if (t != 1)
            return std::nullopt; // free, but not of p-power rank
    }

    // fiber modulo the extended maximal ideal of the base
    std::vector<Vec> mb_rows;
    const Subspace& mb = rb.algebra->nilradical();
    for (std::size_t i = 0; i < mb.dim(); ++i)
        mb_rows.push_back(rb.embedding.apply(mb.basis.row(i)));
    Ideal mbc = ideal_generate(c, mb_rows);
    QuotientResult fiber = quotient(c, mbc);
    DiffSimpleResult fiber_simple = is_diff_simple(fiber.algebra);
    if (!fiber_simple.simple)
        return std::nullopt;

    PBasis pb;
    if (c->ambient().has_value()) {
        auto found = find_p_basis(c, b);
        require(found.has_value(), errc::internal_disagreement,
                "free with simple fiber but no differential basis");
        pb = std::move(*found);
    } else {
        require(fiber.algebra->residue_dim() == 1, errc::not_local_base,
                "residue field strictly larger than the scalars");
        if (r == 0) {
            pb.verified = true;
        } else {
            AlgebraIsomorphism nf = harper_normal_form(fiber.algebra);
            Ideal mf = ideal_from_space(fiber.algebra, fiber.algebra->nilradical());
            std::vector<Vec> fgens = minimal_generators(mf);
            require(fgens.size() == r, errc::internal_disagreement,
                    "fiber generator count differs from the rank");
            for (const auto& fg : fgens)
                pb.elements.push_back(fiber.section.apply(fg));
            require(verify_p_basis(c, b, pb.elements), errc::internal_disagreement,
                    "lifted fiber generators fail the definition check");
            pb.verified = true;
            (void)nf;
        }
    }
    require(pb.elements.size() == r, errc::internal_disagreement,
            "p-basis length differs from the module rank");

    // witness: monomials in the p-basis elements, unit first (so the base is
    // visibly a direct summand)
    std::vector<Vec> witness = p_monomials(*c, pb.elements);

    GaloisCertificate cert;
    cert.base = b;
    cert.total = c;
    cert.rank = g0;
    cert.differential_rank = r;
    cert.p_basis = std::move(pb);
    cert.witness = std::move(witness);
    return cert;
}

std::size_t differential_rank(const GaloisCertificate& cert) {
    if (cert.total->ambient().has_value()) {
        auto rank = module_free_rank(kaehler_presentation(cert.total, cert.base));
        require(rank.has_value() && *rank == cert.differential_rank,
                errc::internal_disagreement,
                "certificate rank differs from the differential-module rank");
    }
    return cert.differential_rank;
}

SplitBaseChange split_after_base_change(const GaloisCertificate& cert) {
    const AlgebraPtr& c = cert.total;
    const FiniteField& f = *c->field();
    TensorOverResult t = tensor_over(cert.base);

    SplitBaseChange out;
    out.tensor = t.algebra;
    const std::size_t dt = t.algebra->dim();

    std::vector<Vec> right_rows;
    for (std::size_t i = 0; i < c->dim(); ++i)
        right_rows.push_back(t.right_embed.apply(c->basis_vec(i)));
    out.right_base = subalgebra_from_space(t.algebra,
                                           span_of(c->field(), right_rows, dt));

    const unsigned p = f.p();
    const Vec zero(dt, 0);
    for (const auto& xi : cert.p_basis.elements) {
        Vec z = t.left_embed.apply(xi);
        Vec rxi = t.right_embed.apply(xi);
        for (std::size_t i = 0; i < dt; ++i)
            z[i] = f.sub(z[i], rxi[i]);
        require(t.algebra->power(z, p) == zero, errc::internal_disagreement,
                "splitting element with nonzero p-th power");
        out.z.push_back(std::move(z));
    }
    require(verify_p_basis(t.algebra, out.right_base, out.z), errc::internal_disagreement,
            "z elements fail the splitting p-basis check");
    out.splitting.elements = out.z;
    out.splitting.verified = true;
    return out;
}

bool fiber_check(const Subalgebra& a) {
    const AlgebraPtr& c = a.parent;
    require(is_exponent_one(a), errc::not_exponent_one, "fiber check needs exponent one");
    ReifiedSubalgebra ra = subalgebra_as_algebra(a);
    require(ra.algebra->is_local(), errc::not_local_base, "fiber check over a local base");
    std::vector<Vec> mb_rows;
    const Subspace& mb = ra.algebra->nilradical();
    for (std::size_t i = 0; i < mb.dim(); ++i)
        mb_rows.push_back(ra.embedding.apply(mb.basis.row(i)));
    Ideal mac = ideal_generate(c, mb_rows);
    QuotientResult fiber = quotient(c, mac);
    return is_diff_simple(fiber.algebra).simple;
}

std::vector<Vec> extend_generators(const GaloisCertificate& cert) {
    const AlgebraPtr& c = cert.total;
    ReifiedSubalgebra rb = subalgebra_as_algebra(cert.base);
    Ideal mb = ideal_from_space(rb.algebra, rb.algebra->nilradical());
    std::vector<Vec> base_gens;
    for (const auto& g : minimal_generators(mb))
        base_gens.push_back(rb.embedding.apply(g));

    LocalStructure lc = local_structure(c);
    const Subspace& mc = lc.max_ideal.space;
    // m^2 of the parent
    SpanBuilder msq(c->field(), c->dim());
    for (std::size_t i = 0; i < mc.dim(); ++i)
        for (std::size_t j = i; j < mc.dim(); ++j)
            msq.add(c->mul(mc.basis.row(i), mc.basis.row(j)));
    const std::size_t target = mc.dim() - msq.rank();

    std::vector<Vec> gens;
    SpanBuilder span(c->field(), c->dim());
    Subspace msq_space = msq.to_subspace();
    for (std::size_t i = 0; i < msq_space.dim(); ++i)
        span.add(msq_space.basis.row(i));
    for (const auto& g : base_gens) {
        require(span.add(g), errc::internal_disagreement,
                "base generator dependent modulo the square of the maximal ideal");
        gens.push_back(g);
    }
    for (std::size_t i = 0; i < mc.dim() && gens.size() < target; ++i) {
        Vec row = mc.basis.row(i);
        if (span.add(row))
            gens.push_back(std::move(row));
    }
    require(gens.size() == target, errc::internal_disagreement,
            "could not complete to a minimal generating set");
    return gens;
}

} // namespace yl
