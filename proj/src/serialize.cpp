#include "yuanlab/serialize.hpp"

#include <sstream>

namespace yl {

json vec_to_json(const Vec& v) {
    json arr = json::array();
    for (fq x : v)
        arr.push_back(int(x));
    return arr;
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows; ++i)
        rows.push_back(vec_to_json(m.row(i)));
    return rows;
}

json subspace_to_json(const Subspace& s) { return json{{"basis", matrix_to_json(s.basis)}}; }

json algebra_to_json(const FiniteAlgebra& a) {
    json mul = json::array();
    for (std::size_t i = 0; i < a.dim(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < a.dim(); ++j) {
            Vec prod(a.dim(), 0);
            for (const auto& t : a.basis_product(i, j))
                prod[t.idx] = t.c;
            row.push_back(vec_to_json(prod));
        }
        mul.push_back(std::move(row));
    }
    return json{{"p", a.field()->p()},   {"e", a.field()->e()}, {"dim", a.dim()},
                {"unit", vec_to_json(a.unit())}, {"mul", std::move(mul)},
                {"labels", a.labels()}};
}

json pbasis_to_json(const PBasis& pb) {
    json elems = json::array();
    for (const auto& e : pb.elements)
        elems.push_back(vec_to_json(e));
    return json{{"elements", std::move(elems)}, {"verified", pb.verified}};
}

json certificate_to_json(const GaloisCertificate& c) {
    json witness = json::array();
    for (const auto& w : c.witness)
        witness.push_back(vec_to_json(w));
    return json{{"base_basis", matrix_to_json(c.base.space.basis)},
                {"rank", c.rank},
                {"differential_rank", c.differential_rank},
                {"p_basis", pbasis_to_json(c.p_basis)},
                {"witness", std::move(witness)}};
}

json point_to_json(const YuanPoint& p) {
    return json{{"basis", matrix_to_json(p.b.space.basis)},
                {"certificate", certificate_to_json(p.cert)}};
}

json isomorphism_to_json(const AlgebraIsomorphism& iso) {
    return json{{"forward", matrix_to_json(iso.forward)},
                {"backward", matrix_to_json(iso.inverse)}};
}

json tangent_to_json(const TangentReport& r) {
    return json{{"der_dim", r.der_dim},
                {"lift_count", r.lift_count},
                {"expected_lifts", r.expected_lifts},
                {"formula_dim", r.formula_dim},
                {"ok", r.ok}};
}

json count_row_to_json(const CountRow& r) {
    json tangent;
    if (r.tangent_dims.size() == 1)
        tangent = r.tangent_dims.begin()->first;
    else if (r.tangent_dims.empty())
        tangent = nullptr;
    else {
        tangent = json::object();
        for (const auto& kv : r.tangent_dims)
            tangent[std::to_string(kv.first)] = kv.second;
    }
    json out{{"p", r.p},           {"n", r.n},
             {"r", r.r},           {"q", r.q},
             {"e", r.e},           {"count", r.count},
             {"orbit_predicted", r.orbit_predicted},
             {"tangent_dim", std::move(tangent)},
             {"formula_dim", r.formula_dim},
             {"status", r.status}};
    if (!r.note.empty())
        out["note"] = r.note;
    return out;
}

std::string count_rows_to_csv(const std::vector<CountRow>& rows) {
    std::ostringstream os;
    os << "p,n,r,q,e,count,orbit_predicted,tangent_dim,formula_dim,status\n";
    for (const auto& r : rows) {
        std::string tangent;
        if (r.tangent_dims.size() == 1)
            tangent = std::to_string(r.tangent_dims.begin()->first);
        else if (!r.tangent_dims.empty()) {
            for (const auto& kv : r.tangent_dims)
                tangent += (tangent.empty() ? "" : ";") + std::to_string(kv.first);
        }
        os << r.p << ',' << r.n << ',' << r.r << ',' << r.q << ',' << r.e << ','
           << r.count << ',' << r.orbit_predicted << ',' << tangent << ','
           << r.formula_dim << ',' << r.status << '\n';
    }
    return os.str();
}

} // namespace yl
