#pragma once

#include <json.hpp>

#include "yuanlab/yuan.hpp"

namespace yl {

using json = nlohmann::json;

json vec_to_json(const Vec& v);
json matrix_to_json(const Matrix& m);
json subspace_to_json(const Subspace& s); // {basis: [[ints]]} canonical rows
json algebra_to_json(const FiniteAlgebra& a); // {p,e,dim,unit,mul,labels}
json pbasis_to_json(const PBasis& pb);        // {elements, verified}
json certificate_to_json(const GaloisCertificate& c);
json point_to_json(const YuanPoint& p);
json isomorphism_to_json(const AlgebraIsomorphism& iso); // {forward, backward}
json tangent_to_json(const TangentReport& r);
json count_row_to_json(const CountRow& r);

/// CSV mirror of the count rows; fixed column order
/// p,n,r,q,e,count,orbit_predicted,tangent_dim,formula_dim,status.
std::string count_rows_to_csv(const std::vector<CountRow>& rows);

} // namespace yl
