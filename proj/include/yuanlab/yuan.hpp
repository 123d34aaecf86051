#pragma once

#include <cstdint>
#include <map>

#include "yuanlab/galois.hpp"

namespace yl {

struct EnumOptions {
    std::uint64_t max_candidates = 10'000'000;
    int jobs = 0;         // 0: all available threads
    bool parallel = true; // false: serial reference path
};

/// A rational point of the subextension scheme: a certified Galois subalgebra
/// in canonical echelon form.
struct YuanPoint {
    Subalgebra b;
    GaloisCertificate cert;
};

/// All subalgebras B with C Galois over B of differential rank r, for a split
/// monomially presented C over its base field. Walks every echelon basis of a
/// (p^{n-r} - 1)-dimensional subspace of C/k, lifts through the unit, filters
/// multiplicative closure and then the full Galois test. The output is
/// canonically sorted and independent of the parallel schedule.
std::vector<YuanPoint> enumerate_yuan_points(AlgebraPtr c, std::size_t r,
                                             const EnumOptions& opts = {});
/// Serial reference implementation kept for testing; identical output.
std::vector<YuanPoint> enumerate_yuan_points_serial(AlgebraPtr c, std::size_t r,
                                                    const EnumOptions& opts = {});

struct TangentReport {
    std::size_t der_dim = 0;        // dim of derivations of B into C/B
    std::uint64_t lift_count = 0;   // first-order points over k[eps] above B
    std::uint64_t expected_lifts = 0; // q^der_dim
    std::size_t formula_dim = 0;    // (p^n - p^{n-r})(n - r)
    bool ok = false;                // both methods agree with the formula
};

/// Tangent dimension at a point by two routes: the derivation module of B
/// into C/B, and a direct count of first-order lifts over k[eps]/(eps^2),
/// each lift checked for the Galois condition rather than assumed.
TangentReport tangent_dimension(AlgebraPtr c, const YuanPoint& pt,
                                const EnumOptions& opts = {});
/// Shared-context batch over all points (parallel over lifts).
std::vector<TangentReport> tangent_all(AlgebraPtr c, const std::vector<YuanPoint>& pts,
                                       const EnumOptions& opts = {});

struct AutConstraints {
    /// present: images of the last n-r variables stay inside
    /// k[x_{r+1},...,x_n] tensor R
    std::optional<std::size_t> subring_rank;
    /// constant coefficients forced to zero (the maximal ideal is preserved)
    bool fix_max_ideal = false;
};

struct AutPoint {
    std::vector<Vec> images;       // one element of C (x) R per variable
    std::vector<Vec> constants;    // c_{i,0} as elements of R
    bool preserves_subring = false;
    bool preserves_max_ideal = false;
};

/// Number of automorphisms of C (x) R with the given constraints, by brute
/// enumeration of coefficient vectors; every survivor of the invertibility
/// criterion on the linear part is re-verified to be multiplicative on all
/// basis pairs. R is a finite test algebra over the same field.
std::uint64_t count_aut(AlgebraPtr c, AlgebraPtr test_ring, const AutConstraints& cons,
                        const EnumOptions& opts = {});
std::vector<AutPoint> enumerate_aut(AlgebraPtr c, AlgebraPtr test_ring,
                                    const AutConstraints& cons,
                                    const EnumOptions& opts = {});

enum class AutFlavor { subring_and_max_ideal, max_ideal, subring };
enum class TestRingKind { base_field, dual_numbers };

/// Closed-form order of the constrained automorphism group over the test
/// ring: |GL_r| * |GL_{n-r}| * |R|^t with t + r^2 + (n-r)^2 =
/// (p^n - 1) r + (p^{n-r} - 1)(n - r), times the point count of the spectrum
/// of C for the subring-only flavor.
std::uint64_t aut_count_formula(unsigned p, std::size_t n, std::size_t r, std::uint32_t q,
                                AutFlavor flavor,
                                TestRingKind ring = TestRingKind::base_field);

struct OrbitResult {
    std::vector<YuanPoint> orbit;  // canonically sorted, re-certified
    std::uint64_t group_order = 0;
    std::uint64_t stabilizer_order = 0;
    std::uint64_t index = 0;       // group_order / stabilizer_order
};

/// Orbit of a point under the automorphisms preserving the maximal ideal,
/// over the base field.
OrbitResult orbit(AlgebraPtr c, const YuanPoint& seed, const EnumOptions& opts = {});

/// The standard point B = k[x_{r+1},...,x_n].
YuanPoint standard_point(AlgebraPtr c, std::size_t r);

struct CountRow {
    unsigned p = 0;
    std::size_t n = 0, r = 0;
    std::uint32_t q = 0; // base field size
    std::size_t e = 0;   // extension step: the row is over F_{q^e}
    std::uint64_t count = 0;
    std::uint64_t orbit_predicted = 0;
    std::map<std::size_t, std::uint64_t> tangent_dims; // dim -> #points
    std::size_t formula_dim = 0;
    std::string status; // OK / FAILED / SKIPPED
    std::string note;
};

/// Point counts over the extension tower F_{q^e}, e = 1..e_max, with the
/// predicted orbit index and the tangent dimensions; rows beyond the
/// candidate budget are skipped, not failed. For (p, n, r) = (2, 2, 1) the
/// exact law count = q^{2e} + q^e is asserted.
std::vector<CountRow> point_count_table(unsigned p, std::size_t n, std::size_t r,
                                        std::uint32_t q, std::size_t e_max,
                                        const EnumOptions& opts = {});

} // namespace yl
