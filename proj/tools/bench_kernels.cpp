// Timing of the parallel kernels against their serial reference
// implementations, plus the packed GF(2) echelon against the generic one.
// Results are checked for equality, so this doubles as a stress test.

#include <chrono>
#include <cstdio>
#include <random>

#include "yuanlab/yuan.hpp"

using namespace yl;
using clk = std::chrono::steady_clock;

namespace {

double ms_since(clk::time_point t0) {
    return std::chrono::duration<double, std::milli>(clk::now() - t0).count();
}

bool same_points(const std::vector<YuanPoint>& a, const std::vector<YuanPoint>& b) {
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i].b.space == b[i].b.space))
            return false;
    return true;
}

int bench_enumeration(unsigned p, std::size_t n, std::size_t r, unsigned e) {
    auto field = FiniteField::make(p, e);
    auto c = truncated_algebra(field, n);

    auto t0 = clk::now();
    auto serial = enumerate_yuan_points_serial(c, r);
    double t_serial = ms_since(t0);

    t0 = clk::now();
    auto parallel = enumerate_yuan_points(c, r);
    double t_parallel = ms_since(t0);

    bool ok = same_points(serial, parallel);
    std::printf("enumerate (%u,%zu,%zu) q=%u: %zu points  serial %8.1f ms  parallel %8.1f ms"
                "  speedup %.2fx  %s\n",
                p, n, r, field->q(), serial.size(), t_serial, t_parallel,
                t_serial / t_parallel, ok ? "equal" : "MISMATCH");
    return ok ? 0 : 1;
}

int bench_tangent(unsigned p, std::size_t n, std::size_t r, unsigned e) {
    auto field = FiniteField::make(p, e);
    auto c = truncated_algebra(field, n);
    auto pts = enumerate_yuan_points(c, r);

    EnumOptions serial_opts;
    serial_opts.parallel = false;
    auto t0 = clk::now();
    auto a = tangent_all(c, pts, serial_opts);
    double t_serial = ms_since(t0);

    t0 = clk::now();
    auto b = tangent_all(c, pts, {});
    double t_parallel = ms_since(t0);

    bool ok = a.size() == b.size();
    for (std::size_t i = 0; ok && i < a.size(); ++i)
        ok = a[i].der_dim == b[i].der_dim && a[i].lift_count == b[i].lift_count;
    std::printf("tangent   (%u,%zu,%zu) q=%u: %zu points  serial %8.1f ms  parallel %8.1f ms"
                "  speedup %.2fx  %s\n",
                p, n, r, field->q(), pts.size(), t_serial, t_parallel,
                t_serial / t_parallel, ok ? "equal" : "MISMATCH");
    return ok ? 0 : 1;
}

int bench_rref() {
    auto f2 = FiniteField::make(2, 1);
    std::mt19937_64 rng(12345);
    std::vector<Matrix> mats;
    for (int i = 0; i < 2000; ++i) {
        Matrix m(f2, 40, 90);
        for (auto& x : m.a)
            x = fq(rng() & 1);
        mats.push_back(std::move(m));
    }
    auto t0 = clk::now();
    std::size_t rank_g = 0;
    for (const auto& m : mats)
        rank_g += rref_generic(m).dim();
    double t_generic = ms_since(t0);

    t0 = clk::now();
    std::size_t rank_p = 0;
    for (const auto& m : mats)
        rank_p += rref_gf2(m).dim();
    double t_packed = ms_since(t0);

    bool ok = rank_g == rank_p;
    std::printf("rref 40x90 GF(2) x2000:           generic %8.1f ms  packed  %8.1f ms"
                "  speedup %.2fx  %s\n",
                t_generic, t_packed, t_generic / t_packed, ok ? "equal" : "MISMATCH");
    return ok ? 0 : 1;
}

} // namespace

int main() {
    int rc = 0;
    rc |= bench_rref();
    rc |= bench_enumeration(2, 3, 1, 1);
    rc |= bench_enumeration(2, 3, 2, 1);
    rc |= bench_enumeration(3, 2, 1, 1);
    rc |= bench_tangent(2, 3, 1, 1);
    rc |= bench_tangent(3, 2, 1, 1);
    return rc;
}
