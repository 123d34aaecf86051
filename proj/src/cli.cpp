#include "yuanlab/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "yuanlab/checks.hpp"
#include "yuanlab/serialize.hpp"

namespace yl {

namespace {

constexpr const char* kVersion = "1.0.0";

struct RunConfig {
    unsigned p = 2;
    std::size_t n = 2;
    std::size_t r = 1;
    std::uint32_t q = 2;
    std::size_t e_max = 1;
    std::string flavor = "Bm";
    std::string ring = "field";
    std::string format = "json";
    std::string suite = "all";
    std::uint64_t seed = 0;
    int jobs = 0;
    std::string out_path;
    EnumOptions opts;
};

unsigned field_degree(unsigned p, std::uint32_t q) {
    unsigned e = 0;
    std::uint32_t t = q;
    while (t > 1) {
        require(t % p == 0, errc::bad_parameters, "q must be a power of p");
        t /= p;
        ++e;
    }
    require(e >= 1, errc::bad_parameters, "q must be at least p");
    return e;
}

AlgebraPtr make_total(const RunConfig& cfg) {
    auto field = FiniteField::make(cfg.p, field_degree(cfg.p, cfg.q));
    return truncated_algebra(field, cfg.n);
}

void emit(const RunConfig& cfg, const std::string& text, std::string* out) {
    if (!cfg.out_path.empty()) {
        std::ofstream f(cfg.out_path, std::ios::binary);
        require(bool(f), errc::bad_parameters, "cannot open " + cfg.out_path);
        f << text;
    }
    if (out)
        *out += text;
}

int cmd_enumerate(const RunConfig& cfg, std::string* out) {
    auto rows = point_count_table(cfg.p, cfg.n, cfg.r, cfg.q, 1, cfg.opts);
    const CountRow& row = rows.at(0);
    if (row.status == "SKIPPED")
        fail(errc::too_large, row.note);
    if (cfg.format == "csv") {
        emit(cfg, count_rows_to_csv(rows), out);
    } else {
        AlgebraPtr c = make_total(cfg);
        auto pts = enumerate_yuan_points(c, cfg.r, cfg.opts);
        json points = json::array();
        for (const auto& pt : pts)
            points.push_back(point_to_json(pt));
        json doc{{"command", "enumerate"},
                 {"params", {{"p", cfg.p}, {"n", cfg.n}, {"r", cfg.r}, {"q", cfg.q}}},
                 {"count", pts.size()},
                 {"points", std::move(points)},
                 {"report", count_row_to_json(row)}};
        emit(cfg, doc.dump(2) + "\n", out);
    }
    return row.status == "OK" ? 0 : 2;
}

int cmd_tangent(const RunConfig& cfg, std::string* out) {
    AlgebraPtr c = make_total(cfg);
    auto pts = enumerate_yuan_points(c, cfg.r, cfg.opts);
    auto reps = tangent_all(c, pts, cfg.opts);
    bool all_ok = true;
    json arr = json::array();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        json j = tangent_to_json(reps[i]);
        j["basis"] = matrix_to_json(pts[i].b.space.basis);
        all_ok = all_ok && reps[i].ok;
        arr.push_back(std::move(j));
    }
    json doc{{"command", "tangent"},
             {"params", {{"p", cfg.p}, {"n", cfg.n}, {"r", cfg.r}, {"q", cfg.q}}},
             {"count", pts.size()},
             {"points", std::move(arr)},
             {"status", all_ok ? "OK" : "FAILED"}};
    emit(cfg, doc.dump(2) + "\n", out);
    return all_ok ? 0 : 2;
}

int cmd_aut(const RunConfig& cfg, std::string* out) {
    AlgebraPtr c = make_total(cfg);
    AutConstraints cons;
    AutFlavor flavor;
    if (cfg.flavor == "Bm") {
        cons = {cfg.r, true};
        flavor = AutFlavor::subring_and_max_ideal;
    } else if (cfg.flavor == "m") {
        cons = {std::nullopt, true};
        flavor = AutFlavor::max_ideal;
    } else if (cfg.flavor == "B") {
        cons = {cfg.r, false};
        flavor = AutFlavor::subring;
    } else {
        fail(errc::bad_parameters, "flavor must be one of Bm, m, B");
    }
    TestRingKind rk =
        cfg.ring == "dual" ? TestRingKind::dual_numbers : TestRingKind::base_field;
    AlgebraPtr ring = rk == TestRingKind::dual_numbers
                          ? dual_numbers(c->field())
                          : truncated_algebra(c->field(), 0);
    std::uint64_t brute = count_aut(c, ring, cons, cfg.opts);
    std::uint64_t formula = aut_count_formula(cfg.p, cfg.n, cfg.r, cfg.q, flavor, rk);
    bool match = brute == formula;
    json doc{{"command", "aut"},
             {"params",
              {{"p", cfg.p},
               {"n", cfg.n},
               {"r", cfg.r},
               {"q", cfg.q},
               {"flavor", cfg.flavor},
               {"ring", cfg.ring}}},
             {"count", brute},
             {"formula", formula},
             {"status", match ? "OK" : "FAILED"}};
    emit(cfg, doc.dump(2) + "\n", out);
    return match ? 0 : 2;
}

int cmd_orbit(const RunConfig& cfg, std::string* out) {
    AlgebraPtr c = make_total(cfg);
    YuanPoint seed = standard_point(c, cfg.r);
    OrbitResult orb = orbit(c, seed, cfg.opts);
    auto pts = enumerate_yuan_points(c, cfg.r, cfg.opts);
    bool match = orb.index == pts.size();
    json doc{{"command", "orbit"},
             {"params", {{"p", cfg.p}, {"n", cfg.n}, {"r", cfg.r}, {"q", cfg.q}}},
             {"group_order", orb.group_order},
             {"stabilizer_order", orb.stabilizer_order},
             {"index", orb.index},
             {"enumerated", pts.size()},
             {"status", match ? "OK" : "FAILED"}};
    emit(cfg, doc.dump(2) + "\n", out);
    return match ? 0 : 2;
}

int cmd_counts(const RunConfig& cfg, std::string* out) {
    auto rows = point_count_table(cfg.p, cfg.n, cfg.r, cfg.q, cfg.e_max, cfg.opts);
    bool failed = false;
    for (const auto& row : rows)
        failed = failed || row.status == "FAILED";
    if (cfg.format == "csv") {
        emit(cfg, count_rows_to_csv(rows), out);
    } else {
        json arr = json::array();
        for (const auto& row : rows)
            arr.push_back(count_row_to_json(row));
        json doc{{"command", "counts"},
                 {"params",
                  {{"p", cfg.p},
                   {"n", cfg.n},
                   {"r", cfg.r},
                   {"q", cfg.q},
                   {"e_max", cfg.e_max}}},
                 {"rows", std::move(arr)},
                 {"status", failed ? "FAILED" : "OK"}};
        emit(cfg, doc.dump(2) + "\n", out);
    }
    return failed ? 2 : 0;
}

int cmd_check(const RunConfig& cfg, std::string* out, std::string* err) {
    auto results = run_suite(cfg.suite, cfg.seed, cfg.opts);
    std::ostringstream table;
    std::size_t failures = 0;
    for (const auto& r : results) {
        table << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << "\n";
        if (!r.pass)
            ++failures;
    }
    table << results.size() - failures << "/" << results.size() << " checks passed\n";
    emit(cfg, table.str(), out);
    if (failures) {
        for (const auto& r : results)
            if (!r.pass && !r.detail.empty()) {
                if (err)
                    *err += r.detail + "\n";
                break;
            }
        return 1;
    }
    return 0;
}

int cmd_info(const RunConfig& cfg, std::string* out) {
    json fields = json::array();
    for (auto [p, e] : {std::pair<unsigned, unsigned>{2, 1}, {2, 2}, {2, 3}, {2, 4},
                        {3, 1}, {3, 2}, {5, 1}}) {
        auto f = FiniteField::make(p, e);
        fields.push_back(json{{"p", p}, {"e", e}, {"q", f->q()},
                              {"modulus", f->modulus()}});
    }
    json doc{{"name", "yuanlab"},
             {"version", kVersion},
             {"max_candidates", cfg.opts.max_candidates},
             {"max_candidates_env", "YUANLAB_MAX_CANDIDATES"},
             {"jobs", cfg.jobs},
             {"subcommands",
              {"enumerate", "tangent", "aut", "orbit", "counts", "check", "info"}},
             {"fields", std::move(fields)}};
    emit(cfg, doc.dump(2) + "\n", out);
    return 0;
}

} // namespace

int run_cli_capture(const std::vector<std::string>& args, std::string* out,
                    std::string* err) {
    CLI::App app{"exact engine for differentiably simple rings and their moduli"};
    app.require_subcommand(1);

    RunConfig cfg;
    if (const char* env = std::getenv("YUANLAB_MAX_CANDIDATES"))
        cfg.opts.max_candidates = std::strtoull(env, nullptr, 10);

    auto add_common = [&](CLI::App* sub, bool with_params) {
        if (with_params) {
            sub->add_option("--p", cfg.p, "characteristic");
            sub->add_option("--n", cfg.n, "number of variables");
            sub->add_option("--r", cfg.r, "differential rank");
            sub->add_option("--q", cfg.q, "base field size (a power of p)");
        }
        sub->add_option("--format", cfg.format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--seed", cfg.seed, "seed for randomized suites");
        sub->add_option("--jobs", cfg.jobs, "worker threads (0 = all)");
        sub->add_option("--out", cfg.out_path, "output file");
        sub->add_option("--max-candidates", cfg.opts.max_candidates,
                        "candidate budget override");
    };

    CLI::App* enumerate = app.add_subcommand("enumerate", "enumerate the rational points");
    add_common(enumerate, true);
    CLI::App* tangent = app.add_subcommand("tangent", "tangent dimensions, both methods");
    add_common(tangent, true);
    CLI::App* aut = app.add_subcommand("aut", "automorphism counts against the formula");
    add_common(aut, true);
    aut->add_option("--flavor", cfg.flavor, "Bm, m or B")
        ->check(CLI::IsMember({"Bm", "m", "B"}));
    aut->add_option("--ring", cfg.ring, "field or dual")
        ->check(CLI::IsMember({"field", "dual"}));
    CLI::App* orb = app.add_subcommand("orbit", "orbit of the standard point");
    add_common(orb, true);
    CLI::App* counts = app.add_subcommand("counts", "point counts over extension fields");
    add_common(counts, true);
    counts->add_option("--emax", cfg.e_max, "largest extension step");
    CLI::App* check = app.add_subcommand("check", "invariant suites");
    add_common(check, false);
    check->add_option("--suite", cfg.suite, "suite name")
        ->check(CLI::IsMember(suite_names()));
    CLI::App* info = app.add_subcommand("info", "engine parameters");
    add_common(info, false);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        std::ostringstream os;
        int code = app.exit(e, os, os);
        if (err)
            *err += os.str();
        return code;
    }

    cfg.opts.jobs = cfg.jobs;
    try {
        if (enumerate->parsed())
            return cmd_enumerate(cfg, out);
        if (tangent->parsed())
            return cmd_tangent(cfg, out);
        if (aut->parsed())
            return cmd_aut(cfg, out);
        if (orb->parsed())
            return cmd_orbit(cfg, out);
        if (counts->parsed())
            return cmd_counts(cfg, out);
        if (check->parsed())
            return cmd_check(cfg, out, err);
        if (info->parsed())
            return cmd_info(cfg, out);
    } catch (const engine_error& e) {
        if (err)
            *err += std::string(e.what()) + "\n";
        return e.code() == errc::too_large ? 3 : 2;
    }
    return 0;
}

int run_cli(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i)
        args.emplace_back(argv[i]);
    std::string out, err;
    int code = run_cli_capture(args, &out, &err);
    std::cout << out;
    std::cerr << err;
    return code;
}

} // namespace yl
