#include <CLI11.hpp>
#include <cmath>
#include <complex>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sgq/angelesco.hpp"
#include "sgq/errors.hpp"
#include "sgq/hermite_pade.hpp"
#include "sgq/io.hpp"
#include "sgq/measure.hpp"
#include "sgq/potential.hpp"

using nlohmann::json;
using namespace sgq;

namespace {

struct Overrides {
    std::string config, out = ".", rule;
    std::optional<int> n, grid, workers;
    std::optional<double> tol;
};

struct Config {
    AngelescoSystem system;
    json raw;
    int n = 0;
    std::vector<int> n_values;
    int grid = 256;
    std::optional<double> tol;
    int workers = 1;
    std::string f_id = "exp";
    std::string mode = "both";
    cplx z{2.0, 1.0};
    std::optional<double> pole;
};

[[noreturn]] void bad_field(const std::string& field, const std::string& what) {
    throw ParameterError("config: field '" + field + "' " + what);
}

int get_int(const json& j, const std::string& field) {
    const json& v = j.at(field);
    if (!v.is_number_integer()) bad_field(field, "must be an integer");
    return v.get<int>();
}

double get_real(const json& j, const std::string& field) {
    const json& v = j.at(field);
    if (!v.is_number()) bad_field(field, "must be a number");
    return v.get<double>();
}

void check_degree(int n, const std::string& field) {
    if (n < 1) bad_field(field, "must be >= 1");
    if (n > kMaxDegree) bad_field(field, "must be <= " + std::to_string(kMaxDegree));
}

std::vector<int> parse_range(const json& v) {
    std::vector<int> out;
    if (v.is_array()) {
        for (const auto& e : v) {
            if (!e.is_number_integer()) bad_field("n_range", "entries must be integers");
            out.push_back(e.get<int>());
        }
    } else if (v.is_object()) {
        const int from = get_int(v, "from"), to = get_int(v, "to");
        const int step = v.contains("step") ? get_int(v, "step") : 1;
        if (step < 1) bad_field("n_range.step", "must be >= 1");
        for (int n = from; n <= to; n += step) out.push_back(n);
    } else {
        bad_field("n_range", "must be a list or {from,to,step}");
    }
    if (out.empty()) bad_field("n_range", "is empty");
    for (int n : out) check_degree(n, "n_range");
    return out;
}

Config load_config(const Overrides& ov, bool needs_n, bool needs_range) {
    Config c;
    c.raw = json::parse(read_text(ov.config));
    const json& j = c.raw;
    if (!j.is_object()) throw ParameterError("config: top level must be an object");
    if (!j.contains("system")) bad_field("system", "is missing");
    try {
        c.system = j.at("system").get<AngelescoSystem>();
    } catch (const ParameterError& e) {
        bad_field("system", std::string("is invalid: ") + e.what());
    }
    if (ov.n) {
        c.n = *ov.n;
    } else if (j.contains("n")) {
        c.n = get_int(j, "n");
    }
    if (needs_n) {
        if (!ov.n && !j.contains("n")) bad_field("n", "is missing");
        check_degree(c.n, "n");
    }
    if (needs_range) {
        if (ov.n) {
            check_degree(*ov.n, "n");
            c.n_values = {*ov.n};
        } else if (j.contains("n_range")) {
            c.n_values = parse_range(j.at("n_range"));
        } else {
            bad_field("n_range", "is missing");
        }
    }
    c.grid = ov.grid ? *ov.grid : (j.contains("grid_size") ? get_int(j, "grid_size") : 256);
    if (c.grid < 64) bad_field("grid_size", "must be >= 64");
    if (ov.tol) c.tol = *ov.tol;
    else if (j.contains("tol")) c.tol = get_real(j, "tol");
    if (c.tol && !(*c.tol > 0)) bad_field("tol", "must be > 0");
    c.workers = ov.workers ? *ov.workers : (j.contains("workers") ? get_int(j, "workers") : 1);
    if (c.workers < 1) bad_field("workers", "must be >= 1");
    if (j.contains("f_id")) {
        if (!j.at("f_id").is_string()) bad_field("f_id", "must be a string");
        c.f_id = j.at("f_id").get<std::string>();
        try {
            TestFunction::lookup(c.f_id);
        } catch (const ParameterError& e) {
            bad_field("f_id", e.what());
        }
    }
    if (j.contains("mode")) {
        if (!j.at("mode").is_string()) bad_field("mode", "must be a string");
        c.mode = j.at("mode").get<std::string>();
        try {
            parse_mode(c.mode);
        } catch (const ParameterError&) {
            bad_field("mode", "must be restricted, full or both");
        }
    }
    if (j.contains("z")) {
        const json& v = j.at("z");
        if (v.is_number()) c.z = v.get<double>();
        else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
            c.z = cplx(v[0].get<double>(), v[1].get<double>());
        else bad_field("z", "must be a number or [re, im]");
    }
    if (j.contains("pole")) {
        c.pole = get_real(j, "pole");
        if (!(*c.pole > c.system.mu2.interval.b)) bad_field("pole", "must lie right of the second interval");
    }
    return c;
}

MopOptions mop_options(const Config& c) {
    MopOptions o;
    if (c.tol) o.tol = *c.tol;
    return o;
}

EquilibriumOptions eq_options(const Config& c, bool use_tol) {
    EquilibriumOptions o;
    o.grid_size = c.grid;
    if (use_tol && c.tol) o.tol = *c.tol;
    return o;
}

std::string out_path(const Overrides& ov, const std::string& name) {
    std::filesystem::create_directories(ov.out);
    return (std::filesystem::path(ov.out) / name).string();
}

void write_json(const Overrides& ov, const std::string& name, const json& j) {
    write_text(out_path(ov, name), j.dump(2) + "\n");
}

json check_summary(const CheckReport& r) {
    json j;
    j["status"] = r.ok() ? "pass" : "fail";
    j["checked"] = r.checks.size();
    j["violations"] = r.violations();
    j["worst_margin"] = r.checks.empty() ? json(nullptr) : json(r.worst_margin());
    for (const auto& c : r.checks)
        if (!c.ok()) {
            j["first_violation"] = {{"name", c.name}, {"family", c.family}, {"index", c.index},
                                    {"lhs", c.lhs}, {"rhs", c.rhs}};
            break;
        }
    return j;
}

const char* status(bool ok) { return ok ? "pass" : "fail"; }

// ---- rule

int cmd_rule(const Overrides& ov) {
    const Config c = load_config(ov, true, false);
    const MopPair mop = solve_mop(c.system, c.n, mop_options(c));
    const SimulRule rule = quad_weights(c.system, mop);
    json j = to_json_value(rule);
    j["system"] = c.system;
    j["diagnostics"] = {{"iterations", mop.iterations},     {"node_residual", mop.node_residual},
                        {"orth_residual", mop.orth_residual}, {"log_gamma1", mop.log_gamma1},
                        {"log_gamma2", mop.log_gamma2},       {"damped", mop.damped},
                        {"warnings", rule.warnings}};
    write_json(ov, "rule.json", j);
    write_text(out_path(ov, "rule.csv"), to_csv(rule));
    return 0;
}

// ---- verify

int cmd_verify(const Overrides& ov) {
    const Config c = load_config(ov, ov.rule.empty(), false);
    MopPair mop;
    SimulRule rule;
    if (ov.rule.empty()) {
        mop = solve_mop(c.system, c.n, mop_options(c));
        rule = quad_weights(c.system, mop);
    } else {
        json rj = json::parse(read_text(ov.rule));
        rule = simul_rule_from_json(rj);
        if (rule.n < 1 || rule.n > kMaxDegree) throw ParameterError("rule file: n out of range");
        mop = mop_from_nodes(c.system, rule.nodes);
    }
    const AngelescoSystem& s = c.system;
    const int n = rule.n;
    json rep;
    rep["n"] = n;
    rep["source"] = ov.rule.empty() ? "computed" : "file";
    bool ok = true;

    const SignReport signs = verify_signs(rule);
    json sj = {{"status", status(signs.ok())}, {"checked", signs.checked}, {"failures", json::array()}};
    for (const auto& f : signs.failures)
        sj["failures"].push_back({{"condition", f.condition}, {"family", f.family}, {"index", f.index},
                                  {"expected", f.expected}, {"actual", f.actual}});
    rep["signs"] = sj;
    ok = ok && signs.ok();

    const double exact = verify_exactness(s, rule, 3 * n - 1);
    rep["exactness"] = {{"status", status(exact <= 1e-9)}, {"max_degree", 3 * n - 1}, {"max_error", exact}};
    ok = ok && exact <= 1e-9;

    const double pole = c.pole ? *c.pole : s.mu2.interval.b + 0.5 * s.span();
    json pj = json::object();
    for (const auto& [name, g] : {std::pair{std::string("one"), AbsMonotone::parse("one")},
                                  std::pair{std::string("exp_c:1"), AbsMonotone::parse("exp_c", 1.0)},
                                  std::pair{std::string("inv_pole:") + fmt17(pole), AbsMonotone::parse("inv_pole", pole)}}) {
        const CheckReport r = pcms_check(s, rule, g, 1e-10);
        pj[name] = check_summary(r);
        ok = ok && r.ok();
    }
    rep["pcms"] = pj;

    const ChristoffelReport cr = christoffel_bounds_check(s, rule);
    json cj = check_summary(cr.lower_bound);
    cj["b_star"] = cr.b_star;
    cj["interior"] = cr.interior;
    cj["scaled_min"] = cr.interior ? json(cr.min_scaled) : json(nullptr);
    cj["scaled_max"] = cr.interior ? json(cr.max_scaled) : json(nullptr);
    cj["scaled_in_bracket"] = cr.interior == 0 || (cr.min_scaled >= 0.05 && cr.max_scaled <= 20);
    rep["christoffel"] = cj;
    ok = ok && cr.lower_bound.ok();

    const SpacingReport sp = spacing_check(s, rule);
    auto side = [](const SpacingSide& x) {
        return json{{"samples", x.samples},
                    {"min_two_step", x.samples ? json(x.min_two_step) : json(nullptr)},
                    {"max_one_step", x.samples ? json(x.max_one_step) : json(nullptr)}};
    };
    rep["spacing"] = {{"side1", side(sp.side1)}, {"side2", side(sp.side2)}};

    if (s.touching()) {
        rep["alt_bounds"] = {{"status", "skipped"}, {"reason", "touching intervals"}};
    } else {
        const CheckReport ab = alt_weight_bounds_check(s, mop, rule);
        rep["alt_bounds"] = check_summary(ab);
        ok = ok && ab.ok();
    }
    rep["status"] = status(ok);
    write_json(ov, "verify.json", rep);
    if (!ok) std::cerr << "verify: hard invariant failed, see verify.json\n";
    return ok ? 0 : 1;
}

// ---- equilibrium

bool same_geometry(const AngelescoSystem& s, double a1, double b1, double a2, double b2) {
    auto close = [](double u, double v) { return std::fabs(u - v) <= 1e-12 * std::max(1.0, std::fabs(v)); };
    return close(s.mu1.interval.a, a1) && close(s.mu1.interval.b, b1) && close(s.mu2.interval.a, a2) &&
           close(s.mu2.interval.b, b2);
}

json cubic_check(const EquilibriumSolution& sol, CubicSet set, double lo, double hi, double anchor) {
    std::vector<double> xs;
    for (int i = 0; i < 10; ++i) xs.push_back(lo + (hi - lo) * (i + 0.5) / 10);
    double worst = 0.0;
    for (double x : xs) {
        const auto q = phi_cubic_coefficients(set, x);
        for (double t : phi_cubic(set, x)) {
            const double scale =
                std::max({1.0, std::fabs(t * t * t), std::fabs(q.q1 * t * t), std::fabs(q.q2 * t), std::fabs(q.q0)});
            worst = std::max(worst, std::fabs(((t + q.q1) * t + q.q2) * t + q.q0) / scale);
        }
    }
    const BranchMatch m = cubic_branch_match(sol.nu1, set, anchor, xs);
    return {{"set", set == CubicSet::Example1 ? "example1" : "example2"},
            {"max_residual", worst},
            {"branch", m.branch},
            {"kappa", m.kappa},
            {"max_deviation", m.max_deviation},
            {"samples", m.samples}};
}

int cmd_equilibrium(const Overrides& ov) {
    const Config c = load_config(ov, false, false);
    const Interval& i1 = c.system.mu1.interval;
    const Interval& i2 = c.system.mu2.interval;
    const EquilibriumSolution sol = solve_vector_equilibrium(i1, i2, eq_options(c, true));
    json j = to_json_value(sol);
    j["mrs_limit"] = mrs_limit(sol.nu2, i1.a, i1.b);
    const double big = std::sqrt(5 + 4 * std::sqrt(2.0));
    if (same_geometry(c.system, -big, -1, 1, big)) j["cubic"] = cubic_check(sol, CubicSet::Example1, -1, 1, 0.0);
    else if (same_geometry(c.system, -1, 0, 0, 0.25)) j["cubic"] = cubic_check(sol, CubicSet::Example2, 0, 0.25, 0.125);
    write_json(ov, "equilibrium.json", j);
    write_text(out_path(ov, "rates.csv"), rate_csv(sol, i1.a, i2.b, 401));
    return 0;
}

// ---- converge

int cmd_converge(const Overrides& ov) {
    const Config c = load_config(ov, false, true);
    const AngelescoSystem& s = c.system;
    const Interval& i1 = s.mu1.interval;
    const Interval& i2 = s.mu2.interval;
    const EquilibriumSolution sol = solve_vector_equilibrium(i1, i2, eq_options(c, false));

    ConvergenceOptions co;
    co.mode = parse_mode(c.mode);
    co.b_star = sol.b_star;
    co.a_star = sol.a_star;
    co.workers = c.workers;
    write_text(out_path(ov, "convergence.csv"), to_csv(quadrature_convergence(s, c.f_id, c.n_values, co)));

    const int count = static_cast<int>(c.n_values.size());
    std::vector<std::string> rate_rows(count), mrs_rows(count);
    const MopOptions mo = mop_options(c);
    parallel_for(count, c.workers, [&](int i) {
        const int n = c.n_values[i];
        const MopPair mop = solve_mop(s, n, mo);
        const SimulRule rule = quad_weights(s, mop);
        std::ostringstream os;
        for (int fam = 1; fam <= 2; ++fam) {
            const auto wr = weight_rate(rule, fam);
            for (std::size_t k = 0; k < wr.size(); ++k)
                os << n << ',' << fam << ',' << k + 1 << ',' << fmt17(wr[k].first) << ',' << fmt17(wr[k].second) << ','
                   << fmt17(rate_function(sol, fam, wr[k].first)) << '\n';
        }
        rate_rows[i] = os.str();
        // right endpoint by mirroring: a_n^* = -(MRS number of the reflected pair)
        std::vector<double> reflected;
        for (auto it = mop.p_zeros.rbegin(); it != mop.p_zeros.rend(); ++it) reflected.push_back(-*it);
        const double bn = mrs_finite(mop, i1.a, i1.b);
        const double an = -mrs_finite(reflected, -i2.b, -i2.a);
        mrs_rows[i] = std::to_string(n) + ',' + fmt17(bn) + ',' + fmt17(an) + ',' + fmt17(sol.b_star) + ',' +
                      fmt17(sol.a_star) + '\n';
    });
    std::string rates = "n,family,j,x,empirical_rate,G\n", mrs = "n,b_n_star,a_n_star,b_star,a_star\n";
    for (int i = 0; i < count; ++i) {
        rates += rate_rows[i];
        mrs += mrs_rows[i];
    }
    write_text(out_path(ov, "weight_rates.csv"), rates);
    write_text(out_path(ov, "mrs_trajectory.csv"), mrs);
    return 0;
}

// ---- hp

int cmd_hp(const Overrides& ov) {
    const Config c = load_config(ov, false, true);
    const auto rows = hp_error_rate(c.system, c.z, c.n_values, c.workers);
    const EquilibriumSolution sol =
        solve_vector_equilibrium(c.system.mu1.interval, c.system.mu2.interval, eq_options(c, false));
    write_text(out_path(ov, "hp.csv"), to_csv(rows));
    json j = {{"z", {c.z.real(), c.z.imag()}},
              {"G1", rate_function(sol, 1, c.z)},
              {"G2", rate_function(sol, 2, c.z)},
              {"last_n", rows.back().n},
              {"last_rate1", rows.back().rate1},
              {"last_rate2", rows.back().rate2}};
    write_json(ov, "hp.json", j);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simultaneous Gaussian quadrature for two-interval Angelesco systems"};
    app.require_subcommand(1);
    Overrides ov;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", ov.config, "experiment config (JSON)")->required();
        sub->add_option("--out", ov.out, "output directory");
        sub->add_option("--n", ov.n, "degree override");
        sub->add_option("--tol", ov.tol, "solver tolerance override");
        sub->add_option("--grid", ov.grid, "equilibrium grid size override");
        sub->add_option("--workers", ov.workers, "threads for n ranges");
    };
    auto* rule = app.add_subcommand("rule", "compute the simultaneous rule");
    auto* verify = app.add_subcommand("verify", "check signs, exactness and weight bounds");
    auto* eq = app.add_subcommand("equilibrium", "solve the vector equilibrium problem");
    auto* conv = app.add_subcommand("converge", "quadrature convergence, weight rates and MRS trajectory");
    auto* hp = app.add_subcommand("hp", "Hermite-Pade error rates at a point");
    for (auto* sub : {rule, verify, eq, conv, hp}) common(sub);
    verify->add_option("--rule", ov.rule, "verify a stored rule.json instead of computing one");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*rule) return cmd_rule(ov);
        if (*verify) return cmd_verify(ov);
        if (*eq) return cmd_equilibrium(ov);
        if (*conv) return cmd_converge(ov);
        if (*hp) return cmd_hp(ov);
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "error: bad JSON: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
