// horograph: command-line front end for the solver and the estimate checks.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "horograph/analytic.hpp"
#include "horograph/estimates.hpp"
#include "horograph/io.hpp"
#include "horograph/solver.hpp"

namespace fs = std::filesystem;
using horograph::io::json;

namespace {

struct Common {
    std::string config;
    std::string out = ".";
    std::string grid;
    double eps_target = -1.0;
    int s_steps = 0;
    unsigned seed = 12345;
};

std::vector<double> parse_list(const std::string& s)
{
    std::vector<double> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            v.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw horograph::ConfigError("bad number '" + tok + "' in list '" + s + "'");
        }
    }
    return v;
}

/// "NX,NT" node counts -> interval counts.
std::pair<int, int> parse_grid(const std::string& s)
{
    const auto v = parse_list(s);
    if (v.size() != 2 || v[0] < 3 || v[1] < 3) {
        throw horograph::ConfigError("--grid expects NX,NT node counts >= 3");
    }
    return {static_cast<int>(v[0]) - 1, static_cast<int>(v[1]) - 1};
}

/// "[a,b]x[c,d]"
horograph::geometry::Rectangle parse_rect(const std::string& s)
{
    static const std::regex re(R"(\s*\[([^,\]]+),([^\]]+)\]\s*x\s*\[([^,\]]+),([^\]]+)\]\s*)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) {
        throw horograph::ConfigError("--domain expects [a,b]x[c,d], got '" + s + "'");
    }
    try {
        return {std::stod(m[1]), std::stod(m[2]), std::stod(m[3]), std::stod(m[4])};
    } catch (const std::exception&) {
        throw horograph::ConfigError("bad number in --domain '" + s + "'");
    }
}

void emit(const Common& c, const std::string& name, const std::string& text)
{
    fs::create_directories(c.out);
    horograph::io::write_text((fs::path(c.out) / name).string(), text);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

horograph::io::ProblemConfig load_problem(const Common& c)
{
    if (c.config.empty()) {
        throw horograph::ConfigError("--config is required");
    }
    json j = horograph::io::read_json_file(c.config);
    if (!c.grid.empty()) {
        auto [nx, nt] = parse_grid(c.grid);
        j["resolution"] = {nx, nt};
    }
    if (c.eps_target >= 0.0 || c.s_steps > 0) {
        json& s = j["schedule"];
        if (c.eps_target >= 0.0) {
            s["eps_target"] = c.eps_target;
        }
        if (c.s_steps > 0) {
            s["s_steps"] = c.s_steps;
        }
    }
    return horograph::io::parse_problem(j);
}

void add_common(CLI::App* app, Common& c, bool schedule)
{
    app->add_option("--config", c.config, "problem config JSON");
    app->add_option("--out", c.out, "output directory");
    app->add_option("--grid", c.grid, "grid node counts NX,NT");
    app->add_option("--seed", c.seed, "seed for randomized sampling");
    if (schedule) {
        app->add_option("--eps-target", c.eps_target, "final eps of the continuation");
        app->add_option("--s-steps", c.s_steps, "number of uniform s steps on [1/2, 1]");
    }
}

int cmd_solve(const Common& c)
{
    const auto p = load_problem(c);
    const auto h = p.s >= 1.0 ? p.boundary : p.boundary.homotopy(p.s);
    auto init = p.s <= 0.5 ? horograph::solver::trivial_branch(p.domain, p.boundary, p.s)
                           : horograph::solver::blended_guess(p.domain, h);
    const auto r = horograph::solver::newton_solve(init, p.eps, p.s, p.solver);
    json j = {{"grid", horograph::io::grid_json(p.domain)},
              {"eps", p.eps},
              {"s", p.s},
              {"min", r.field.min()},
              {"max", r.field.max()},
              {"residual_norm", r.residual_norm},
              {"iterations", r.iterations},
              {"residual_history", r.residual_history},
              {"schedule", json::array()}};
    emit(c, "field.csv", horograph::io::field_to_csv(r.field));
    emit(c, "solve.json", dump(j));
    std::printf("solve: %d Newton iterations, residual %.3e, g in [%.6f, %.6f]\n", r.iterations, r.residual_norm,
                r.field.min(), r.field.max());
    return 0;
}

int cmd_continuation(const Common& c)
{
    const auto p = load_problem(c);
    const auto r = horograph::solver::continuation_solve(p.domain, p.boundary, p.schedule, p.solver);
    json steps = json::array();
    for (std::size_t k = 0; k < r.steps.size(); ++k) {
        char name[32];
        std::snprintf(name, sizeof name, "step_%03zu.csv", k);
        emit(c, name, horograph::io::field_to_csv(r.fields[k]));
        json s = horograph::io::to_json(r.steps[k]);
        s["file"] = name;
        steps.push_back(s);
    }
    emit(c, "final.csv", horograph::io::field_to_csv(r.final_field()));
    const auto gaps = horograph::solver::cauchy_gaps(r);
    json j = {{"grid", horograph::io::grid_json(p.domain)},
              {"final_eps", r.final_eps},
              {"min", r.final_field().min()},
              {"max", r.final_field().max()},
              {"residual_norm", r.steps.back().residual_norm},
              {"iterations", r.steps.back().iterations},
              {"schedule", steps},
              {"cauchy_gaps", gaps},
              {"cauchy_gaps_decreasing", horograph::solver::strictly_decreasing(gaps)},
              {"warnings", r.warnings}};
    emit(c, "continuation.json", dump(j));
    std::printf("%-8s %-12s %-6s %-12s %-12s %-12s\n", "s", "eps", "iters", "residual", "min", "max");
    for (const auto& s : r.steps) {
        std::printf("%-8.4f %-12.4e %-6d %-12.3e %-12.8f %-12.8f\n", s.s, s.eps, s.iterations, s.residual_norm, s.min,
                    s.max);
    }
    for (const auto& w : r.warnings) {
        std::printf("warning: %s\n", w.c_str());
    }
    return 0;
}

horograph::estimates::PhiExtension extension_for(const horograph::io::ProblemConfig& p, const horograph::ScalarField& f)
{
    if (p.boundary.provenance == horograph::geometry::Provenance::Constant) {
        return horograph::estimates::phi_constant(p.boundary.values.front());
    }
    if (p.oracle) {
        return horograph::estimates::phi_from_oracle(*p.oracle);
    }
    return horograph::estimates::phi_from_field(
        horograph::solver::euclidean_minimal_solve(f.domain(), f.boundary(), p.solver).field);
}

int cmd_verify(const Common& c, const std::string& field_path, double modulus_eps)
{
    const auto p = load_problem(c);
    std::ifstream in(field_path);
    if (!in) {
        throw horograph::ConfigError("cannot open field '" + field_path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    const auto f = horograph::io::field_from_csv(ss.str(), p.domain);
    const auto report = horograph::estimates::verify_field(f, extension_for(p, f), p.eps, modulus_eps);
    emit(c, "report.json", dump(horograph::io::to_json(report)));
    auto line = [](const char* name, bool pass, const std::string& detail) {
        std::printf("%-18s %-5s %s\n", name, pass ? "pass" : "fail", detail.c_str());
    };
    const auto& l = report.length_bound;
    line("length_bound", l.pass,
         "min f " + horograph::io::format17(l.min_f) + " < [" + horograph::io::format17(l.observed_min) + ", " +
             horograph::io::format17(l.observed_max) + "] < R " + horograph::io::format17(l.R));
    const auto& b = report.boundary_gradient;
    line("boundary_gradient", b.pass,
         "observed " + horograph::io::format17(b.observed_max_boundary_grad) + " <= C " +
             horograph::io::format17(b.C_predicted) + " (log " + horograph::io::format17(b.log_C_predicted) + ", " +
             b.label + ")");
    for (const auto& bc : b.barrier_checks) {
        line("  barrier", bc.pass, bc.name + ": " + std::to_string(bc.samples) + " samples, " +
                                       std::to_string(bc.violations) + " violations");
    }
    const auto& m = report.modulus;
    line("modulus", m.pass,
         "delta " + horograph::io::format17(m.delta) + " (log " + horograph::io::format17(m.log_delta) + "), " + std::to_string(m.nodes_checked) + " pairs, " +
             std::to_string(m.violations) + " violations");
    const auto& g = report.global_gradient;
    line("global_gradient", g.pass,
         g.skipped ? "skipped: " + g.note
                   : "observed " + horograph::io::format17(g.observed_max_grad) + " <= bound " +
                         horograph::io::format17(g.bound_C));
    return 0;
}

struct OracleArgs {
    std::string kind;
    std::string domain = "[0,1]x[0,1]";
    double R = 2.0;
    std::string center = "0";
    double c = 1.0;
    std::string a = "0";
    double b = 0.0;
    double eps = 0.0;
    int samples = 1000;
};

horograph::analytic::OracleSurface make_oracle(const OracleArgs& o)
{
    json j = {{"name", o.kind}};
    if (o.kind == "geodesic-plane") {
        j["R"] = o.R;
        j["center"] = parse_list(o.center);
    } else if (o.kind == "horocylinder") {
        j["c"] = o.c;
    } else if (o.kind == "euclidean-plane") {
        j["a"] = parse_list(o.a);
        j["b"] = o.b;
        j["c"] = o.c;
    }
    return horograph::io::parse_oracle(j);
}

int cmd_oracle(const Common& c, const OracleArgs& o)
{
    const auto surface = make_oracle(o);
    const auto rect = parse_rect(o.domain);
    auto [nx, nt] = c.grid.empty() ? std::pair<int, int>{32, 32} : parse_grid(c.grid);
    horograph::geometry::DomainSpec d = [&] {
        try {
            return horograph::geometry::DomainSpec::rectangle(rect, nx, nt);
        } catch (const horograph::Error& e) {
            throw horograph::ConfigError(e.what());
        }
    }();
    auto g = [&](horograph::geometry::Point2 q) { return horograph::analytic::value(surface, q.x, q.t); };
    const auto b = horograph::geometry::BoundaryData::sample(d, g, horograph::analytic::oracle_name(surface));
    const auto field = horograph::ScalarField::from_function(d, b, g);

    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> ux(rect.x_min, rect.x_max), ut(rect.t_min, rect.t_max);
    std::vector<Eigen::VectorXd> pts;
    while (static_cast<int>(pts.size()) < o.samples) {
        const auto q = horograph::analytic::point2(ux(rng), ut(rng));
        try {
            (void)horograph::analytic::evaluate(surface, q, 0);
            pts.push_back(q);
        } catch (const horograph::OutsideValidity&) {
        }
    }
    const auto numeric = horograph::analytic::classify_numerically(surface, pts, o.eps);
    const auto declared = horograph::analytic::declared_classification(surface, o.eps);
    json j = {{"oracle", horograph::io::oracle_to_json(surface)},
              {"grid", horograph::io::grid_json(d)},
              {"eps", o.eps},
              {"samples", o.samples},
              {"seed", c.seed},
              {"classification", horograph::analytic::to_string(numeric)},
              {"declared_classification", horograph::analytic::to_string(declared)},
              {"agrees", numeric == declared}};
    emit(c, "oracle.csv", horograph::io::field_to_csv(field));
    emit(c, "oracle.json", dump(j));
    std::printf("%s at eps=%g: classification %s (declared %s)\n", horograph::analytic::oracle_name(surface).c_str(),
                o.eps, horograph::analytic::to_string(numeric).c_str(), horograph::analytic::to_string(declared).c_str());
    return 0;
}

int cmd_bounds(const Common& c, const std::string& domain, double value, const std::string& c3_list)
{
    horograph::geometry::GeometricQuantities q;
    if (!c.config.empty()) {
        const auto p = load_problem(c);
        q = horograph::geometry::compute_quantities(p.domain, p.boundary);
    } else {
        if (domain.empty()) {
            throw horograph::ConfigError("bounds needs --config or --domain with --value");
        }
        auto [nx, nt] = c.grid.empty() ? std::pair<int, int>{32, 32} : parse_grid(c.grid);
        try {
            const auto d = horograph::geometry::DomainSpec::rectangle(parse_rect(domain), nx, nt);
            q = horograph::geometry::compute_quantities(d, horograph::geometry::BoundaryData::constant(d, value));
        } catch (const horograph::ConfigError&) {
            throw;
        } catch (const horograph::Error& e) {
            throw horograph::ConfigError(e.what());
        }
    }
    const auto h = horograph::geometry::check_existence_hypotheses(q);
    json table = json::array();
    std::printf("R(Omega,f) = %.17g, existence %s, c0 = %.17g\n", q.R_omega_f, h.existence_ok ? "holds" : "fails",
                h.c0);
    for (double c3 : parse_list(c3_list)) {
        try {
            const auto b = horograph::analytic::global_gradient_bound(h.c1, h.c2, c3);
            table.push_back(horograph::io::to_json(b));
            std::printf("c3 = %-8g bound_C = %.17g\n", c3, b.bound_C);
        } catch (const horograph::HypothesisViolated& e) {
            table.push_back({{"c3", c3}, {"hypothesis_violated", e.what()}});
            std::printf("c3 = %-8g %s\n", c3, e.what());
        }
    }
    json j = {{"quantities", horograph::io::to_json(q)},
              {"hypotheses", horograph::io::to_json(h)},
              {"global_gradient_bounds", table}};
    emit(c, "bounds.json", dump(j));
    return 0;
}

int cmd_convergence(const Common& c, const std::string& oracle, std::string domain, const std::string& grids,
                    double eps)
{
    OracleArgs o;
    o.kind = oracle;
    if (oracle == "geodesic-plane") {
        o.R = 2.0;
        o.center = "1";
        if (domain.empty()) {
            domain = "[0.5,1.5]x[0,1]";
        }
    } else if (oracle == "x-sinh-t") {
        if (domain.empty()) {
            domain = "[1,2]x[1,2]";
        }
    } else {
        throw horograph::ConfigError("convergence supports geodesic-plane and x-sinh-t");
    }
    const auto surface = make_oracle(o);
    const auto rect = parse_rect(domain);
    json rows = json::array();
    std::string csv = "nodes,h,error,order,iterations\n";
    double prev_err = NAN, prev_h = NAN;
    std::printf("%-7s %-12s %-12s %-8s %-5s\n", "nodes", "h", "error", "order", "iters");
    for (double nodes : parse_list(grids)) {
        const int n = static_cast<int>(nodes) - 1;
        if (n < 2) {
            throw horograph::ConfigError("grid node counts must be >= 3");
        }
        const auto d = horograph::geometry::DomainSpec::rectangle(rect, n, n);
        auto g = [&](horograph::geometry::Point2 q) { return horograph::analytic::value(surface, q.x, q.t); };
        const auto b = horograph::geometry::BoundaryData::sample(d, g, oracle);
        const auto r = horograph::solver::newton_solve(horograph::solver::blended_guess(d, b), eps, 1.0);
        const auto exact = horograph::ScalarField::from_function(d, b, g);
        const double err = r.field.max_abs_difference(exact);
        const double h = d.hx();
        const double order = std::isnan(prev_err) ? NAN : std::log(prev_err / err) / std::log(prev_h / h);
        rows.push_back({{"nodes", n + 1},
                        {"h", h},
                        {"error", err},
                        {"order", std::isnan(order) ? json(nullptr) : json(order)},
                        {"iterations", r.iterations}});
        csv += std::to_string(n + 1) + "," + horograph::io::format17(h) + "," + horograph::io::format17(err) + "," +
               (std::isnan(order) ? std::string() : horograph::io::format17(order)) + "," +
               std::to_string(r.iterations) + "\n";
        char order_text[32] = "-";
        if (!std::isnan(order)) {
            std::snprintf(order_text, sizeof order_text, "%.4f", order);
        }
        std::printf("%-7d %-12.4e %-12.4e %-8s %-5d\n", n + 1, h, err, order_text, r.iterations);
        prev_err = err;
        prev_h = h;
    }
    emit(c, "convergence.csv", csv);
    emit(c, "convergence.json",
         dump({{"oracle", horograph::io::oracle_to_json(surface)}, {"eps", eps}, {"domain", domain}, {"rows", rows}}));
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"horograph: eps-horizontal minimal graphs in H^n x R"};
    app.require_subcommand(1);

    Common common;
    auto* solve = app.add_subcommand("solve", "Newton solve at the config's (eps, s)");
    add_common(solve, common, false);

    auto* cont = app.add_subcommand("continuation", "s-homotopy then eps descent");
    add_common(cont, common, true);

    std::string field_path;
    double modulus_eps = 0.1;
    auto* verify = app.add_subcommand("verify", "check the a priori estimates on a field CSV");
    add_common(verify, common, false);
    verify->add_option("--field", field_path, "field CSV")->required();
    verify->add_option("--modulus-eps", modulus_eps, "eps of the modulus-of-continuity check");

    OracleArgs oargs;
    auto* oracle = app.add_subcommand("oracle", "sample and classify an oracle surface");
    add_common(oracle, common, false);
    oracle->add_option("--kind", oargs.kind, "geodesic-plane | horocylinder | euclidean-plane | x-sinh-t")->required();
    oracle->add_option("--domain", oargs.domain, "rectangle [a,b]x[c,d]");
    oracle->add_option("--R", oargs.R, "geodesic plane radius");
    oracle->add_option("--center", oargs.center, "geodesic plane center");
    oracle->add_option("--c", oargs.c, "horocylinder height or plane offset");
    oracle->add_option("--a", oargs.a, "Euclidean plane x-slopes");
    oracle->add_option("--b", oargs.b, "Euclidean plane t-slope");
    oracle->add_option("--eps", oargs.eps, "eps for the classification");
    oracle->add_option("--samples", oargs.samples, "random classification samples");

    std::string bdomain;
    double bvalue = 1.0;
    std::string c3_list = "0,1,2,10";
    auto* bounds = app.add_subcommand("bounds", "geometric quantities, hypotheses, gradient bounds");
    add_common(bounds, common, false);
    bounds->add_option("--domain", bdomain, "rectangle [a,b]x[c,d] with constant data");
    bounds->add_option("--value", bvalue, "constant boundary value");
    bounds->add_option("--c3", c3_list, "boundary gradient bounds to tabulate");

    std::string conv_oracle = "geodesic-plane";
    std::string conv_domain;
    std::string conv_grids = "33,65,129";
    double conv_eps = 0.0;
    auto* conv = app.add_subcommand("convergence", "grid-doubling study against an analytic solution");
    add_common(conv, common, false);
    conv->add_option("--oracle", conv_oracle, "geodesic-plane | x-sinh-t");
    conv->add_option("--domain", conv_domain, "rectangle [a,b]x[c,d]");
    conv->add_option("--grids", conv_grids, "node counts per side");
    conv->add_option("--eps", conv_eps, "eps of the solves");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (solve->parsed()) {
            return cmd_solve(common);
        }
        if (cont->parsed()) {
            return cmd_continuation(common);
        }
        if (verify->parsed()) {
            return cmd_verify(common, field_path, modulus_eps);
        }
        if (oracle->parsed()) {
            return cmd_oracle(common, oargs);
        }
        if (bounds->parsed()) {
            return cmd_bounds(common, bdomain, bvalue, c3_list);
        }
        if (conv->parsed()) {
            return cmd_convergence(common, conv_oracle, conv_domain, conv_grids, conv_eps);
        }
    } catch (const horograph::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const horograph::InvalidParams& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
