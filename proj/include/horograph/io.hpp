// Config ingestion and serialization: JSON problem configs, field CSV files
// written at 17 significant digits, and JSON reports.
#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "horograph/analytic.hpp"
#include "horograph/errors.hpp"
#include "horograph/estimates.hpp"
#include "horograph/field.hpp"
#include "horograph/geometry.hpp"
#include "horograph/solver.hpp"

namespace horograph::io {

using json = nlohmann::json;

inline std::string format17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// Problem configs.

struct ProblemConfig {
    geometry::DomainSpec domain = geometry::DomainSpec::rectangle({}, 32, 32);
    geometry::BoundaryData boundary;
    std::optional<analytic::OracleSurface> oracle;  // set for oracle boundary data
    double eps = 0.0;
    double s = 1.0;
    solver::SolverConfig solver;
    solver::ContinuationSchedule schedule = solver::ContinuationSchedule::standard();
};

namespace detail {

template <class T>
T get(const json& j, const char* key, const std::string& where)
{
    if (!j.contains(key)) {
        throw ConfigError(where + ": missing key '" + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(where + "." + key + ": " + e.what());
    }
}

template <class T>
T get_or(const json& j, const char* key, T fallback)
{
    if (!j.contains(key)) {
        return fallback;
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string(key) + ": " + e.what());
    }
}

}  // namespace detail

/// Oracle from {"name": ..., parameters}. Parameters: geodesic-plane
/// {R, center: [..]}, horocylinder {c}, euclidean-plane {a: [..], b, c},
/// x-sinh-t {}.
inline analytic::OracleSurface parse_oracle(const json& j)
{
    const auto name = detail::get<std::string>(j, "name", "oracle");
    if (name == "geodesic-plane") {
        return analytic::GeodesicPlane{detail::get_or(j, "R", 1.0),
                                       detail::get_or(j, "center", std::vector<double>{0.0})};
    }
    if (name == "horocylinder") {
        return analytic::Horocylinder{detail::get_or(j, "c", 1.0)};
    }
    if (name == "euclidean-plane") {
        return analytic::EuclideanPlane{detail::get_or(j, "a", std::vector<double>{0.0}), detail::get_or(j, "b", 0.0),
                                        detail::get_or(j, "c", 1.0)};
    }
    if (name == "x-sinh-t") {
        return analytic::XSinhT{};
    }
    throw ConfigError("unknown oracle '" + name + "'");
}

inline json oracle_to_json(const analytic::OracleSurface& o)
{
    json j;
    j["name"] = analytic::oracle_name(o);
    if (const auto* gp = std::get_if<analytic::GeodesicPlane>(&o)) {
        j["R"] = gp->R;
        j["center"] = gp->center;
    } else if (const auto* h = std::get_if<analytic::Horocylinder>(&o)) {
        j["c"] = h->c;
    } else if (const auto* e = std::get_if<analytic::EuclideanPlane>(&o)) {
        j["a"] = e->a;
        j["b"] = e->b;
        j["c"] = e->c;
    }
    return j;
}

inline geometry::DomainSpec parse_domain(const json& j, int nx, int nt)
{
    const auto kind = detail::get<std::string>(j, "kind", "domain");
    if (kind == "rectangle") {
        return geometry::DomainSpec::rectangle(
            {detail::get<double>(j, "x_min", "domain"), detail::get<double>(j, "x_max", "domain"),
             detail::get<double>(j, "t_min", "domain"), detail::get<double>(j, "t_max", "domain")},
            nx, nt);
    }
    if (kind == "polygon") {
        std::vector<geometry::Point2> v;
        for (const auto& p : detail::get<std::vector<std::vector<double>>>(j, "vertices", "domain")) {
            if (p.size() != 2) {
                throw ConfigError("polygon vertex must be [x, t]");
            }
            v.push_back({p[0], p[1]});
        }
        return geometry::DomainSpec::polygon(std::move(v), nx, nt);
    }
    throw ConfigError("unknown domain kind '" + kind + "'");
}

inline json domain_to_json(const geometry::DomainSpec& d)
{
    json j;
    if (d.is_rectangle()) {
        const auto& b = d.bounding_box();
        j = {{"kind", "rectangle"}, {"x_min", b.x_min}, {"x_max", b.x_max}, {"t_min", b.t_min}, {"t_max", b.t_max}};
    } else {
        json v = json::array();
        for (const auto& p : d.vertices()) {
            v.push_back({p.x, p.t});
        }
        j = {{"kind", "polygon"}, {"vertices", v}};
    }
    return j;
}

/// Boundary data: {"kind":"constant","value":c}, {"kind":"oracle","oracle":{..}}
/// or {"kind":"table","values":[[i, j, f], ...]} covering every boundary node.
inline std::pair<geometry::BoundaryData, std::optional<analytic::OracleSurface>>
parse_boundary(const json& j, const geometry::DomainSpec& d)
{
    const auto kind = detail::get<std::string>(j, "kind", "boundary");
    if (kind == "constant") {
        return {geometry::BoundaryData::constant(d, detail::get<double>(j, "value", "boundary")), std::nullopt};
    }
    if (kind == "oracle") {
        const auto o = parse_oracle(detail::get<json>(j, "oracle", "boundary"));
        auto b = geometry::BoundaryData::sample(
            d, [&](geometry::Point2 p) { return analytic::value(o, p.x, p.t); }, analytic::oracle_name(o));
        return {std::move(b), o};
    }
    if (kind == "table") {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        geometry::BoundaryData b;
        b.values.assign(d.boundary_nodes().size(), nan);
        b.provenance = geometry::Provenance::Table;
        b.source = "table";
        for (const auto& row : detail::get<std::vector<std::vector<double>>>(j, "values", "boundary")) {
            if (row.size() != 3) {
                throw ConfigError("table rows must be [i, j, f]");
            }
            const int i = static_cast<int>(row[0]), jj = static_cast<int>(row[1]);
            if (d.kind(i, jj) != geometry::NodeKind::Boundary) {
                throw ConfigError("table entry (" + std::to_string(i) + "," + std::to_string(jj) +
                                  ") is not a boundary node");
            }
            b.values[static_cast<std::size_t>(d.boundary_slot(d.index(i, jj)))] = row[2];
        }
        for (double v : b.values) {
            if (std::isnan(v)) {
                throw ConfigError("table does not cover every boundary node");
            }
        }
        return {std::move(b), std::nullopt};
    }
    throw ConfigError("unknown boundary kind '" + kind + "'");
}

inline solver::SolverConfig parse_solver(const json& j)
{
    solver::SolverConfig c;
    c.newton_tol = detail::get_or(j, "newton_tol", c.newton_tol);
    c.max_newton_iters = detail::get_or(j, "max_newton_iters", c.max_newton_iters);
    c.armijo_c = detail::get_or(j, "armijo_c", c.armijo_c);
    c.armijo_shrink = detail::get_or(j, "armijo_shrink", c.armijo_shrink);
    c.min_step = detail::get_or(j, "min_step", c.min_step);
    c.positivity_floor = detail::get_or(j, "positivity_floor", c.positivity_floor);
    return c;
}

/// Wraps library validation errors of a parsed config as ConfigError.
inline ProblemConfig parse_problem(const json& j)
{
    try {
        ProblemConfig c;
        const auto res = detail::get_or(j, "resolution", std::vector<int>{32, 32});
        if (res.size() != 2) {
            throw ConfigError("resolution must be [nx, nt]");
        }
        c.domain = parse_domain(detail::get<json>(j, "domain", "config"), res[0], res[1]);
        auto [b, o] = parse_boundary(detail::get<json>(j, "boundary", "config"), c.domain);
        c.boundary = std::move(b);
        c.oracle = o;
        // Rejects non-positive or non-finite boundary data up front.
        (void)geometry::compute_quantities(c.domain, c.boundary);
        c.eps = detail::get_or(j, "eps", 0.0);
        c.s = detail::get_or(j, "s", 1.0);
        if (j.contains("solver")) {
            c.solver = parse_solver(j.at("solver"));
        }
        c.solver.validate();
        const json sched = j.contains("schedule") ? j.at("schedule") : json::object();
        c.schedule = solver::ContinuationSchedule::standard(detail::get_or(sched, "eps_target", 0.0),
                                                            detail::get_or(sched, "s_steps", 11));
        if (sched.contains("s_values")) {
            c.schedule.s_steps = sched.at("s_values").get<std::vector<double>>();
        }
        if (sched.contains("eps_sequence")) {
            c.schedule.eps_sequence = sched.at("eps_sequence").get<std::vector<double>>();
        }
        c.schedule.validate();
        return c;
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(e.what());
    } catch (const json::exception& e) {
        throw ConfigError(e.what());
    }
}

inline json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

inline void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot write '" + path + "'");
    }
    out << text;
}

// ---------------------------------------------------------------------------
// Field CSV: header x,t,g, then mask nodes with t varying slowest.

inline std::string field_to_csv(const ScalarField& f)
{
    std::string s = "x,t,g\n";
    const auto& d = f.domain();
    for (std::size_t idx = 0; idx < d.node_count(); ++idx) {
        if (d.kind(idx) == geometry::NodeKind::Outside) {
            continue;
        }
        const auto p = d.node(idx);
        s += format17(p.x) + "," + format17(p.t) + "," + format17(f.at(idx)) + "\n";
    }
    return s;
}

/// Loads a CSV written by field_to_csv onto the grid of `domain`. Rows are
/// matched to nodes by rounding (x - x_min)/hx and (t - t_min)/ht; the
/// boundary trace is taken from the boundary rows.
inline ScalarField field_from_csv(const std::string& text, const geometry::DomainSpec& domain)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("x,t,g", 0) != 0) {
        throw ConfigError("field CSV must start with the header x,t,g");
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> values(domain.node_count(), nan);
    const auto& box = domain.bounding_box();
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        double x = 0, t = 0, g = 0;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &t, &g) != 3) {
            throw ConfigError("bad CSV row '" + line + "'");
        }
        const int i = static_cast<int>(std::lround((x - box.x_min) / domain.hx()));
        const int j = static_cast<int>(std::lround((t - box.t_min) / domain.ht()));
        if (!domain.in_mask(i, j)) {
            throw ConfigError("CSV row '" + line + "' is not a mask node of the domain");
        }
        values[domain.index(i, j)] = g;
    }
    geometry::BoundaryData b;
    b.provenance = geometry::Provenance::Table;
    b.source = "csv";
    for (auto idx : domain.boundary_nodes()) {
        b.values.push_back(values[idx]);
    }
    for (std::size_t idx = 0; idx < domain.node_count(); ++idx) {
        if (domain.kind(idx) != geometry::NodeKind::Outside && std::isnan(values[idx])) {
            throw ConfigError("CSV misses mask node " + std::to_string(idx));
        }
    }
    ScalarField f(domain, std::move(b));
    f.values() = values;
    return f;
}

// ---------------------------------------------------------------------------
// JSON reports.

inline json to_json(const geometry::GeometricQuantities& q)
{
    return {{"h_gamma", q.h_gamma}, {"x0_gamma", q.x0_gamma}, {"r_omega", q.r_omega}, {"R_omega_f", q.R_omega_f},
            {"osc_f", q.osc_f},     {"min_f", q.min_f},       {"max_f", q.max_f}};
}

inline json to_json(const geometry::HypothesisReport& h)
{
    return {{"existence_threshold", h.existence_threshold},
            {"existence_ok", h.existence_ok},
            {"c0", h.c0},
            {"c1", h.c1},
            {"c2", h.c2},
            {"gradient_hypothesis_ok", h.gradient_hypothesis_ok}};
}

inline json to_json(const analytic::GradientBound& b)
{
    return {{"c1", b.c1},
            {"c2", b.c2},
            {"c3", b.c3},
            {"gamma", b.gamma},
            {"c12", b.c12},
            {"B", b.B},
            {"interior_candidate", b.interior_candidate},
            {"boundary_candidate", b.boundary_candidate},
            {"bound_C", b.bound_C},
            {"lambda", b.lambda}};
}

inline json to_json(const analytic::BarrierParams& p)
{
    return {{"n", p.n},
            {"R", p.R},
            {"min_g_boundary", p.min_g_boundary},
            {"max_phi", p.phi.max_phi},
            {"max_grad_phi", p.phi.max_grad},
            {"max_hess_phi", p.phi.max_hess},
            {"height", p.height},
            {"alpha1", p.alpha1},
            {"alpha2", p.alpha2},
            {"alpha", p.alpha},
            {"b1", p.b1},
            {"delta1", p.delta1},
            {"log_slope", p.log_slope}};
}

inline json to_json(const estimates::EstimateReport& r)
{
    json j;
    j["quantities"] = to_json(r.quantities);
    j["hypotheses"] = to_json(r.hypotheses);
    const auto& l = r.length_bound;
    j["length_bound"] = {{"min_f", l.min_f},
                         {"R", l.R},
                         {"observed_min", l.observed_min},
                         {"observed_max", l.observed_max},
                         {"nodes_checked", l.nodes_checked},
                         {"violations", l.violations},
                         {"pass", l.pass}};
    const auto& b = r.boundary_gradient;
    json checks = json::array();
    for (const auto& c : b.barrier_checks) {
        checks.push_back({{"name", c.name},
                          {"region", c.region},
                          {"sign_expected", c.sign_expected},
                          {"sign_observed", c.sign_observed},
                          {"samples", c.samples},
                          {"violations", c.violations},
                          {"worst", c.worst},
                          {"pass", c.pass}});
    }
    j["boundary_gradient"] = {{"label", b.label},
                              {"params", to_json(b.params)},
                              {"C_predicted", b.C_predicted},
                              {"log_C_predicted", b.log_C_predicted},
                              {"observed_max_boundary_grad", b.observed_max_boundary_grad},
                              {"pass", b.pass},
                              {"warnings", b.warnings}};
    j["barrier_checks"] = checks;
    const auto& m = r.modulus;
    j["modulus"] = {{"eps_target", m.eps_target}, {"delta0", m.delta0},       {"delta", m.delta},
                    {"log_delta", m.log_delta},
                    {"nodes_checked", m.nodes_checked}, {"violations", m.violations},
                    {"max_deviation", m.max_deviation}, {"pass", m.pass}};
    const auto& g = r.global_gradient;
    j["global_gradient"] = {{"c1", g.c1},
                            {"c2", g.c2},
                            {"c3", g.c3},
                            {"hypothesis_ok", g.hypothesis_ok},
                            {"preconditions_ok", g.preconditions_ok},
                            {"skipped", g.skipped},
                            {"note", g.note},
                            {"bound_C", g.bound_C},
                            {"observed_max_grad", g.observed_max_grad},
                            {"pass", g.pass}};
    if (g.hypothesis_ok) {
        j["global_gradient"]["bound"] = to_json(g.bound);
    }
    return j;
}

inline json grid_json(const geometry::DomainSpec& d)
{
    return {{"domain", domain_to_json(d)},
            {"nx", d.nx()},
            {"nt", d.nt()},
            {"hx", d.hx()},
            {"ht", d.ht()},
            {"interior_nodes", d.interior_nodes().size()},
            {"boundary_nodes", d.boundary_nodes().size()}};
}

inline json to_json(const solver::StepRecord& s)
{
    json j = {{"s", s.s},
              {"eps", s.eps},
              {"iterations", s.iterations},
              {"residual_norm", s.residual_norm},
              {"min", s.min},
              {"max", s.max},
              {"interior_min", s.interior_min},
              {"interior_max", s.interior_max}};
    j["gap"] = std::isnan(s.gap) ? json(nullptr) : json(s.gap);
    return j;
}

}  // namespace horograph::io
