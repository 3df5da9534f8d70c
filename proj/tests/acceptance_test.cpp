// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit when any
// criterion fails. Each criterion returns its verdict together with the
// numbers it was decided on so a red line explains itself.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "horograph/analytic.hpp"
#include "horograph/estimates.hpp"
#include "horograph/solver.hpp"

using namespace horograph;
using geometry::BoundaryData;
using geometry::DomainSpec;
using geometry::Point2;

namespace {

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail << "[violated: " << what << "] ";
        }
    }
};

const analytic::GeodesicPlane kPlane{2.0, {1.0}};
const geometry::Rectangle kPlaneBox{0.5, 1.5, 0.0, 1.0};
const geometry::Rectangle kSinhBox{1.0, 2.0, 1.0, 2.0};

ScalarField oracle_field(const analytic::OracleSurface& o, const DomainSpec& d)
{
    auto fn = [&](Point2 q) { return analytic::value(o, q.x, q.t); };
    return ScalarField::from_function(d, BoundaryData::sample(d, fn, analytic::oracle_name(o)), fn);
}

std::vector<Eigen::VectorXd> samples(const analytic::OracleSurface& o, std::mt19937_64& rng, int count,
                                     geometry::Rectangle box)
{
    std::uniform_real_distribution<double> ux(box.x_min, box.x_max), ut(box.t_min, box.t_max);
    std::vector<Eigen::VectorXd> pts;
    while (static_cast<int>(pts.size()) < count) {
        const auto p = analytic::point2(ux(rng), ut(rng));
        try {
            (void)analytic::evaluate(o, p, 0);
            pts.push_back(p);
        } catch (const OutsideValidity&) {
        }
    }
    return pts;
}

struct SuiteCase {
    std::string name;
    DomainSpec domain;
    BoundaryData f;
    estimates::PhiExtension phi;
    solver::SolverConfig cfg;
};

/// The continuation suite: f = 1 on rectangles of widths 0.5, 1 and 2 and
/// the traces of the two exact solutions.
std::vector<SuiteCase> continuation_suite()
{
    std::vector<SuiteCase> out;
    for (double w : {0.5, 1.0, 2.0}) {
        const auto d = DomainSpec::rectangle({0.0, w, 0.0, 1.0}, static_cast<int>(32 * std::max(w, 0.5)), 32);
        out.push_back({"f=1 width " + std::to_string(w).substr(0, 3), d, BoundaryData::constant(d, 1.0),
                       estimates::phi_constant(1.0), {}});
    }
    const auto dp = DomainSpec::rectangle(kPlaneBox, 32, 32);
    out.push_back({"geodesic-plane trace", dp, oracle_field(kPlane, dp).boundary(), estimates::phi_from_oracle(kPlane),
                   {}});
    // Values up to 2 sinh 2 put the roundoff floor of the discrete
    // residual near 1.3e-10 on this grid, above the default tolerance.
    solver::SolverConfig sinh_cfg;
    sinh_cfg.newton_tol = 1e-9;
    const auto ds = DomainSpec::rectangle(kSinhBox, 32, 32);
    out.push_back({"x-sinh-t trace", ds, oracle_field(analytic::XSinhT{}, ds).boundary(),
                   estimates::phi_from_oracle(analytic::XSinhT{}), sinh_cfg});
    return out;
}

struct SuiteRun {
    SuiteCase c;
    solver::ContinuationResult result;
};

const std::vector<SuiteRun>& suite_runs()
{
    static const std::vector<SuiteRun> runs = [] {
        std::vector<SuiteRun> r;
        for (auto& c : continuation_suite()) {
            auto res = solver::continuation_solve(c.domain, c.f, solver::ContinuationSchedule::standard(), c.cfg);
            r.push_back({std::move(c), std::move(res)});
        }
        return r;
    }();
    return runs;
}

// 1. Exact solutions have residual <= 1e-10 at 1000 random points.
void oracle_residuals(Verdict& v)
{
    std::mt19937_64 rng(101);
    double worst_plane = 0.0, worst_sinh = 0.0;
    for (const auto& p : samples(analytic::GeodesicPlane{2.0, {0.0}}, rng, 1000, {-1.8, 1.8, -3.0, 3.0})) {
        worst_plane = std::max(worst_plane, std::abs(op::residual(analytic::evaluate(analytic::GeodesicPlane{2.0, {0.0}}, p, 2, 0.0))));
    }
    std::uniform_real_distribution<double> ueps(0.0, 1.0);
    for (const auto& p : samples(analytic::XSinhT{}, rng, 1000, {0.05, 3.0, 0.05, 3.0})) {
        worst_sinh = std::max(worst_sinh, std::abs(op::residual(analytic::evaluate(analytic::XSinhT{}, p, 2, ueps(rng)))));
    }
    v.detail << "max |res| geodesic-plane " << worst_plane << ", x-sinh-t " << worst_sinh;
    v.require(worst_plane <= 1e-10, "geodesic-plane residual <= 1e-10");
    v.require(worst_sinh <= 1e-10, "x-sinh-t residual <= 1e-10");
}

// 2. Strict residual signs of the sub- and supersolution families.
void residual_signs(Verdict& v)
{
    std::mt19937_64 rng(102);
    std::uniform_real_distribution<double> ueps(0.0, 1.0), upos(0.01, 1.0);
    struct Family {
        analytic::OracleSurface o;
        int sign;
        bool eps_positive;
        geometry::Rectangle box;
    };
    const std::vector<Family> families{
        {analytic::Horocylinder{0.7}, 1, false, {-2, 2, -2, 2}},
        {analytic::Horocylinder{2.5}, 1, false, {-2, 2, -2, 2}},
        {analytic::EuclideanPlane{{0.3}, 0.2, 1.0}, 1, false, {-3, 3, -2, 2}},
        {analytic::EuclideanPlane{{-1.2}, -0.4, 2.0}, 1, false, {-3, 3, -2, 2}},
        {analytic::GeodesicPlane{2.0, {0.0}}, -1, true, {-1.9, 1.9, -2, 2}},
        {analytic::GeodesicPlane{0.5, {1.0}}, -1, true, {0.55, 1.45, -2, 2}},
    };
    std::size_t checked = 0, wrong = 0;
    for (const auto& fam : families) {
        for (const auto& p : samples(fam.o, rng, 1000, fam.box)) {
            const double eps = fam.eps_positive ? upos(rng) : ueps(rng);
            const auto s = analytic::evaluate(fam.o, p, 2, eps);
            if (!(s.g > 0.0)) {
                continue;
            }
            const double r = op::residual(s);
            ++checked;
            if (!(fam.sign * r >= 1e-14 * op::residual_scale(s))) {
                ++wrong;
            }
        }
    }
    v.detail << checked << " points over " << families.size() << " surfaces, " << wrong << " with the wrong sign";
    v.require(wrong == 0, "strict sign with |res| >= 1e-14 scale");
}

// 3. Observed order of the geodesic-plane solve on 33, 65 and 129 nodes.
void manufactured_convergence(Verdict& v)
{
    const auto start = std::chrono::steady_clock::now();
    std::vector<double> errs;
    int max_iters = 0;
    for (int n : {32, 64, 128}) {
        const auto d = DomainSpec::rectangle(kPlaneBox, n, n);
        const auto exact = oracle_field(kPlane, d);
        const auto r = solver::newton_solve(solver::blended_guess(d, exact.boundary()), 0.0, 1.0);
        errs.push_back(r.field.max_abs_difference(exact));
        max_iters = std::max(max_iters, r.iterations);
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double o1 = std::log2(errs[0] / errs[1]), o2 = std::log2(errs[1] / errs[2]);
    v.detail << "errors " << errs[0] << ", " << errs[1] << ", " << errs[2] << "; orders " << o1 << ", " << o2
             << "; max iterations " << max_iters << "; " << seconds << " s";
    v.require(o1 >= 1.9 && o1 <= 2.1 && o2 >= 1.9 && o2 <= 2.1, "order in [1.9, 2.1]");
    v.require(max_iters <= 12, "at most 12 Newton iterations");
    v.require(seconds <= 60.0, "runtime at most 60 s");
}

// 4. min f < g < R on every continuation field with a positive zeroth-order
//    weight (s > 1/2).
void length_estimate(Verdict& v)
{
    std::size_t fields = 0, failing = 0;
    for (const auto& run : suite_runs()) {
        const auto q = geometry::compute_quantities(run.c.domain, run.c.f);
        double lo_margin = std::numeric_limits<double>::infinity();
        double hi_margin = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < run.result.fields.size(); ++k) {
            if (run.result.steps[k].s <= 0.5) {
                continue;
            }
            const auto& g = run.result.fields[k];
            ++fields;
            const double lo = g.interior_min() - q.min_f;
            const double hi = q.R_omega_f - g.interior_max();
            lo_margin = std::min(lo_margin, lo);
            hi_margin = std::min(hi_margin, hi);
            if (!(lo > 1e-12 && hi > 0.0)) {
                ++failing;
            }
        }
        v.detail << run.c.name << ": margins " << lo_margin << " / " << hi_margin << "; ";
    }
    v.detail << fields << " fields, " << failing << " failing";
    v.require(failing == 0, "min f + 1e-12 < g < R on every field");
}

// 5. Trivial branch, the eps descent and the Cauchy gaps.
void homotopy_endpoints(Verdict& v)
{
    const auto d = DomainSpec::rectangle({0.0, 0.5, 0.0, 1.0}, 16, 32);
    const auto f = BoundaryData::constant(d, 1.0);
    bool exact = true;
    for (double s : {0.05, 0.2, 0.37, 0.5}) {
        const auto r = solver::newton_solve(solver::trivial_branch(d, f, s), 0.5, s);
        for (auto idx : d.interior_nodes()) {
            exact = exact && r.field.at(idx) == 2.0 * s * f.min();
        }
        exact = exact && r.iterations == 0;
    }
    v.require(exact, "s <= 1/2 returns exactly 2 s min f");

    const auto& run = suite_runs().front();
    const auto& steps = run.result.steps;
    bool path = steps.size() == 32 && run.result.eps_path_begin == 10 && steps[10].s == 1.0 && steps[10].eps == 1.0;
    for (std::size_t k = 11; path && k + 1 < steps.size(); ++k) {
        path = steps[k].s == 1.0 && steps[k].eps == std::ldexp(1.0, -static_cast<int>(k - 10));
    }
    path = path && steps.back().eps == 0.0 && run.result.final_eps == 0.0;
    v.require(path, "s = 1 at the largest eps, then eps = 2^-k, then 0");

    const auto gaps = solver::cauchy_gaps(run.result);
    v.detail << "gaps for eps <= 1e-3: ";
    for (double g : gaps) {
        v.detail << g << " ";
    }
    v.require(gaps.size() >= 2 && solver::strictly_decreasing(gaps), "gaps decrease monotonically");
}

// 6. Existence-hypothesis checker.
void existence_hypothesis(Verdict& v)
{
    const auto d2 = DomainSpec::rectangle({0.0, 2.0, 0.0, 1.0}, 16, 8);
    const auto q2 = geometry::compute_quantities(d2, BoundaryData::constant(d2, 1.0));
    const auto h2 = geometry::check_existence_hypotheses(q2);
    const auto d10 = DomainSpec::rectangle({0.0, 10.0, 0.0, 1.0}, 40, 8);
    const auto h10 = geometry::check_existence_hypotheses(
        geometry::compute_quantities(d10, BoundaryData::constant(d10, 1.0)));
    const auto dp = DomainSpec::rectangle(kPlaneBox, 32, 32);
    const auto qp = geometry::compute_quantities(dp, oracle_field(kPlane, dp).boundary());
    const auto hp = geometry::check_existence_hypotheses(qp);
    const double threshold = 1.0 + std::sqrt(M_PI / 2.0);
    v.detail << "width 2: R = " << q2.R_omega_f << " vs " << h2.existence_threshold << "; width 10 ok = "
             << h10.existence_ok << "; c0 = " << hp.c0;
    v.require(std::abs(q2.R_omega_f - std::sqrt(2.0)) <= 1e-15 && h2.existence_ok, "width 2 holds with R = sqrt 2");
    v.require(std::abs(h2.existence_threshold - threshold) <= 1e-15, "threshold 1 + sqrt(pi/2)");
    v.require(!h10.existence_ok, "width 10 fails");
    v.require(hp.c0 == qp.osc_f + qp.h_gamma / 2.0 && std::abs(hp.c0 - (2.0 - std::sqrt(3.75) + 0.5)) <= 1e-15,
              "c0 = osc f + h/2");
}

// 7. Global gradient bound on the width-0.5 field and the phi identities.
void global_gradient(Verdict& v)
{
    const auto& run = suite_runs().front();
    const auto& g = run.result.final_field();
    const auto q = geometry::compute_quantities(g.domain(), g.boundary());
    const auto r = estimates::check_global_gradient(g, q.min_f, q.R_omega_f, fd::max_boundary_gradient(g));
    v.detail << "c2 = " << r.c2 << " < " << r.c1 * (1.0 + std::sqrt(M_PI / 2.0)) << "; max |Dg| "
             << r.observed_max_grad << " <= " << r.bound_C << "; ";
    v.require(r.hypothesis_ok, "c2 < c1 (1 + sqrt(pi/2))");
    v.require(r.pass, "observed max |Dg| <= bound_C");

    const analytic::PhiProfile phi{r.bound.c1, r.bound.gamma};
    const double c12 = r.bound.c12, gamma = r.bound.gamma;
    double worst_identity = 0.0;
    bool ranges = true;
    for (int k = 0; k <= 2000; ++k) {
        const double u = c12 * k / 2000.0;
        const double d1 = phi.d1(u), d2 = phi.d2(u), d3 = phi.d3(u);
        ranges = ranges && d1 >= std::exp(-gamma * c12 * c12) - 1e-10 && d1 <= 1.0 + 1e-10;
        ranges = ranges && -d2 >= -1e-10 && -d2 <= 2.0 * gamma * c12 + 1e-10;
        worst_identity = std::max(worst_identity, std::abs((-d3 * d1 + d2 * d2) / (d1 * d1) - 2.0 * gamma));
    }
    v.detail << "identity error " << worst_identity;
    v.require(ranges, "phi' and -phi'' ranges");
    v.require(worst_identity <= 1e-10, "(-phi''' phi' + phi''^2)/phi'^2 = 2 gamma");
}

// 8. Barrier constants and the barrier signs on the acceptance domains.
void barrier_certification(Verdict& v)
{
    std::size_t samples = 0, violations = 0;
    for (const auto& run : suite_runs()) {
        const auto& g = run.result.final_field();
        const auto rep = estimates::check_boundary_gradient(g, run.c.phi, 0.0);
        const auto& p = rep.params;
        const double K = p.height;
        // (1) b1 >= alpha; (2) (e^{K b1} - 1)/delta1 >= b1 e^{K b1}, in logs.
        v.require(p.b1 >= p.alpha, run.c.name + ": b1 >= alpha");
        v.require(p.log_slope >= std::log(p.b1) + K * p.b1 - 1e-12 * std::max(1.0, K * p.b1),
                  run.c.name + ": slope condition");
        for (int k = 0; k <= 1000; ++k) {
            if (analytic::boundary_barrier_dpsi(p, p.delta1 * k / 1000.0) < 1.0 - 1e-12) {
                v.require(false, run.c.name + ": psi' >= 1 on [0, delta1]");
                break;
            }
        }
        for (const auto& c : rep.barrier_checks) {
            samples += c.samples;
            violations += c.violations;
            v.require(c.pass, run.c.name + ": " + c.name);
        }
        v.detail << run.c.name << (rep.warnings.empty() ? "" : " (collar shrunk)") << "; ";
    }
    v.detail << samples << " collar samples, " << violations << " sign violations";
}

// 9. Translation and hyperbolic rescaling covariance.
void invariance(Verdict& v)
{
    // Operator level, random states.
    std::mt19937_64 rng(109);
    std::uniform_real_distribution<double> u(-2.0, 2.0), up(0.2, 3.0), ue(0.0, 1.0);
    double worst = 0.0;
    for (double lambda : {0.25, 0.7, 1.9, 4.0}) {
        for (int k = 0; k < 1000; ++k) {
            const double eps = ue(rng) * std::min(1.0, 1.0 / (lambda * lambda));
            const op::PlanarState p{up(rng), u(rng), u(rng), u(rng), u(rng), u(rng), eps};
            const op::PlanarState q{lambda * p.g,   p.gx,  lambda * p.gt, p.gxx / lambda,
                                    lambda * p.gtt, p.gxt, p.eps * lambda * lambda};
            const double scale = std::max(1.0, op::residual_scale(op::from_planar(p)));
            worst = std::max(worst, std::abs(op::residual(q) - lambda * op::residual(p)) / (lambda * scale));
        }
    }
    v.detail << "relative operator defect " << worst << "; ";
    v.require(worst <= 1e-10, "residual factor lambda to 1e-10");

    // Field level: translation.
    const auto d = DomainSpec::rectangle(kPlaneBox, 32, 32);
    const auto exact = oracle_field(kPlane, d);
    const auto base = solver::newton_solve(solver::blended_guess(d, exact.boundary()), 0.0, 1.0);
    const auto moved_domain = d.translated(0.75, -1.25);
    const auto moved = solver::newton_solve(solver::blended_guess(moved_domain, exact.boundary()), 0.0, 1.0);
    v.require(moved.field.values() == translate(base.field, 0.75, -1.25).values(), "translation exact to the grid");

    // Field level: rescaling, measured against the rescaled exact solution.
    const double base_err = base.field.max_abs_difference(exact);
    for (double lambda : {0.5, 2.0, 3.0}) {
        const auto rescaled = analytic::hyperbolic_rescale(kPlane, lambda);
        const auto ds = DomainSpec::rectangle({lambda * kPlaneBox.x_min, lambda * kPlaneBox.x_max, 0.0, 1.0}, 32, 32);
        const auto exact_s = oracle_field(rescaled.surface, ds);
        const auto solved = solver::newton_solve(solver::blended_guess(ds, exact_s.boundary()), 0.0, 1.0);
        const double err = solved.field.max_abs_difference(exact_s);
        const double image_gap = solved.field.max_abs_difference(hyperbolic_rescale(base.field, lambda));
        v.detail << "lambda " << lambda << ": error " << err << " vs " << lambda * base_err << ", image gap "
                 << image_gap << "; ";
        v.require(err <= 2.0 * lambda * base_err, "rescaled error within 2x the discretization error");
    }
}

// 10. Euclidean sub-solver.
void euclidean_subsolver(Verdict& v)
{
    const auto rect = DomainSpec::rectangle({-1.0, 1.0, 0.0, 2.0}, 24, 24);
    const auto poly = DomainSpec::polygon({{-1, -1}, {1, -1}, {1.2, 0.5}, {0, 1.2}, {-1.1, 0.4}}, 32, 32);
    double affine_err = 0.0;
    for (const auto* d : {&rect, &poly}) {
        auto affine = [](Point2 q) { return 0.3 * q.x - 0.7 * q.t + 0.4; };
        const auto r = solver::euclidean_minimal_solve(*d, BoundaryData::sample(*d, affine, "affine"));
        for (auto idx : d->interior_nodes()) {
            affine_err = std::max(affine_err, std::abs(r.field.at(idx) - affine(d->node(idx))));
        }
    }
    v.detail << "affine error " << affine_err << "; ";
    v.require(affine_err <= 1e-12, "affine data reproduced to 1e-12");

    const std::vector<std::function<double(Point2)>> data{
        [](Point2) { return 1.0; },
        [](Point2 q) { return 0.3 * q.x - 0.7 * q.t + 0.4; },
        [](Point2 q) { return 0.2 * (q.x * q.x - q.t * q.t); },
        [](Point2 q) { return std::sin(2.0 * q.x) * std::cos(q.t); },
        [](Point2 q) { return std::exp(0.5 * q.x) - q.t * q.t * q.t; },
    };
    std::size_t cases = 0, broken = 0;
    for (const auto* d : {&rect, &poly}) {
        for (const auto& fn : data) {
            const auto f = BoundaryData::sample(*d, fn, "test");
            const auto r = solver::euclidean_minimal_solve(*d, f);
            ++cases;
            // A few ulps of Newton roundoff are tolerated (constant data
            // comes back as 1 +- 2e-16).
            const double slack = 1e-14 * std::max({1.0, std::abs(f.min()), std::abs(f.max())});
            if (!(r.field.interior_min() >= f.min() - slack && r.field.interior_max() <= f.max() + slack)) {
                ++broken;
            }
        }
    }
    v.detail << cases << " maximum-principle cases, " << broken << " broken";
    v.require(broken == 0, "min f <= u <= max f");
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria{
        {"oracle residuals", oracle_residuals},
        {"sub/supersolution signs", residual_signs},
        {"manufactured-solution convergence", manufactured_convergence},
        {"horizontal length estimate", length_estimate},
        {"homotopy endpoints and eps descent", homotopy_endpoints},
        {"existence-hypothesis checker", existence_hypothesis},
        {"global gradient bound", global_gradient},
        {"barrier certification", barrier_certification},
        {"invariance suite", invariance},
        {"Euclidean sub-solver", euclidean_subsolver},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Verdict v;
        v.detail.precision(6);
        try {
            criteria[k].second(v);
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail << "exception: " << e.what();
        }
        failed += v.pass ? 0 : 1;
        std::printf("criterion %2zu %s  %s: %s\n", k + 1, v.pass ? "PASS" : "FAIL", criteria[k].first.c_str(),
                    v.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
