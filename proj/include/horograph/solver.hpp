// Finite-difference damped-Newton solver for the two-variable Dirichlet
// problem: the eps-horizontal minimal equation with the s-homotopy and the
// eps -> 0 continuation, and the Euclidean minimal-graph equation used to
// extend boundary data.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <limits>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "horograph/errors.hpp"
#include "horograph/field.hpp"
#include "horograph/geometry.hpp"
#include "horograph/point_operator.hpp"

namespace horograph::solver {

struct SolverConfig {
    double newton_tol = 1e-10;  // max-norm residual threshold
    int max_newton_iters = 50;
    double armijo_c = 1e-4;
    double armijo_shrink = 0.5;
    double min_step = 1e-12;
    double positivity_floor = 1e-8;

    void validate() const
    {
        if (!(newton_tol > 0.0) || max_newton_iters < 1 || !(armijo_c > 0.0) || !(min_step > 0.0) ||
            !(positivity_floor > 0.0)) {
            throw InvalidParams("solver settings must be positive");
        }
        if (!(armijo_shrink > 0.0 && armijo_shrink < 1.0)) {
            throw InvalidParams("armijo_shrink must lie in (0,1)");
        }
    }
};

struct ContinuationSchedule {
    std::vector<double> s_steps;
    std::vector<double> eps_sequence;

    /// `s_count` uniform s values on [1/2, 1]; eps = 2^-k for k = 0..20
    /// while above the target, then the target itself.
    static ContinuationSchedule standard(double eps_target = 0.0, int s_count = 11)
    {
        if (s_count < 2) {
            throw InvalidParams("need at least two s steps");
        }
        if (!(eps_target >= 0.0 && eps_target <= 1.0)) {
            throw InvalidParams("eps target must lie in [0,1]");
        }
        ContinuationSchedule c;
        for (int k = 0; k < s_count; ++k) {
            c.s_steps.push_back(0.5 + 0.5 * k / (s_count - 1));
        }
        for (int k = 0; k <= 20; ++k) {
            const double e = std::ldexp(1.0, -k);
            if (e <= eps_target) {
                break;
            }
            c.eps_sequence.push_back(e);
        }
        if (c.eps_sequence.empty() || c.eps_sequence.back() > eps_target) {
            c.eps_sequence.push_back(eps_target);
        }
        return c;
    }

    void validate() const
    {
        if (s_steps.empty() || eps_sequence.empty()) {
            throw InvalidParams("schedule needs s steps and eps values");
        }
        for (std::size_t k = 0; k < s_steps.size(); ++k) {
            if (!(s_steps[k] >= 0.5 && s_steps[k] <= 1.0) || (k > 0 && s_steps[k] < s_steps[k - 1])) {
                throw InvalidParams("s steps must be nondecreasing in [1/2, 1]");
            }
        }
        if (s_steps.back() != 1.0) {
            throw InvalidParams("s steps must end at 1");
        }
        for (std::size_t k = 0; k < eps_sequence.size(); ++k) {
            if (!(eps_sequence[k] >= 0.0 && eps_sequence[k] <= 1.0) ||
                (k > 0 && !(eps_sequence[k] < eps_sequence[k - 1]))) {
                throw InvalidParams("eps sequence must be strictly decreasing in [0,1]");
            }
        }
    }
};

// ---------------------------------------------------------------------------
// Pointwise kernels. Each exposes residual/jacobian on a PlanarState.

/// Homotopy residual of the eps-horizontal minimal equation.
struct HorizontalKernel {
    double eps = 0.0;
    double ell = 1.0;
    static constexpr bool requires_positive = true;

    [[nodiscard]] double residual(op::PlanarState p) const
    {
        p.eps = eps;
        return op::residual(p, ell);
    }
    [[nodiscard]] op::JacobianRow jacobian(op::PlanarState p) const
    {
        p.eps = eps;
        return op::residual_jacobian(p, ell);
    }
};

/// Non-divergence form of the Euclidean minimal surface equation
/// (1 + u_t^2) u_xx - 2 u_x u_t u_xt + (1 + u_x^2) u_tt.
struct EuclideanKernel {
    static constexpr bool requires_positive = false;

    [[nodiscard]] double residual(const op::PlanarState& p) const
    {
        return (1.0 + p.gt * p.gt) * p.gxx - 2.0 * p.gx * p.gt * p.gxt + (1.0 + p.gx * p.gx) * p.gtt;
    }
    [[nodiscard]] op::JacobianRow jacobian(const op::PlanarState& p) const
    {
        op::JacobianRow j;
        j.d_gx = 2.0 * p.gx * p.gtt - 2.0 * p.gt * p.gxt;
        j.d_gt = 2.0 * p.gt * p.gxx - 2.0 * p.gx * p.gxt;
        j.d_gxx = 1.0 + p.gt * p.gt;
        j.d_gtt = 1.0 + p.gx * p.gx;
        j.d_gxt = -2.0 * p.gx * p.gt;
        return j;
    }
};

/// Worker count for assembly: HOROGRAPH_THREADS when set to a positive
/// integer, the hardware concurrency otherwise.
inline unsigned assembly_threads()
{
    if (const char* env = std::getenv("HOROGRAPH_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n >= 1) {
            return static_cast<unsigned>(std::min(n, 256L));
        }
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

struct Assembly {
    Eigen::VectorXd residual;
    Eigen::SparseMatrix<double> jacobian;
};

namespace detail {

inline std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

/// Residual (and optionally Jacobian triplets) for interior nodes
/// [begin, end) of the interior list.
template <class Kernel>
void assemble_range(const ScalarField& f, const Kernel& kernel, std::size_t begin, std::size_t end,
                    Eigen::VectorXd& res, std::vector<Eigen::Triplet<double>>* trip)
{
    const auto& d = f.domain();
    const auto& interior = d.interior_nodes();
    const double hx = d.hx(), ht = d.ht();
    const double ihx2 = 1.0 / (hx * hx), iht2 = 1.0 / (ht * ht);
    const double i2hx = 0.5 / hx, i2ht = 0.5 / ht, i4hxt = 0.25 / (hx * ht);
    for (std::size_t k = begin; k < end; ++k) {
        const auto row = interior[k];
        auto [i, j] = d.ij(row);
        const op::PlanarState p = fd::planar_state(f, i, j);
        if (Kernel::requires_positive && !(p.g > 0.0)) {
            throw NonPositiveLength("g = " + detail::sci(p.g) + " at node (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");
        }
        res(static_cast<Eigen::Index>(row)) = kernel.residual(p);
        if (trip == nullptr) {
            continue;
        }
        const op::JacobianRow jr = kernel.jacobian(p);
        const auto r = static_cast<int>(row);
        auto put = [&](int di, int dj, double v) {
            if (v != 0.0) {
                trip->emplace_back(r, static_cast<int>(d.index(i + di, j + dj)), v);
            }
        };
        put(0, 0, jr.d_g - 2.0 * jr.d_gxx * ihx2 - 2.0 * jr.d_gtt * iht2);
        put(1, 0, jr.d_gx * i2hx + jr.d_gxx * ihx2);
        put(-1, 0, -jr.d_gx * i2hx + jr.d_gxx * ihx2);
        put(0, 1, jr.d_gt * i2ht + jr.d_gtt * iht2);
        put(0, -1, -jr.d_gt * i2ht + jr.d_gtt * iht2);
        put(1, 1, jr.d_gxt * i4hxt);
        put(-1, -1, jr.d_gxt * i4hxt);
        put(1, -1, -jr.d_gxt * i4hxt);
        put(-1, 1, -jr.d_gxt * i4hxt);
    }
}

}  // namespace detail

/// Residual over all grid nodes (zero on boundary and outside nodes) and,
/// when `with_jacobian`, the 9-point sparse Jacobian with identity rows for
/// non-interior nodes. Interior nodes are split into contiguous chunks per
/// thread and the triplets are concatenated in chunk order, so the result
/// does not depend on the thread count.
template <class Kernel>
Assembly assemble_kernel(const ScalarField& f, const Kernel& kernel, bool with_jacobian = true)
{
    const auto& d = f.domain();
    const auto n = static_cast<Eigen::Index>(d.node_count());
    Assembly a;
    a.residual = Eigen::VectorXd::Zero(n);
    const std::size_t m = d.interior_nodes().size();
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(assembly_threads(), std::max<std::size_t>(1, m / 2048)));
    std::vector<std::vector<Eigen::Triplet<double>>> trips(workers);
    auto run = [&](unsigned w) {
        const std::size_t b = m * w / workers, e = m * (w + 1) / workers;
        if (with_jacobian) {
            trips[w].reserve(9 * (e - b));
        }
        detail::assemble_range(f, kernel, b, e, a.residual, with_jacobian ? &trips[w] : nullptr);
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    run(w);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) {
            t.join();
        }
        for (auto& e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }
    if (!with_jacobian) {
        return a;
    }
    std::vector<Eigen::Triplet<double>> all;
    all.reserve(9 * m + (d.node_count() - m));
    for (auto& t : trips) {
        all.insert(all.end(), t.begin(), t.end());
    }
    for (std::size_t idx = 0; idx < d.node_count(); ++idx) {
        if (d.kind(idx) != geometry::NodeKind::Interior) {
            all.emplace_back(static_cast<int>(idx), static_cast<int>(idx), 1.0);
        }
    }
    a.jacobian.resize(n, n);
    a.jacobian.setFromTriplets(all.begin(), all.end());
    return a;
}

/// Homotopy residual and Jacobian of the eps-horizontal minimal equation.
inline Assembly assemble(const ScalarField& f, double eps, double s, bool with_jacobian = true)
{
    if (!(eps >= 0.0 && eps <= 1.0)) {
        throw InvalidParams("eps must lie in [0,1]");
    }
    return assemble_kernel(f, HorizontalKernel{eps, op::homotopy_weight(s)}, with_jacobian);
}

inline double max_norm(const Eigen::VectorXd& v) { return v.size() == 0 ? 0.0 : v.lpNorm<Eigen::Infinity>(); }

struct NewtonResult {
    ScalarField field;
    int iterations = 0;
    double residual_norm = 0.0;  // max norm at exit
    std::vector<double> residual_history;
};

/// Damped Newton on the interior values. Each step solves J d = -F with a
/// sparse LU factorization, caps the step so that interior values stay at
/// or above the positivity floor (for kernels that need g > 0), then
/// backtracks until ||F||^2 decreases by the Armijo factor (1 - 2 c alpha).
template <class Kernel>
NewtonResult newton_solve_kernel(ScalarField initial, const Kernel& kernel, const SolverConfig& cfg)
{
    cfg.validate();
    initial.enforce_boundary();
    NewtonResult out{std::move(initial), 0, 0.0, {}};
    ScalarField& g = out.field;
    const auto& interior = g.domain().interior_nodes();
    if (Kernel::requires_positive) {
        for (auto idx : interior) {
            if (!(g.at(idx) > 0.0)) {
                throw NonPositiveLength("initial guess has g = " + detail::sci(g.at(idx)));
            }
        }
    }
    Assembly a = assemble_kernel(g, kernel, true);
    double fnorm = max_norm(a.residual);
    double fsq = a.residual.squaredNorm();
    out.residual_history.push_back(fnorm);

    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
    bool pattern_ready = false;
    while (fnorm > cfg.newton_tol) {
        if (out.iterations >= cfg.max_newton_iters) {
            out.residual_norm = fnorm;
            throw NewtonDiverged("residual " + detail::sci(fnorm) + " after " + std::to_string(out.iterations) +
                                 " iterations");
        }
        if (!pattern_ready) {
            lu.analyzePattern(a.jacobian);
            pattern_ready = true;
        }
        lu.factorize(a.jacobian);
        if (lu.info() != Eigen::Success) {
            throw SingularJacobian("sparse LU factorization failed at iteration " + std::to_string(out.iterations));
        }
        const Eigen::VectorXd step = lu.solve(-a.residual);
        if (lu.info() != Eigen::Success || !step.allFinite()) {
            throw SingularJacobian("sparse LU solve failed at iteration " + std::to_string(out.iterations));
        }

        double alpha = 1.0;
        if (Kernel::requires_positive) {
            for (auto idx : interior) {
                const double dv = step(static_cast<Eigen::Index>(idx));
                if (dv < 0.0) {
                    alpha = std::min(alpha, (g.at(idx) - cfg.positivity_floor) / -dv);
                }
            }
            alpha = std::max(alpha, 0.0);
        }
        const std::vector<double> base = g.values();
        bool accepted = false;
        while (alpha >= cfg.min_step) {
            for (auto idx : interior) {
                g.set(idx, base[idx] + alpha * step(static_cast<Eigen::Index>(idx)));
            }
            Assembly trial = assemble_kernel(g, kernel, false);
            const double tsq = trial.residual.squaredNorm();
            if (std::isfinite(tsq) && tsq <= (1.0 - 2.0 * cfg.armijo_c * alpha) * fsq) {
                accepted = true;
                break;
            }
            alpha *= cfg.armijo_shrink;
        }
        if (!accepted) {
            g.values() = base;
            throw LineSearchStalled("step length fell below " + detail::sci(cfg.min_step) + " at iteration " +
                                    std::to_string(out.iterations) + " with residual " + detail::sci(fnorm));
        }
        ++out.iterations;
        a = assemble_kernel(g, kernel, true);
        fnorm = max_norm(a.residual);
        fsq = a.residual.squaredNorm();
        out.residual_history.push_back(fnorm);
    }
    out.residual_norm = fnorm;
    return out;
}

/// Solves the homotopy equation at (eps, s) with the boundary trace carried
/// by `initial`.
inline NewtonResult newton_solve(ScalarField initial, double eps, double s, const SolverConfig& cfg = {})
{
    if (!(eps >= 0.0 && eps <= 1.0)) {
        throw InvalidParams("eps must lie in [0,1]");
    }
    return newton_solve_kernel(std::move(initial), HorizontalKernel{eps, op::homotopy_weight(s)}, cfg);
}

// ---------------------------------------------------------------------------
// Initial guesses.

/// Transfinite (Coons) interpolation of the edge ring of a rectangle grid.
inline ScalarField coons_patch(const geometry::DomainSpec& d, const geometry::BoundaryData& b)
{
    if (!d.is_rectangle()) {
        throw InvalidDomain("Coons patch needs a rectangle");
    }
    ScalarField f(d, b);
    const int nx = d.nx(), nt = d.nt();
    for (auto idx : d.interior_nodes()) {
        auto [i, j] = d.ij(idx);
        const double u = static_cast<double>(i) / nx, v = static_cast<double>(j) / nt;
        const double val = (1 - v) * f(i, 0) + v * f(i, nt) + (1 - u) * f(0, j) + u * f(nx, j) -
                           ((1 - u) * (1 - v) * f(0, 0) + u * (1 - v) * f(nx, 0) + (1 - u) * v * f(0, nt) +
                            u * v * f(nx, nt));
        f.set(idx, val);
    }
    return f;
}

/// Discrete harmonic extension (5-point Laplacian) of the boundary trace.
inline ScalarField harmonic_extension(const geometry::DomainSpec& d, const geometry::BoundaryData& b)
{
    ScalarField f(d, b);
    const auto n = static_cast<Eigen::Index>(d.node_count());
    const double ihx2 = 1.0 / (d.hx() * d.hx()), iht2 = 1.0 / (d.ht() * d.ht());
    std::vector<Eigen::Triplet<double>> trip;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    for (std::size_t idx = 0; idx < d.node_count(); ++idx) {
        const auto r = static_cast<int>(idx);
        if (d.kind(idx) != geometry::NodeKind::Interior) {
            trip.emplace_back(r, r, 1.0);
            if (d.kind(idx) == geometry::NodeKind::Boundary) {
                rhs(r) = f.at(idx);
            }
            continue;
        }
        auto [i, j] = d.ij(idx);
        trip.emplace_back(r, r, -2.0 * (ihx2 + iht2));
        trip.emplace_back(r, static_cast<int>(d.index(i + 1, j)), ihx2);
        trip.emplace_back(r, static_cast<int>(d.index(i - 1, j)), ihx2);
        trip.emplace_back(r, static_cast<int>(d.index(i, j + 1)), iht2);
        trip.emplace_back(r, static_cast<int>(d.index(i, j - 1)), iht2);
    }
    Eigen::SparseMatrix<double> A(n, n);
    A.setFromTriplets(trip.begin(), trip.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu(A);
    if (lu.info() != Eigen::Success) {
        throw SingularJacobian("Laplace system is singular");
    }
    const Eigen::VectorXd x = lu.solve(rhs);
    for (auto idx : d.interior_nodes()) {
        f.set(idx, x(static_cast<Eigen::Index>(idx)));
    }
    return f;
}

/// Coons patch on rectangles, harmonic extension on polygons.
inline ScalarField blended_guess(const geometry::DomainSpec& d, const geometry::BoundaryData& b)
{
    return d.is_rectangle() ? coons_patch(d, b) : harmonic_extension(d, b);
}

/// Exact solution of the s <= 1/2 problem: the constant 2 s min f, with the
/// boundary trace h(s, .) it satisfies.
inline ScalarField trivial_branch(const geometry::DomainSpec& d, const geometry::BoundaryData& f, double s)
{
    if (!(s >= 0.0 && s <= 0.5)) {
        throw InvalidParams("trivial branch needs s in [0, 1/2]");
    }
    return ScalarField::constant(d, f.homotopy(s), 2.0 * s * f.min());
}

// ---------------------------------------------------------------------------
// Continuation.

struct StepRecord {
    double s = 0.0;
    double eps = 0.0;
    int iterations = 0;
    double residual_norm = 0.0;
    double min = 0.0;  // over the closed grid domain
    double max = 0.0;
    double interior_min = 0.0;
    double interior_max = 0.0;
    double gap = std::numeric_limits<double>::quiet_NaN();  // max-norm distance to the previous eps solution
};

struct ContinuationResult {
    std::vector<StepRecord> steps;
    std::vector<ScalarField> fields;  // aligned with steps
    std::size_t eps_path_begin = 0;   // first step of the eps descent (s = 1 at eps_sequence[0])
    double final_eps = 0.0;
    std::vector<std::string> warnings;

    [[nodiscard]] const ScalarField& final_field() const { return fields.back(); }
};

namespace detail {

inline std::string strip_prefix(const char* what)
{
    std::string s(what);
    const auto pos = s.find(": ");
    return pos == std::string::npos ? s : s.substr(pos + 2);
}

template <class Fn>
NewtonResult annotated(Fn&& fn, double s, double eps)
{
    const std::string where = " [s=" + sci(s) + ", eps=" + sci(eps) + "]";
    try {
        return fn();
    } catch (const NewtonDiverged& e) {
        throw NewtonDiverged(strip_prefix(e.what()) + where);
    } catch (const LineSearchStalled& e) {
        throw LineSearchStalled(strip_prefix(e.what()) + where);
    } catch (const SingularJacobian& e) {
        throw SingularJacobian(strip_prefix(e.what()) + where);
    } catch (const NonPositiveLength& e) {
        throw NonPositiveLength(strip_prefix(e.what()) + where);
    }
}

inline StepRecord record(const NewtonResult& r, double s, double eps)
{
    StepRecord rec;
    rec.s = s;
    rec.eps = eps;
    rec.iterations = r.iterations;
    rec.residual_norm = r.residual_norm;
    rec.min = r.field.min();
    rec.max = r.field.max();
    rec.interior_min = r.field.interior_min();
    rec.interior_max = r.field.interior_max();
    return rec;
}

}  // namespace detail

/// s-path at eps_sequence[0] from the constant min f, then the eps descent
/// at s = 1, each solve warm-started from the previous one. An eps = 0
/// step that fails leaves the smallest successful eps as the final field
/// with a DegenerateLimit warning; any other failure propagates with the
/// failing (s, eps) attached.
inline ContinuationResult continuation_solve(const geometry::DomainSpec& domain, const geometry::BoundaryData& f,
                                             const ContinuationSchedule& schedule, const SolverConfig& cfg = {})
{
    schedule.validate();
    cfg.validate();
    f.require_positive();
    ContinuationResult out;
    const auto q = geometry::compute_quantities(domain, f);
    if (!geometry::check_existence_hypotheses(q).existence_ok) {
        out.warnings.push_back("existence hypothesis R(Omega,f) <= min f (1 + sqrt(pi/2)) does not hold");
    }

    const double eps0 = schedule.eps_sequence.front();
    ScalarField current = ScalarField::constant(domain, f.homotopy(schedule.s_steps.front()), f.min());
    for (double s : schedule.s_steps) {
        current.set_boundary(f.homotopy(s));
        NewtonResult r = detail::annotated([&] { return newton_solve(current, eps0, s, cfg); }, s, eps0);
        out.steps.push_back(detail::record(r, s, eps0));
        out.fields.push_back(r.field);
        current = std::move(r.field);
    }
    out.eps_path_begin = out.steps.size() - 1;
    out.final_eps = eps0;
    current.set_boundary(f);

    for (std::size_t k = 1; k < schedule.eps_sequence.size(); ++k) {
        const double eps = schedule.eps_sequence[k];
        NewtonResult r{current, 0, 0.0, {}};
        try {
            r = detail::annotated([&] { return newton_solve(current, eps, 1.0, cfg); }, 1.0, eps);
        } catch (const SolverError& e) {
            if (eps != 0.0) {
                throw;
            }
            out.warnings.push_back(std::string("DegenerateLimit: eps = 0 solve failed (") + e.what() +
                                   "); final field is eps = " + std::to_string(out.final_eps));
            break;
        }
        StepRecord rec = detail::record(r, 1.0, eps);
        rec.gap = r.field.max_abs_difference(current);
        out.steps.push_back(rec);
        out.fields.push_back(r.field);
        out.final_eps = eps;
        current = std::move(r.field);
    }
    return out;
}

/// Gaps between consecutive eps solutions, restricted to members with
/// 0 < eps <= threshold; the final jump to eps = 0 is excluded because it
/// is the tail sum of all later gaps, not a further member of the sequence.
inline std::vector<double> cauchy_gaps(const ContinuationResult& r, double threshold = 1e-3)
{
    std::vector<double> gaps;
    for (std::size_t k = r.eps_path_begin + 1; k < r.steps.size(); ++k) {
        const auto& st = r.steps[k];
        if (st.eps > 0.0 && st.eps <= threshold) {
            gaps.push_back(st.gap);
        }
    }
    return gaps;
}

inline bool strictly_decreasing(const std::vector<double>& v)
{
    for (std::size_t k = 1; k < v.size(); ++k) {
        if (!(v[k] < v[k - 1])) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Euclidean minimal graphs.

struct EuclideanResult {
    ScalarField field;
    int iterations = 0;
    double residual_norm = 0.0;
    double K_gradient = 0.0;  // discrete max |Du| over the closed domain
    double K_hessian = 0.0;   // discrete max |D^2 u| (nuclear norm) over interior nodes
};

/// Minimal graph u over a convex domain with u = f on the boundary,
/// Newton-solved from the blended guess.
inline EuclideanResult euclidean_minimal_solve(const geometry::DomainSpec& domain, const geometry::BoundaryData& f,
                                               const SolverConfig& cfg = {})
{
    NewtonResult r = newton_solve_kernel(blended_guess(domain, f), EuclideanKernel{}, cfg);
    EuclideanResult out{std::move(r.field), r.iterations, r.residual_norm, 0.0, 0.0};
    out.K_gradient = fd::max_gradient_closed(out.field);
    out.K_hessian = fd::max_hessian(out.field);
    return out;
}

}  // namespace horograph::solver
