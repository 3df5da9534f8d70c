// Verification of the a priori estimates on a sampled field: horizontal
// length bounds, boundary gradient with barrier certification, modulus of
// continuity, and the global gradient bound.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "horograph/analytic.hpp"
#include "horograph/errors.hpp"
#include "horograph/field.hpp"
#include "horograph/geometry.hpp"

namespace horograph::estimates {

/// Relative margin for strict inequalities.
inline constexpr double kStrictMargin = 1e-12;

// ---------------------------------------------------------------------------
// Length bounds.

struct LengthBoundReport {
    double min_f = 0.0;
    double R = 0.0;
    double observed_min = 0.0;
    double observed_max = 0.0;
    std::size_t nodes_checked = 0;
    std::size_t violations = 0;
    bool pass = false;
};

/// min f < g < R(Omega, f) strictly at every interior node.
inline LengthBoundReport check_length_bounds(const ScalarField& field, const geometry::GeometricQuantities& q)
{
    LengthBoundReport r;
    r.min_f = q.min_f;
    r.R = q.R_omega_f;
    r.observed_min = field.interior_min();
    r.observed_max = field.interior_max();
    const double lo = q.min_f + kStrictMargin * std::max(1.0, q.min_f);
    for (auto idx : field.domain().interior_nodes()) {
        const double g = field.at(idx);
        ++r.nodes_checked;
        if (!(g > lo && g < q.R_omega_f)) {
            ++r.violations;
        }
    }
    r.pass = r.violations == 0;
    return r;
}

// ---------------------------------------------------------------------------
// Extensions phi of the boundary data, with derivatives up to order two.

struct PhiJet {
    double phi = 0.0;
    double px = 0.0;
    double pt = 0.0;
    double pxx = 0.0;
    double pxt = 0.0;
    double ptt = 0.0;
};

struct PhiExtension {
    std::function<PhiJet(geometry::Point2)> jet;
    std::string description;
};

inline PhiExtension phi_constant(double c)
{
    return {[c](geometry::Point2) { return PhiJet{c, 0, 0, 0, 0, 0}; }, "constant " + std::to_string(c)};
}

inline PhiExtension phi_from_oracle(const analytic::OracleSurface& o)
{
    return {[o](geometry::Point2 q) {
                const auto s = analytic::evaluate(o, analytic::point2(q.x, q.t), 2);
                return PhiJet{s.g, s.grad(0), s.grad(1), s.hess(0, 0), s.hess(0, 1), s.hess(1, 1)};
            },
            analytic::oracle_name(o)};
}

/// Bilinear interpolation of nodal values where the enclosing cell lies in
/// the mask, nearest mask node otherwise.
inline double interpolate(const geometry::DomainSpec& d, const std::vector<double>& values, geometry::Point2 q)
{
    const auto& box = d.bounding_box();
    const double u = std::clamp((q.x - box.x_min) / d.hx(), 0.0, static_cast<double>(d.nx()));
    const double v = std::clamp((q.t - box.t_min) / d.ht(), 0.0, static_cast<double>(d.nt()));
    const int i0 = std::min(static_cast<int>(u), d.nx() - 1);
    const int j0 = std::min(static_cast<int>(v), d.nt() - 1);
    const double a = u - i0, b = v - j0;
    if (d.in_mask(i0, j0) && d.in_mask(i0 + 1, j0) && d.in_mask(i0, j0 + 1) && d.in_mask(i0 + 1, j0 + 1)) {
        return (1 - a) * (1 - b) * values[d.index(i0, j0)] + a * (1 - b) * values[d.index(i0 + 1, j0)] +
               (1 - a) * b * values[d.index(i0, j0 + 1)] + a * b * values[d.index(i0 + 1, j0 + 1)];
    }
    double best = std::numeric_limits<double>::infinity();
    double val = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t idx = 0; idx < d.node_count(); ++idx) {
        if (d.kind(idx) == geometry::NodeKind::Outside) {
            continue;
        }
        const double dist = geometry::distance(d.node(idx), q);
        if (dist < best) {
            best = dist;
            val = values[idx];
        }
    }
    return val;
}

/// Extension given by a grid field (typically the discrete Euclidean
/// minimal graph): nodal finite-difference derivatives, bilinearly
/// interpolated. Second derivatives on boundary nodes copy the nearest
/// interior node.
inline PhiExtension phi_from_field(const ScalarField& f)
{
    const auto& d = f.domain();
    const std::size_t n = d.node_count();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    auto vals = std::make_shared<std::vector<std::vector<double>>>(6, std::vector<double>(n, nan));
    auto& V = *vals;
    for (std::size_t idx = 0; idx < n; ++idx) {
        if (d.kind(idx) == geometry::NodeKind::Outside) {
            continue;
        }
        auto [i, j] = d.ij(idx);
        const auto gr = fd::gradient(f, i, j);
        V[0][idx] = f.at(idx);
        V[1][idx] = gr.gx;
        V[2][idx] = gr.gt;
    }
    for (auto idx : d.interior_nodes()) {
        auto [i, j] = d.ij(idx);
        const auto p = fd::planar_state(f, i, j);
        V[3][idx] = p.gxx;
        V[4][idx] = p.gxt;
        V[5][idx] = p.gtt;
    }
    for (auto idx : d.boundary_nodes()) {
        const auto q = d.node(idx);
        double best = std::numeric_limits<double>::infinity();
        std::size_t near = idx;
        for (auto k : d.interior_nodes()) {
            const double dist = geometry::distance(d.node(k), q);
            if (dist < best) {
                best = dist;
                near = k;
            }
        }
        for (int c = 3; c < 6; ++c) {
            V[static_cast<std::size_t>(c)][idx] = V[static_cast<std::size_t>(c)][near];
        }
    }
    auto dom = std::make_shared<geometry::DomainSpec>(d);
    return {[vals, dom](geometry::Point2 q) {
                const auto& W = *vals;
                return PhiJet{interpolate(*dom, W[0], q), interpolate(*dom, W[1], q), interpolate(*dom, W[2], q),
                              interpolate(*dom, W[3], q), interpolate(*dom, W[4], q), interpolate(*dom, W[5], q)};
            },
            "grid field"};
}

/// Sup bounds of an extension over the mask nodes; the Hessian bound is
/// the nuclear norm.
inline analytic::PhiBounds phi_bounds(const PhiExtension& ext, const geometry::DomainSpec& d)
{
    analytic::PhiBounds b;
    for (std::size_t idx = 0; idx < d.node_count(); ++idx) {
        if (d.kind(idx) == geometry::NodeKind::Outside) {
            continue;
        }
        const PhiJet j = ext.jet(d.node(idx));
        b.max_phi = std::max(b.max_phi, std::abs(j.phi));
        b.max_grad = std::max(b.max_grad, std::hypot(j.px, j.pt));
        b.max_hess = std::max(b.max_hess, fd::nuclear_norm_sym2(j.pxx, j.pxt, j.ptt));
    }
    return b;
}

// ---------------------------------------------------------------------------
// Boundary gradient and barrier certification.

struct BarrierCheck {
    std::string name;
    std::string region;
    int sign_expected = 0;
    int sign_observed = 0;  // sign of the worst sample, 0 when no sample was taken
    std::size_t samples = 0;
    std::size_t violations = 0;
    double worst = 0.0;  // the sample value of M / psi'^2 closest to violating
    bool pass = false;
};

struct BoundaryGradientReport {
    std::string label = "assembled per proof";
    analytic::BarrierParams params;
    double C_predicted = 0.0;  // may overflow to inf; log_C_predicted stays finite
    double log_C_predicted = 0.0;
    double observed_max_boundary_grad = 0.0;
    bool pass = false;
    std::vector<BarrierCheck> barrier_checks;
    std::vector<std::string> warnings;
};

/// Shrinks the collar width to `delta1` < the built one; the slope
/// condition (e^{K b1} - 1) / delta1 >= b1 e^{K b1} keeps holding, so
/// psi(delta1) = K and psi' >= 1 on [0, delta1] are preserved.
inline analytic::BarrierParams shrink_collar(analytic::BarrierParams p, double delta1)
{
    if (!(delta1 > 0.0) || delta1 > p.delta1) {
        throw InvalidParams("collar can only shrink");
    }
    p.delta1 = delta1;
    p.log_slope = analytic::detail::log_expm1(p.height * p.b1) - std::log(delta1);
    return p;
}

/// Frozen-coefficient operator of the barrier argument in two variables:
/// (g^2 + w_t^2 + eps) w_xx + (1 + w_x^2) w_tt - 2 w_x w_t w_xt + g (1 + w_x^2).
inline double frozen_operator(double g, double eps, const PhiJet& w)
{
    return (g * g + w.pt * w.pt + eps) * w.pxx + (1.0 + w.px * w.px) * w.ptt - 2.0 * w.px * w.pt * w.pxt +
           g * (1.0 + w.px * w.px);
}

struct ScaledValue {
    double value = 0.0;
    double scale = 0.0;
};

/// frozen_operator(g, eps, phi + sigma psi(d)) / psi'(d)^2 for the
/// logarithmic barrier, where the collar normal n is the gradient of d.
/// With P = psi' and psi'' = -b1 P^2 the operator is a quadratic in P
/// (the P^3 and P^4 terms of the principal part cancel because
/// w_t n_x - w_x n_t does not depend on P), so dividing by P^2 and
/// passing 1/P keeps every term finite even when P itself overflows.
inline ScaledValue barrier_operator_over_slope2(double g, double eps, const PhiJet& phi, geometry::Point2 n,
                                                int sigma, double b1, double inv_slope)
{
    const double a = phi.px, b = phi.pt, nx = n.x, nt = n.t;
    const double cross = b * nx - a * nt;
    const double principal = -sigma * b1 * ((g * g + eps) * nx * nx + nt * nt + cross * cross);
    const double quad = nt * nt * phi.pxx + nx * nx * phi.ptt - 2.0 * nx * nt * phi.pxt + g * nx * nx;
    const double lin = sigma * 2.0 *
                       (b * nt * phi.pxx + a * nx * phi.ptt - (a * nt + b * nx) * phi.pxt + g * a * nx);
    const double cst = (g * g + eps + b * b) * phi.pxx + (1.0 + a * a) * phi.ptt - 2.0 * a * b * phi.pxt +
                       g * (1.0 + a * a);
    ScaledValue out;
    out.value = principal + quad + inv_slope * (lin + inv_slope * cst);
    out.scale = std::abs(principal) + std::abs(quad) + inv_slope * (std::abs(lin) + inv_slope * std::abs(cst));
    return out;
}

namespace detail {

struct CollarSample {
    geometry::Point2 q;
    double d = 0.0;
    geometry::Point2 normal;  // gradient of d
};

/// Collar samples: interior nodes with d < delta1 and, from every boundary
/// node, five points along the inward normal of its nearest edge at
/// d = 0, delta1/4, ..., delta1.
inline std::vector<CollarSample> collar_samples(const geometry::DomainSpec& d, double delta1)
{
    std::vector<CollarSample> out;
    auto nearest_edge = [&](geometry::Point2 q) {
        const geometry::Edge* best = &d.edges().front();
        for (const auto& e : d.edges()) {
            if (e.signed_distance(q) < best->signed_distance(q)) {
                best = &e;
            }
        }
        return best;
    };
    for (auto idx : d.interior_nodes()) {
        const auto q = d.node(idx);
        const auto* e = nearest_edge(q);
        const double dist = e->signed_distance(q);
        if (dist < delta1) {
            out.push_back({q, dist, e->inward_normal});
        }
    }
    for (auto idx : d.boundary_nodes()) {
        const auto p = d.node(idx);
        const auto* e = nearest_edge(p);
        const double d0 = std::max(0.0, e->signed_distance(p));
        for (int k = 0; k <= 4; ++k) {
            const double target = delta1 * k / 4.0;
            const double step = std::max(0.0, target - d0);
            const geometry::Point2 q{p.x + step * e->inward_normal.x, p.t + step * e->inward_normal.t};
            out.push_back({q, std::max(0.0, e->signed_distance(q)), e->inward_normal});
        }
    }
    return out;
}

}  // namespace detail

/// Boundary gradient check: compares the discrete boundary |Dg| with the
/// barrier slope psi'(0)(1 + max |D phi|) and certifies the signs
/// M(phi + psi(d)) < 0 and M(phi - psi(d)) > 0 (coefficients frozen at
/// the field's g) on the collar wherever psi' >= 1.
inline BoundaryGradientReport check_boundary_gradient(const ScalarField& field, const PhiExtension& phi, double eps)
{
    const auto& d = field.domain();
    const auto q = geometry::compute_quantities(d, field.boundary());
    BoundaryGradientReport r;
    r.params = analytic::build_barrier_params(q, phi_bounds(phi, d));
    const double inr = d.inradius();
    if (r.params.delta1 > inr) {
        r.warnings.push_back("CollarEmpty: delta1 = " + std::to_string(r.params.delta1) +
                             " exceeds the inradius " + std::to_string(inr) + "; collar shrunk to the inradius");
        r.params = shrink_collar(r.params, inr);
    }
    // psi'(0) = e^{log_slope} / b1 can exceed the double range.
    r.log_C_predicted = r.params.log_slope - std::log(r.params.b1) + std::log1p(r.params.phi.max_grad);
    r.C_predicted = std::exp(r.log_C_predicted);
    r.observed_max_boundary_grad = fd::max_boundary_gradient(field);

    BarrierCheck upper{"upper barrier phi + psi(d)", "collar d < delta1", -1, 0, 0, 0, -std::numeric_limits<double>::infinity(), false};
    BarrierCheck lower{"lower barrier phi - psi(d)", "collar d < delta1", 1, 0, 0, 0, std::numeric_limits<double>::infinity(), false};
    for (const auto& smp : detail::collar_samples(d, r.params.delta1)) {
        // 1 / psi'(d); the sign conditions apply where |Dv| = psi' >= 1.
        const double inv_slope = r.params.b1 * (std::exp(-r.params.log_slope) + smp.d);
        if (inv_slope > 1.0) {
            continue;
        }
        const double g = interpolate(d, field.values(), smp.q);
        const PhiJet base = phi.jet(smp.q);
        for (int sign : {1, -1}) {
            const auto sv = barrier_operator_over_slope2(g, eps, base, smp.normal, sign, r.params.b1, inv_slope);
            const double m = sv.value;
            const double scale = sv.scale;
            BarrierCheck& c = sign > 0 ? upper : lower;
            ++c.samples;
            if (sign > 0) {
                c.worst = std::max(c.worst, m);
                c.violations += m < -kStrictMargin * scale ? 0 : 1;
            } else {
                c.worst = std::min(c.worst, m);
                c.violations += m > kStrictMargin * scale ? 0 : 1;
            }
        }
    }
    for (BarrierCheck* c : {&upper, &lower}) {
        c->sign_observed = c->samples == 0 ? 0 : (c->worst > 0.0 ? 1 : (c->worst < 0.0 ? -1 : 0));
        c->pass = c->samples > 0 && c->violations == 0;
        r.barrier_checks.push_back(*c);
    }
    const bool within = r.observed_max_boundary_grad == 0.0 ||
                        std::log(r.observed_max_boundary_grad) <= r.log_C_predicted;
    r.pass = within && upper.pass && lower.pass;
    return r;
}

// ---------------------------------------------------------------------------
// Modulus of continuity.

struct ModulusReport {
    double eps_target = 0.0;
    double delta0 = 0.0;
    double delta = 0.0;
    double log_delta = 0.0;
    std::size_t nodes_checked = 0;  // (boundary node, other mask node) pairs within delta
    std::size_t violations = 0;
    double max_deviation = 0.0;
    bool pass = false;
};

/// delta0 from the sampled boundary data: the smallest distance between
/// boundary nodes whose data differ by at least eps_target/3 (the domain
/// diameter when no pair does).
inline double sampled_delta0(const ScalarField& field, double eps_target)
{
    const auto& d = field.domain();
    const auto& nodes = d.boundary_nodes();
    double best = d.diameter();
    for (std::size_t a = 0; a < nodes.size(); ++a) {
        for (std::size_t b = a + 1; b < nodes.size(); ++b) {
            if (std::abs(field.at(nodes[a]) - field.at(nodes[b])) >= eps_target / 3.0) {
                best = std::min(best, geometry::distance(d.node(nodes[a]), d.node(nodes[b])));
            }
        }
    }
    return best;
}

/// Counts pairs (p on the boundary, q != p in the mask) with |q - p| < delta and
/// |g(q) - f(p)| >= eps_target. delta = 0 selects no pair.
inline ModulusReport check_modulus_with_delta(const ScalarField& field, double eps_target, double delta0, double delta)
{
    if (!(eps_target > 0.0) || !(delta >= 0.0)) {
        throw InvalidParams("eps_target must be positive and delta non-negative");
    }
    const auto& d = field.domain();
    ModulusReport r;
    r.eps_target = eps_target;
    r.delta0 = delta0;
    r.delta = delta;
    r.log_delta = std::log(delta);
    for (auto p : d.boundary_nodes()) {
        const auto pp = d.node(p);
        const double fp = field.boundary().at_node(d, p);
        for (std::size_t idx = 0; idx < d.node_count(); ++idx) {
            if (idx == p || d.kind(idx) == geometry::NodeKind::Outside ||
                !(geometry::distance(pp, d.node(idx)) < delta)) {
                continue;
            }
            ++r.nodes_checked;
            const double dev = std::abs(field.at(idx) - fp);
            r.max_deviation = std::max(r.max_deviation, dev);
            if (!(dev < eps_target)) {
                ++r.violations;
            }
        }
    }
    r.pass = r.violations == 0;
    return r;
}

/// log(delta) of the barrier construction. With L = ln(1 + delta0^2) the
/// logarithmic barriers have |D phi| <= R/L max 2r/(1+r^2) and
/// |D^2 phi| <= 4R/L. delta is the smallest of delta0, the collar widths
/// of psi+ (height R) and psi- (height R + max |phi-|), the radius where
/// the logarithmic term reaches eps/3 and the radius where psi+- reaches
/// eps/3. The last radius routinely lies far below the smallest double,
/// so everything is kept in log space.
inline double modulus_log_delta(const ScalarField& field, double eps_target, double delta0)
{
    if (!(eps_target > 0.0) || !(delta0 > 0.0)) {
        throw InvalidParams("eps_target and delta0 must be positive");
    }
    const auto& d = field.domain();
    const auto q = geometry::compute_quantities(d, field.boundary());
    const double R = q.R_omega_f;
    const double L = std::log1p(delta0 * delta0);
    const double diam = d.diameter();
    analytic::PhiBounds pb;
    pb.max_grad = R / L * (diam < 1.0 ? 2.0 * diam / (1.0 + diam * diam) : 1.0);
    pb.max_hess = 4.0 * R / L;
    double log_delta = std::min(std::log(delta0), 0.5 * std::log(std::expm1(L * eps_target / (3.0 * R))));
    const double max_phi_minus = q.max_f + eps_target / 3.0 + R * std::log1p(diam * diam) / L;
    for (double height : {R, R + max_phi_minus}) {
        pb.max_phi = height - R;
        const auto p = analytic::build_barrier_params_with_height(q, pb, height);
        log_delta = std::min(log_delta, std::log(p.delta1));
        // psi(delta) <= eps/3  <=>  delta <= (e^{b1 eps/3} - 1) / A.
        log_delta = std::min(log_delta, std::log(std::expm1(p.b1 * eps_target / 3.0)) - p.log_slope);
    }
    return log_delta;
}

/// delta itself; zero when it underflows.
inline double modulus_delta(const ScalarField& field, double eps_target, double delta0)
{
    return std::exp(modulus_log_delta(field, eps_target, delta0));
}

inline ModulusReport check_modulus(const ScalarField& field, double eps_target, double delta0)
{
    const double log_delta = modulus_log_delta(field, eps_target, delta0);
    ModulusReport r = check_modulus_with_delta(field, eps_target, delta0, std::exp(log_delta));
    r.log_delta = log_delta;
    return r;
}

// ---------------------------------------------------------------------------
// Global gradient.

struct GlobalGradientReport {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
    bool hypothesis_ok = false;
    bool preconditions_ok = false;  // c1 <= min g, c2 >= max g, c3 >= boundary |Dg|
    bool skipped = false;
    std::string note;
    analytic::GradientBound bound;
    double bound_C = 0.0;
    double observed_max_grad = 0.0;
    bool pass = false;
};

inline GlobalGradientReport check_global_gradient(const ScalarField& field, double c1, double c2, double c3)
{
    GlobalGradientReport r;
    r.c1 = c1;
    r.c2 = c2;
    r.c3 = c3;
    r.observed_max_grad = fd::max_gradient_closed(field);
    r.preconditions_ok = c1 <= field.min() && c2 >= field.max() && c3 >= fd::max_boundary_gradient(field);
    try {
        r.bound = analytic::global_gradient_bound(c1, c2, c3);
        r.hypothesis_ok = true;
    } catch (const HypothesisViolated& e) {
        r.skipped = true;
        r.note = e.what();
        return r;
    }
    r.bound_C = r.bound.bound_C;
    if (!r.preconditions_ok) {
        r.note = "c1, c2, c3 do not bracket the field";
    }
    r.pass = r.preconditions_ok && r.observed_max_grad <= r.bound_C;
    return r;
}

// ---------------------------------------------------------------------------
// Full report.

struct EstimateReport {
    geometry::GeometricQuantities quantities;
    geometry::HypothesisReport hypotheses;
    LengthBoundReport length_bound;
    BoundaryGradientReport boundary_gradient;
    ModulusReport modulus;
    GlobalGradientReport global_gradient;
};

/// Runs every check with c1 = min f, c2 = R(Omega, f), c3 = the observed
/// boundary gradient, and delta0 sampled from the boundary data.
inline EstimateReport verify_field(const ScalarField& field, const PhiExtension& phi, double eps, double eps_target)
{
    EstimateReport r;
    r.quantities = geometry::compute_quantities(field.domain(), field.boundary());
    r.hypotheses = geometry::check_existence_hypotheses(r.quantities);
    r.length_bound = check_length_bounds(field, r.quantities);
    r.boundary_gradient = check_boundary_gradient(field, phi, eps);
    r.modulus = check_modulus(field, eps_target, sampled_delta0(field, eps_target));
    r.global_gradient = check_global_gradient(field, r.quantities.min_f, r.quantities.R_omega_f,
                                              fd::max_boundary_gradient(field));
    return r;
}

}  // namespace horograph::estimates
