// Closed-form oracle surfaces, their sub/supersolution classification,
// the hyperbolic rescaling, and the explicit barrier constructions behind
// the boundary-gradient, modulus-of-continuity and global-gradient bounds.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "horograph/errors.hpp"
#include "horograph/geometry.hpp"
#include "horograph/point_operator.hpp"

namespace horograph::analytic {

/// y = sqrt(R^2 - |x - a|^2), t free.
struct GeodesicPlane {
    double R = 1.0;
    std::vector<double> center{0.0};
};

/// y = c.
struct Horocylinder {
    double c = 1.0;
};

/// y = a . x + b t + c.
struct EuclideanPlane {
    std::vector<double> a{0.0};
    double b = 0.0;
    double c = 1.0;
};

/// y = x sinh t (two variables only).
struct XSinhT {};

using OracleSurface = std::variant<GeodesicPlane, Horocylinder, EuclideanPlane, XSinhT>;

enum class Classification : std::uint8_t { Solution, Subsolution, Supersolution, Mixed };

inline std::string to_string(Classification c)
{
    switch (c) {
    case Classification::Solution: return "solution";
    case Classification::Subsolution: return "subsolution";
    case Classification::Supersolution: return "supersolution";
    case Classification::Mixed: return "mixed";
    }
    return "mixed";
}

inline std::string oracle_name(const OracleSurface& o)
{
    struct Visitor {
        std::string operator()(const GeodesicPlane&) const { return "geodesic-plane"; }
        std::string operator()(const Horocylinder&) const { return "horocylinder"; }
        std::string operator()(const EuclideanPlane&) const { return "euclidean-plane"; }
        std::string operator()(const XSinhT&) const { return "x-sinh-t"; }
    };
    return std::visit(Visitor{}, o);
}

/// What the surface is at the given eps: geodesic planes solve the eps = 0
/// equation and are supersolutions for eps > 0; x sinh t solves every eps
/// (g_xx = 0); horocylinders and Euclidean planes are subsolutions.
inline Classification declared_classification(const OracleSurface& o, double eps)
{
    if (std::holds_alternative<GeodesicPlane>(o)) {
        return eps > 0.0 ? Classification::Supersolution : Classification::Solution;
    }
    if (std::holds_alternative<XSinhT>(o)) {
        return Classification::Solution;
    }
    return Classification::Subsolution;
}

inline Eigen::VectorXd point2(double x, double t)
{
    Eigen::VectorXd p(2);
    p << x, t;
    return p;
}

/// Exact g and derivatives up to `order` (0, 1 or 2) at `point` = (x..., t).
/// The ambient dimension is point.size().
inline op::PointState evaluate(const OracleSurface& o, const Eigen::VectorXd& point, int order = 2, double eps = 0.0)
{
    const int n = static_cast<int>(point.size());
    const int m = n - 1;
    if (n < 2) {
        throw InvalidParams("point needs at least (x, t)");
    }
    op::PointState p = op::PointState::zero(n, 1.0, eps);
    auto check_positive = [&](double g) {
        if (!(g > 0.0) || !std::isfinite(g)) {
            throw OutsideValidity(oracle_name(o) + " has g = " + std::to_string(g) + " here");
        }
    };

    if (const auto* gp = std::get_if<GeodesicPlane>(&o)) {
        if (static_cast<int>(gp->center.size()) != m) {
            throw InvalidParams("geodesic plane center has wrong dimension");
        }
        Eigen::VectorXd dx(m);
        for (int k = 0; k < m; ++k) {
            dx(k) = point(k) - gp->center[static_cast<std::size_t>(k)];
        }
        const double g2 = gp->R * gp->R - dx.squaredNorm();
        if (!(g2 > 0.0)) {
            throw OutsideValidity("geodesic plane undefined at |x - a| >= R");
        }
        const double g = std::sqrt(g2);
        p.g = g;
        if (order >= 1) {
            p.grad.head(m) = -dx / g;
        }
        if (order >= 2) {
            p.hess.topLeftCorner(m, m) =
                -Eigen::MatrixXd::Identity(m, m) / g - dx * dx.transpose() / (g * g * g);
        }
    } else if (const auto* h = std::get_if<Horocylinder>(&o)) {
        check_positive(h->c);
        p.g = h->c;
    } else if (const auto* e = std::get_if<EuclideanPlane>(&o)) {
        if (static_cast<int>(e->a.size()) != m) {
            throw InvalidParams("euclidean plane slope has wrong dimension");
        }
        double g = e->b * point(m) + e->c;
        for (int k = 0; k < m; ++k) {
            g += e->a[static_cast<std::size_t>(k)] * point(k);
        }
        check_positive(g);
        p.g = g;
        if (order >= 1) {
            for (int k = 0; k < m; ++k) {
                p.grad(k) = e->a[static_cast<std::size_t>(k)];
            }
            p.grad(m) = e->b;
        }
    } else {
        if (n != 2) {
            throw InvalidParams("x sinh t is a two-variable surface");
        }
        const double x = point(0), t = point(1);
        const double sh = std::sinh(t), ch = std::cosh(t);
        const double g = x * sh;
        check_positive(g);
        p.g = g;
        if (order >= 1) {
            p.grad << sh, x * ch;
        }
        if (order >= 2) {
            p.hess << 0.0, ch, ch, x * sh;
        }
    }
    return p;
}

/// g alone; throws OutsideValidity where g <= 0.
inline double value(const OracleSurface& o, double x, double t) { return evaluate(o, point2(x, t), 0).g; }

/// Residual sign pattern over the samples: Solution when every |res| is
/// within tol * scale, Subsolution when every res >= -tol * scale,
/// Supersolution when every res <= tol * scale, Mixed otherwise.
inline Classification classify_numerically(const OracleSurface& o, const std::vector<Eigen::VectorXd>& samples,
                                           double eps, double tol = 1e-10)
{
    bool all_zero = true;
    bool all_nonneg = true;
    bool all_nonpos = true;
    for (const auto& pt : samples) {
        const auto state = evaluate(o, pt, 2, eps);
        const double r = op::residual(state);
        const double band = tol * std::max(1.0, op::residual_scale(state));
        all_zero = all_zero && std::abs(r) <= band;
        all_nonneg = all_nonneg && r >= -band;
        all_nonpos = all_nonpos && r <= band;
    }
    if (all_zero) {
        return Classification::Solution;
    }
    if (all_nonneg) {
        return Classification::Subsolution;
    }
    if (all_nonpos) {
        return Classification::Supersolution;
    }
    return Classification::Mixed;
}

/// Oracle after the hyperbolic homothety g -> lambda g(x / lambda, t);
/// eps transforms to eps * eps_factor.
struct Rescaled {
    OracleSurface surface;
    double eps_factor = 1.0;
};

inline Rescaled hyperbolic_rescale(const OracleSurface& o, double lambda)
{
    if (!(lambda > 0.0)) {
        throw InvalidParams("lambda must be positive");
    }
    Rescaled r{o, lambda * lambda};
    if (auto* gp = std::get_if<GeodesicPlane>(&r.surface)) {
        gp->R *= lambda;
        for (auto& a : gp->center) {
            a *= lambda;
        }
    } else if (auto* h = std::get_if<Horocylinder>(&r.surface)) {
        h->c *= lambda;
    } else if (auto* e = std::get_if<EuclideanPlane>(&r.surface)) {
        // lambda (a . x / lambda + b t + c)
        e->b *= lambda;
        e->c *= lambda;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Boundary barrier psi(d) = (1/b1) ln(1 + ((e^{K b1} - 1)/delta1) d).

/// Bounds on the extension phi of the boundary data over the domain.
/// max_hess is the nuclear norm (sum of absolute eigenvalues).
struct PhiBounds {
    double max_phi = 0.0;
    double max_grad = 0.0;
    double max_hess = 0.0;
};

struct BarrierParams {
    int n = 2;
    double R = 0.0;                // R(Omega, f); stands in for max g over the domain
    double min_g_boundary = 0.0;   // min of g on the boundary
    PhiBounds phi;
    double height = 0.0;           // K: psi(delta1) = K, R + max phi for the gradient barrier
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double alpha = 0.0;
    double b1 = 0.0;
    double delta1 = 0.0;
    double log_slope = 0.0;        // ln((e^{K b1} - 1) / delta1)
};

namespace detail {

/// ln(e^x - 1) for x > 0 without overflow.
inline double log_expm1(double x) { return x > 30.0 ? x + std::log1p(-std::exp(-x)) : std::log(std::expm1(x)); }

}  // namespace detail

/// Assembles alpha1, alpha2, alpha and picks b1 = alpha, delta1 =
/// (1 - e^{-K b1}) / b1, which makes (e^{K b1} - 1)/delta1 = b1 e^{K b1}
/// and psi'(d) >= 1 on [0, delta1].
///
/// The positive-definiteness floor min{1, min g^2} divides both alpha1 and
/// alpha2.
inline BarrierParams build_barrier_params_with_height(const geometry::GeometricQuantities& q, const PhiBounds& phi,
                                                      double height, int n = 2)
{
    if (!(q.R_omega_f > 0.0) || !(q.min_f > 0.0) || !(height > 0.0)) {
        throw InvalidParams("R, min f and the barrier height must be positive");
    }
    if (phi.max_grad < 0.0 || phi.max_hess < 0.0 || n < 2) {
        throw InvalidParams("phi bounds must be nonnegative");
    }
    BarrierParams p;
    p.n = n;
    p.R = q.R_omega_f;
    p.min_g_boundary = q.min_f;
    p.phi = phi;
    p.height = height;
    const double R2 = p.R * p.R;
    const double floor_ellipticity = std::min(1.0, p.min_g_boundary * p.min_g_boundary);
    const double grad2 = phi.max_grad * phi.max_grad;
    p.alpha1 = (2.0 + R2 * (n - 1) + 2.0 * (std::max(1.0, R2) * (n - 2) + 1.0) * (grad2 + 1.0)) / floor_ellipticity;
    p.alpha2 = (3.0 + 2.0 * grad2) / floor_ellipticity;
    const double zeroth = std::max((n - 1) * p.R, (n - 2) / p.min_g_boundary);
    p.alpha = phi.max_hess * p.alpha1 + zeroth * p.alpha2;
    p.b1 = p.alpha;
    const double kb = p.height * p.b1;
    p.delta1 = -std::expm1(-kb) / p.b1;
    p.log_slope = detail::log_expm1(kb) - std::log(p.delta1);
    return p;
}

inline BarrierParams build_barrier_params(const geometry::GeometricQuantities& q, const PhiBounds& phi, int n = 2)
{
    return build_barrier_params_with_height(q, phi, q.R_omega_f + phi.max_phi, n);
}

/// psi(d); computed in log space so large K b1 does not overflow.
inline double boundary_barrier_psi(const BarrierParams& p, double d)
{
    if (!(p.b1 > 0.0) || !(p.delta1 > 0.0)) {
        throw InvalidParams("b1 and delta1 must be positive");
    }
    if (d < 0.0) {
        throw InvalidParams("distance must be nonnegative");
    }
    if (d == 0.0) {
        return 0.0;
    }
    const double log_ad = p.log_slope + std::log(d);
    const double l = log_ad < 30.0 ? std::log1p(std::exp(log_ad)) : log_ad + std::log1p(std::exp(-log_ad));
    return l / p.b1;
}

/// psi'(d) = 1 / (b1 (1/A + d)).
inline double boundary_barrier_dpsi(const BarrierParams& p, double d)
{
    return 1.0 / (p.b1 * (std::exp(-p.log_slope) + d));
}

/// psi''(d) = -b1 psi'(d)^2.
inline double boundary_barrier_d2psi(const BarrierParams& p, double d)
{
    const double s = boundary_barrier_dpsi(p, d);
    return -p.b1 * s * s;
}

/// phi^{+-}(q) = f(p) +- eps/3 +- R ln(1 + |q-p|^2) / ln(1 + delta0^2).
inline double modulus_barrier(double f_at_p, double eps_target, double delta0, double R, double q_minus_p_sq,
                              int sign)
{
    if (!(eps_target > 0.0) || !(delta0 > 0.0) || !(R > 0.0) || q_minus_p_sq < 0.0 || (sign != 1 && sign != -1)) {
        throw InvalidParams("modulus barrier needs eps, delta0, R > 0 and sign = +-1");
    }
    return f_at_p + sign * eps_target / 3.0 + sign * R * std::log1p(q_minus_p_sq) / std::log1p(delta0 * delta0);
}

// ---------------------------------------------------------------------------
// Global gradient bound in two variables.

/// phi(u) = c1 + int_0^u e^{-gamma s^2} ds and its derivatives.
struct PhiProfile {
    double c1 = 0.0;
    double gamma = 1.0;

    [[nodiscard]] double value(double u) const
    {
        const double sg = std::sqrt(gamma);
        return c1 + std::sqrt(std::numbers::pi) / (2.0 * sg) * std::erf(sg * u);
    }
    [[nodiscard]] double d1(double u) const { return std::exp(-gamma * u * u); }
    [[nodiscard]] double d2(double u) const { return -2.0 * gamma * u * std::exp(-gamma * u * u); }
    [[nodiscard]] double d3(double u) const
    {
        return (4.0 * gamma * gamma * u * u - 2.0 * gamma) * std::exp(-gamma * u * u);
    }
};

struct GradientBound {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
    double gamma = 0.0;
    double c12 = 0.0;
    double B = 0.0;
    double interior_candidate = 0.0;
    double boundary_candidate = 0.0;
    double bound_C = 0.0;
    double lambda = 1.0;  // homothety used when c1 > 1 (1 means direct)
};

namespace detail {

/// Smallest u with int_0^u e^{-gamma s^2} ds = target, by bisection on the
/// monotone error-function primitive.
inline double gaussian_primitive_root(double gamma, double target)
{
    if (target <= 0.0) {
        return 0.0;
    }
    const PhiProfile phi{0.0, gamma};
    double lo = 0.0;
    double hi = 1.0;
    while (phi.value(hi) <= target) {
        hi *= 2.0;
        if (hi > 1e12) {
            throw HypothesisViolated("target exceeds the Gaussian integral");
        }
    }
    for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (phi.value(mid) < target ? lo : hi) = mid;
    }
    return hi;
}

inline GradientBound direct_gradient_bound(double c1, double c2, double c3)
{
    GradientBound r;
    r.c1 = c1;
    r.c2 = c2;
    r.c3 = c3;
    // 1/sqrt(2 gamma) at the midpoint of (sqrt(2/pi)(c2 - c1), c1).
    const double lo = std::sqrt(2.0 / std::numbers::pi) * (c2 - c1);
    const double mid = 0.5 * (lo + c1);
    r.gamma = 1.0 / (2.0 * mid * mid);
    r.c12 = 1.1 * gaussian_primitive_root(r.gamma, c2 - c1);
    const double g = r.gamma;
    const double k = r.c12;
    r.B = 1.0 + ((g + 2.0 * g * k) * c2 + (2.0 * g + 4.0 * g * k) * (3.0 * c2 + c2 * c2 * c2)) *
                    std::exp(2.0 * g * k + 2.0 * g * k * k);
    const double m = std::min(c1, 1.0);
    r.interior_candidate = std::sqrt(2.0 * 2.0 * r.B / (2.0 * g * m * m - 1.0));
    r.boundary_candidate = c3 * std::exp(g * k + g * k * k);
    r.bound_C = std::max(r.interior_candidate, r.boundary_candidate);
    return r;
}

}  // namespace detail

inline void require_gradient_hypothesis(double c1, double c2, double c3)
{
    if (!(c1 > 0.0) || c2 < c1 || c3 < 0.0) {
        throw InvalidParams("need 0 < c1 <= c2 and c3 >= 0");
    }
    if (!(c2 < c1 + c1 * geometry::kSqrtHalfPi)) {
        throw HypothesisViolated("c2 = " + std::to_string(c2) + " >= c1 (1 + sqrt(pi/2)) = " +
                                 std::to_string(c1 * (1.0 + geometry::kSqrtHalfPi)));
    }
}

/// Bound on max |Dg| through the homothety g_lambda = lambda g(x/lambda, t):
/// bound(lambda c1, lambda c2, c3) / lambda. Requires lambda c1 <= 1.
inline GradientBound global_gradient_bound_rescaled(double c1, double c2, double c3, double lambda)
{
    require_gradient_hypothesis(c1, c2, c3);
    if (!(lambda > 0.0) || lambda * c1 > 1.0) {
        throw InvalidParams("homothety needs 0 < lambda and lambda c1 <= 1");
    }
    GradientBound r = detail::direct_gradient_bound(lambda * c1, lambda * c2, c3);
    r.interior_candidate /= lambda;
    r.boundary_candidate /= lambda;
    r.bound_C /= lambda;
    r.c1 = c1;
    r.c2 = c2;
    r.lambda = lambda;
    return r;
}

/// Gradient bound from c1 <= g <= c2 and |Dg| <= c3 on the boundary,
/// under c2 < c1 (1 + sqrt(pi/2)). For c1 > 1 the homothety with
/// lambda = 1 / (2 c1) reduces to the c1 <= 1 case.
inline GradientBound global_gradient_bound(double c1, double c2, double c3)
{
    require_gradient_hypothesis(c1, c2, c3);
    if (c1 > 1.0) {
        return global_gradient_bound_rescaled(c1, c2, c3, 0.5 / c1);
    }
    return detail::direct_gradient_bound(c1, c2, c3);
}

}  // namespace horograph::analytic
