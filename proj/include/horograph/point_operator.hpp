// Pointwise kernels of the eps-horizontal minimal operator M_eps(g) for
// horizontal graphs y = g(x_1, ..., x_{n-1}, t) in H^n x R.
//
// Variables are ordered (x_1, ..., x_{n-1}, t); index n-1 is t.
#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "horograph/errors.hpp"

namespace horograph::op {

/// g, its gradient and Hessian at one point, plus eps.
struct PointState {
    int n = 2;
    double g = 1.0;
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(2);
    Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(2, 2);
    double eps = 0.0;

    static PointState zero(int n, double g, double eps = 0.0)
    {
        PointState p;
        p.n = n;
        p.g = g;
        p.grad = Eigen::VectorXd::Zero(n);
        p.hess = Eigen::MatrixXd::Zero(n, n);
        p.eps = eps;
        return p;
    }

    static PointState planar(double g, double gx, double gt, double gxx, double gxt, double gtt, double eps = 0.0)
    {
        PointState p = zero(2, g, eps);
        p.grad << gx, gt;
        p.hess << gxx, gxt, gxt, gtt;
        return p;
    }

    void validate() const
    {
        if (n < 2) {
            throw InvalidParams("ambient dimension must be at least 2");
        }
        if (grad.size() != n || hess.rows() != n || hess.cols() != n) {
            throw InvalidParams("state shape does not match n = " + std::to_string(n));
        }
        if (!(g > 0.0)) {
            throw NonPositiveLength("g = " + std::to_string(g));
        }
        if (!(eps >= 0.0 && eps <= 1.0)) {
            throw InvalidParams("eps must lie in [0,1]");
        }
    }
};

/// Two-variable state used by the grid solver.
struct PlanarState {
    double g = 1.0;
    double gx = 0.0;
    double gt = 0.0;
    double gxx = 0.0;
    double gtt = 0.0;
    double gxt = 0.0;
    double eps = 0.0;
};

inline PlanarState to_planar(const PointState& p)
{
    if (p.n != 2) {
        throw InvalidParams("planar state requires n = 2");
    }
    return {p.g, p.grad(0), p.grad(1), p.hess(0, 0), p.hess(1, 1), p.hess(0, 1), p.eps};
}

inline PointState from_planar(const PlanarState& s)
{
    return PointState::planar(s.g, s.gx, s.gt, s.gxx, s.gxt, s.gtt, s.eps);
}

/// l(s) of the homotopy: 0 on [0, 1/2], 2s - 1 on [1/2, 1].
inline double homotopy_weight(double s)
{
    if (!(s >= 0.0 && s <= 1.0)) {
        throw InvalidParams("homotopy parameter must lie in [0,1]");
    }
    return s <= 0.5 ? 0.0 : 2.0 * s - 1.0;
}

namespace detail {

struct ResidualParts {
    double principal = 0.0;  // second-order part
    double zeroth = 0.0;     // (n-1) g (1 + |D_x g|^2) + (n-2) g_t^2 / g
    double scale = 0.0;      // sum of absolute values of all terms
};

inline ResidualParts residual_parts(const PointState& p)
{
    p.validate();
    const int m = p.n - 1;  // number of x variables
    const double g2 = p.g * p.g;
    const double gt = p.grad(m);
    double sum_x2 = 0.0;
    for (int k = 0; k < m; ++k) {
        sum_x2 += p.grad(k) * p.grad(k);
    }
    ResidualParts r;
    auto add = [&](double& acc, double term) {
        acc += term;
        r.scale += std::abs(term);
    };
    for (int k = 0; k < m; ++k) {
        const double gk = p.grad(k);
        const double a_kk = g2 * (1.0 + sum_x2 - gk * gk) + gt * gt + p.eps / m;
        add(r.principal, a_kk * p.hess(k, k));
    }
    add(r.principal, (1.0 + sum_x2) * p.hess(m, m));
    for (int k = 0; k < m; ++k) {
        add(r.principal, -2.0 * p.grad(k) * gt * p.hess(k, m));
    }
    for (int j = 0; j < m; ++j) {
        for (int k = j + 1; k < m; ++k) {
            add(r.principal, -2.0 * g2 * p.grad(j) * p.grad(k) * p.hess(j, k));
        }
    }
    add(r.zeroth, m * p.g * (1.0 + sum_x2));
    add(r.zeroth, (m - 1) * gt * gt / p.g);
    return r;
}

}  // namespace detail

/// M_eps(g) for any n >= 2.
inline double residual(const PointState& p)
{
    const auto r = detail::residual_parts(p);
    return r.principal + r.zeroth;
}

/// Sum of absolute values of the terms of M_eps(g); the natural scale for
/// rounding-aware tolerances.
inline double residual_scale(const PointState& p) { return detail::residual_parts(p).scale; }

/// Homotopy residual: the zeroth-order block is weighted by l(s).
inline double homotopy_residual(const PointState& p, double s)
{
    const auto r = detail::residual_parts(p);
    return r.principal + homotopy_weight(s) * r.zeroth;
}

/// Hard-coded two-variable form
///   g_xx (g^2 + g_t^2 + eps) + g_tt (1 + g_x^2) - 2 g_x g_t g_xt + ell g (1 + g_x^2).
inline double residual(const PlanarState& s, double ell = 1.0)
{
    if (!(s.g > 0.0)) {
        throw NonPositiveLength("g = " + std::to_string(s.g));
    }
    return s.gxx * (s.g * s.g + s.gt * s.gt + s.eps) + s.gtt * (1.0 + s.gx * s.gx) - 2.0 * s.gx * s.gt * s.gxt +
           ell * s.g * (1.0 + s.gx * s.gx);
}

/// Partial derivatives of the two-variable residual.
struct JacobianRow {
    double d_g = 0.0;
    double d_gx = 0.0;
    double d_gt = 0.0;
    double d_gxx = 0.0;
    double d_gtt = 0.0;
    double d_gxt = 0.0;
};

inline JacobianRow residual_jacobian(const PlanarState& s, double ell = 1.0)
{
    if (!(s.g > 0.0)) {
        throw NonPositiveLength("g = " + std::to_string(s.g));
    }
    JacobianRow j;
    j.d_g = 2.0 * s.g * s.gxx + ell * (1.0 + s.gx * s.gx);
    j.d_gx = 2.0 * s.gx * s.gtt - 2.0 * s.gt * s.gxt + 2.0 * ell * s.g * s.gx;
    j.d_gt = 2.0 * s.gt * s.gxx - 2.0 * s.gx * s.gxt;
    j.d_gxx = s.g * s.g + s.gt * s.gt + s.eps;
    j.d_gtt = 1.0 + s.gx * s.gx;
    j.d_gxt = -2.0 * s.gx * s.gt;
    return j;
}

struct CoefficientMatrix {
    Eigen::MatrixXd a;
    double lower_bound = 0.0;  // min{1, g^2}
    double upper_bound = 0.0;  // 2 + g^2 (n-1) + (max{1,g^2} (n-2) + 1) |Dg|^2
};

/// Principal coefficients a_ij(g, Dg). Off-diagonal x-x entries are
/// a_jk = -g^2 g_{x_j} g_{x_k}, the entry consistent with the quadratic
/// form of the operator.
inline CoefficientMatrix coefficients(const PointState& p)
{
    p.validate();
    const int n = p.n;
    const int m = n - 1;
    const double g2 = p.g * p.g;
    const double gt = p.grad(m);
    double sum_x2 = 0.0;
    for (int k = 0; k < m; ++k) {
        sum_x2 += p.grad(k) * p.grad(k);
    }
    CoefficientMatrix c;
    c.a = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < m; ++k) {
        const double gk = p.grad(k);
        c.a(k, k) = g2 * (1.0 + sum_x2 - gk * gk) + gt * gt + p.eps / m;
        c.a(k, m) = c.a(m, k) = -gk * gt;
        for (int j = k + 1; j < m; ++j) {
            c.a(j, k) = c.a(k, j) = -g2 * p.grad(j) * gk;
        }
    }
    c.a(m, m) = 1.0 + sum_x2;
    c.lower_bound = std::min(1.0, g2);
    c.upper_bound = 2.0 + g2 * m + (std::max(1.0, g2) * (n - 2) + 1.0) * p.grad.squaredNorm();
    return c;
}

/// W = g^2 (1 + sum g_{x_k}^2) + g_t^2.
inline double w_factor(const PointState& p)
{
    const int m = p.n - 1;
    const double gt = p.grad(m);
    return p.g * p.g * (1.0 + p.grad.head(m).squaredNorm()) + gt * gt;
}

/// Mean curvature with respect to the normal N, from
/// M(g) = (n H / g^2) W^{3/2}. eps is ignored.
inline double mean_curvature(const PointState& p)
{
    PointState q = p;
    q.eps = 0.0;
    const double m = residual(q);
    return p.g * p.g * m / (p.n * std::pow(w_factor(p), 1.5));
}

struct SurfaceGeometry {
    Eigen::MatrixXd first_form;
    Eigen::MatrixXd first_form_inverse;
    Eigen::MatrixXd second_form;
    Eigen::VectorXd normal;  // components (x_1..x_{n-1}, y, t)
    double W = 0.0;
};

/// Fundamental forms and unit normal of the graph; the inverse first form
/// comes from its closed form, not from numeric inversion.
inline SurfaceGeometry surface_geometry(const PointState& p)
{
    p.validate();
    const int n = p.n;
    const int m = n - 1;
    const double g = p.g;
    const double g2 = g * g;
    const double gt = p.grad(m);
    const double sum_x2 = p.grad.head(m).squaredNorm();

    SurfaceGeometry s;
    s.W = w_factor(p);
    const double sqrt_w = std::sqrt(s.W);

    s.first_form = Eigen::MatrixXd::Zero(n, n);
    s.first_form_inverse = Eigen::MatrixXd::Zero(n, n);
    s.second_form = Eigen::MatrixXd::Zero(n, n);
    const double inv_scale = g2 / s.W;
    for (int k = 0; k < m; ++k) {
        const double gk = p.grad(k);
        s.first_form(k, k) = (1.0 + gk * gk) / g2;
        s.first_form(k, m) = s.first_form(m, k) = gk * gt / g2;
        s.first_form_inverse(k, k) = (g2 * (1.0 + sum_x2 - gk * gk) + gt * gt) * inv_scale;
        s.first_form_inverse(k, m) = s.first_form_inverse(m, k) = -gt * gk * inv_scale;
        s.second_form(k, k) = (1.0 / g + p.hess(k, k) + gk * gk / g) / sqrt_w;
        s.second_form(k, m) = s.second_form(m, k) = p.hess(k, m) / sqrt_w;
        for (int j = k + 1; j < m; ++j) {
            const double gj = p.grad(j);
            s.first_form(k, j) = s.first_form(j, k) = gj * gk / g2;
            s.first_form_inverse(k, j) = s.first_form_inverse(j, k) = -g2 * gj * gk * inv_scale;
            s.second_form(k, j) = s.second_form(j, k) = (p.hess(k, j) + gk * gj / g) / sqrt_w;
        }
    }
    s.first_form(m, m) = (g2 + gt * gt) / g2;
    s.first_form_inverse(m, m) = (1.0 + sum_x2) * inv_scale;
    s.second_form(m, m) = (p.hess(m, m) - gt * gt / g) / sqrt_w;

    s.normal = Eigen::VectorXd::Zero(n + 1);
    for (int k = 0; k < m; ++k) {
        s.normal(k) = -p.grad(k) * g2 / sqrt_w;
    }
    s.normal(m) = g2 / sqrt_w;
    s.normal(n) = -gt / sqrt_w;
    return s;
}

/// Squared length of a tangent vector of H^n x R at height y, in the
/// product metric (dx^2 + dy^2) / y^2 + dt^2.
inline double product_metric_norm2(const Eigen::VectorXd& v, double y)
{
    const auto n = v.size() - 1;
    return v.head(n).squaredNorm() / (y * y) + v(n) * v(n);
}

}  // namespace horograph::op
