// Grid-sampled scalar fields and their finite-difference derivatives.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "horograph/errors.hpp"
#include "horograph/geometry.hpp"
#include "horograph/point_operator.hpp"

namespace horograph {

/// Values of g on every grid node of a domain (NaN outside the mask) and
/// the boundary trace the boundary nodes carry exactly.
class ScalarField {
public:
    ScalarField(geometry::DomainSpec domain, geometry::BoundaryData boundary)
        : domain_(std::move(domain)),
          boundary_(std::move(boundary)),
          values_(domain_.node_count(), std::numeric_limits<double>::quiet_NaN())
    {
        if (boundary_.values.size() != domain_.boundary_nodes().size()) {
            throw InvalidParams("boundary data size does not match the domain");
        }
        enforce_boundary();
    }

    /// Interior values from `fn`, boundary values from the trace.
    static ScalarField from_function(geometry::DomainSpec domain, geometry::BoundaryData boundary,
                                     const std::function<double(geometry::Point2)>& fn)
    {
        ScalarField f(std::move(domain), std::move(boundary));
        for (auto idx : f.domain_.interior_nodes()) {
            f.values_[idx] = fn(f.domain_.node(idx));
        }
        return f;
    }

    static ScalarField constant(geometry::DomainSpec domain, geometry::BoundaryData boundary, double c)
    {
        return from_function(std::move(domain), std::move(boundary), [c](geometry::Point2) { return c; });
    }

    [[nodiscard]] const geometry::DomainSpec& domain() const noexcept { return domain_; }
    [[nodiscard]] const geometry::BoundaryData& boundary() const noexcept { return boundary_; }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
    [[nodiscard]] std::vector<double>& values() noexcept { return values_; }

    [[nodiscard]] double operator()(int i, int j) const noexcept { return values_[domain_.index(i, j)]; }
    [[nodiscard]] double at(std::size_t idx) const noexcept { return values_[idx]; }
    void set(std::size_t idx, double v) noexcept { values_[idx] = v; }

    /// Replaces the boundary trace and writes it onto the boundary nodes.
    void set_boundary(geometry::BoundaryData boundary)
    {
        if (boundary.values.size() != domain_.boundary_nodes().size()) {
            throw InvalidParams("boundary data size does not match the domain");
        }
        boundary_ = std::move(boundary);
        enforce_boundary();
    }

    void enforce_boundary()
    {
        const auto& nodes = domain_.boundary_nodes();
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            values_[nodes[k]] = boundary_.values[k];
        }
    }

    [[nodiscard]] double interior_min() const { return extreme(domain_.interior_nodes(), true); }
    [[nodiscard]] double interior_max() const { return extreme(domain_.interior_nodes(), false); }

    /// Extremes over all mask nodes.
    [[nodiscard]] double min() const { return std::min(interior_min(), boundary_.min()); }
    [[nodiscard]] double max() const { return std::max(interior_max(), boundary_.max()); }

    /// Max-norm distance over mask nodes to a field on the same grid.
    [[nodiscard]] double max_abs_difference(const ScalarField& other) const
    {
        if (other.values_.size() != values_.size()) {
            throw InvalidParams("fields live on different grids");
        }
        double d = 0.0;
        for (std::size_t idx = 0; idx < values_.size(); ++idx) {
            if (domain_.kind(idx) != geometry::NodeKind::Outside) {
                d = std::max(d, std::abs(values_[idx] - other.values_[idx]));
            }
        }
        return d;
    }

private:
    double extreme(const std::vector<std::size_t>& nodes, bool want_min) const
    {
        double r = want_min ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
        for (auto idx : nodes) {
            r = want_min ? std::min(r, values_[idx]) : std::max(r, values_[idx]);
        }
        return r;
    }

    geometry::DomainSpec domain_;
    geometry::BoundaryData boundary_;
    std::vector<double> values_;
};

namespace fd {

/// Centered second-order derivatives at an interior node, packed as the
/// operator's planar state.
inline op::PlanarState planar_state(const ScalarField& f, int i, int j, double eps = 0.0)
{
    const auto& d = f.domain();
    const double hx = d.hx();
    const double ht = d.ht();
    const double c = f(i, j);
    const double e = f(i + 1, j), w = f(i - 1, j), n = f(i, j + 1), s = f(i, j - 1);
    op::PlanarState p;
    p.g = c;
    p.gx = (e - w) / (2.0 * hx);
    p.gt = (n - s) / (2.0 * ht);
    p.gxx = (e - 2.0 * c + w) / (hx * hx);
    p.gtt = (n - 2.0 * c + s) / (ht * ht);
    p.gxt = (f(i + 1, j + 1) - f(i + 1, j - 1) - f(i - 1, j + 1) + f(i - 1, j - 1)) / (4.0 * hx * ht);
    p.eps = eps;
    return p;
}

/// First derivative along one axis: centered where both neighbours are in
/// the mask, one-sided second order where two nodes on one side are,
/// first order as a last resort.
inline double axis_derivative(const ScalarField& f, int i, int j, int di, int dj, double h)
{
    const auto& d = f.domain();
    const bool fwd1 = d.in_mask(i + di, j + dj);
    const bool bwd1 = d.in_mask(i - di, j - dj);
    if (fwd1 && bwd1) {
        return (f(i + di, j + dj) - f(i - di, j - dj)) / (2.0 * h);
    }
    if (fwd1 && d.in_mask(i + 2 * di, j + 2 * dj)) {
        return (-3.0 * f(i, j) + 4.0 * f(i + di, j + dj) - f(i + 2 * di, j + 2 * dj)) / (2.0 * h);
    }
    if (bwd1 && d.in_mask(i - 2 * di, j - 2 * dj)) {
        return (3.0 * f(i, j) - 4.0 * f(i - di, j - dj) + f(i - 2 * di, j - 2 * dj)) / (2.0 * h);
    }
    if (fwd1) {
        return (f(i + di, j + dj) - f(i, j)) / h;
    }
    if (bwd1) {
        return (f(i, j) - f(i - di, j - dj)) / h;
    }
    return 0.0;
}

struct Gradient {
    double gx = 0.0;
    double gt = 0.0;
    [[nodiscard]] double norm() const { return std::hypot(gx, gt); }
};

inline Gradient gradient(const ScalarField& f, int i, int j)
{
    const auto& d = f.domain();
    return {axis_derivative(f, i, j, 1, 0, d.hx()), axis_derivative(f, i, j, 0, 1, d.ht())};
}

inline double max_gradient(const ScalarField& f, const std::vector<std::size_t>& nodes)
{
    double m = 0.0;
    for (auto idx : nodes) {
        auto [i, j] = f.domain().ij(idx);
        m = std::max(m, gradient(f, i, j).norm());
    }
    return m;
}

inline double max_boundary_gradient(const ScalarField& f) { return max_gradient(f, f.domain().boundary_nodes()); }

/// Sup of |Dg| over interior and boundary nodes.
inline double max_gradient_closed(const ScalarField& f)
{
    return std::max(max_gradient(f, f.domain().interior_nodes()), max_boundary_gradient(f));
}

/// Sum of absolute eigenvalues of a symmetric 2x2 matrix; dominates
/// |tr(A H)| / lambda_max(A) for positive semidefinite A.
inline double nuclear_norm_sym2(double a, double b, double c)
{
    const double mean = 0.5 * (a + c);
    const double rad = std::hypot(0.5 * (a - c), b);
    return std::abs(mean + rad) + std::abs(mean - rad);
}

/// Sup over interior nodes of the nuclear norm of the centered Hessian.
inline double max_hessian(const ScalarField& f)
{
    double m = 0.0;
    for (auto idx : f.domain().interior_nodes()) {
        auto [i, j] = f.domain().ij(idx);
        const auto p = planar_state(f, i, j);
        m = std::max(m, nuclear_norm_sym2(p.gxx, p.gxt, p.gtt));
    }
    return m;
}

}  // namespace fd

/// Field image under (x,t) -> (x + dx, t + dt); values are carried over
/// node for node.
inline ScalarField translate(const ScalarField& f, double dx, double dt)
{
    ScalarField out(f.domain().translated(dx, dt), f.boundary());
    out.values() = f.values();
    return out;
}

/// g_lambda(x,t) = lambda g(x / lambda, t) on T_lambda(Omega), node for node.
/// Solutions at eps map to solutions at eps lambda^2.
inline ScalarField hyperbolic_rescale(const ScalarField& f, double lambda)
{
    geometry::BoundaryData b = f.boundary();
    for (auto& v : b.values) {
        v *= lambda;
    }
    b.provenance = geometry::Provenance::Table;
    ScalarField out(f.domain().scaled_x(lambda), std::move(b));
    out.values() = f.values();
    for (auto& v : out.values()) {
        v *= lambda;
    }
    return out;
}

}  // namespace horograph
