// Domains of the (x,t)-plane, their grids and boundary data, and the
// geometric quantities (horizontal width, R(Omega,f), ...) every a priori
// estimate is parameterized by.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "horograph/errors.hpp"

namespace horograph::geometry {

struct Point2 {
    double x = 0.0;
    double t = 0.0;
};

inline double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.t - b.t); }

struct Rectangle {
    double x_min = 0.0;
    double x_max = 1.0;
    double t_min = 0.0;
    double t_max = 1.0;
};

/// A supporting line of a convex domain: the domain lies on the side the
/// unit normal points to.
struct Edge {
    Point2 a;
    Point2 b;
    Point2 inward_normal;

    [[nodiscard]] double signed_distance(Point2 q) const
    {
        return inward_normal.x * (q.x - a.x) + inward_normal.t * (q.t - a.t);
    }
};

enum class NodeKind : std::uint8_t { Outside, Interior, Boundary };

/// Bounded convex domain of the (x,t)-plane together with the uniform grid
/// covering its bounding box. `nx`, `nt` count intervals, so the grid has
/// (nx+1) x (nt+1) nodes with spacing hx = (x_max - x_min) / nx.
///
/// Interior nodes lie strictly inside every edge half-plane, farther than
/// half a grid spacing from every edge. Boundary nodes are the remaining
/// nodes touching an interior node through the 9-point stencil, so every
/// interior stencil closes on the mask. For rectangles this is the usual
/// edge ring of the grid.
class DomainSpec {
public:
    static DomainSpec rectangle(Rectangle r, int nx, int nt)
    {
        if (!(r.x_max > r.x_min) || !(r.t_max > r.t_min)) {
            throw EmptyDomain("rectangle [" + std::to_string(r.x_min) + "," + std::to_string(r.x_max) + "]x[" +
                              std::to_string(r.t_min) + "," + std::to_string(r.t_max) + "] is degenerate");
        }
        DomainSpec d;
        d.is_rectangle_ = true;
        d.box_ = r;
        d.vertices_ = {{r.x_min, r.t_min}, {r.x_max, r.t_min}, {r.x_max, r.t_max}, {r.x_min, r.t_max}};
        d.init_grid(nx, nt);
        return d;
    }

    /// Vertices must form a convex, simple, counterclockwise loop.
    static DomainSpec polygon(std::vector<Point2> vertices, int nx, int nt)
    {
        validate_convex_ccw(vertices);
        DomainSpec d;
        d.is_rectangle_ = false;
        d.vertices_ = std::move(vertices);
        Rectangle box{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
                      std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
        for (const auto& v : d.vertices_) {
            box.x_min = std::min(box.x_min, v.x);
            box.x_max = std::max(box.x_max, v.x);
            box.t_min = std::min(box.t_min, v.t);
            box.t_max = std::max(box.t_max, v.t);
        }
        d.box_ = box;
        d.init_grid(nx, nt);
        return d;
    }

    [[nodiscard]] bool is_rectangle() const noexcept { return is_rectangle_; }
    [[nodiscard]] const Rectangle& bounding_box() const noexcept { return box_; }
    [[nodiscard]] const std::vector<Point2>& vertices() const noexcept { return vertices_; }
    [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }

    [[nodiscard]] int nx() const noexcept { return nx_; }
    [[nodiscard]] int nt() const noexcept { return nt_; }
    [[nodiscard]] int nodes_x() const noexcept { return nx_ + 1; }
    [[nodiscard]] int nodes_t() const noexcept { return nt_ + 1; }
    [[nodiscard]] std::size_t node_count() const noexcept
    {
        return static_cast<std::size_t>(nodes_x()) * static_cast<std::size_t>(nodes_t());
    }
    [[nodiscard]] double hx() const noexcept { return hx_; }
    [[nodiscard]] double ht() const noexcept { return ht_; }

    [[nodiscard]] std::size_t index(int i, int j) const noexcept
    {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(nodes_x()) + static_cast<std::size_t>(i);
    }
    [[nodiscard]] std::pair<int, int> ij(std::size_t idx) const noexcept
    {
        return {static_cast<int>(idx % static_cast<std::size_t>(nodes_x())),
                static_cast<int>(idx / static_cast<std::size_t>(nodes_x()))};
    }
    [[nodiscard]] Point2 node(int i, int j) const noexcept { return {box_.x_min + i * hx_, box_.t_min + j * ht_}; }
    [[nodiscard]] Point2 node(std::size_t idx) const noexcept
    {
        auto [i, j] = ij(idx);
        return node(i, j);
    }

    [[nodiscard]] NodeKind kind(std::size_t idx) const noexcept { return kinds_[idx]; }
    [[nodiscard]] NodeKind kind(int i, int j) const noexcept
    {
        if (i < 0 || j < 0 || i > nx_ || j > nt_) {
            return NodeKind::Outside;
        }
        return kinds_[index(i, j)];
    }
    [[nodiscard]] bool in_mask(int i, int j) const noexcept { return kind(i, j) != NodeKind::Outside; }

    [[nodiscard]] const std::vector<std::size_t>& interior_nodes() const noexcept { return interior_; }
    [[nodiscard]] const std::vector<std::size_t>& boundary_nodes() const noexcept { return boundary_; }

    /// Position of a boundary node within boundary_nodes(), or -1.
    [[nodiscard]] std::ptrdiff_t boundary_slot(std::size_t idx) const noexcept { return boundary_slot_[idx]; }

    /// Distance from q to the boundary (minimum over supporting lines;
    /// exact for points inside a convex domain).
    [[nodiscard]] double distance_to_boundary(Point2 q) const
    {
        double d = std::numeric_limits<double>::infinity();
        for (const auto& e : edges_) {
            d = std::min(d, e.signed_distance(q));
        }
        return d;
    }

    /// Radius of the largest inscribed disk, approximated over grid nodes.
    [[nodiscard]] double inradius() const
    {
        double r = 0.0;
        for (std::size_t idx = 0; idx < node_count(); ++idx) {
            r = std::max(r, distance_to_boundary(node(idx)));
        }
        return r;
    }

    [[nodiscard]] double diameter() const
    {
        double d = 0.0;
        for (const auto& a : vertices_) {
            for (const auto& b : vertices_) {
                d = std::max(d, distance(a, b));
            }
        }
        return d;
    }

    [[nodiscard]] DomainSpec translated(double dx, double dt) const
    {
        std::vector<Point2> v = vertices_;
        for (auto& p : v) {
            p.x += dx;
            p.t += dt;
        }
        if (is_rectangle_) {
            return rectangle({box_.x_min + dx, box_.x_max + dx, box_.t_min + dt, box_.t_max + dt}, nx_, nt_);
        }
        return polygon(std::move(v), nx_, nt_);
    }

    /// Image under (x,t) -> (lambda x, t), same grid counts.
    [[nodiscard]] DomainSpec scaled_x(double lambda) const
    {
        if (!(lambda > 0.0)) {
            throw InvalidParams("scale factor must be positive");
        }
        if (is_rectangle_) {
            return rectangle({lambda * box_.x_min, lambda * box_.x_max, box_.t_min, box_.t_max}, nx_, nt_);
        }
        std::vector<Point2> v = vertices_;
        for (auto& p : v) {
            p.x *= lambda;
        }
        return polygon(std::move(v), nx_, nt_);
    }

    static void validate_convex_ccw(const std::vector<Point2>& v)
    {
        if (v.size() < 3) {
            throw InvalidDomain("polygon needs at least 3 vertices");
        }
        const std::size_t n = v.size();
        bool some_positive = false;
        double turning = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const Point2& p0 = v[k];
            const Point2& p1 = v[(k + 1) % n];
            const Point2& p2 = v[(k + 2) % n];
            const double ax = p1.x - p0.x, at = p1.t - p0.t;
            const double bx = p2.x - p1.x, bt = p2.t - p1.t;
            if ((ax == 0.0 && at == 0.0) || (bx == 0.0 && bt == 0.0)) {
                throw InvalidDomain("repeated polygon vertex");
            }
            const double cross = ax * bt - at * bx;
            if (cross < 0.0) {
                throw InvalidDomain("polygon is not convex and counterclockwise");
            }
            some_positive = some_positive || cross > 0.0;
            turning += std::atan2(cross, ax * bx + at * bt);
        }
        if (!some_positive) {
            throw InvalidDomain("polygon is degenerate (collinear vertices)");
        }
        if (std::abs(turning - 2.0 * std::numbers::pi) > 1e-9) {
            throw InvalidDomain("polygon is not simple");
        }
    }

private:
    DomainSpec() = default;

    void init_grid(int nx, int nt)
    {
        if (nx < 1 || nt < 1) {
            throw EmptyDomain("grid resolution must be positive");
        }
        nx_ = nx;
        nt_ = nt;
        hx_ = (box_.x_max - box_.x_min) / nx;
        ht_ = (box_.t_max - box_.t_min) / nt;
        if (!(hx_ > 0.0) || !(ht_ > 0.0)) {
            throw EmptyDomain("grid spacing is not positive");
        }

        edges_.clear();
        const std::size_t n = vertices_.size();
        for (std::size_t k = 0; k < n; ++k) {
            const Point2 a = vertices_[k];
            const Point2 b = vertices_[(k + 1) % n];
            const double len = distance(a, b);
            // Counterclockwise loop: the interior is to the left.
            edges_.push_back({a, b, {-(b.t - a.t) / len, (b.x - a.x) / len}});
        }

        const double band = 0.5 * std::min(hx_, ht_);
        kinds_.assign(node_count(), NodeKind::Outside);
        for (int j = 0; j <= nt_; ++j) {
            for (int i = 0; i <= nx_; ++i) {
                if (distance_to_boundary(node(i, j)) > band) {
                    kinds_[index(i, j)] = NodeKind::Interior;
                }
            }
        }
        interior_.clear();
        boundary_.clear();
        for (std::size_t idx = 0; idx < node_count(); ++idx) {
            if (kinds_[idx] == NodeKind::Interior) {
                interior_.push_back(idx);
            }
        }
        if (interior_.empty()) {
            throw EmptyDomain("grid has no interior node");
        }
        for (std::size_t idx = 0; idx < node_count(); ++idx) {
            if (kinds_[idx] != NodeKind::Outside) {
                continue;
            }
            auto [i, j] = ij(idx);
            bool touches = false;
            for (int dj = -1; dj <= 1 && !touches; ++dj) {
                for (int di = -1; di <= 1 && !touches; ++di) {
                    touches = kind(i + di, j + dj) == NodeKind::Interior;
                }
            }
            if (touches) {
                kinds_[idx] = NodeKind::Boundary;
            }
        }
        boundary_slot_.assign(node_count(), -1);
        for (std::size_t idx = 0; idx < node_count(); ++idx) {
            if (kinds_[idx] == NodeKind::Boundary) {
                boundary_slot_[idx] = static_cast<std::ptrdiff_t>(boundary_.size());
                boundary_.push_back(idx);
            }
        }
    }

    bool is_rectangle_ = true;
    Rectangle box_{};
    std::vector<Point2> vertices_;
    std::vector<Edge> edges_;
    int nx_ = 0;
    int nt_ = 0;
    double hx_ = 0.0;
    double ht_ = 0.0;
    std::vector<NodeKind> kinds_;
    std::vector<std::size_t> interior_;
    std::vector<std::size_t> boundary_;
    std::vector<std::ptrdiff_t> boundary_slot_;
};

enum class Provenance : std::uint8_t { Constant, Oracle, Table };

/// Positive Dirichlet data on the boundary nodes of a domain, stored in
/// the order of DomainSpec::boundary_nodes().
struct BoundaryData {
    std::vector<double> values;
    Provenance provenance = Provenance::Table;
    std::string source;  // constant value, oracle description, or table origin

    static BoundaryData constant(const DomainSpec& domain, double c)
    {
        BoundaryData f;
        f.values.assign(domain.boundary_nodes().size(), c);
        f.provenance = Provenance::Constant;
        f.source = std::to_string(c);
        return f;
    }

    /// Samples `fn` exactly at every boundary node.
    static BoundaryData sample(const DomainSpec& domain, const std::function<double(Point2)>& fn,
                               std::string description, Provenance provenance = Provenance::Oracle)
    {
        BoundaryData f;
        f.values.reserve(domain.boundary_nodes().size());
        for (auto idx : domain.boundary_nodes()) {
            f.values.push_back(fn(domain.node(idx)));
        }
        f.provenance = provenance;
        f.source = std::move(description);
        return f;
    }

    [[nodiscard]] double at_node(const DomainSpec& domain, std::size_t idx) const
    {
        const auto slot = domain.boundary_slot(idx);
        if (slot < 0) {
            throw InvalidParams("node " + std::to_string(idx) + " is not a boundary node");
        }
        return values[static_cast<std::size_t>(slot)];
    }

    [[nodiscard]] double min() const { return *std::min_element(values.begin(), values.end()); }
    [[nodiscard]] double max() const { return *std::max_element(values.begin(), values.end()); }

    /// h(s,.) of the Leray-Schauder homotopy: 2s min f for s <= 1/2, and
    /// (2s-1) f + 2(1-s) min f for s in [1/2, 1].
    [[nodiscard]] BoundaryData homotopy(double s) const
    {
        const double m = min();
        BoundaryData h = *this;
        for (auto& v : h.values) {
            v = s <= 0.5 ? 2.0 * s * m : (2.0 * s - 1.0) * v + 2.0 * (1.0 - s) * m;
        }
        h.provenance = Provenance::Table;
        h.source = "homotopy(s=" + std::to_string(s) + ") of " + source;
        return h;
    }

    void require_positive() const
    {
        for (std::size_t k = 0; k < values.size(); ++k) {
            if (!(values[k] > 0.0)) {
                throw NonPositiveBoundaryData("value " + std::to_string(values[k]) + " at boundary slot " +
                                              std::to_string(k));
            }
        }
    }
};

struct GeometricQuantities {
    double h_gamma = 0.0;   // horizontal width max x - min x over the boundary
    double x0_gamma = 0.0;  // midpoint of the x-range of the boundary
    double r_omega = 0.0;   // h_gamma / 2 in two variables
    double R_omega_f = 0.0;
    double osc_f = 0.0;
    double min_f = 0.0;
    double max_f = 0.0;
};

inline GeometricQuantities compute_quantities(const DomainSpec& domain, const BoundaryData& f)
{
    if (domain.interior_nodes().empty()) {
        throw EmptyDomain("no interior node");
    }
    if (f.values.size() != domain.boundary_nodes().size()) {
        throw InvalidParams("boundary data does not match the domain's boundary nodes");
    }
    f.require_positive();
    double x_lo = std::numeric_limits<double>::infinity();
    double x_hi = -x_lo;
    for (const auto& v : domain.vertices()) {
        x_lo = std::min(x_lo, v.x);
        x_hi = std::max(x_hi, v.x);
    }
    GeometricQuantities q;
    q.h_gamma = x_hi - x_lo;
    q.x0_gamma = 0.5 * (x_hi + x_lo);
    q.r_omega = 0.5 * q.h_gamma;
    q.min_f = f.min();
    q.max_f = f.max();
    q.osc_f = q.max_f - q.min_f;
    q.R_omega_f = std::sqrt(q.max_f * q.max_f + 0.25 * q.h_gamma * q.h_gamma);
    return q;
}

/// Smallest closed disk containing a planar point set (the projection of
/// a domain in three or more variables), by brute force over pairs and
/// triples. Returns {center, radius}.
inline std::pair<Point2, double> smallest_enclosing_disk(std::span<const Point2> pts)
{
    if (pts.empty()) {
        throw InvalidParams("empty point set");
    }
    if (pts.size() == 1) {
        return {pts[0], 0.0};
    }
    double best_r = std::numeric_limits<double>::infinity();
    Point2 best_c{};
    auto covers = [&](Point2 c, double r) {
        const double tol = 1e-12 * std::max(1.0, r);
        return std::all_of(pts.begin(), pts.end(), [&](Point2 p) { return distance(p, c) <= r + tol; });
    };
    auto consider = [&](Point2 c, double r) {
        if (r < best_r && covers(c, r)) {
            best_r = r;
            best_c = c;
        }
    };
    for (std::size_t a = 0; a < pts.size(); ++a) {
        for (std::size_t b = a + 1; b < pts.size(); ++b) {
            const Point2 c{0.5 * (pts[a].x + pts[b].x), 0.5 * (pts[a].t + pts[b].t)};
            consider(c, 0.5 * distance(pts[a], pts[b]));
            for (std::size_t k = b + 1; k < pts.size(); ++k) {
                const Point2 &A = pts[a], &B = pts[b], &C = pts[k];
                const double d = 2.0 * (A.x * (B.t - C.t) + B.x * (C.t - A.t) + C.x * (A.t - B.t));
                if (d == 0.0) {
                    continue;
                }
                const double a2 = A.x * A.x + A.t * A.t, b2 = B.x * B.x + B.t * B.t, c2 = C.x * C.x + C.t * C.t;
                const Point2 cc{(a2 * (B.t - C.t) + b2 * (C.t - A.t) + c2 * (A.t - B.t)) / d,
                                (a2 * (C.x - B.x) + b2 * (A.x - C.x) + c2 * (B.x - A.x)) / d};
                consider(cc, distance(cc, A));
            }
        }
    }
    return {best_c, best_r};
}

/// R(Omega,f) in three or more variables: sqrt(max f^2 + r(Omega)^2) with
/// r(Omega) the smallest enclosing radius of the projected domain.
struct ProjectedQuantities {
    double r_omega = 0.0;
    double diameter = 0.0;
    double R_omega_f = 0.0;
};

inline ProjectedQuantities compute_projected_quantities(std::span<const Point2> projection, double max_f)
{
    if (!(max_f > 0.0)) {
        throw NonPositiveBoundaryData("max f must be positive");
    }
    ProjectedQuantities q;
    q.r_omega = smallest_enclosing_disk(projection).second;
    for (const auto& a : projection) {
        for (const auto& b : projection) {
            q.diameter = std::max(q.diameter, distance(a, b));
        }
    }
    q.R_omega_f = std::sqrt(max_f * max_f + q.r_omega * q.r_omega);
    return q;
}

struct HypothesisReport {
    double existence_threshold = 0.0;  // min f (1 + sqrt(pi/2))
    bool existence_ok = false;         // R(Omega,f) <= threshold
    double c0 = 0.0;                   // smallest constant shift osc f + h/2
    double c1 = 0.0;
    double c2 = 0.0;
    bool gradient_hypothesis_ok = false;  // c2 < c1 + c1 sqrt(pi/2)
};

inline const double kSqrtHalfPi = std::sqrt(std::numbers::pi / 2.0);

inline HypothesisReport check_existence_hypotheses(const GeometricQuantities& q)
{
    HypothesisReport r;
    r.existence_threshold = q.min_f * (1.0 + kSqrtHalfPi);
    r.existence_ok = q.R_omega_f <= r.existence_threshold;
    r.c0 = q.osc_f + 0.5 * q.h_gamma;
    r.c1 = q.min_f;
    r.c2 = q.R_omega_f;
    r.gradient_hypothesis_ok = r.c2 < r.c1 + r.c1 * kSqrtHalfPi;
    return r;
}

}  // namespace horograph::geometry
