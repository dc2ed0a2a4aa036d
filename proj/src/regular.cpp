#include "loscov/regular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace loscov {

namespace {

constexpr double sqrt3 = std::numbers::sqrt3;
constexpr double nan = std::numeric_limits<double>::quiet_NaN();

double cross(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

double tolerance(const HexLayout& layout) { return 1e-9 * layout.d_inter(); }

// Distance from vertex a along the ray through u to the line through p, q.
double ray_to_edge(const Point& a, const Point& u, const Point& p, const Point& q)
{
    const double dx = u.x - a.x;
    const double dy = u.y - a.y;
    const double ex = q.x - p.x;
    const double ey = q.y - p.y;
    const double denom = cross(dx, dy, ex, ey);
    const double t = cross(p.x - a.x, p.y - a.y, ex, ey) / denom;
    return t * std::hypot(dx, dy);
}

Point project_to_left_half(const HexLayout& layout, Point u)
{
    u.x = std::clamp(u.x, 0.0, layout.d_inter() / 2.0);
    u.y = std::clamp(u.y, 0.0, sqrt3 * u.x);
    return u;
}

}  // namespace

HexLayout HexLayout::from_inter_site(double d_inter)
{
    if (!(d_inter > 0.0) || !std::isfinite(d_inter))
        throw DomainError("inter-site distance must be positive");
    return HexLayout(d_inter);
}

HexLayout HexLayout::from_cell_radius(double r_cell)
{
    if (!(r_cell > 0.0) || !std::isfinite(r_cell))
        throw DomainError("cell radius must be positive");
    return HexLayout(r_cell * sqrt3);
}

double HexLayout::r_cell() const { return d_ / sqrt3; }

std::array<Point, 3> HexLayout::ap_positions() const
{
    return {Point{0.0, 0.0}, Point{d_, 0.0}, Point{d_ / 2.0, sqrt3 * d_ / 2.0}};
}

bool HexLayout::contains(const Point& u) const
{
    const double eps = tolerance(*this);
    return u.y >= -eps && u.y <= sqrt3 * u.x + 2.0 * eps && u.y <= sqrt3 * (d_ - u.x) + 2.0 * eps;
}

bool HexLayout::in_left_half(const Point& u) const
{
    const double eps = tolerance(*this);
    return contains(u) && u.x >= -eps && u.x <= d_ / 2.0 + eps;
}

std::array<PerApGeometry, 3> geometry_at(const HexLayout& layout, const UserPoint& u)
{
    if (!layout.contains(u))
        throw GeometryError("user point (" + std::to_string(u.x) + ", " + std::to_string(u.y) +
                            ") lies outside the AP triangle");
    const double d = layout.d_inter();
    const auto ap = layout.ap_positions();
    const double eps = tolerance(layout);

    std::array<PerApGeometry, 3> out{};
    const std::array<double, 3> theta = {
        std::atan2(u.y, u.x),
        std::atan2(u.y, d - u.x),
        std::atan2(d / 2.0 - u.x, sqrt3 * d / 2.0 - u.y),
    };
    for (int i = 0; i < 3; ++i) {
        const Point& a = ap[i];
        const Point& p = ap[(i + 1) % 3];
        const Point& q = ap[(i + 2) % 3];
        PerApGeometry& g = out[i];
        g.range = std::hypot(u.x - a.x, u.y - a.y);
        if (g.range <= eps) {
            g.range = 0.0;
            g.at_ap = true;
            g.theta = nan;
            g.boundary_dist = nan;
            continue;
        }
        g.theta = theta[i];
        g.boundary_dist = ray_to_edge(a, u, p, q);
    }
    return out;
}

std::array<double, 3> trig_boundary_distances(const HexLayout& layout, const UserPoint& u)
{
    const auto g = geometry_at(layout, u);
    const double h = sqrt3 * layout.d_inter() / 2.0;
    const double pi = std::numbers::pi;
    return {
        h / std::sin(2.0 * pi / 3.0 - g[0].theta),
        h / std::sin(2.0 * pi / 3.0 - g[1].theta),
        h / std::sin(pi / 2.0 - g[0].theta),
    };
}

double corrected_a3_boundary_distance(const HexLayout& layout, const UserPoint& u)
{
    const auto g = geometry_at(layout, u);
    return sqrt3 * layout.d_inter() / 2.0 / std::sin(std::numbers::pi / 2.0 - g[2].theta);
}

std::array<double, 3> link_los_probabilities(const HexLayout& layout, const UserPoint& u,
                                             const HeightProfile& profile, const BlockageParams& b)
{
    validate_profile(profile);
    if (!(b.beta >= 0.0) || !std::isfinite(b.beta))
        throw DomainError("beta must be non-negative");
    const auto g = geometry_at(layout, u);
    std::array<double, 3> p{};
    for (int i = 0; i < 3; ++i) {
        if (g[i].at_ap) {
            p[i] = 1.0;
            continue;
        }
        const auto pb = pblk_regular(profile, g[i].range, g[i].boundary_dist);
        p[i] = std::exp(-effective_beta(b, pb) * g[i].range);
    }
    return p;
}

double p_los_at_point(const HexLayout& layout, const UserPoint& u, const HeightProfile& profile,
                      const BlockageParams& b)
{
    const auto link = link_los_probabilities(layout, u, profile, b);
    return 1.0 - (1.0 - link[0]) * (1.0 - link[1]) * (1.0 - link[2]);
}

std::vector<UserPoint> half_triangle_grid(const HexLayout& layout, double grid_step)
{
    if (!(grid_step > 0.0) || !std::isfinite(grid_step))
        throw DomainError("grid step must be positive");
    const double half = layout.d_inter() / 2.0;
    const double eps = tolerance(layout);

    std::vector<double> xs;
    for (long i = 0;; ++i) {
        const double x = static_cast<double>(i) * grid_step;
        if (x > half + eps)
            break;
        xs.push_back(std::min(x, half));
    }
    if (xs.back() < half - eps)
        xs.push_back(half);

    std::vector<UserPoint> pts;
    for (double x : xs) {
        const double top = sqrt3 * x;
        double last = -1.0;
        for (long j = 0;; ++j) {
            const double y = static_cast<double>(j) * grid_step;
            if (y > top + eps)
                break;
            last = std::min(y, top);
            pts.push_back({x, last});
        }
        if (last < top - eps)
            pts.push_back({x, top});
    }
    return pts;
}

WorstCase worst_case_p_los(const HexLayout& layout, const HeightProfile& profile, const BlockageParams& b,
                           double grid_step)
{
    WorstCase best;
    best.p_los = std::numeric_limits<double>::infinity();
    for (const auto& u : half_triangle_grid(layout, grid_step)) {
        const double p = p_los_at_point(layout, u, profile, b);
        if (p < best.p_los) {
            best.p_los = p;
            best.where = u;
        }
    }

    // Compass search; candidates are projected back onto the half-triangle.
    static constexpr std::array<std::array<double, 2>, 8> dirs = {{
        {1, 0}, {-1, 0}, {0, 1}, {0, -1},
        {0.7071067811865476, 0.7071067811865476}, {0.7071067811865476, -0.7071067811865476},
        {-0.7071067811865476, 0.7071067811865476}, {-0.7071067811865476, -0.7071067811865476},
    }};
    double step = grid_step;
    const double final_step = grid_step / 100.0;
    while (step > final_step) {
        bool improved = false;
        for (const auto& d : dirs) {
            const Point cand = project_to_left_half(layout, {best.where.x + step * d[0], best.where.y + step * d[1]});
            const double p = p_los_at_point(layout, cand, profile, b);
            if (p < best.p_los) {
                best.p_los = p;
                best.where = cand;
                improved = true;
            }
        }
        if (!improved)
            step /= 2.0;
    }
    return best;
}

std::vector<GridSample> grid_evaluate(const HexLayout& layout, const HeightProfile& profile,
                                      const BlockageParams& b, double grid_step)
{
    std::vector<GridSample> out;
    for (const auto& u : half_triangle_grid(layout, grid_step))
        out.push_back({u, p_los_at_point(layout, u, profile, b)});
    return out;
}

std::vector<GridSample> mirror_to_full(const HexLayout& layout, const std::vector<GridSample>& half)
{
    const double eps = tolerance(layout);
    const double axis = layout.d_inter() / 2.0;
    std::vector<GridSample> out = half;
    for (const auto& s : half) {
        if (std::abs(s.u.x - axis) <= eps)
            continue;
        out.push_back({layout.mirror(s.u), s.p_los});
    }
    std::sort(out.begin(), out.end(), [](const GridSample& a, const GridSample& b) {
        return a.u.x != b.u.x ? a.u.x < b.u.x : a.u.y < b.u.y;
    });
    return out;
}

}  // namespace loscov
