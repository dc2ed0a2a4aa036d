#pragma once

// Regular (hexagonal) deployment. Three neighbouring APs form the
// equilateral triangle A1 = (0, 0), A2 = (D, 0), A3 = (D/2, sqrt(3) D / 2);
// every user location in the plane maps onto a point of this triangle, and
// by mirror symmetry about x = D/2 onto its left half.

#include "loscov/blockage.hpp"
#include "loscov/model.hpp"

#include <array>
#include <vector>

namespace loscov {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

using UserPoint = Point;

class HexLayout {
public:
    static HexLayout from_inter_site(double d_inter);
    static HexLayout from_cell_radius(double r_cell);

    double d_inter() const { return d_; }
    double r_cell() const;
    std::array<Point, 3> ap_positions() const;

    /// Closed triangle A1 A2 A3, with a small relative tolerance.
    bool contains(const Point& u) const;
    /// Closed left half 0 <= x <= D/2, 0 <= y <= sqrt(3) x.
    bool in_left_half(const Point& u) const;
    Point mirror(const Point& u) const { return {d_ - u.x, u.y}; }

    /// Default evaluation step, D / 200.
    double default_grid_step() const { return d_ / 200.0; }

private:
    explicit HexLayout(double d) : d_(d) {}
    double d_;
};

struct PerApGeometry {
    double theta = 0.0;          // radians, as measured per AP (see geometry_at)
    double range = 0.0;          // |A_i U|
    double boundary_dist = 0.0;  // |A_i B_i|, B_i on the edge opposite A_i
    bool at_ap = false;          // user sits on this AP; theta and boundary are NaN
};

/// Angles, ranges and far-boundary distances for the three APs.
///
/// theta_1 is measured at A1 from the +x axis, theta_2 at A2 from the -x
/// axis, theta_3 at A3 from the downward vertical. boundary_dist comes from
/// an exact ray-edge intersection. Throws GeometryError when u is outside
/// the triangle.
std::array<PerApGeometry, 3> geometry_at(const HexLayout& layout, const UserPoint& u);

/// Trigonometric closed forms of the boundary distances,
///   |A1B1| = sqrt3 D / (2 sin(2pi/3 - theta_1))
///   |A2B2| = sqrt3 D / (2 sin(2pi/3 - theta_2))
///   |A3B3| = sqrt3 D / (2 sin(pi/2 - theta_1))
/// kept only to cross-check the exact geometry.
std::array<double, 3> trig_boundary_distances(const HexLayout& layout, const UserPoint& u);

/// |A3B3| with theta_3 in place of theta_1; this is the form that agrees
/// with the exact geometry.
double corrected_a3_boundary_distance(const HexLayout& layout, const UserPoint& u);

/// Probability that at least one of the three links is LOS; per-link
/// blocking uses pblk_regular with r = R_i and r_cell = |A_i B_i|, links are
/// combined as independent events.
double p_los_at_point(const HexLayout& layout, const UserPoint& u, const HeightProfile& profile,
                      const BlockageParams& b);

/// Per-link LOS probabilities exp(-beta P_blk,i R_i) at u.
std::array<double, 3> link_los_probabilities(const HexLayout& layout, const UserPoint& u,
                                             const HeightProfile& profile, const BlockageParams& b);

struct WorstCase {
    double p_los = 1.0;
    UserPoint where;
};

/// Minimum of p_los_at_point over the left half-triangle: grid search at
/// grid_step, then a compass search refined down to grid_step / 100.
WorstCase worst_case_p_los(const HexLayout& layout, const HeightProfile& profile, const BlockageParams& b,
                           double grid_step);

struct GridSample {
    UserPoint u;
    double p_los = 0.0;
};

/// Grid points covering the closed left half-triangle, row-major in x then y.
std::vector<UserPoint> half_triangle_grid(const HexLayout& layout, double grid_step);

std::vector<GridSample> grid_evaluate(const HexLayout& layout, const HeightProfile& profile,
                                      const BlockageParams& b, double grid_step);

/// Extends a left-half field to the full triangle by mirroring about
/// x = D/2; points on the symmetry line are not duplicated. Output is
/// sorted by (x, y).
std::vector<GridSample> mirror_to_full(const HexLayout& layout, const std::vector<GridSample>& half);

}  // namespace loscov
