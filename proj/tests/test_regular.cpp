#include "loscov/blockage.hpp"
#include "loscov/regular.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace loscov;

namespace {

constexpr double sqrt3 = std::numbers::sqrt3;

// Uniform point in the triangle by reflection of the unit square.
UserPoint random_interior(const HexLayout& layout, std::mt19937_64& gen)
{
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double s = uni(gen);
    double t = uni(gen);
    if (s + t > 1.0) {
        s = 1.0 - s;
        t = 1.0 - t;
    }
    const auto a = layout.ap_positions();
    return {a[0].x + s * (a[1].x - a[0].x) + t * (a[2].x - a[0].x),
            a[0].y + s * (a[1].y - a[0].y) + t * (a[2].y - a[0].y)};
}

// Distance from ap along the ray through u to the line through p and q.
double ray_to_line(Point ap, Point u, Point p, Point q)
{
    const double dx = u.x - ap.x;
    const double dy = u.y - ap.y;
    const double norm = std::hypot(dx, dy);
    const double ex = q.x - p.x;
    const double ey = q.y - p.y;
    const double t = ((p.x - ap.x) * ey - (p.y - ap.y) * ex) / (dx * ey - dy * ex);
    return t * norm;
}

const HeightProfile low{3, 1.5, 3};

}  // namespace

TEST_CASE("layout invariants")
{
    const auto layout = HexLayout::from_cell_radius(100.0);
    CHECK(layout.d_inter() == doctest::Approx(100.0 * sqrt3).epsilon(1e-15));
    CHECK(layout.r_cell() == doctest::Approx(layout.d_inter() / sqrt3).epsilon(1e-15));
    const auto a = layout.ap_positions();
    const double d = layout.d_inter();
    CHECK(std::hypot(a[1].x - a[0].x, a[1].y - a[0].y) == doctest::Approx(d).epsilon(1e-15));
    CHECK(std::hypot(a[2].x - a[0].x, a[2].y - a[0].y) == doctest::Approx(d).epsilon(1e-15));
    CHECK(std::hypot(a[2].x - a[1].x, a[2].y - a[1].y) == doctest::Approx(d).epsilon(1e-15));
    CHECK_THROWS_AS(HexLayout::from_inter_site(0.0), DomainError);
    CHECK_THROWS_AS(HexLayout::from_cell_radius(-1.0), DomainError);
}

TEST_CASE("centroid geometry")
{
    const auto layout = HexLayout::from_inter_site(120.0);
    const double d = layout.d_inter();
    const UserPoint c{d / 2, d / (2 * sqrt3)};
    const auto g = geometry_at(layout, c);
    for (const auto& ap : g)
        CHECK(ap.range == doctest::Approx(layout.r_cell()).epsilon(1e-14));
    CHECK(g[0].theta == doctest::Approx(std::numbers::pi / 6).epsilon(1e-14));
    CHECK(g[0].boundary_dist == doctest::Approx(sqrt3 * d / 2).epsilon(1e-14));
    CHECK(std::hypot(3 * d / 4, sqrt3 * d / 4) == doctest::Approx(g[0].boundary_dist).epsilon(1e-14));
}

TEST_CASE("user on an AP")
{
    const auto layout = HexLayout::from_cell_radius(100.0);
    const auto g = geometry_at(layout, {0.0, 0.0});
    CHECK(g[0].range == 0.0);
    CHECK(g[0].at_ap);
    CHECK(p_los_at_point(layout, {0.0, 0.0}, low, {0.0709}) == 1.0);
    for (const auto& a : layout.ap_positions())
        CHECK(p_los_at_point(layout, a, low, {0.0709}) == 1.0);
}

TEST_CASE("points outside the triangle are rejected")
{
    const auto layout = HexLayout::from_cell_radius(100.0);
    CHECK_THROWS_AS(geometry_at(layout, {-1.0, 0.0}), GeometryError);
    CHECK_THROWS_AS(geometry_at(layout, {10.0, -1.0}), GeometryError);
    CHECK_THROWS_AS(geometry_at(layout, {10.0, 100.0}), GeometryError);
    CHECK_THROWS_AS(p_los_at_point(layout, {500.0, 10.0}, low, {0.0709}), GeometryError);
}

TEST_CASE("ranges and boundary distances against an independent line intersection")
{
    const auto layout = HexLayout::from_cell_radius(100.0);
    const auto a = layout.ap_positions();
    std::mt19937_64 gen(7);
    for (int i = 0; i < 500; ++i) {
        const auto u = random_interior(layout, gen);
        const auto g = geometry_at(layout, u);
        CHECK(g[0].range == doctest::Approx(std::hypot(u.x, u.y)).epsilon(1e-13));
        CHECK(g[0].boundary_dist == doctest::Approx(ray_to_line(a[0], u, a[1], a[2])).epsilon(1e-10));
        CHECK(g[1].boundary_dist == doctest::Approx(ray_to_line(a[1], u, a[2], a[0])).epsilon(1e-10));
        CHECK(g[2].boundary_dist == doctest::Approx(ray_to_line(a[2], u, a[0], a[1])).epsilon(1e-10));
        for (const auto& ap : g)
            CHECK(ap.range <= ap.boundary_dist * (1 + 1e-12));
    }
}

TEST_CASE("trigonometric boundary forms for A1 and A2 agree with exact geometry")
{
    const auto layout = HexLayout::from_cell_radius(100.0);
    std::mt19937_64 gen(11);
    for (int i = 0; i < 1000; ++i) {
        const auto u = random_interior(layout, gen);
        const auto g = geometry_at(layout, u);
        const auto trig = trig_boundary_distances(layout, u);
        CHECK(std::abs(trig[0] - g[0].boundary_dist) <= 1e-9 * g[0].boundary_dist);
        CHECK(std::abs(trig[1] - g[1].boundary_dist) <= 1e-9 * g[1].boundary_dist);
        CHECK(std::abs(corrected_a3_boundary_distance(layout, u) - g[2].boundary_dist) <=
              1e-9 * g[2].boundary_dist);
    }
}

TEST_CASE("A3 trigonometric form with theta_1 disagrees with exact geometry")
{
    // Away from the symmetry line the theta_1 form of |A3B3| misses the
    // exact distance; the theta_3 form is checked above.
    const auto layout = HexLayout::from_cell_radius(100.0);
    const UserPoint u{0.3 * layout.d_inter(), 0.1 * layout.d_inter()};
    const double exact = geometry_at(layout, u)[2].boundary_dist;
    const double trig = trig_boundary_distances(layout, u)[2];
    MESSAGE("theta_1 form of |A3B3| = " << trig << ", exact = " << exact);
    CHECK(std::abs(trig - exact) > 1e-3 * exact);
}

TEST_CASE("point probability against an explicit three-link product")
{
    const auto layout = HexLayout::from_cell_radius(100.0);
    const auto a = layout.ap_positions();
    const HeightProfile p{3, 1.5, 10};
    const double unit = pblk_irregular(p).value;  // blocking per unit of r / extent
    std::mt19937_64 gen(3);
    for (int i = 0; i < 200; ++i) {
        const auto u = random_interior(layout, gen);
        double miss = 1.0;
        for (int k = 0; k < 3; ++k) {
            const Point far0 = a[(k + 1) % 3];
            const Point far1 = a[(k + 2) % 3];
            const double r = std::hypot(u.x - a[k].x, u.y - a[k].y);
            const double extent = ray_to_line(a[k], u, far0, far1);
            const double pb = std::min(1.0, r / extent * unit);
            miss *= 1.0 - std::exp(-0.0709 * pb * r);
        }
        CHECK(p_los_at_point(layout, u, p, {0.0709}) == doctest::Approx(1.0 - miss).epsilon(1e-12));
    }
}

TEST_CASE("mirror symmetry")
{
    const auto layout = HexLayout::from_cell_radius(100.0);
    std::mt19937_64 gen(5);
    for (const HeightProfile& p : {HeightProfile{3, 1.5, 3}, HeightProfile{30, 1.5, 15}, HeightProfile{3, 1.5, 10}}) {
        for (int i = 0; i < 300; ++i) {
            const auto u = random_interior(layout, gen);
            CHECK(p_los_at_point(layout, u, p, {0.0709}) ==
                  doctest::Approx(p_los_at_point(layout, layout.mirror(u), p, {0.0709})).epsilon(1e-12));
        }
    }
}

TEST_CASE("A1 link probability decreases along radial transects")
{
    // Other two links held fixed: only the A1 factor is compared.
    const auto layout = HexLayout::from_cell_radius(100.0);
    const double d = layout.d_inter();
    for (double theta : {0.0, 0.2, 0.4, std::numbers::pi / 6, 0.9}) {
        // Voronoi region of A1: closer to A1 than to A2 and to A3.
        const double limit = 0.5 * d / std::max(std::cos(theta), std::cos(std::numbers::pi / 3 - theta)) * 0.999;
        double prev_link = 1.0;
        double prev_combined = 2.0;
        for (double r = 0.0; r <= limit; r += limit / 200) {
            const UserPoint u{r * std::cos(theta), r * std::sin(theta)};
            const auto links = link_los_probabilities(layout, u, low, {0.0709});
            CHECK(links[0] <= prev_link + 1e-15);
            const double held = 1.0 - (1.0 - links[0]) * (1.0 - 0.5) * (1.0 - 0.5);
            CHECK(held <= prev_combined + 1e-15);
            prev_link = links[0];
            prev_combined = held;
        }
    }
}

TEST_CASE("no blockage gives certainty")
{
    const auto layout = HexLayout::from_cell_radius(100.0);
    std::mt19937_64 gen(9);
    for (int i = 0; i < 50; ++i)
        CHECK(p_los_at_point(layout, random_interior(layout, gen), low, {0.0}) == 1.0);
    CHECK(worst_case_p_los(layout, low, {0.0}, layout.default_grid_step()).p_los == 1.0);
}

TEST_CASE("worst case on the default low-rise deployment")
{
    const auto layout = HexLayout::from_cell_radius(100.0);
    const auto w = worst_case_p_los(layout, low, {0.0709}, layout.default_grid_step());
    CHECK(layout.in_left_half(w.where));
    // Brute-force minimum on a much finer grid bounds it from above.
    const auto fine = grid_evaluate(layout, low, {0.0709}, layout.d_inter() / 1000);
    double brute = 1.0;
    for (const auto& s : fine)
        brute = std::min(brute, s.p_los);
    CHECK(w.p_los <= brute + 1e-12);
    CHECK(w.p_los == doctest::Approx(brute).epsilon(1e-5));
    // The centroid is the worst point for equal per-link geometry.
    CHECK(w.where.x == doctest::Approx(layout.d_inter() / 2).epsilon(1e-3));
    CHECK(w.where.y == doctest::Approx(layout.r_cell() / 2).epsilon(1e-3));
}

TEST_CASE("worst case is stable under grid refinement")
{
    const auto layout = HexLayout::from_cell_radius(100.0);
    for (const HeightProfile& p : {HeightProfile{3, 1.5, 3}, HeightProfile{30, 1.5, 15}, HeightProfile{3, 1.5, 10}}) {
        const double step = layout.default_grid_step();
        const double coarse = worst_case_p_los(layout, p, {0.0709}, step).p_los;
        const double fine = worst_case_p_los(layout, p, {0.0709}, step / 2).p_los;
        CHECK(std::abs(coarse - fine) < 1e-3);
    }
    CHECK_THROWS_AS(worst_case_p_los(layout, low, {0.0709}, 0.0), DomainError);
}

TEST_CASE("grid evaluation")
{
    const auto layout = HexLayout::from_cell_radius(100.0);
    const double step = layout.default_grid_step();
    const auto half = grid_evaluate(layout, low, {0.0709}, step);
    REQUIRE_FALSE(half.empty());
    for (const auto& s : half) {
        CHECK(layout.in_left_half(s.u));
        CHECK(s.p_los >= 0.0);
        CHECK(s.p_los <= 1.0);
    }
    CHECK(half.front().u == Point{0.0, 0.0});
    CHECK(half.front().p_los == 1.0);

    const auto tall = grid_evaluate(layout, {30, 1.5, 3}, {0.0709}, step);
    REQUIRE(tall.size() == half.size());
    for (std::size_t i = 0; i < half.size(); ++i)
        CHECK(tall[i].p_los >= half[i].p_los - 1e-15);

    const auto full = mirror_to_full(layout, half);
    std::size_t on_axis = 0;
    for (const auto& s : half)
        on_axis += std::abs(s.u.x - layout.d_inter() / 2) < 1e-9 * layout.d_inter();
    CHECK(full.size() == 2 * half.size() - on_axis);
    for (std::size_t i = 1; i < full.size(); ++i)
        CHECK((full[i - 1].u.x < full[i].u.x || (full[i - 1].u.x == full[i].u.x && full[i - 1].u.y < full[i].u.y)));
    for (const auto& s : full)
        CHECK(layout.contains(s.u));
    bool has_a2 = false;
    for (const auto& s : full)
        if (std::abs(s.u.x - layout.d_inter()) < 1e-9 && s.u.y == 0.0)
            has_a2 = s.p_los == 1.0;
    CHECK(has_a2);
}
