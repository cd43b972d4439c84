#include <doctest.h>

#include <cmath>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "ctlink/halfspace.hpp"
#include "ctlink/volume.hpp"

using namespace ctlink;

namespace
{

// Volume of the canonical polyhedron by an independent route. Over the
// rectangle [0, X] x [0, Y] the lower height is sqrt(max(f1, f2)) with
// f1 = 1 - x^2 - (y - 1)^2 and f2 = c^2 - (x - c)^2 - y^2, c = 2 + sqrt2;
// f1 - f2 = 2 (y - c x), so the big disk wins below the line y = c x. The
// y-integral of 1 / (2 (a - (y - m)^2)) is atanh((y - m) / sqrt a) / (2 sqrt a).
double oracle_volume()
{
    const double s2 = std::sqrt(2.0);
    const double c = 2 + s2, X = 3 + 1.5 * s2, Y = 1 + s2 / 2;
    auto piece = [](double a, double m, double y0, double y1) {
        if (y1 <= y0)
            return 0.0;
        double r = std::sqrt(a);
        return (std::atanh((y1 - m) / r) - std::atanh((y0 - m) / r)) / (2 * r);
    };
    // Small-disk piece from y = c x up to Y; 1 + (c x - 1) / r is formed
    // without cancellation since the integrand has a log singularity at x = 0.
    auto small_piece = [&](double x) {
        double r = std::sqrt(1 - x * x);
        double u = (Y - 1) / r;
        double one_plus_v = (c * x - x * x / (1 + r)) / r;
        double one_minus_v = 2 - one_plus_v;
        return 0.5 * (std::log1p(u) - std::log1p(-u) + std::log(one_minus_v) - std::log(one_plus_v)) / (2 * r);
    };
    auto inner = [&](double x) {
        double split = std::min(Y, c * x);
        double big = piece(x * (2 * c - x), 0.0, 0.0, split);
        return big + (split < Y ? small_piece(x) : 0.0);
    };
    boost::math::quadrature::tanh_sinh<double> q;
    return q.integrate(inner, 0.0, X);
}

double polygon_area(const std::vector<Point2>& p)
{
    double a = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
    {
        const auto& u = p[i];
        const auto& v = p[(i + 1) % p.size()];
        a += u.x * v.y - v.x * u.y;
    }
    return a / 2;
}

} // namespace

TEST_CASE("footprint of the canonical polyhedron is its rectangle")
{
    auto fp = footprint_polygon(build_tangle_polyhedron());
    const double s2 = std::sqrt(2.0);
    CHECK(fp.size() == 4);
    CHECK(polygon_area(fp) == doctest::Approx((3 + 1.5 * s2) * (1 + s2 / 2)));
}

TEST_CASE("column integrand")
{
    auto spec = build_tangle_polyhedron();
    // Inside the small disk near (0, 1): height sqrt(1 - 0.01 - 0) at (0.1, 1).
    CHECK(column_volume(spec, 0.1, 1.0) == doctest::Approx(1 / (2 * 0.99)));
    PolyhedronSpec open = spec;
    open.walls.pop_back();
    open.labels.clear();
    CHECK(column_volume(open, 2.5, 1.5) < 0);
}

TEST_CASE("adaptive quadrature converges to the oracle")
{
    const double exact = oracle_volume();
    CHECK(exact == doctest::Approx(1.01426).epsilon(1e-4));
    auto spec = build_tangle_polyhedron();
    QuadratureParams q;
    q.max_depth = 12;
    auto v = polyhedron_volume(spec, q);
    CHECK(v.volume < exact);
    CHECK(std::abs(v.volume - exact) / exact < 5e-4);
    CHECK(v.error_estimate > 0);
    q.max_depth = 14;
    auto w = polyhedron_volume(spec, q);
    CHECK(std::abs(w.volume - exact) < std::abs(v.volume - exact));
    CHECK(std::abs(w.volume - exact) / exact < 1e-4);
    // The cusp gives first-order convergence, so the remaining error is
    // comparable to the last refinement step.
    CHECK(std::abs(w.volume - exact) < 2 * w.error_estimate);
}

TEST_CASE("volume shrinks when a wall is added")
{
    auto spec = build_tangle_polyhedron();
    QuadratureParams q;
    q.max_depth = 9;
    double base = polyhedron_volume(spec, q).volume;
    spec.walls.push_back(Wall::hemisphere(3, 1, 3.5, SphereSide::Outside));
    spec.labels.push_back("extra");
    CHECK(polyhedron_volume(spec, q).volume < base);
}

TEST_CASE("divergent and empty configurations")
{
    auto spec = build_tangle_polyhedron();
    PolyhedronSpec unbounded = spec;
    unbounded.walls.erase(unbounded.walls.begin() + 1); // drop x <= 3 + 3 sqrt2 / 2
    unbounded.labels.clear();
    CHECK_THROWS_AS(footprint_polygon(unbounded), DivergentVolume);
    PolyhedronSpec uncovered = spec;
    uncovered.walls.pop_back();
    uncovered.labels.clear();
    CHECK_THROWS_AS(polyhedron_volume(uncovered), DivergentVolume);
}
