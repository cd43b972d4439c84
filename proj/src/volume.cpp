#include "ctlink/volume.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ctlink
{

namespace
{

constexpr double kHuge = 1e6;

// Keep the part of poly with a x + b y >= c.
std::vector<Point2> clip(const std::vector<Point2>& poly, double a, double b, double c)
{
    std::vector<Point2> out;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i)
    {
        const Point2& p = poly[i];
        const Point2& q = poly[(i + 1) % n];
        double fp = a * p.x + b * p.y - c;
        double fq = a * q.x + b * q.y - c;
        if (fp >= 0)
            out.push_back(p);
        if ((fp >= 0) != (fq >= 0))
        {
            double t = fp / (fp - fq);
            out.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
        }
    }
    return out;
}

double polygon_area(const std::vector<Point2>& poly)
{
    double s = 0;
    for (std::size_t i = 0; i < poly.size(); ++i)
    {
        const Point2& p = poly[i];
        const Point2& q = poly[(i + 1) % poly.size()];
        s += p.x * q.y - q.x * p.y;
    }
    return 0.5 * s;
}

struct Integrator
{
    const PolyhedronSpec& spec;
    std::vector<Point2> footprint;
    std::vector<VerticalPlane> planes;
    std::vector<Hemisphere> outside;
    std::vector<Hemisphere> inside;
    double root_area = 0;
    double tolerance = 0;
    int min_depth = 0;
    std::size_t leaves = 0;
    double residual = 0; // sum of |fine - coarse| over cells accepted early

    explicit Integrator(const PolyhedronSpec& s) : spec(s)
    {
        for (const auto& w : s.walls)
        {
            if (w.is_plane())
                planes.push_back(w.as_plane());
            else if (w.as_hemisphere().keep == SphereSide::Outside)
                outside.push_back(w.as_hemisphere());
            else
                inside.push_back(w.as_hemisphere());
        }
    }

    bool in_footprint(double x, double y) const
    {
        for (const auto& p : planes)
        {
            double v = p.a.value() * x + p.b.value() * y - p.c.value();
            if (p.keep == PlaneSide::GreaterEqual ? v < 0 : v > 0)
                return false;
        }
        return true;
    }

    double integrand(double x, double y) const
    {
        if (!in_footprint(x, y))
            return 0.0;
        double v = column(x, y);
        if (v < 0)
            throw DivergentVolume("footprint point (" + std::to_string(x) + ", " + std::to_string(y) +
                                  ") is not shaded by any excluded hemisphere");
        return v;
    }

    double column(double x, double y) const
    {
        double lo2 = 0.0;
        for (const auto& h : outside)
        {
            double dx = x - h.cx.value(), dy = y - h.cy.value(), r = h.radius.value();
            lo2 = std::max(lo2, r * r - dx * dx - dy * dy);
        }
        if (lo2 <= 0.0)
            return -1.0;
        double hi2 = std::numeric_limits<double>::infinity();
        for (const auto& h : inside)
        {
            double dx = x - h.cx.value(), dy = y - h.cy.value(), r = h.radius.value();
            hi2 = std::min(hi2, r * r - dx * dx - dy * dy);
        }
        if (hi2 <= lo2)
            return 0.0;
        return 0.5 / lo2 - (std::isinf(hi2) ? 0.0 : 0.5 / hi2);
    }

    // Integral over [x0,x1]x[y0,y1] given the integrand at its midpoint.
    double cell(double x0, double y0, double x1, double y1, double mid_value, int level, int max_depth)
    {
        double area = (x1 - x0) * (y1 - y0);
        double coarse = area * mid_value;
        if (level >= max_depth)
        {
            ++leaves;
            return coarse;
        }
        double xm = 0.5 * (x0 + x1), ym = 0.5 * (y0 + y1);
        double f[4] = {
            integrand(0.5 * (x0 + xm), 0.5 * (y0 + ym)),
            integrand(0.5 * (xm + x1), 0.5 * (y0 + ym)),
            integrand(0.5 * (x0 + xm), 0.5 * (ym + y1)),
            integrand(0.5 * (xm + x1), 0.5 * (ym + y1)),
        };
        double fine = 0.25 * area * (f[0] + f[1] + f[2] + f[3]);
        if (level >= min_depth && std::abs(fine - coarse) <= tolerance)
        {
            leaves += 4;
            residual += std::abs(fine - coarse);
            return fine;
        }
        return cell(x0, y0, xm, ym, f[0], level + 1, max_depth) + cell(xm, y0, x1, ym, f[1], level + 1, max_depth) +
               cell(x0, ym, xm, y1, f[2], level + 1, max_depth) + cell(xm, ym, x1, y1, f[3], level + 1, max_depth);
    }
};

} // namespace

std::vector<Point2> footprint_polygon(const PolyhedronSpec& spec)
{
    std::vector<Point2> poly = {{-kHuge, -kHuge}, {kHuge, -kHuge}, {kHuge, kHuge}, {-kHuge, kHuge}};
    for (const auto& w : spec.walls)
    {
        if (!w.is_plane())
            continue;
        const auto& p = w.as_plane();
        double s = p.keep == PlaneSide::GreaterEqual ? 1.0 : -1.0;
        poly = clip(poly, s * p.a.value(), s * p.b.value(), s * p.c.value());
        if (poly.empty())
            return poly;
    }
    if (std::abs(polygon_area(poly)) == 0.0)
        return {};
    for (const auto& p : poly)
        if (std::abs(p.x) >= 0.5 * kHuge || std::abs(p.y) >= 0.5 * kHuge)
            throw DivergentVolume("footprint of the vertical walls is unbounded");
    return poly;
}

double column_volume(const PolyhedronSpec& spec, double x, double y)
{
    return Integrator(spec).column(x, y);
}

VolumeResult polyhedron_volume(const PolyhedronSpec& spec, const QuadratureParams& params)
{
    if (params.max_depth < 1 || params.min_depth < 0 || !(params.tolerance > 0))
        throw std::invalid_argument("quadrature needs max_depth >= 1 and tolerance > 0");
    Integrator in(spec);
    in.footprint = footprint_polygon(spec);
    VolumeResult result;
    if (in.footprint.empty())
        return result;

    double x0 = in.footprint[0].x, x1 = x0, y0 = in.footprint[0].y, y1 = y0;
    for (const auto& p : in.footprint)
    {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    in.root_area = (x1 - x0) * (y1 - y0);
    in.tolerance = params.tolerance;
    in.min_depth = std::min(params.min_depth, params.max_depth - 1);

    double mid = in.integrand(0.5 * (x0 + x1), 0.5 * (y0 + y1));
    double coarse = in.cell(x0, y0, x1, y1, mid, 0, params.max_depth - 1);
    in.leaves = 0;
    in.residual = 0;
    double fine = in.cell(x0, y0, x1, y1, mid, 0, params.max_depth);
    result.volume = fine;
    result.error_estimate = std::abs(fine - coarse) + in.residual;
    result.cells = in.leaves;
    return result;
}

} // namespace ctlink
