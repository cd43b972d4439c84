#include "ctlink/halfspace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ctlink
{

namespace
{

// Tangency and parallelism threshold for floating-point walls; exact walls
// decide these predicates without tolerance.
constexpr double kTangencyTol = 1e-12;

int sgn(const Scalar& s)
{
    return compare(s, Scalar(0), kTangencyTol);
}

Scalar square(const Scalar& s)
{
    return s * s;
}

double safe_acos(double c)
{
    return std::acos(std::clamp(c, -1.0, 1.0));
}

AngleResult angle_from_cos(const Scalar& c)
{
    return AngleResult::angle(safe_acos(c.value()), c.exact());
}

// Inward unit normal and offset: the kept side is n . x >= off.
struct OrientedLine
{
    Scalar nx, ny, off;
};

OrientedLine oriented(const VerticalPlane& p)
{
    if (p.keep == PlaneSide::GreaterEqual)
        return {p.a, p.b, p.c};
    return {-p.a, -p.b, -p.c};
}

AngleResult plane_plane(const VerticalPlane& p1, const VerticalPlane& p2)
{
    OrientedLine l1 = oriented(p1);
    OrientedLine l2 = oriented(p2);
    Scalar cross = l1.nx * l2.ny - l1.ny * l2.nx;
    Scalar dot = l1.nx * l2.nx + l1.ny * l2.ny;
    if (sgn(cross) == 0)
    {
        // n2 = s n1 with s = +-1; same line iff off1 == s off2
        Scalar same = dot * l2.off;
        if (compare(l1.off, same, kTangencyTol) == 0)
            return AngleResult::identical();
        return AngleResult::tangent(IdealPoint::infinity());
    }
    return angle_from_cos(-dot);
}

AngleResult plane_sphere(const VerticalPlane& p, const Hemisphere& h)
{
    OrientedLine l = oriented(p);
    // positive when the center lies on the discarded side
    Scalar s = l.off - (l.nx * h.cx + l.ny * h.cy);
    int c = compare(square(s), square(h.radius), kTangencyTol);
    if (c > 0)
        return AngleResult::disjoint();
    if (c == 0)
    {
        double px = (h.cx + s * l.nx).value();
        double py = (h.cy + s * l.ny).value();
        return AngleResult::tangent({false, px, py});
    }
    Scalar sigma = h.keep == SphereSide::Outside ? Scalar(1) : Scalar(-1);
    return angle_from_cos(-(sigma * s) / h.radius);
}

AngleResult sphere_sphere(const Hemisphere& h1, const Hemisphere& h2)
{
    Scalar dx = h2.cx - h1.cx;
    Scalar dy = h2.cy - h1.cy;
    Scalar d2 = dx * dx + dy * dy;
    if (sgn(d2) == 0)
    {
        if (compare(h1.radius, h2.radius, kTangencyTol) == 0)
            return AngleResult::identical();
        return AngleResult::disjoint();
    }
    double d = std::sqrt(d2.value());
    int outer = compare(d2, square(h1.radius + h2.radius), kTangencyTol);
    int inner = compare(d2, square(h1.radius - h2.radius), kTangencyTol);
    if (outer > 0 || inner < 0)
        return AngleResult::disjoint();
    if (outer == 0 || inner == 0)
    {
        double ux = dx.value() / d;
        double uy = dy.value() / d;
        double r1 = h1.radius.value();
        double r2 = h2.radius.value();
        if (outer == 0 || r1 > r2)
            return AngleResult::tangent({false, h1.cx.value() + r1 * ux, h1.cy.value() + r1 * uy});
        return AngleResult::tangent({false, h2.cx.value() - r2 * ux, h2.cy.value() - r2 * uy});
    }
    Scalar sigma = (h1.keep == h2.keep) ? Scalar(1) : Scalar(-1);
    Scalar num = square(h1.radius) + square(h2.radius) - d2;
    return angle_from_cos(-(sigma * num) / (Scalar(2) * h1.radius * h2.radius));
}

} // namespace

H3Point H3Point::make(double x, double y, double z)
{
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z) || !(z > 0.0))
        throw std::invalid_argument("H3Point requires finite coordinates and z > 0");
    return {x, y, z};
}

double hyperbolic_distance(const H3Point& p, const H3Point& q)
{
    double dx = p.x - q.x;
    double dy = p.y - q.y;
    double dz = p.z - q.z;
    double chord = std::sqrt(dx * dx + dy * dy + dz * dz);
    // cosh d = 1 + chord^2 / (2 zp zq), written to stay accurate for small d
    return 2.0 * std::asinh(chord / (2.0 * std::sqrt(p.z * q.z)));
}

Wall Wall::plane(Scalar a, Scalar b, Scalar c, PlaneSide keep)
{
    if (compare(a * a + b * b, Scalar(1), 1e-12) != 0)
        throw std::invalid_argument("vertical plane normal must have unit length");
    return Wall(VerticalPlane{a, b, c, keep});
}

Wall Wall::hemisphere(Scalar cx, Scalar cy, Scalar radius, SphereSide keep)
{
    if (!(radius.value() > 0.0))
        throw std::invalid_argument("hemisphere radius must be positive");
    return Wall(Hemisphere{cx, cy, radius, keep});
}

bool Wall::contains(const H3Point& p, double tol) const
{
    if (is_plane())
    {
        const auto& pl = as_plane();
        double v = pl.a.value() * p.x + pl.b.value() * p.y - pl.c.value();
        return pl.keep == PlaneSide::GreaterEqual ? v >= -tol : v <= tol;
    }
    const auto& h = as_hemisphere();
    double dx = p.x - h.cx.value();
    double dy = p.y - h.cy.value();
    double r = h.radius.value();
    double v = dx * dx + dy * dy + p.z * p.z - r * r;
    return h.keep == SphereSide::Outside ? v >= -tol : v <= tol;
}

bool Wall::passes_through(const Scalar& x, const Scalar& y) const
{
    if (is_plane())
    {
        const auto& pl = as_plane();
        return compare(pl.a * x + pl.b * y, pl.c, kTangencyTol) == 0;
    }
    const auto& h = as_hemisphere();
    Scalar dx = x - h.cx;
    Scalar dy = y - h.cy;
    return compare(dx * dx + dy * dy, h.radius * h.radius, kTangencyTol) == 0;
}

Wall Wall::transformed(double angle, double scale, double tx, double ty) const
{
    double c = std::cos(angle);
    double s = std::sin(angle);
    if (is_plane())
    {
        const auto& pl = as_plane();
        double a = pl.a.value(), b = pl.b.value();
        double na = c * a - s * b;
        double nb = s * a + c * b;
        double norm = std::hypot(na, nb);
        na /= norm;
        nb /= norm;
        // a point x0 on the line maps to scale * R x0 + t
        double x0 = a * pl.c.value(), y0 = b * pl.c.value();
        double mx = scale * (c * x0 - s * y0) + tx;
        double my = scale * (s * x0 + c * y0) + ty;
        return Wall::plane(na, nb, na * mx + nb * my, pl.keep);
    }
    const auto& h = as_hemisphere();
    double x0 = h.cx.value(), y0 = h.cy.value();
    return Wall::hemisphere(scale * (c * x0 - s * y0) + tx, scale * (s * x0 + c * y0) + ty,
                            scale * h.radius.value(), h.keep);
}

bool IdealPoint::near(const IdealPoint& o, double tol) const
{
    if (at_infinity || o.at_infinity)
        return at_infinity == o.at_infinity;
    return std::abs(x - o.x) <= tol && std::abs(y - o.y) <= tol;
}

AngleResult AngleResult::angle(double theta, std::optional<QSqrt2> exact_cos)
{
    AngleResult r;
    r.kind = Kind::Angle;
    r.theta = theta;
    r.exact_cos = exact_cos;
    return r;
}

AngleResult AngleResult::tangent(IdealPoint p)
{
    AngleResult r;
    r.kind = Kind::TangentIdeal;
    r.point = p;
    return r;
}

AngleResult AngleResult::identical()
{
    AngleResult r;
    r.kind = Kind::Identical;
    return r;
}

const char* to_string(AngleResult::Kind kind)
{
    switch (kind)
    {
    case AngleResult::Kind::Angle:
        return "angle";
    case AngleResult::Kind::TangentIdeal:
        return "tangent_ideal";
    case AngleResult::Kind::Disjoint:
        return "disjoint";
    case AngleResult::Kind::Identical:
        return "identical";
    }
    return "?";
}

AngleResult dihedral_angle(const Wall& w1, const Wall& w2)
{
    if (w1.is_plane() && w2.is_plane())
        return plane_plane(w1.as_plane(), w2.as_plane());
    if (w1.is_plane())
        return plane_sphere(w1.as_plane(), w2.as_hemisphere());
    if (w2.is_plane())
        return plane_sphere(w2.as_plane(), w1.as_hemisphere());
    return sphere_sphere(w1.as_hemisphere(), w2.as_hemisphere());
}

const AngleResult& AngleTable::at(int i, int j) const
{
    auto it = entries.find({std::min(i, j), std::max(i, j)});
    if (it == entries.end())
        throw std::out_of_range("angle table has no entry for wall pair");
    return it->second;
}

void AngleTable::set(int i, int j, AngleResult r)
{
    if (i == j)
        throw std::invalid_argument("angle table pairs must be distinct walls");
    entries[{std::min(i, j), std::max(i, j)}] = r;
}

void PolyhedronSpec::validate() const
{
    if (walls.size() < 4)
        throw std::invalid_argument("polyhedron needs at least 4 walls");
    if (!labels.empty() && labels.size() != walls.size())
        throw std::invalid_argument("polyhedron labels must match walls");
    for (std::size_t i = 0; i < walls.size(); ++i)
        if (!walls[i].contains(witness))
            throw std::invalid_argument("interior witness violates wall " + std::to_string(i));
}

PolyhedronSpec build_tangle_polyhedron()
{
    const QSqrt2 r2 = QSqrt2::sqrt2();
    const QSqrt2 half(Rational(1, 2));
    const QSqrt2 x_max = QSqrt2(3) + QSqrt2(3) * r2 * half; // 3 + 3 sqrt2/2
    const QSqrt2 y_max = QSqrt2(1) + r2 * half;             // 1 + sqrt2/2
    const QSqrt2 big = QSqrt2(2) + r2;                      // 2 + sqrt2

    PolyhedronSpec spec;
    spec.walls = {
        Wall::plane(1, 0, 0, PlaneSide::GreaterEqual),
        Wall::plane(1, 0, x_max, PlaneSide::LessEqual),
        Wall::plane(0, 1, 0, PlaneSide::GreaterEqual),
        Wall::plane(0, 1, y_max, PlaneSide::LessEqual),
        Wall::hemisphere(0, 1, 1, SphereSide::Outside),
        Wall::hemisphere(big, 0, big, SphereSide::Outside),
    };
    spec.labels = {"x>=0", "x<=3+3sqrt2/2", "y>=0", "y<=1+sqrt2/2", "unit@(0,1)", "(2+sqrt2)@(2+sqrt2,0)"};
    spec.witness = H3Point::make(1.0, 1.2, 3.0);
    return spec;
}

AngleTable tangle_polyhedron_expected_angles()
{
    using std::numbers::pi;
    const QSqrt2 zero(0);
    const QSqrt2 half(Rational(1, 2));
    const QSqrt2 root_half(Rational(0), Rational(1, 2));
    auto right = AngleResult::angle(pi / 2, zero);
    auto third = AngleResult::angle(pi / 3, half);
    auto quarter = AngleResult::angle(pi / 4, root_half);
    auto origin = AngleResult::tangent({false, 0.0, 0.0});
    auto infinity = AngleResult::tangent(IdealPoint::infinity());

    enum { X0, X1, Y0, Y1, S1, S2 };
    AngleTable t;
    t.wall_count = 6;
    t.set(X0, X1, infinity);
    t.set(Y0, Y1, infinity);
    t.set(X0, Y0, right);
    t.set(X0, Y1, right);
    t.set(X1, Y0, right);
    t.set(X1, Y1, right);
    t.set(X0, S1, right);
    t.set(Y0, S2, right);
    t.set(S1, S2, right);
    t.set(X1, S2, third);
    t.set(Y1, S2, third);
    t.set(Y1, S1, quarter);
    t.set(X0, S2, origin);
    t.set(Y0, S1, origin);
    t.set(X1, S1, AngleResult::disjoint());
    return t;
}

AngleTable compute_angle_table(const PolyhedronSpec& spec)
{
    AngleTable t;
    t.wall_count = static_cast<int>(spec.walls.size());
    for (int i = 0; i < t.wall_count; ++i)
        for (int j = i + 1; j < t.wall_count; ++j)
            t.set(i, j, dihedral_angle(spec.walls[i], spec.walls[j]));
    return t;
}

std::vector<IdealCluster> ideal_vertex_clusters(const PolyhedronSpec& spec, const AngleTable& table, double tol)
{
    std::vector<IdealCluster> clusters;
    for (const auto& [key, r] : table.entries)
    {
        if (r.kind != AngleResult::Kind::TangentIdeal || r.point.at_infinity)
            continue;
        auto it = std::find_if(clusters.begin(), clusters.end(),
                               [&](const IdealCluster& c) { return c.point.near(r.point, tol); });
        if (it == clusters.end())
        {
            clusters.push_back({r.point, {}});
            it = std::prev(clusters.end());
        }
        it->walls.push_back(key.first);
        it->walls.push_back(key.second);
    }
    std::vector<int> planes;
    for (int i = 0; i < static_cast<int>(spec.walls.size()); ++i)
        if (spec.walls[i].is_plane())
            planes.push_back(i);
    if (planes.size() >= 3)
        clusters.push_back({IdealPoint::infinity(), planes});
    for (auto& c : clusters)
    {
        std::sort(c.walls.begin(), c.walls.end());
        c.walls.erase(std::unique(c.walls.begin(), c.walls.end()), c.walls.end());
    }
    return clusters;
}

namespace
{

bool results_match(const AngleResult& expected, const AngleResult& computed, double tol)
{
    if (expected.kind != computed.kind)
        return false;
    switch (expected.kind)
    {
    case AngleResult::Kind::Angle:
        if (expected.exact_cos && computed.exact_cos && *expected.exact_cos != *computed.exact_cos)
            return false;
        return std::abs(expected.theta - computed.theta) <= tol;
    case AngleResult::Kind::TangentIdeal:
        return expected.point.near(computed.point, tol);
    default:
        return true;
    }
}

} // namespace

int VerificationReport::count_angle(int denominator, double tol) const
{
    const double target = std::numbers::pi / denominator;
    return static_cast<int>(std::count_if(pairs.begin(), pairs.end(), [&](const PairCheck& p) {
        return p.computed.kind == AngleResult::Kind::Angle && std::abs(p.computed.theta - target) <= tol;
    }));
}

VerificationReport verify_polyhedron(const PolyhedronSpec& spec, const AngleTable& expected, double tol)
{
    if (!(tol >= 0.0))
        throw std::invalid_argument("tolerance must be non-negative");
    spec.validate();
    VerificationReport report;
    report.tolerance = tol;
    AngleTable computed = compute_angle_table(spec);
    if (expected.wall_count != computed.wall_count)
        report.failures.push_back("expected table covers " + std::to_string(expected.wall_count) + " walls, spec has " +
                                  std::to_string(computed.wall_count));
    for (const auto& [key, r] : computed.entries)
    {
        VerificationReport::PairCheck check{key.first, key.second, {}, r, false};
        auto it = expected.entries.find(key);
        if (it == expected.entries.end())
        {
            report.failures.push_back("no expectation for pair (" + std::to_string(key.first) + "," +
                                      std::to_string(key.second) + ")");
        }
        else
        {
            check.expected = it->second;
            check.match = results_match(it->second, r, tol);
            if (!check.match)
                report.failures.push_back("pair (" + std::to_string(key.first) + "," + std::to_string(key.second) +
                                          "): expected " + to_string(it->second.kind) + ", computed " +
                                          to_string(r.kind));
        }
        report.pairs.push_back(check);
    }
    report.clusters = ideal_vertex_clusters(spec, computed, std::max(tol, 1e-9));
    report.passed = report.failures.empty();
    return report;
}

} // namespace ctlink
