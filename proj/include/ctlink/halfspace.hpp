#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ctlink/exact.hpp"

namespace ctlink
{

/// Point (x, y, z) of the upper half-space model, z > 0.
struct H3Point
{
    double x = 0.0;
    double y = 0.0;
    double z = 1.0;

    // Throws std::invalid_argument unless z > 0 and all coordinates are finite.
    static H3Point make(double x, double y, double z);
};

/// Distance in the metric (dx^2 + dy^2 + dz^2) / z^2.
double hyperbolic_distance(const H3Point& p, const H3Point& q);

enum class PlaneSide
{
    GreaterEqual, // keep a x + b y >= c
    LessEqual     // keep a x + b y <= c
};

enum class SphereSide
{
    Outside,
    Inside
};

/// Vertical plane {a x + b y = c} with unit normal (a, b).
struct VerticalPlane
{
    Scalar a, b, c;
    PlaneSide keep = PlaneSide::GreaterEqual;
};

/// Hemisphere orthogonal to the boundary, centered at (cx, cy, 0).
struct Hemisphere
{
    Scalar cx, cy, radius;
    SphereSide keep = SphereSide::Outside;
};

/// Bounding wall of a hyperbolic half-space.
class Wall
{
  public:
    static Wall plane(Scalar a, Scalar b, Scalar c, PlaneSide keep);
    static Wall hemisphere(Scalar cx, Scalar cy, Scalar radius, SphereSide keep);

    bool is_plane() const { return std::holds_alternative<VerticalPlane>(shape_); }
    const VerticalPlane& as_plane() const { return std::get<VerticalPlane>(shape_); }
    const Hemisphere& as_hemisphere() const { return std::get<Hemisphere>(shape_); }

    // Whether p lies in the kept closed half-space.
    bool contains(const H3Point& p, double tol = 0.0) const;
    // Whether the boundary circle or line at infinity passes through (x, y).
    bool passes_through(const Scalar& x, const Scalar& y) const;

    // Image under z -> scale * rot(angle) z + (tx, ty), extended to H^3.
    Wall transformed(double angle, double scale, double tx, double ty) const;

  private:
    explicit Wall(std::variant<VerticalPlane, Hemisphere> s) : shape_(std::move(s)) {}
    std::variant<VerticalPlane, Hemisphere> shape_;
};

/// Point on the sphere at infinity: a boundary point (x, y) or infinity.
struct IdealPoint
{
    bool at_infinity = false;
    double x = 0.0;
    double y = 0.0;

    static IdealPoint infinity() { return {true, 0.0, 0.0}; }
    bool near(const IdealPoint& o, double tol) const;
};

struct AngleResult
{
    enum class Kind
    {
        Angle,
        TangentIdeal,
        Disjoint,
        Identical
    };

    Kind kind = Kind::Disjoint;
    double theta = 0.0;                 // interior angle in (0, pi) when kind == Angle
    std::optional<QSqrt2> exact_cos;    // cos(theta) when all inputs were exact
    IdealPoint point;                   // tangency point when kind == TangentIdeal

    static AngleResult angle(double theta, std::optional<QSqrt2> exact_cos = std::nullopt);
    static AngleResult tangent(IdealPoint p);
    static AngleResult disjoint() { return {}; }
    static AngleResult identical();
};

const char* to_string(AngleResult::Kind kind);

/// Interior dihedral angle between the kept half-spaces of two walls.
AngleResult dihedral_angle(const Wall& w1, const Wall& w2);

/// Angle data for every unordered wall pair (i < j).
struct AngleTable
{
    int wall_count = 0;
    std::map<std::pair<int, int>, AngleResult> entries;

    const AngleResult& at(int i, int j) const;
    void set(int i, int j, AngleResult r);
};

struct PolyhedronSpec
{
    std::vector<Wall> walls;
    std::vector<std::string> labels;
    H3Point witness;

    // Throws std::invalid_argument when fewer than 4 walls are given or the
    // witness misses one of the half-spaces.
    void validate() const;
};

/// The six-wall partially ideal polyhedron with walls
///   x >= 0, x <= 3 + 3 sqrt2/2, y >= 0, y <= 1 + sqrt2/2,
///   outside |(x, y) - (0, 1)| = 1, outside |(x, y) - (2 + sqrt2, 0)| = 2 + sqrt2,
/// all coefficients exact in Q(sqrt 2).
PolyhedronSpec build_tangle_polyhedron();

/// The angle pattern the tangle polyhedron is expected to realize.
AngleTable tangle_polyhedron_expected_angles();

AngleTable compute_angle_table(const PolyhedronSpec& spec);

struct IdealCluster
{
    IdealPoint point;
    std::vector<int> walls;
};

/// Walls grouped by common tangency point; infinity forms a cluster when at
/// least three vertical planes are present.
std::vector<IdealCluster> ideal_vertex_clusters(const PolyhedronSpec& spec, const AngleTable& table,
                                                double tol = 1e-9);

struct VerificationReport
{
    struct PairCheck
    {
        int i = 0;
        int j = 0;
        AngleResult expected;
        AngleResult computed;
        bool match = false;
    };

    bool passed = false;
    double tolerance = 0.0;
    std::vector<PairCheck> pairs;
    std::vector<IdealCluster> clusters;
    std::vector<std::string> failures;

    // Number of computed pairs with kind Angle and theta within tol of pi/denominator.
    int count_angle(int denominator, double tol = 1e-9) const;
};

VerificationReport verify_polyhedron(const PolyhedronSpec& spec, const AngleTable& expected, double tol);

} // namespace ctlink
