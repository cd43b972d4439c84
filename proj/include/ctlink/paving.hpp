#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctlink/exact.hpp"
#include "ctlink/triangulation.hpp"

namespace ctlink
{

// Cube conventions: vertex id x + 2y + 4z; face 2*axis + side; a face's local
// coordinates (s, t) are the two remaining axes in increasing order.
// Symmetry g = 4*swap + 2*flipS + flipT maps (s, t) of one face to the glued
// face by swapping first, then flipping.
std::array<int, 2> apply_square_symmetry(int g, int s, int t);
int inverse_square_symmetry(int g);
int compose_square_symmetry(int first, int second);

// Cube edges: 4*axis + u + 2v where (u, v) are the coordinates of the two
// other axes in increasing order.
std::array<int, 2> cube_edge_vertices(int edge);
int cube_edge_between(int v0, int v1);

struct FaceGluing
{
    int cube = -1;
    int face = -1;
    int symmetry = 0;

    bool glued() const { return cube >= 0; }
};

class Paving
{
  public:
    Paving() = default;
    explicit Paving(int cubes) : gluings_(cubes) {}

    int size() const { return static_cast<int>(gluings_.size()); }
    int add_cube();

    // Glues (cubeA, faceA) to (cubeB, faceB); the reverse slot receives the
    // inverse symmetry.
    void glue(int cubeA, int faceA, int cubeB, int faceB, int symmetry);

    const FaceGluing& gluing(int cube, int face) const { return gluings_.at(cube).at(face); }
    bool is_closed() const;

    // Cube vertex reached from (cube, vertex) across face, which must contain it.
    int map_vertex(int cube, int face, int vertex) const;

  private:
    std::vector<std::array<FaceGluing, 6>> gluings_;
};

class NonManifoldPaving : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct PavingClasses
{
    int vertex_count = 0;
    int edge_count = 0;
    int face_count = 0;
    std::vector<std::array<int, 8>> cube_vertex;
    std::vector<std::array<int, 12>> cube_edge;
    std::vector<std::array<int, 6>> cube_face;
    std::vector<std::array<int, 2>> edge_vertices;
    std::vector<int> edge_degree;
};

/// Throws std::invalid_argument for an unglued face slot and NonManifoldPaving
/// when an edge is glued to itself reversed or its cubes do not form a single cycle.
PavingClasses paving_classes(const Paving& p);

struct PavingReport
{
    PavingClasses classes;
    std::map<int, int> edge_degrees; // edge class -> degree
    std::vector<int> degree3_edges;
    std::vector<int> degree5_edges;
    bool valid = false;
    std::vector<std::string> reasons;
};

/// Cooper-Thurston conditions: degrees in {3,4,5}; every vertex meets 0 or 2
/// degree-3 edges and 0 or 2 degree-5 edges.
PavingReport validate_paving(const Paving& p);

/// k x k x k cubes with opposite faces identified. Cube (i, j, l) has index i + k j + k^2 l.
Paving torus_paving(int k);

/// Each cube c becomes cubes c k^3 + i + k j + k^2 l.
Paving subdivide(const Paving& p, int k);

/// Square-tiled closed surface given by side gluings of unit squares; sides
/// are 0: x = 0, 1: x = 1, 2: y = 0, 3: y = 1, and `flip` reverses the side
/// parameter. Its product with a circle is paved by one cube per square.
struct SquareSurface
{
    struct SideGluing
    {
        int squareA, sideA, squareB, sideB;
        bool flip;
    };
    int squares = 0;
    std::vector<SideGluing> gluings;
};

Paving circle_product(const SquareSurface& s);

/// Corner geometry in unit-cube coordinates.
struct Point3Q
{
    Rational x, y, z;
    bool operator==(const Point3Q&) const = default;
};

struct TetOrigin
{
    int cube = -1;
    int edge = -1; // cube edge spanned by corners 0, 1
    int face = -1; // cube face whose centre is corner 2
};

/// Each cube yields 24 tetrahedra, one per (edge e, face f) with e in f:
/// corners 0, 1 the endpoints of e (lower vertex id first), 2 the centre of f,
/// 3 the cube centre. Tetrahedron 24 c + 2 e + (second face of e ? 1 : 0).
struct GeometricTriangulation
{
    Triangulation triangulation;
    std::vector<std::array<Point3Q, 4>> coordinates;
    std::vector<TetOrigin> origin;
};

GeometricTriangulation triangulate(const Paving& p);

/// The 24 tetrahedra of a single unglued cube, with coordinates.
std::vector<std::array<Point3Q, 4>> cube_tetrahedra();

Point3Q barycenter(const std::array<Point3Q, 4>& corners);
Rational squared_distance(const Point3Q& a, const Point3Q& b);

struct LengthReport
{
    std::vector<std::array<Rational, 4>> squared_distances; // per tetrahedron of the unit cube
    Rational max_squared;
    double max_distance = 0.0;
    std::vector<Point3Q> attaining_corners;
};

/// Barycenter-to-corner distances over the 24 tetrahedra of a unit cube.
LengthReport euclidean_lengths(const GeometricTriangulation& t);

/// Length of a polygonal path; with scale k the coordinates are first
/// expressed in units of the k-fold subdivided cubes.
double path_length(const std::vector<std::array<double, 3>>& path, int scale = 1);

/// Degree (number of tetrahedra) -> number of edge classes of triangulate(p),
/// from the paving alone.
std::map<int, long> expected_triangulation_degrees(const Paving& p);

} // namespace ctlink
