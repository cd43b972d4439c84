#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ctlink
{

/// perm[i] is the corner of the neighbouring tetrahedron that corner i is glued to.
using Perm4 = std::array<int, 4>;

int perm_sign(const Perm4& p);
Perm4 perm_inverse(const Perm4& p);

struct TetGluing
{
    int tet = -1;
    int face = -1;
    Perm4 perm{0, 1, 2, 3};

    bool glued() const { return tet >= 0; }
};

/// Local edges of a tetrahedron, indexed 0..5.
inline constexpr std::array<std::array<int, 2>, 6> kTetEdges{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
int tet_edge_index(int i, int j);

class Triangulation
{
  public:
    Triangulation() = default;
    explicit Triangulation(int tetrahedra) : gluings_(tetrahedra) {}

    int size() const { return static_cast<int>(gluings_.size()); }
    int add_tetrahedron();

    // Glues face faceA of tetA to face faceB of tetB; perm must send faceA to
    // faceB. The reverse gluing is recorded with the inverse permutation.
    void glue(int tetA, int faceA, int tetB, int faceB, const Perm4& perm);

    const TetGluing& gluing(int tet, int face) const { return gluings_.at(tet).at(face); }
    bool is_closed() const;

  private:
    std::vector<std::array<TetGluing, 4>> gluings_;
};

class NonManifoldError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Vertex, edge and face classes of a closed triangulation.
struct Skeleton
{
    int vertex_count = 0;
    int edge_count = 0;
    int face_count = 0;

    std::vector<std::array<int, 4>> tet_vertex; // class of corner i
    std::vector<std::array<int, 6>> tet_edge;   // class of local edge (kTetEdges order)
    std::vector<std::array<int, 4>> tet_face;   // class of the face opposite corner i

    // Local corner of the tetrahedron that carries endpoint 0 of the edge class,
    // or corner 0 of the face class (corners of the canonical instance in
    // increasing order).
    std::vector<std::array<int, 6>> edge_first_corner;
    std::vector<std::array<int, 4>> face_first_corner;

    std::vector<std::pair<int, int>> vertex_rep; // (tet, corner)
    std::vector<std::pair<int, int>> edge_rep;   // (tet, local edge)
    std::vector<std::pair<int, int>> face_rep;   // (tet, face)

    std::vector<std::array<int, 2>> edge_vertices; // canonical endpoint order
    std::vector<std::array<int, 3>> face_vertices;
    std::vector<std::array<int, 3>> face_edges;
    std::vector<int> edge_degree;

    bool orientable = false;
};

/// Throws NonManifoldError when an edge is glued to itself reversed, or
/// std::invalid_argument when a face slot is unglued.
Skeleton compute_skeleton(const Triangulation& t);

/// Cyclic sequence of (tet, local edge) around an edge class.
std::vector<std::pair<int, int>> edge_cycle(const Triangulation& t, const Skeleton& s, int edge);

/// Side s of a triangle is opposite position s. `first` is the position in
/// the neighbouring triangle matched with position (s + 1) % 3.
struct SideLink
{
    int tri = -1;
    int side = -1;
    int first = -1;
};

/// 2-complex on the link of a vertex class.
struct VertexLinkSurface
{
    int vertex_count = 0;
    std::vector<std::array<int, 3>> triangles;
    std::vector<std::array<SideLink, 3>> adjacency;
    std::vector<std::pair<int, int>> corners; // (tet, corner) producing each triangle, if any
    int edge_count = 0;
    int euler_characteristic = 0;
    bool connected = false;
    bool is_surface = false; // every vertex star is a single disk
    bool simplicial = false; // no repeated vertex in a triangle, no repeated edge or triangle

    bool is_sphere() const { return is_surface && connected && euler_characteristic == 2; }
};

/// Builds a link surface from a triangle list (vertices 0..n-1), computing
/// edges, Euler characteristic and the surface and simpliciality flags.
VertexLinkSurface make_link_surface(int vertex_count, std::vector<std::array<int, 3>> triangles);

VertexLinkSurface vertex_link(const Triangulation& t, const Skeleton& s, int vertex);

/// Every 3-clique of the 1-skeleton spans a triangle. Non-simplicial input is
/// rejected (returns false).
bool is_flag(const VertexLinkSurface& s);

/// Doubles a triangulated disk along its boundary.
VertexLinkSurface double_disk(int vertex_count, const std::vector<std::array<int, 3>>& disk);

/// Canonical code of an oriented simplicial surface up to isomorphism
/// (either orientation). Empty for non-surfaces.
std::vector<int> canonical_form(const VertexLinkSurface& s);

struct LinkCatalogEntry
{
    std::string name;
    VertexLinkSurface surface;
    std::vector<int> code;
};

/// Isomorphism types of vertex links in triangulated valid pavings: the face
/// centre, the cube centre, and the barycentric subdivisions of every sphere
/// triangulation with vertex degrees in {3,4,5} having 0 or 2 vertices of
/// degree 3 and 0 or 2 of degree 5.
const std::vector<LinkCatalogEntry>& link_catalog();

/// Index into link_catalog(), if the surface is isomorphic to an entry.
std::optional<int> catalog_index(const VertexLinkSurface& s);

struct HonestyReport
{
    bool honest = false;
    std::vector<std::string> failures;
};

HonestyReport check_honesty(const Triangulation& t, const Skeleton& s, std::size_t max_witnesses = 20);

struct CTReport
{
    bool honest = false;
    bool links_are_flag_spheres = false;
    std::map<int, long> edge_degree_multiset; // degree -> number of edge classes
    bool degrees_in_allowed_set = false;
    std::optional<std::vector<int>> catalog_match; // per vertex class, -1 when unmatched
    std::vector<std::string> failures;

    bool valid() const { return honest && links_are_flag_spheres && degrees_in_allowed_set; }
};

CTReport validate_cooper_thurston(const Triangulation& t, bool match_catalog = true);

/// Standard triangulation of S^3 as the boundary of the 4-simplex.
Triangulation boundary_of_4_simplex();

} // namespace ctlink
