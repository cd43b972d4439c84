#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ctlink/dual_graph.hpp"
#include "ctlink/exact.hpp"
#include "ctlink/triangulation.hpp"

namespace ctlink
{

/// The tangle in a regular tetrahedron with unit edges: a circle in each face
/// around its barycenter, and an arc around each edge midpoint in the plane
/// orthogonal to the edge, ending on the two faces that contain the edge.
struct TangleSpec
{
    struct FaceCircle
    {
        int face; // opposite corner
    };
    struct EdgeArc
    {
        std::array<int, 2> corners;
        std::array<int, 2> end_faces; // faces holding the two endpoints
    };

    Rational circle_radius{1, 4};
    Rational arc_radius{1, 8};
    std::vector<FaceCircle> circles;
    std::vector<EdgeArc> arcs;

    // Distance from an arc endpoint to the barycenter of its face is
    // sqrt(1/12) - arc_radius; it must be positive and below circle_radius.
    bool endpoints_inside_circles() const;

    TangleSpec relabeled(const Perm4& p) const;
    bool same_records(const TangleSpec& o) const;
};

TangleSpec build_tangle_spec();

/// One face of the tangle: the triangle, its circle and the three arc endpoints.
std::string tangle_face_svg(const TangleSpec& spec, int size = 240);

struct LinkComponent
{
    enum class Kind
    {
        Face,
        Edge
    };
    Kind kind = Kind::Face;
    int simplex = -1;
    std::vector<std::pair<int, int>> arcs; // (tet, local edge) in cyclic order, Edge components only
};

struct LinkData
{
    int face_components = 0;
    int edge_components = 0;
    std::vector<LinkComponent> components; // faces first, then edges

    int face_component(int face) const { return face; }
    int edge_component(int edge) const { return face_components + edge; }
    long total_arcs() const;
};

/// Throws NonManifoldError when the arcs around an edge do not close up.
LinkData build_link(const Triangulation& t, const Skeleton& s);

struct SurfaceDescriptor
{
    enum class Kind
    {
        F,
        E,
        T
    };
    Kind kind = Kind::F;
    int index = -1; // face, edge or tetrahedron
    int puncture_count = 0;
    std::vector<int> cusp_set;       // link component indices, sorted
    std::vector<int> boundary_edges; // edge classes of the underlying simplex, sorted
};

const char* to_string(SurfaceDescriptor::Kind k);

SurfaceDescriptor face_surface(const Skeleton& s, const LinkData& l, int face);
SurfaceDescriptor edge_surface(const Triangulation& t, const Skeleton& s, const LinkData& l, int edge);
SurfaceDescriptor tet_surface(const Skeleton& s, const LinkData& l, int tet);

/// One descriptor per face, edge and tetrahedron, in that order.
std::vector<SurfaceDescriptor> surface_family(const Triangulation& t, const Skeleton& s, const LinkData& l);

/// Pairs meeting in a single arc: {E, F} with E in F and {E, T} with E in T.
/// All other pairs are disjoint.
struct IntersectionPattern
{
    std::vector<std::pair<int, int>> single_arc; // indices into the descriptor list, i < j, sorted

    bool meets(int i, int j) const;
};

IntersectionPattern intersection_pattern(const std::vector<SurfaceDescriptor>& surfaces);

/// Faces of tet, edges meeting a vertex of tet, and tetrahedra within dual
/// distance 2 of tet.
std::vector<SurfaceDescriptor> barrier_family(const Triangulation& t, const Skeleton& s, const HatTau& g,
                                              const LinkData& l, int tet);

class CertificateError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct BarrierCertificate
{
    int sys_len = 0;
    int n = 0;
    std::vector<int> tetrahedra;
    std::vector<SurfaceDescriptor> surfaces;
    bool pairwise_cusp_disjoint = true;
    std::vector<int> source_loop;
    std::string conclusion;
};

/// Separated barycenters on the loop, one face surface from each barrier
/// family, with pairwise disjoint cusp sets checked.
BarrierCertificate barrier_certificate(const Triangulation& t, const Skeleton& s, const HatTau& g,
                                       const HomologyAnnotation& a, const LinkData& l,
                                       const std::vector<int>& loop_vertices, const std::vector<int>& loop_edges,
                                       int sys_len);

/// Piecewise-hyperbolic volume of the link complement: 24 copies of the
/// polyhedron per tetrahedron. Not the volume of the complete hyperbolic structure.
double complement_volume(const Triangulation& t, double vol_p);

} // namespace ctlink
