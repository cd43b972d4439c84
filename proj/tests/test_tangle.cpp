#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "ctlink/dual_graph.hpp"
#include "ctlink/paving.hpp"
#include "ctlink/tangle.hpp"

using namespace ctlink;

namespace
{

struct Complex
{
    Triangulation tri;
    Skeleton skel;
    LinkData link;

    explicit Complex(Triangulation t) : tri(std::move(t)), skel(compute_skeleton(tri)), link(build_link(tri, skel)) {}
};

std::vector<Triangulation> test_complexes()
{
    Paving flat(1);
    flat.glue(0, 0, 0, 1, 3);
    flat.glue(0, 2, 0, 3, 0);
    flat.glue(0, 4, 0, 5, 0);
    return {boundary_of_4_simplex(), triangulate(torus_paving(1)).triangulation,
            triangulate(torus_paving(2)).triangulation, triangulate(subdivide(flat, 2)).triangulation};
}

} // namespace

TEST_CASE("tangle in one tetrahedron")
{
    auto spec = build_tangle_spec();
    CHECK(spec.circles.size() == 4);
    CHECK(spec.arcs.size() == 6);
    CHECK(spec.circle_radius == Rational(1, 4));
    CHECK(spec.arc_radius == Rational(1, 8));
    CHECK(spec.endpoints_inside_circles());
    std::set<std::pair<int, int>> edges;
    for (const auto& a : spec.arcs)
    {
        edges.insert({std::min(a.corners[0], a.corners[1]), std::max(a.corners[0], a.corners[1])});
        // The endpoints sit on the two faces containing the edge, i.e. the
        // faces opposite the two other corners.
        for (int f : a.end_faces)
        {
            CHECK(f != a.corners[0]);
            CHECK(f != a.corners[1]);
        }
        CHECK(a.end_faces[0] != a.end_faces[1]);
    }
    CHECK(edges.size() == 6);

    TangleSpec big = spec;
    big.arc_radius = Rational(1, 2);
    CHECK_FALSE(big.endpoints_inside_circles());
}

TEST_CASE("tangle records are invariant under the symmetric group")
{
    auto spec = build_tangle_spec();
    Perm4 p{0, 1, 2, 3};
    int count = 0;
    do
    {
        CHECK(spec.relabeled(p).same_records(spec));
        ++count;
    } while (std::next_permutation(p.begin(), p.end()));
    CHECK(count == 24);
}

TEST_CASE("tangle face picture")
{
    auto svg = tangle_face_svg(build_tangle_spec());
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("<polygon") != std::string::npos);
    std::size_t circles = 0;
    for (std::size_t pos = svg.find("<circle"); pos != std::string::npos; pos = svg.find("<circle", pos + 1))
        ++circles;
    CHECK(circles == 4); // the face circle and three endpoint dots
}

TEST_CASE("link components and arcs")
{
    for (const auto& t : test_complexes())
    {
        Complex c(t);
        const auto& l = c.link;
        CHECK(static_cast<int>(l.components.size()) == c.skel.face_count + c.skel.edge_count);
        CHECK(l.face_components == c.skel.face_count);
        CHECK(l.edge_components == c.skel.edge_count);
        CHECK(l.total_arcs() == 6L * c.tri.size());
        for (int f = 0; f < c.skel.face_count; ++f)
        {
            CHECK(l.components[l.face_component(f)].kind == LinkComponent::Kind::Face);
            CHECK(l.components[l.face_component(f)].simplex == f);
        }
        for (int e = 0; e < c.skel.edge_count; ++e)
        {
            const auto& comp = l.components[l.edge_component(e)];
            CHECK(comp.kind == LinkComponent::Kind::Edge);
            CHECK(comp.simplex == e);
            CHECK(static_cast<int>(comp.arcs.size()) == c.skel.edge_degree[e]);
            for (auto [tet, le] : comp.arcs)
                CHECK(c.skel.tet_edge[tet][le] == e);
        }
    }
}

TEST_CASE("puncture table")
{
    int global_max = 0;
    for (const auto& t : test_complexes())
    {
        Complex c(t);
        auto fam = surface_family(c.tri, c.skel, c.link);
        REQUIRE(static_cast<int>(fam.size()) == c.skel.face_count + c.skel.edge_count + c.tri.size());
        for (const auto& s : fam)
        {
            switch (s.kind)
            {
            case SurfaceDescriptor::Kind::F:
                CHECK(s.puncture_count == 4);
                CHECK(s.cusp_set.size() <= 4);
                break;
            case SurfaceDescriptor::Kind::E:
                CHECK(s.puncture_count == c.skel.edge_degree[s.index] + 1);
                break;
            case SurfaceDescriptor::Kind::T:
                CHECK(s.puncture_count == 4);
                break;
            }
            CHECK(std::is_sorted(s.cusp_set.begin(), s.cusp_set.end()));
            global_max = std::max(global_max, s.puncture_count);
        }
    }
    CHECK(global_max <= 11);
    CHECK(std::string(to_string(SurfaceDescriptor::Kind::E)) == "E");
}

TEST_CASE("intersection pattern equals the incidence relation")
{
    for (const auto& t : test_complexes())
    {
        Complex c(t);
        auto fam = surface_family(c.tri, c.skel, c.link);
        auto pat = intersection_pattern(fam);
        const int F = c.skel.face_count, E = c.skel.edge_count;
        std::set<std::pair<int, int>> oracle;
        for (int f = 0; f < F; ++f)
            for (int e : c.skel.face_edges[f])
                oracle.insert({f, F + e});
        for (int k = 0; k < c.tri.size(); ++k)
            for (int e : c.skel.tet_edge[k])
                oracle.insert({F + e, F + E + k});
        std::set<std::pair<int, int>> got(pat.single_arc.begin(), pat.single_arc.end());
        CHECK(got == oracle);
        CHECK(got.size() == pat.single_arc.size());
        for (auto [i, j] : oracle)
        {
            CHECK(pat.meets(i, j));
            CHECK(pat.meets(j, i));
        }
        CHECK_FALSE(pat.meets(0, F + E));
    }
}

TEST_CASE("barrier family of a tetrahedron")
{
    Complex c(triangulate(torus_paving(3)).triangulation);
    auto g = build_dual_graph(c.tri, c.skel);
    const int tet = 40;
    auto fam = barrier_family(c.tri, c.skel, g, c.link, tet);
    std::set<int> faces, edges, tets;
    for (const auto& s : fam)
        (s.kind == SurfaceDescriptor::Kind::F ? faces : s.kind == SurfaceDescriptor::Kind::E ? edges : tets)
            .insert(s.index);
    CHECK(faces == std::set<int>(c.skel.tet_face[tet].begin(), c.skel.tet_face[tet].end()));
    std::set<int> verts(c.skel.tet_vertex[tet].begin(), c.skel.tet_vertex[tet].end());
    for (int e = 0; e < c.skel.edge_count; ++e)
    {
        bool touches = verts.count(c.skel.edge_vertices[e][0]) || verts.count(c.skel.edge_vertices[e][1]);
        CHECK(edges.count(e) == (touches ? 1u : 0u));
    }
    auto d = bfs_distances(g, tet);
    for (int k = 0; k < c.tri.size(); ++k)
        CHECK(tets.count(k) == (d[k] <= 2 ? 1u : 0u));
    CHECK_THROWS_AS(barrier_family(c.tri, c.skel, g, c.link, -1), std::out_of_range);
}

TEST_CASE("barrier certificates")
{
    for (int k : {3, 8, 16})
    {
        Complex c(triangulate(torus_paving(k)).triangulation);
        auto g = build_dual_graph(c.tri, c.skel);
        auto a = homology_annotations(c.tri, c.skel, g);
        SystoleParams p;
        for (int i = 0; i < 24; ++i)
            p.sources.push_back(i);
        auto sys = homological_systole(g, a, p);
        REQUIRE(sys.length);
        auto cert = barrier_certificate(c.tri, c.skel, g, a, c.link, sys.witness, sys.witness_edges, *sys.length);
        CHECK(cert.sys_len == 2 * k);
        CHECK(cert.n == 2 * k / 16);
        CHECK(static_cast<int>(cert.surfaces.size()) == cert.n);
        CHECK(cert.pairwise_cusp_disjoint);
        CHECK(cert.source_loop == sys.witness);
        CHECK(cert.conclusion == "loop length >= " + std::to_string(cert.n) + " * epsilon");
        // Independent disjointness check.
        for (std::size_t i = 0; i < cert.surfaces.size(); ++i)
            for (std::size_t j = i + 1; j < cert.surfaces.size(); ++j)
            {
                std::vector<int> common;
                std::set_intersection(cert.surfaces[i].cusp_set.begin(), cert.surfaces[i].cusp_set.end(),
                                      cert.surfaces[j].cusp_set.begin(), cert.surfaces[j].cusp_set.end(),
                                      std::back_inserter(common));
                CHECK(common.empty());
            }
        if (k == 3)
        {
            // A contractible loop cannot certify anything.
            std::vector<int> back{sys.witness[0], sys.witness[1]};
            std::vector<int> edges{sys.witness_edges[0], sys.witness_edges[0]};
            CHECK_THROWS_AS(barrier_certificate(c.tri, c.skel, g, a, c.link, back, edges, 2), std::invalid_argument);
        }
    }
}

TEST_CASE("complement volume bookkeeping")
{
    auto t = triangulate(torus_paving(2)).triangulation;
    CHECK(complement_volume(t, 1.5) == 24.0 * t.size() * 1.5);
    CHECK(complement_volume(t, 0.0) == 0.0);
    CHECK_THROWS_AS(complement_volume(t, -1.0), std::invalid_argument);
}
