#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "ctlink/dual_graph.hpp"
#include "ctlink/paving.hpp"
#include "ctlink/triangulation.hpp"
#include "oracles.hpp"

using namespace ctlink;
using namespace ctlink::testing;
using Torus = TorusFixture;

TEST_CASE("dual graph structure")
{
    Torus t(2);
    const auto& g = t.graph;
    CHECK(g.tet_count() == t.geo.triangulation.size());
    CHECK(g.vertex_count() == t.skel.vertex_count + t.skel.edge_count + t.skel.face_count + g.tet_count());
    CHECK(g.edge_total() == 14 * g.tet_count());
    // Bipartite degrees: faces 2, edges by degree, vertices by the number of corners.
    for (int f = 0; f < t.skel.face_count; ++f)
    {
        int deg = 0;
        g.for_each_edge(g.face_vertex(f), [&](int w, int) {
            CHECK(g.is_barycenter(w));
            ++deg;
        });
        CHECK(deg == 2);
    }
    for (int e = 0; e < t.skel.edge_count; ++e)
    {
        int deg = 0;
        g.for_each_edge(g.edge_vertex(e), [&](int, int) { ++deg; });
        CHECK(deg == t.skel.edge_degree[e]);
    }
    CHECK(g.kind(0) == HatTau::Kind::Tetrahedron);
    CHECK(g.kind(g.vertex_vertex(0)) == HatTau::Kind::Vertex);
    CHECK_THROWS_AS(g.kind(g.vertex_count()), std::out_of_range);
    auto d = bfs_distances(g, 0);
    CHECK(std::all_of(d.begin(), d.end(), [](int x) { return x >= 0; }));
}

TEST_CASE("homology rank and triviality of small loops")
{
    Torus t(3);
    CHECK(t.ann.rank == 3);
    const auto& g = t.graph;
    const auto& tri = t.geo.triangulation;
    // t -> face -> t' -> shared edge -> t bounds a disk.
    int checked = 0;
    for (int a = 0; a < tri.size(); a += 7)
        for (int f = 0; f < 4; ++f)
        {
            const auto& gl = tri.gluing(a, f);
            int b = gl.tet;
            for (int le = 0; le < 6; ++le)
            {
                auto [i, j] = kTetEdges[le];
                if (i == f || j == f)
                    continue;
                int le_b = tet_edge_index(gl.perm[i], gl.perm[j]);
                std::vector<int> loop{14 * a + f, 14 * b + gl.face, 14 * b + 4 + le_b, 14 * a + 4 + le};
                CHECK(walk_class(t.ann, loop) == 0);
                ++checked;
            }
        }
    CHECK(checked > 0);
}

TEST_CASE("annotations agree with the geometric oracle on random loops")
{
    Torus t(3);
    auto other = homology_annotations(t.geo.triangulation, t.skel, t.graph, 1);
    CHECK(other.rank == t.ann.rank);
    std::mt19937 rng(17);
    int nontrivial = 0;
    for (int n = 0; n < 300; ++n)
    {
        int start = static_cast<int>(rng() % t.graph.tet_count());
        auto loop = random_loop(t.graph, start, 2 + static_cast<int>(rng() % 60), rng);
        bool oracle = t.oracle_nontrivial(start, loop);
        CHECK((walk_class(t.ann, loop) != 0) == oracle);
        CHECK((walk_class(other, loop) != 0) == oracle);
        nontrivial += oracle;
    }
    CHECK(nontrivial > 20);
}

TEST_CASE("systole at k = 2 matches exhaustive enumeration")
{
    Torus t(2);
    auto r = homological_systole(t.graph, t.ann);
    REQUIRE(r.length);
    CHECK(*r.length == brute_force_systole(t, 6));
    CHECK(*r.length == 4);
    CHECK_FALSE(r.lower_bound_only);
}

TEST_CASE("systole grows linearly on the torus")
{
    int previous = 0;
    for (int k = 1; k <= 4; ++k)
    {
        Torus t(k);
        auto r = homological_systole(t.graph, t.ann);
        REQUIRE(r.length);
        CHECK(*r.length == 2 * k);
        CHECK(*r.length > previous);
        previous = *r.length;
        CHECK(r.semantics == SystoleResult::Semantics::Homological);
        CHECK(static_cast<int>(r.witness.size()) == *r.length);
        CHECK(static_cast<int>(r.witness_edges.size()) == *r.length);
        CHECK(r.witness_class == walk_class(t.ann, r.witness_edges));
        CHECK(r.witness_class != 0);
        REQUIRE(t.graph.is_barycenter(r.witness.front()));
        CHECK(t.oracle_nontrivial(r.witness.front(), r.witness_edges));
        // The witness is a closed walk through consecutive adjacent vertices.
        for (std::size_t i = 0; i < r.witness.size(); ++i)
        {
            int e = r.witness_edges[i];
            int u = r.witness[i], w = r.witness[(i + 1) % r.witness.size()];
            bool ok = (t.graph.edge_tet(e) == u && t.graph.edge_other(e) == w) ||
                      (t.graph.edge_tet(e) == w && t.graph.edge_other(e) == u);
            CHECK(ok);
        }
    }
}

TEST_CASE("systole options")
{
    Torus t(3);
    SystoleParams p;
    p.assert_abelian_pi1 = true;
    auto exact = homological_systole(t.graph, t.ann, p);
    CHECK(exact.semantics == SystoleResult::Semantics::ExactForAbelianPi1);
    CHECK(std::string(to_string(exact.semantics)) == "exactForAbelianPi1");

    p = {};
    p.sources = {0, 5, 11};
    auto restricted = homological_systole(t.graph, t.ann, p);
    REQUIRE(restricted.length);
    CHECK(*restricted.length == 6);

    p = {};
    p.cap = 50;
    auto capped = homological_systole(t.graph, t.ann, p);
    CHECK(capped.lower_bound_only);
    REQUIRE(capped.length);
    CHECK(*capped.length <= 6);
}

TEST_CASE("the 3-sphere has no essential loop")
{
    auto t = boundary_of_4_simplex();
    auto s = compute_skeleton(t);
    auto g = build_dual_graph(t, s);
    auto a = homology_annotations(t, s, g);
    CHECK(a.rank == 0);
    auto r = homological_systole(g, a);
    CHECK_FALSE(r.length);
}

TEST_CASE("separated tetrahedra")
{
    Torus small(3);
    auto r = homological_systole(small.graph, small.ann);
    CHECK(separated_tetrahedra(small.graph, r.witness, *r.length).empty());
    CHECK_THROWS_AS(separated_tetrahedra(small.graph, {0, 1, 2}, 16), std::invalid_argument);
    CHECK_THROWS_AS(separated_tetrahedra(small.graph, r.witness, -1), std::invalid_argument);

    for (int k : {8, 16})
    {
        Torus t(k);
        SystoleParams p;
        for (int i = 0; i < 24; ++i)
            p.sources.push_back(i);
        auto sys = homological_systole(t.graph, t.ann, p);
        REQUIRE(sys.length);
        CHECK(*sys.length == 2 * k);
        auto sep = separated_tetrahedra(t.graph, sys.witness, *sys.length);
        REQUIRE(static_cast<int>(sep.size()) == *sys.length / 16);
        std::set<int> on_cycle(sys.witness.begin(), sys.witness.end());
        for (std::size_t i = 0; i < sep.size(); ++i)
        {
            CHECK(t.graph.is_barycenter(sep[i]));
            CHECK(on_cycle.count(sep[i]) == 1);
            auto d = bfs_distances(t.graph, sep[i]);
            for (std::size_t j = i + 1; j < sep.size(); ++j)
            {
                CHECK(d[sep[j]] >= 8);
                CHECK(d[sep[j]] >= 8 * static_cast<int>(j - i));
            }
        }
    }
}
