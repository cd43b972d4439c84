#pragma once

// Independent oracles shared by the unit tests and the acceptance run.

#include <algorithm>
#include <array>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include "ctlink/dual_graph.hpp"
#include "ctlink/paving.hpp"
#include "ctlink/triangulation.hpp"

namespace ctlink::testing
{

struct TorusFixture
{
    int k;
    GeometricTriangulation geo;
    Skeleton skel;
    HatTau graph;
    HomologyAnnotation ann;

    explicit TorusFixture(int k_)
        : k(k_), geo(triangulate(torus_paving(k_))), skel(compute_skeleton(geo.triangulation)),
          graph(build_dual_graph(geo.triangulation, skel)), ann(homology_annotations(geo.triangulation, skel, graph))
    {
    }

    // Euclidean step from a tetrahedron barycenter to the barycenter of the
    // simplex behind dual edge e, in the tetrahedron's own cube chart.
    std::array<Rational, 3> step(int e) const
    {
        const auto& c = geo.coordinates[e / 14];
        int slot = e % 14;
        std::vector<int> corners;
        if (slot < 4)
        {
            for (int i = 0; i < 4; ++i)
                if (i != slot)
                    corners.push_back(i);
        }
        else if (slot < 10)
            corners = {kTetEdges[slot - 4][0], kTetEdges[slot - 4][1]};
        else
            corners = {slot - 10};
        std::array<Rational, 3> sub{}, bary{};
        for (int i : corners)
        {
            sub[0] += c[i].x / Rational(static_cast<std::int64_t>(corners.size()));
            sub[1] += c[i].y / Rational(static_cast<std::int64_t>(corners.size()));
            sub[2] += c[i].z / Rational(static_cast<std::int64_t>(corners.size()));
        }
        for (int i = 0; i < 4; ++i)
        {
            bary[0] += c[i].x / Rational(4);
            bary[1] += c[i].y / Rational(4);
            bary[2] += c[i].z / Rational(4);
        }
        return {sub[0] - bary[0], sub[1] - bary[1], sub[2] - bary[2]};
    }

    // A closed walk starting at a barycenter is nontrivial in H_1(T^3; Z/2)
    // iff its unrolled displacement, in periods of k cubes, has an odd entry.
    bool oracle_nontrivial(int start, const std::vector<int>& edges) const
    {
        std::array<Rational, 3> total{};
        int v = start;
        for (int e : edges)
        {
            auto d = step(e);
            bool leaving = graph.is_barycenter(v);
            for (int i = 0; i < 3; ++i)
                total[i] += leaving ? d[i] : -d[i];
            v = leaving ? graph.edge_other(e) : graph.edge_tet(e);
        }
        if (v != start)
            throw std::logic_error("walk is not closed");
        bool odd = false;
        for (const auto& x : total)
        {
            Rational periods = x / Rational(k);
            if (periods.den() != 1)
                throw std::logic_error("closed walk with non-lattice displacement");
            odd |= periods.num() % 2 != 0;
        }
        return odd;
    }
};

// Random closed walk from a barycenter: a random walk out, then the BFS
// tree path back.
inline std::vector<int> random_loop(const HatTau& g, int start, int steps, std::mt19937& rng)
{
    std::vector<int> edges;
    int v = start;
    for (int s = 0; s < steps; ++s)
    {
        std::vector<std::pair<int, int>> nb;
        g.for_each_edge(v, [&](int w, int e) { nb.emplace_back(w, e); });
        auto [w, e] = nb[rng() % nb.size()];
        edges.push_back(e);
        v = w;
    }
    auto dist = bfs_distances(g, start);
    while (v != start)
    {
        int next = -1, via = -1;
        g.for_each_edge(v, [&](int w, int e) {
            if (next < 0 && dist[w] == dist[v] - 1)
            {
                next = w;
                via = e;
            }
        });
        edges.push_back(via);
        v = next;
    }
    return edges;
}

// Exhaustive search: the least even length L such that some closed walk of
// length L from some barycenter is nontrivial, for L <= max_len.
inline int brute_force_systole(const TorusFixture& t, int max_len)
{
    const auto& g = t.graph;
    for (int len = 2; len <= max_len; len += 2)
        for (int s = 0; s < g.tet_count(); ++s)
        {
            std::vector<int> edges;
            bool found = false;
            std::function<void(int)> rec = [&](int v) {
                if (found)
                    return;
                if (static_cast<int>(edges.size()) == len - 1)
                {
                    g.for_each_edge(s, [&](int w, int e) {
                        if (w != v || found)
                            return;
                        edges.push_back(e);
                        found = t.oracle_nontrivial(s, edges);
                        edges.pop_back();
                    });
                    return;
                }
                g.for_each_edge(v, [&](int w, int e) {
                    edges.push_back(e);
                    rec(w);
                    edges.pop_back();
                });
            };
            rec(s);
            if (found)
                return len;
        }
    return -1;
}

} // namespace ctlink::testing
