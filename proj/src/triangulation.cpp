#include "ctlink/triangulation.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <string>

#include "dsu.hpp"

namespace ctlink
{

using detail::Dsu;
using detail::number_classes;

int perm_sign(const Perm4& p)
{
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (p[i] > p[j])
                ++inversions;
    return inversions % 2 ? -1 : 1;
}

Perm4 perm_inverse(const Perm4& p)
{
    Perm4 q{};
    for (int i = 0; i < 4; ++i)
        q[p[i]] = i;
    return q;
}

int tet_edge_index(int i, int j)
{
    if (i > j)
        std::swap(i, j);
    for (int e = 0; e < 6; ++e)
        if (kTetEdges[e][0] == i && kTetEdges[e][1] == j)
            return e;
    throw std::invalid_argument("not a tetrahedron edge: " + std::to_string(i) + "," + std::to_string(j));
}

namespace
{

bool is_perm(const Perm4& p)
{
    std::array<bool, 4> seen{};
    for (int v : p)
    {
        if (v < 0 || v > 3 || seen[v])
            return false;
        seen[v] = true;
    }
    return true;
}

// Remaining corner of a tetrahedron given three distinct corners.
int fourth_corner(int a, int b, int c) { return 6 - a - b - c; }

} // namespace

int Triangulation::add_tetrahedron()
{
    gluings_.emplace_back();
    return size() - 1;
}

void Triangulation::glue(int tetA, int faceA, int tetB, int faceB, const Perm4& perm)
{
    if (tetA < 0 || tetA >= size() || tetB < 0 || tetB >= size() || faceA < 0 || faceA > 3 || faceB < 0 || faceB > 3)
        throw std::out_of_range("gluing refers to a missing tetrahedron or face");
    if (!is_perm(perm) || perm[faceA] != faceB)
        throw std::invalid_argument("gluing permutation must be a bijection sending faceA to faceB");
    if (tetA == tetB && faceA == faceB)
        throw std::invalid_argument("face glued to itself");
    auto& a = gluings_[tetA][faceA];
    auto& b = gluings_[tetB][faceB];
    if (a.glued() && a.tet == tetB && a.face == faceB && a.perm == perm)
        return;
    if (a.glued() || b.glued())
        throw std::invalid_argument("face slot (" + std::to_string(tetA) + "," + std::to_string(faceA) +
                                    ") or (" + std::to_string(tetB) + "," + std::to_string(faceB) +
                                    ") is already glued");
    a = {tetB, faceB, perm};
    b = {tetA, faceA, perm_inverse(perm)};
}

bool Triangulation::is_closed() const
{
    for (const auto& slots : gluings_)
        for (const auto& g : slots)
            if (!g.glued())
                return false;
    return true;
}

Skeleton compute_skeleton(const Triangulation& tri)
{
    const int n = tri.size();
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f)
            if (!tri.gluing(t, f).glued())
                throw std::invalid_argument("face " + std::to_string(f) + " of tetrahedron " + std::to_string(t) +
                                            " is not glued");

    Dsu cv(4 * n), ce(6 * n), cf(4 * n);
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f)
        {
            const auto& g = tri.gluing(t, f);
            cf.unite(4 * t + f, 4 * g.tet + g.face);
            for (int i = 0; i < 4; ++i)
                if (i != f)
                    cv.unite(4 * t + i, 4 * g.tet + g.perm[i]);
            for (int e = 0; e < 6; ++e)
            {
                int i = kTetEdges[e][0], j = kTetEdges[e][1];
                if (i != f && j != f)
                    ce.unite(6 * t + e, 6 * g.tet + tet_edge_index(g.perm[i], g.perm[j]));
            }
        }

    Skeleton s;
    auto vid = number_classes(cv, 4 * n, s.vertex_count);
    auto eid = number_classes(ce, 6 * n, s.edge_count);
    auto fid = number_classes(cf, 4 * n, s.face_count);

    s.tet_vertex.resize(n);
    s.tet_edge.resize(n);
    s.tet_face.resize(n);
    s.vertex_rep.assign(s.vertex_count, {-1, -1});
    s.edge_rep.assign(s.edge_count, {-1, -1});
    s.face_rep.assign(s.face_count, {-1, -1});
    s.edge_degree.assign(s.edge_count, 0);
    for (int t = 0; t < n; ++t)
    {
        for (int i = 0; i < 4; ++i)
        {
            s.tet_vertex[t][i] = vid[4 * t + i];
            s.tet_face[t][i] = fid[4 * t + i];
            if (s.vertex_rep[vid[4 * t + i]].first < 0)
                s.vertex_rep[vid[4 * t + i]] = {t, i};
            if (s.face_rep[fid[4 * t + i]].first < 0)
                s.face_rep[fid[4 * t + i]] = {t, i};
        }
        for (int e = 0; e < 6; ++e)
        {
            s.tet_edge[t][e] = eid[6 * t + e];
            ++s.edge_degree[eid[6 * t + e]];
            if (s.edge_rep[eid[6 * t + e]].first < 0)
                s.edge_rep[eid[6 * t + e]] = {t, e};
        }
    }

    // Transport endpoint 0 of each edge class to all its instances.
    std::vector<int> first(6 * n, -1);
    for (int c = 0; c < s.edge_count; ++c)
    {
        auto [t0, e0] = s.edge_rep[c];
        first[6 * t0 + e0] = kTetEdges[e0][0];
        std::vector<int> stack{6 * t0 + e0};
        while (!stack.empty())
        {
            int idx = stack.back();
            stack.pop_back();
            int t = idx / 6, e = idx % 6;
            int i = kTetEdges[e][0], j = kTetEdges[e][1], a = first[idx];
            for (int f = 0; f < 4; ++f)
            {
                if (f == i || f == j)
                    continue;
                const auto& g = tri.gluing(t, f);
                int idx2 = 6 * g.tet + tet_edge_index(g.perm[i], g.perm[j]);
                if (first[idx2] < 0)
                {
                    first[idx2] = g.perm[a];
                    stack.push_back(idx2);
                }
                else if (first[idx2] != g.perm[a])
                    throw NonManifoldError("edge class " + std::to_string(c) +
                                           " is identified with itself reversed (tetrahedron " +
                                           std::to_string(g.tet) + ")");
            }
        }
    }
    s.edge_first_corner.resize(n);
    for (int t = 0; t < n; ++t)
        for (int e = 0; e < 6; ++e)
            s.edge_first_corner[t][e] = first[6 * t + e];

    s.face_first_corner.assign(n, {-1, -1, -1, -1});
    s.face_vertices.resize(s.face_count);
    s.face_edges.resize(s.face_count);
    for (int c = 0; c < s.face_count; ++c)
    {
        auto [t0, f0] = s.face_rep[c];
        std::array<int, 3> cs{};
        for (int i = 0, k = 0; i < 4; ++i)
            if (i != f0)
                cs[k++] = i;
        s.face_first_corner[t0][f0] = cs[0];
        const auto& g = tri.gluing(t0, f0);
        s.face_first_corner[g.tet][g.face] = g.perm[cs[0]];
        s.face_vertices[c] = {s.tet_vertex[t0][cs[0]], s.tet_vertex[t0][cs[1]], s.tet_vertex[t0][cs[2]]};
        s.face_edges[c] = {s.tet_edge[t0][tet_edge_index(cs[0], cs[1])], s.tet_edge[t0][tet_edge_index(cs[0], cs[2])],
                           s.tet_edge[t0][tet_edge_index(cs[1], cs[2])]};
    }

    s.edge_vertices.resize(s.edge_count);
    for (int c = 0; c < s.edge_count; ++c)
    {
        auto [t0, e0] = s.edge_rep[c];
        s.edge_vertices[c] = {s.tet_vertex[t0][kTetEdges[e0][0]], s.tet_vertex[t0][kTetEdges[e0][1]]};
    }

    for (int c = 0; c < s.edge_count; ++c)
        edge_cycle(tri, s, c);

    std::vector<int> sign(n, 0);
    s.orientable = true;
    for (int start = 0; start < n; ++start)
    {
        if (sign[start] != 0)
            continue;
        sign[start] = 1;
        std::vector<int> stack{start};
        while (!stack.empty())
        {
            int t = stack.back();
            stack.pop_back();
            for (int f = 0; f < 4; ++f)
            {
                const auto& g = tri.gluing(t, f);
                int want = -perm_sign(g.perm) * sign[t];
                if (sign[g.tet] == 0)
                {
                    sign[g.tet] = want;
                    stack.push_back(g.tet);
                }
                else if (sign[g.tet] != want)
                    s.orientable = false;
            }
        }
    }
    return s;
}

std::vector<std::pair<int, int>> edge_cycle(const Triangulation& tri, const Skeleton& s, int edge)
{
    auto [t0, e0] = s.edge_rep.at(edge);
    int i = kTetEdges[e0][0], j = kTetEdges[e0][1];
    int exit0 = 0;
    while (exit0 == i || exit0 == j)
        ++exit0;
    std::vector<std::pair<int, int>> out;
    int t = t0, exit = exit0;
    for (;;)
    {
        out.emplace_back(t, tet_edge_index(i, j));
        if (static_cast<int>(out.size()) > s.edge_degree[edge])
            break;
        const auto& g = tri.gluing(t, exit);
        t = g.tet;
        i = g.perm[i];
        j = g.perm[j];
        exit = fourth_corner(i, j, g.face);
        if (t == t0 && tet_edge_index(i, j) == e0)
        {
            if (exit != exit0)
                throw NonManifoldError("edge class " + std::to_string(edge) +
                                       " is traversed in both directions around its link");
            break;
        }
    }
    if (static_cast<int>(out.size()) != s.edge_degree[edge])
        throw NonManifoldError("link of edge class " + std::to_string(edge) + " is not a single circle (tetrahedron " +
                               std::to_string(t0) + ", local edge " + std::to_string(e0) + ")");
    return out;
}

namespace
{

void finalize(VertexLinkSurface& s)
{
    const int F = static_cast<int>(s.triangles.size());
    s.edge_count = 3 * F / 2;
    s.euler_characteristic = s.vertex_count - s.edge_count + F;

    bool adjacency_ok = static_cast<int>(s.adjacency.size()) == F && F > 0;
    for (int k = 0; adjacency_ok && k < F; ++k)
        for (const auto& side : s.adjacency[k])
            if (side.tri < 0)
                adjacency_ok = false;

    s.connected = false;
    if (adjacency_ok)
    {
        std::vector<char> seen(F, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int count = 1;
        while (!stack.empty())
        {
            int k = stack.back();
            stack.pop_back();
            for (const auto& side : s.adjacency[k])
                if (!seen[side.tri])
                {
                    seen[side.tri] = 1;
                    ++count;
                    stack.push_back(side.tri);
                }
        }
        std::vector<char> used(s.vertex_count, 0);
        for (const auto& t : s.triangles)
            for (int v : t)
                used[v] = 1;
        s.connected = count == F && std::all_of(used.begin(), used.end(), [](char c) { return c != 0; });
    }

    s.is_surface = adjacency_ok;
    if (adjacency_ok)
    {
        std::vector<char> visited(3 * F, 0);
        std::vector<int> walks(s.vertex_count, 0);
        for (int k = 0; k < F && s.is_surface; ++k)
            for (int pos = 0; pos < 3 && s.is_surface; ++pos)
            {
                if (visited[3 * k + pos])
                    continue;
                int label = s.triangles[k][pos];
                ++walks[label];
                int ck = k, cp = pos, exit = (pos + 1) % 3;
                for (int steps = 0; !visited[3 * ck + cp]; ++steps)
                {
                    if (steps > 3 * F || s.triangles[ck][cp] != label)
                    {
                        s.is_surface = false;
                        break;
                    }
                    visited[3 * ck + cp] = 1;
                    const auto& side = s.adjacency[ck][exit];
                    int a = (exit + 1) % 3;
                    int np = cp == a ? side.first : 3 - side.side - side.first;
                    ck = side.tri;
                    cp = np;
                    exit = (cp + 1) % 3 == side.side ? (cp + 2) % 3 : (cp + 1) % 3;
                }
                if (s.is_surface && !(ck == k && cp == pos))
                    s.is_surface = false;
            }
        for (int w : walks)
            if (w != 1)
                s.is_surface = false;
    }

    s.simplicial = true;
    std::set<std::array<int, 3>> tris;
    std::set<std::pair<int, int>> pairs;
    for (const auto& t : s.triangles)
    {
        auto sorted = t;
        std::sort(sorted.begin(), sorted.end());
        if (sorted[0] == sorted[1] || sorted[1] == sorted[2] || !tris.insert(sorted).second)
            s.simplicial = false;
        pairs.insert({sorted[0], sorted[1]});
        pairs.insert({sorted[0], sorted[2]});
        pairs.insert({sorted[1], sorted[2]});
    }
    if (static_cast<int>(pairs.size()) != s.edge_count || 2 * s.edge_count != 3 * F)
        s.simplicial = false;
}

} // namespace

VertexLinkSurface make_link_surface(int vertex_count, std::vector<std::array<int, 3>> triangles)
{
    VertexLinkSurface s;
    s.vertex_count = vertex_count;
    s.triangles = std::move(triangles);
    const int F = static_cast<int>(s.triangles.size());
    s.adjacency.assign(F, {});
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> sides;
    for (int k = 0; k < F; ++k)
        for (int side = 0; side < 3; ++side)
        {
            int a = s.triangles[k][(side + 1) % 3], b = s.triangles[k][(side + 2) % 3];
            if (a < 0 || a >= vertex_count || b < 0 || b >= vertex_count)
                throw std::invalid_argument("triangle vertex out of range");
            sides[{std::min(a, b), std::max(a, b)}].emplace_back(k, side);
        }
    for (const auto& [pair, list] : sides)
    {
        if (list.size() != 2 || pair.first == pair.second)
            continue;
        for (int x = 0; x < 2; ++x)
        {
            auto [k, side] = list[x];
            auto [k2, side2] = list[1 - x];
            int label = s.triangles[k][(side + 1) % 3];
            int first = s.triangles[k2][(side2 + 1) % 3] == label ? (side2 + 1) % 3 : (side2 + 2) % 3;
            s.adjacency[k][side] = {k2, side2, first};
        }
    }
    finalize(s);
    return s;
}

namespace
{

std::vector<VertexLinkSurface> build_links(const Triangulation& tri, const Skeleton& s, const std::vector<int>& vertices)
{
    const int n = tri.size();
    Dsu half(16 * n);
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f)
        {
            const auto& g = tri.gluing(t, f);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    if (i != f && j != f && i != j)
                        half.unite(16 * t + 4 * i + j, 16 * g.tet + 4 * g.perm[i] + g.perm[j]);
        }

    std::vector<int> wanted(s.vertex_count, -1);
    for (std::size_t k = 0; k < vertices.size(); ++k)
        wanted.at(vertices[k]) = static_cast<int>(k);

    std::vector<VertexLinkSurface> out(vertices.size());
    std::vector<int> corner_tri(4 * n, -1);
    for (int t = 0; t < n; ++t)
        for (int i = 0; i < 4; ++i)
        {
            int w = wanted[s.tet_vertex[t][i]];
            if (w < 0)
                continue;
            corner_tri[4 * t + i] = static_cast<int>(out[w].corners.size());
            out[w].corners.emplace_back(t, i);
        }

    std::vector<int> local(16 * n, -1);
    for (auto& link : out)
    {
        const int F = static_cast<int>(link.corners.size());
        link.triangles.resize(F);
        link.adjacency.resize(F);
        for (int k = 0; k < F; ++k)
        {
            auto [t, i] = link.corners[k];
            int pos = 0;
            std::array<int, 3> js{};
            for (int j = 0; j < 4; ++j)
            {
                if (j == i)
                    continue;
                js[pos] = j;
                int root = half.find(16 * t + 4 * i + j);
                if (local[root] < 0)
                    local[root] = link.vertex_count++;
                link.triangles[k][pos] = local[root];
                ++pos;
            }
            for (int side = 0; side < 3; ++side)
            {
                const auto& g = tri.gluing(t, js[side]);
                int i2 = g.perm[i];
                auto position = [i2](int c) { return c - (c > i2 ? 1 : 0); };
                link.adjacency[k][side] = {corner_tri[4 * g.tet + i2], position(g.face),
                                           position(g.perm[js[(side + 1) % 3]])};
            }
        }
        finalize(link);
    }
    return out;
}

} // namespace

VertexLinkSurface vertex_link(const Triangulation& t, const Skeleton& s, int vertex)
{
    if (vertex < 0 || vertex >= s.vertex_count)
        throw std::out_of_range("vertex class out of range");
    auto link = std::move(build_links(t, s, {vertex}).front());
    if (!link.is_surface)
        throw NonManifoldError("link of vertex " + std::to_string(vertex) + " is not a surface (tetrahedron " +
                               std::to_string(s.vertex_rep[vertex].first) + ")");
    return link;
}

bool is_flag(const VertexLinkSurface& s)
{
    if (!s.simplicial)
        return false;
    std::vector<std::set<int>> nbrs(s.vertex_count);
    std::set<std::array<int, 3>> tris;
    for (auto t : s.triangles)
    {
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                if (a != b)
                    nbrs[t[a]].insert(t[b]);
        std::sort(t.begin(), t.end());
        tris.insert(t);
    }
    for (int a = 0; a < s.vertex_count; ++a)
        for (int b : nbrs[a])
        {
            if (b <= a)
                continue;
            for (int c : nbrs[b])
                if (c > b && nbrs[a].count(c) && !tris.count({a, b, c}))
                    return false;
        }
    return true;
}

VertexLinkSurface double_disk(int vertex_count, const std::vector<std::array<int, 3>>& disk)
{
    std::map<std::pair<int, int>, int> count;
    for (const auto& t : disk)
        for (int a = 0; a < 3; ++a)
        {
            int u = t[a], v = t[(a + 1) % 3];
            ++count[{std::min(u, v), std::max(u, v)}];
        }
    std::vector<char> boundary(vertex_count, 0);
    for (const auto& [e, c] : count)
        if (c == 1)
            boundary[e.first] = boundary[e.second] = 1;
    std::vector<int> copy(vertex_count);
    int next = vertex_count;
    for (int v = 0; v < vertex_count; ++v)
        copy[v] = boundary[v] ? v : next++;
    auto tris = disk;
    for (const auto& t : disk)
        tris.push_back({copy[t[0]], copy[t[2]], copy[t[1]]});
    return make_link_surface(next, std::move(tris));
}

std::vector<int> canonical_form(const VertexLinkSurface& s)
{
    if (!s.is_surface || !s.connected)
        return {};
    const int F = static_cast<int>(s.triangles.size());
    std::vector<int> best, code, order(F);
    code.reserve(3 * F);
    std::deque<std::array<int, 4>> queue;
    for (int k = 0; k < F; ++k)
        for (int r = 0; r < 3; ++r)
            for (int o = 0; o < 2; ++o)
            {
                code.clear();
                std::fill(order.begin(), order.end(), -1);
                int next = 0;
                order[k] = next++;
                queue.clear();
                queue.push_back(o == 0 ? std::array<int, 4>{k, r, (r + 1) % 3, (r + 2) % 3}
                                       : std::array<int, 4>{k, r, (r + 2) % 3, (r + 1) % 3});
                bool worse = false;
                while (!queue.empty() && !worse)
                {
                    auto [tk, p0, p1, p2] = queue.front();
                    queue.pop_front();
                    const std::array<std::array<int, 3>, 3> dirs{{{p0, p1, p2}, {p1, p2, p0}, {p2, p0, p1}}};
                    for (const auto& d : dirs)
                    {
                        const auto& side = s.adjacency[tk][d[2]];
                        int a = (d[2] + 1) % 3;
                        auto map = [&](int p) { return p == a ? side.first : 3 - side.side - side.first; };
                        int x = map(d[0]), y = map(d[1]);
                        if (order[side.tri] < 0)
                        {
                            order[side.tri] = next++;
                            queue.push_back({side.tri, y, x, side.side});
                        }
                        code.push_back(order[side.tri]);
                        std::size_t at = code.size() - 1;
                        if (!best.empty() && at < best.size() && code[at] != best[at])
                        {
                            if (code[at] > best[at])
                            {
                                worse = true;
                                break;
                            }
                            best.clear();
                        }
                    }
                }
                if (!worse && (best.empty() || code < best))
                    best = code;
            }
    std::vector<int> out{s.vertex_count, F};
    out.insert(out.end(), best.begin(), best.end());
    return out;
}

namespace
{

using TriList = std::vector<std::array<int, 3>>;

// Sphere triangulations on n vertices, by edge flips from a bipyramid.
std::vector<TriList> sphere_triangulations(int n)
{
    TriList start;
    if (n == 4)
        start = {{0, 1, 2}, {0, 3, 1}, {1, 3, 2}, {0, 2, 3}};
    else
    {
        int m = n - 2;
        for (int i = 0; i < m; ++i)
        {
            start.push_back({i, (i + 1) % m, m});
            start.push_back({(i + 1) % m, i, m + 1});
        }
    }
    std::vector<TriList> found;
    std::set<std::vector<int>> seen;
    std::deque<TriList> queue{start};
    seen.insert(canonical_form(make_link_surface(n, start)));
    while (!queue.empty())
    {
        TriList cur = queue.front();
        queue.pop_front();
        found.push_back(cur);
        std::vector<int> degree(n, 0);
        std::set<std::pair<int, int>> edges;
        for (const auto& t : cur)
            for (int a = 0; a < 3; ++a)
            {
                ++degree[t[a]];
                edges.insert({std::min(t[a], t[(a + 1) % 3]), std::max(t[a], t[(a + 1) % 3])});
            }
        for (auto [a, b] : edges)
        {
            if (degree[a] <= 3 || degree[b] <= 3)
                continue;
            std::vector<int> holders, thirds;
            for (int k = 0; k < static_cast<int>(cur.size()); ++k)
            {
                const auto& t = cur[k];
                bool ha = t[0] == a || t[1] == a || t[2] == a;
                bool hb = t[0] == b || t[1] == b || t[2] == b;
                if (ha && hb)
                {
                    holders.push_back(k);
                    thirds.push_back(t[0] + t[1] + t[2] - a - b);
                }
            }
            int c = thirds[0], d = thirds[1];
            if (edges.count({std::min(c, d), std::max(c, d)}))
                continue;
            TriList next;
            for (int k = 0; k < static_cast<int>(cur.size()); ++k)
                if (k != holders[0] && k != holders[1])
                    next.push_back(cur[k]);
            next.push_back({a, c, d});
            next.push_back({b, d, c});
            auto code = canonical_form(make_link_surface(n, next));
            if (seen.insert(code).second)
                queue.push_back(next);
        }
    }
    return found;
}

TriList barycentric_subdivision(int n, const TriList& tris, int& vertex_count)
{
    std::map<std::pair<int, int>, int> mid;
    int next = n;
    for (const auto& t : tris)
        for (int a = 0; a < 3; ++a)
        {
            std::pair<int, int> e{std::min(t[a], t[(a + 1) % 3]), std::max(t[a], t[(a + 1) % 3])};
            if (!mid.count(e))
                mid[e] = next++;
        }
    TriList out;
    for (const auto& t : tris)
    {
        int centre = next++;
        for (int a = 0; a < 3; ++a)
        {
            int u = t[a], v = t[(a + 1) % 3];
            int m = mid[{std::min(u, v), std::max(u, v)}];
            out.push_back({u, m, centre});
            out.push_back({m, v, centre});
        }
    }
    vertex_count = next;
    return out;
}

std::vector<LinkCatalogEntry> generate_catalog()
{
    std::vector<LinkCatalogEntry> out;
    auto add = [&out](std::string name, VertexLinkSurface s) {
        auto code = canonical_form(s);
        out.push_back({std::move(name), std::move(s), std::move(code)});
    };

    add("face centre", double_disk(5, {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}}));

    TriList cube;
    for (int axis = 0; axis < 3; ++axis)
        for (int side = 0; side < 2; ++side)
        {
            int u = (axis + 1) % 3, w = (axis + 2) % 3;
            std::array<int, 4> ring{};
            const int cyc[4][2] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
            for (int q = 0; q < 4; ++q)
                ring[q] = (side << axis) | (cyc[q][0] << u) | (cyc[q][1] << w);
            for (int q = 0; q < 4; ++q)
                cube.push_back({ring[q], ring[(q + 1) % 4], 8 + 2 * axis + side});
        }
    add("cube centre", make_link_surface(14, cube));

    // 3 n3 + 2 n4 + n5 = 12 with n3, n5 in {0, 2} bounds the vertex count by 7.
    for (int n = 4; n <= 7; ++n)
        for (const auto& sphere : sphere_triangulations(n))
        {
            std::vector<int> degree(n, 0);
            for (const auto& t : sphere)
                for (int v : t)
                    ++degree[v];
            int n3 = 0, n5 = 0;
            bool ok = true;
            for (int d : degree)
            {
                n3 += d == 3;
                n5 += d == 5;
                ok = ok && d >= 3 && d <= 5;
            }
            if (!ok || (n3 != 0 && n3 != 2) || (n5 != 0 && n5 != 2))
                continue;
            std::sort(degree.begin(), degree.end());
            std::string name = "paving vertex ";
            for (int d : degree)
                name += std::to_string(d);
            int count = 0;
            auto sub = barycentric_subdivision(n, sphere, count);
            add(name, make_link_surface(count, sub));
        }
    return out;
}

} // namespace

const std::vector<LinkCatalogEntry>& link_catalog()
{
    static const std::vector<LinkCatalogEntry> catalog = generate_catalog();
    return catalog;
}

std::optional<int> catalog_index(const VertexLinkSurface& s)
{
    const auto& cat = link_catalog();
    std::vector<int> code;
    for (std::size_t i = 0; i < cat.size(); ++i)
    {
        if (cat[i].surface.triangles.size() != s.triangles.size() || cat[i].surface.vertex_count != s.vertex_count)
            continue;
        if (code.empty())
            code = canonical_form(s);
        if (code == cat[i].code)
            return static_cast<int>(i);
    }
    return std::nullopt;
}

HonestyReport check_honesty(const Triangulation& t, const Skeleton& s, std::size_t max_witnesses)
{
    HonestyReport r;
    auto fail = [&r, max_witnesses](std::string msg) {
        if (r.failures.size() < max_witnesses)
            r.failures.push_back(std::move(msg));
        r.honest = false;
    };
    r.honest = true;
    for (int k = 0; k < t.size(); ++k)
    {
        auto v = s.tet_vertex[k];
        std::sort(v.begin(), v.end());
        if (v[0] == v[1] || v[1] == v[2] || v[2] == v[3])
            fail("tetrahedron " + std::to_string(k) + " has a repeated vertex class");
    }
    std::map<std::pair<int, int>, int> edge_by_ends;
    for (int e = 0; e < s.edge_count; ++e)
    {
        auto [a, b] = s.edge_vertices[e];
        if (a == b)
        {
            fail("edge " + std::to_string(e) + " is a loop at vertex " + std::to_string(a));
            continue;
        }
        auto key = std::make_pair(std::min(a, b), std::max(a, b));
        auto [it, inserted] = edge_by_ends.emplace(key, e);
        if (!inserted)
            fail("edges " + std::to_string(it->second) + " and " + std::to_string(e) + " join vertices " +
                 std::to_string(key.first) + " and " + std::to_string(key.second));
    }
    std::map<std::array<int, 3>, int> face_by_vertices;
    for (int f = 0; f < s.face_count; ++f)
    {
        auto v = s.face_vertices[f];
        std::sort(v.begin(), v.end());
        if (v[0] == v[1] || v[1] == v[2])
            continue;
        auto [it, inserted] = face_by_vertices.emplace(v, f);
        if (!inserted)
            fail("faces " + std::to_string(it->second) + " and " + std::to_string(f) + " share all vertices");
    }
    std::map<std::array<int, 4>, int> tet_by_vertices;
    for (int k = 0; k < t.size(); ++k)
    {
        auto v = s.tet_vertex[k];
        std::sort(v.begin(), v.end());
        if (v[0] == v[1] || v[1] == v[2] || v[2] == v[3])
            continue;
        auto [it, inserted] = tet_by_vertices.emplace(v, k);
        if (!inserted)
            fail("tetrahedra " + std::to_string(it->second) + " and " + std::to_string(k) + " share all vertices");
    }
    return r;
}

CTReport validate_cooper_thurston(const Triangulation& t, bool match_catalog)
{
    CTReport r;
    Skeleton s;
    try
    {
        s = compute_skeleton(t);
    }
    catch (const NonManifoldError& e)
    {
        r.failures.push_back(e.what());
        return r;
    }

    auto honesty = check_honesty(t, s);
    r.honest = honesty.honest;
    r.failures = honesty.failures;

    r.degrees_in_allowed_set = true;
    for (int e = 0; e < s.edge_count; ++e)
    {
        int d = s.edge_degree[e];
        ++r.edge_degree_multiset[d];
        if (d != 4 && d != 6 && d != 8 && d != 10)
        {
            if (r.degrees_in_allowed_set)
                r.failures.push_back("edge " + std::to_string(e) + " has degree " + std::to_string(d));
            r.degrees_in_allowed_set = false;
        }
    }

    std::vector<int> all(s.vertex_count);
    for (int v = 0; v < s.vertex_count; ++v)
        all[v] = v;
    auto links = build_links(t, s, all);
    r.links_are_flag_spheres = true;
    std::vector<int> matches(s.vertex_count, -1);
    for (int v = 0; v < s.vertex_count; ++v)
    {
        const auto& link = links[v];
        if (!link.is_sphere())
        {
            if (r.links_are_flag_spheres)
                r.failures.push_back("link of vertex " + std::to_string(v) + " is not a sphere (euler characteristic " +
                                     std::to_string(link.euler_characteristic) + ")");
            r.links_are_flag_spheres = false;
        }
        else if (!is_flag(link))
        {
            if (r.links_are_flag_spheres)
                r.failures.push_back("link of vertex " + std::to_string(v) + " is not flag");
            r.links_are_flag_spheres = false;
        }
        if (match_catalog)
            matches[v] = catalog_index(link).value_or(-1);
    }
    if (match_catalog)
        r.catalog_match = std::move(matches);
    return r;
}

Triangulation boundary_of_4_simplex()
{
    // Tetrahedron i omits vertex i of {0..4}; corners in increasing label order.
    auto labels = [](int i) {
        std::array<int, 4> l{};
        for (int v = 0, k = 0; v < 5; ++v)
            if (v != i)
                l[k++] = v;
        return l;
    };
    Triangulation tri(5);
    for (int i = 0; i < 5; ++i)
    {
        auto li = labels(i);
        for (int f = 0; f < 4; ++f)
        {
            int j = li[f];
            if (j < i)
                continue;
            auto lj = labels(j);
            Perm4 p{};
            for (int c = 0; c < 4; ++c)
            {
                int label = c == f ? i : li[c];
                p[c] = static_cast<int>(std::find(lj.begin(), lj.end(), label) - lj.begin());
            }
            tri.glue(i, f, j, p[f], p);
        }
    }
    return tri;
}

} // namespace ctlink
