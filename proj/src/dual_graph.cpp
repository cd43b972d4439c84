#include "ctlink/dual_graph.hpp"

#include <algorithm>
#include <limits>

namespace ctlink
{

HatTau::HatTau(const Skeleton& s, int tetrahedra)
    : tets_(tetrahedra), faces_(s.face_count), edges_(s.edge_count), verts_(s.vertex_count)
{
    other_.resize(14 * static_cast<std::size_t>(tets_));
    incident_.resize(faces_ + edges_ + verts_);
    for (int t = 0; t < tets_; ++t)
        for (int slot = 0; slot < 14; ++slot)
        {
            int v = slot < 4    ? face_vertex(s.tet_face[t][slot])
                    : slot < 10 ? edge_vertex(s.tet_edge[t][slot - 4])
                                : vertex_vertex(s.tet_vertex[t][slot - 10]);
            other_[14 * t + slot] = v;
            incident_[v - tets_].push_back(14 * t + slot);
        }
}

HatTau::Kind HatTau::kind(int v) const
{
    if (v < 0 || v >= vertex_count())
        throw std::out_of_range("dual graph vertex out of range");
    if (v < tets_)
        return Kind::Tetrahedron;
    if (v < tets_ + faces_)
        return Kind::Face;
    if (v < tets_ + faces_ + edges_)
        return Kind::Edge;
    return Kind::Vertex;
}

int HatTau::simplex(int v) const
{
    switch (kind(v))
    {
    case Kind::Tetrahedron:
        return v;
    case Kind::Face:
        return v - tets_;
    case Kind::Edge:
        return v - tets_ - faces_;
    default:
        return v - tets_ - faces_ - edges_;
    }
}

HatTau build_dual_graph(const Triangulation& t, const Skeleton& s) { return HatTau(s, t.size()); }

std::vector<int> bfs_distances(const HatTau& g, int source)
{
    std::vector<int> dist(g.vertex_count(), -1);
    std::vector<int> queue{source};
    dist.at(source) = 0;
    for (std::size_t head = 0; head < queue.size(); ++head)
    {
        int u = queue[head];
        g.for_each_edge(u, [&](int w, int) {
            if (dist[w] < 0)
            {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        });
    }
    return dist;
}

namespace
{

using Bits = std::vector<std::uint64_t>;

void xor_into(Bits& a, const Bits& b)
{
    if (a.size() < b.size())
        a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] ^= b[i];
}

bool test_bit(const Bits& a, int i) { return static_cast<std::size_t>(i / 64) < a.size() && (a[i / 64] >> (i % 64)) & 1; }

bool is_zero(const Bits& a)
{
    return std::all_of(a.begin(), a.end(), [](std::uint64_t w) { return w == 0; });
}

} // namespace

HomologyAnnotation homology_annotations(const Triangulation& tri, const Skeleton& s, const HatTau& g, int tree_choice)
{
    const int V = s.vertex_count, E = s.edge_count, F = s.face_count;

    std::vector<std::vector<int>> incident(V);
    for (int e = 0; e < E; ++e)
    {
        auto [a, b] = s.edge_vertices[e];
        if (a != b)
        {
            incident[a].push_back(e);
            incident[b].push_back(e);
        }
    }
    if (tree_choice != 0)
        for (auto& list : incident)
            std::reverse(list.begin(), list.end());

    std::vector<char> tree(E, 0), reached(V, 0);
    for (int k = 0; k < V; ++k)
    {
        int root = tree_choice == 0 ? k : V - 1 - k;
        if (reached[root])
            continue;
        reached[root] = 1;
        std::vector<int> queue{root};
        for (std::size_t head = 0; head < queue.size(); ++head)
        {
            int v = queue[head];
            for (int e : incident[v])
            {
                int w = s.edge_vertices[e][0] == v ? s.edge_vertices[e][1] : s.edge_vertices[e][0];
                if (!reached[w])
                {
                    reached[w] = 1;
                    tree[e] = 1;
                    queue.push_back(w);
                }
            }
        }
    }

    // Face boundaries over Z/2: edges occurring an odd number of times.
    std::vector<std::vector<int>> face_odd(F), edge_faces(E);
    for (int f = 0; f < F; ++f)
    {
        auto es = s.face_edges[f];
        std::sort(es.begin(), es.end());
        for (int i = 0; i < 3;)
        {
            int j = i;
            while (j < 3 && es[j] == es[i])
                ++j;
            if ((j - i) % 2)
            {
                face_odd[f].push_back(es[i]);
                edge_faces[es[i]].push_back(f);
            }
            i = j;
        }
    }

    // Solve edge values from face relations; an edge left undetermined becomes a generator.
    std::vector<Bits> value(E);
    std::vector<char> known(E, 0);
    std::vector<int> unknown(F);
    std::vector<int> ready;
    for (int f = 0; f < F; ++f)
    {
        unknown[f] = static_cast<int>(face_odd[f].size());
        if (unknown[f] == 1)
            ready.push_back(f);
    }
    auto set_known = [&](int e, Bits v) {
        known[e] = 1;
        value[e] = std::move(v);
        for (int f : edge_faces[e])
            if (--unknown[f] == 1)
                ready.push_back(f);
    };
    for (int e = 0; e < E; ++e)
        if (tree[e])
            set_known(e, {});
    int generators = 0;
    for (int cursor = 0;;)
    {
        while (!ready.empty())
        {
            int f = ready.back();
            ready.pop_back();
            if (unknown[f] != 1)
                continue;
            int target = -1;
            Bits v;
            for (int e : face_odd[f])
            {
                if (known[e])
                    xor_into(v, value[e]);
                else
                    target = e;
            }
            set_known(target, std::move(v));
        }
        while (cursor < E && known[cursor])
            ++cursor;
        if (cursor == E)
            break;
        Bits v(generators / 64 + 1, 0);
        v[generators / 64] |= std::uint64_t{1} << (generators % 64);
        ++generators;
        set_known(cursor, std::move(v));
    }

    // Relations among generators, reduced to row echelon form.
    const std::size_t words = (generators + 63) / 64;
    std::vector<Bits> rows;
    for (int f = 0; f < F; ++f)
    {
        Bits r(words, 0);
        for (int e : face_odd[f])
            xor_into(r, value[e]);
        r.resize(words, 0);
        if (!is_zero(r))
            rows.push_back(std::move(r));
    }
    std::vector<int> pivot_cols;
    std::size_t rank = 0;
    for (int col = 0; col < generators && rank < rows.size(); ++col)
    {
        std::size_t p = rank;
        while (p < rows.size() && !test_bit(rows[p], col))
            ++p;
        if (p == rows.size())
            continue;
        std::swap(rows[p], rows[rank]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != rank && test_bit(rows[i], col))
                xor_into(rows[i], rows[rank]);
        pivot_cols.push_back(col);
        ++rank;
    }
    rows.resize(rank);
    std::vector<int> free_cols;
    for (int col = 0, k = 0; col < generators; ++col)
    {
        if (k < static_cast<int>(pivot_cols.size()) && pivot_cols[k] == col)
            ++k;
        else
            free_cols.push_back(col);
    }
    if (free_cols.size() > 64)
        throw std::runtime_error("first Z/2 homology has rank " + std::to_string(free_cols.size()) +
                                 "; at most 64 is supported");

    auto quotient = [&](Bits v) {
        v.resize(words, 0);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (test_bit(v, pivot_cols[i]))
                xor_into(v, rows[i]);
        std::uint64_t out = 0;
        for (std::size_t i = 0; i < free_cols.size(); ++i)
            if (test_bit(v, free_cols[i]))
                out |= std::uint64_t{1} << i;
        return out;
    };

    HomologyAnnotation a;
    a.rank = static_cast<int>(free_cols.size());
    a.tedge_classes.resize(E);
    for (int e = 0; e < E; ++e)
        a.tedge_classes[e] = quotient(value[e]);

    // Dual edge (t, sigma) follows the triangulation edge from corner 0 of t
    // to the corner of t carrying sigma's base vertex.
    a.edge_classes.assign(g.edge_total(), 0);
    for (int t = 0; t < tri.size(); ++t)
        for (int slot = 0; slot < 14; ++slot)
        {
            int j = slot < 4 ? s.face_first_corner[t][slot] : slot < 10 ? s.edge_first_corner[t][slot - 4] : slot - 10;
            a.edge_classes[14 * t + slot] = j == 0 ? 0 : a.tedge_classes[s.tet_edge[t][tet_edge_index(0, j)]];
        }
    return a;
}

std::uint64_t walk_class(const HomologyAnnotation& a, const std::vector<int>& edges)
{
    std::uint64_t c = 0;
    for (int e : edges)
        c ^= a.edge_classes.at(e);
    return c;
}

const char* to_string(SystoleResult::Semantics s)
{
    return s == SystoleResult::Semantics::Homological ? "homological" : "exactForAbelianPi1";
}

namespace
{

struct SourceSearch
{
    int best = std::numeric_limits<int>::max(); // shortest nontrivial closed walk through the source
    int edge_u = -1, edge_w = -1, edge_id = -1;
    bool capped = false;
    int capped_level = 0;
    std::size_t visited = 0;
};

} // namespace

// A breadth-first tree labels each vertex with the class of its tree path;
// a closed walk through the source is nontrivial iff it crosses an edge whose
// label difference disagrees with the edge annotation. This is the search in
// the (Z/2)^b covering graph restricted to the sheet of the tree.
SystoleResult homological_systole(const HatTau& g, const HomologyAnnotation& a, const SystoleParams& params)
{
    SystoleResult r;
    r.semantics = params.assert_abelian_pi1 ? SystoleResult::Semantics::ExactForAbelianPi1
                                            : SystoleResult::Semantics::Homological;
    if (a.rank == 0)
        return r;

    const int N = g.vertex_count();
    const bool restricted = !params.sources.empty();
    std::vector<int> sources = params.sources;
    if (!restricted)
        for (int t = 0; t < g.tet_count(); ++t)
            sources.push_back(t);

    std::vector<int> dist(N, -1), parent_edge(N, -1);
    std::vector<std::uint64_t> label(N, 0);
    std::vector<int> touched;

    int best = std::numeric_limits<int>::max();
    int best_source = -1;
    SourceSearch best_search;
    int capped_bound = std::numeric_limits<int>::max();

    for (int s : sources)
    {
        if (!g.is_barycenter(s))
            throw std::invalid_argument("systole sources must be tetrahedron barycenters");
        SourceSearch cur;
        for (int v : touched)
            dist[v] = -1;
        touched.clear();
        dist[s] = 0;
        parent_edge[s] = -1;
        label[s] = 0;
        touched.push_back(s);
        std::size_t head = 0;
        while (head < touched.size())
        {
            int u = touched[head];
            int d = dist[u];
            // Walks found from here on have length at least 2d.
            if (2 * d >= std::min(best, cur.best))
                break;
            ++head;
            g.for_each_edge(u, [&](int w, int edge) {
                if (cur.capped)
                    return;
                if (!restricted && g.is_barycenter(w) && w < s)
                    return;
                std::uint64_t c = label[u] ^ a.edge_classes[edge];
                if (dist[w] < 0)
                {
                    if (touched.size() >= params.cap)
                    {
                        cur.capped = true;
                        cur.capped_level = d;
                        return;
                    }
                    dist[w] = d + 1;
                    label[w] = c;
                    parent_edge[w] = edge;
                    touched.push_back(w);
                }
                else if (c != label[w] && edge != parent_edge[u] && d + dist[w] + 1 < cur.best)
                {
                    cur.best = d + dist[w] + 1;
                    cur.edge_u = u;
                    cur.edge_w = w;
                    cur.edge_id = edge;
                }
            });
            if (cur.capped)
                break;
        }
        cur.visited = touched.size();
        r.states_explored += cur.visited;
        if (cur.best < best)
        {
            best = cur.best;
            best_source = s;
            best_search = cur;
            // Reconstruct now, the arrays are reused by the next source.
            auto path = [&](int v, std::vector<int>& verts, std::vector<int>& edges) {
                while (v != s)
                {
                    verts.push_back(v);
                    int e = parent_edge[v];
                    edges.push_back(e);
                    v = g.edge_tet(e) == v ? g.edge_other(e) : g.edge_tet(e);
                }
                verts.push_back(s);
            };
            std::vector<int> up_v, up_e, down_v, down_e;
            path(cur.edge_u, up_v, up_e);
            path(cur.edge_w, down_v, down_e);
            std::reverse(up_v.begin(), up_v.end());
            std::reverse(up_e.begin(), up_e.end());
            r.witness = up_v;
            r.witness_edges = up_e;
            r.witness_edges.push_back(cur.edge_id);
            for (std::size_t i = 0; i + 1 < down_v.size(); ++i)
                r.witness.push_back(down_v[i]);
            for (int e : down_e)
                r.witness_edges.push_back(e);
        }
        if (cur.capped)
            capped_bound = std::min(capped_bound, 2 * cur.capped_level);
    }
    (void)best_source;

    if (capped_bound < best)
    {
        r.lower_bound_only = true;
        r.length = capped_bound;
        r.explored_radius = capped_bound / 2 - 1;
        r.witness.clear();
        r.witness_edges.clear();
        return r;
    }
    if (best == std::numeric_limits<int>::max())
    {
        r.witness.clear();
        return r;
    }
    r.length = best;
    r.witness_class = walk_class(a, r.witness_edges);
    return r;
}

std::vector<int> separated_tetrahedra(const HatTau& g, const std::vector<int>& cycle, int sys_len)
{
    if (sys_len < 0)
        throw std::invalid_argument("systole length must be nonnegative");
    const int n = sys_len / 16;
    if (n == 0)
        return {};
    if (cycle.empty())
        throw std::invalid_argument("empty cycle");
    for (std::size_t i = 0; i < cycle.size(); ++i)
    {
        int u = cycle[i], w = cycle[(i + 1) % cycle.size()];
        bool adjacent = false;
        g.for_each_edge(u, [&](int x, int) { adjacent = adjacent || x == w; });
        if (!adjacent)
            throw std::invalid_argument("cycle vertices " + std::to_string(u) + " and " + std::to_string(w) +
                                        " are not adjacent");
    }

    int start = -1;
    for (int v : cycle)
        if (g.is_barycenter(v) && (start < 0 || v < start))
            start = v;
    if (start < 0)
        throw std::invalid_argument("cycle contains no barycenter");

    auto dist = bfs_distances(g, start);
    std::vector<int> out{start};
    for (int k = 1; k < n; ++k)
    {
        int found = -1;
        for (int v : cycle)
            if (dist[v] == 8 * k)
            {
                found = v;
                break;
            }
        if (found < 0)
            throw SeparationError("no cycle vertex at distance " + std::to_string(8 * k) +
                                  " from the starting barycenter; the systole bound " + std::to_string(sys_len) +
                                  " is not valid for this cycle");
        out.push_back(found);
    }
    for (std::size_t i = 0; i < out.size(); ++i)
    {
        if (!g.is_barycenter(out[i]))
            throw SeparationError("selected vertex " + std::to_string(out[i]) + " is not a barycenter");
        auto di = bfs_distances(g, out[i]);
        for (std::size_t j = i + 1; j < out.size(); ++j)
            if (di[out[j]] < 8 * static_cast<int>(j - i))
                throw SeparationError("barycenters " + std::to_string(out[i]) + " and " + std::to_string(out[j]) +
                                      " are only " + std::to_string(di[out[j]]) + " apart");
    }
    return out;
}

} // namespace ctlink
