#include "ctlink/paving.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "dsu.hpp"

namespace ctlink
{

using detail::Dsu;
using detail::number_classes;

namespace
{

std::array<int, 2> other_axes(int axis) { return axis == 0 ? std::array{1, 2} : axis == 1 ? std::array{0, 2} : std::array{0, 1}; }

std::array<int, 2> apply_symmetry(int g, int s, int t, int extent)
{
    if (g & 4)
        std::swap(s, t);
    if (g & 2)
        s = extent - s;
    if (g & 1)
        t = extent - t;
    return {s, t};
}

int vertex_id(const std::array<int, 3>& c) { return c[0] + 2 * c[1] + 4 * c[2]; }
std::array<int, 3> vertex_coords(int v) { return {v & 1, (v >> 1) & 1, (v >> 2) & 1}; }

bool face_contains_vertex(int face, int v) { return vertex_coords(v)[face / 2] == face % 2; }

std::array<int, 2> face_coords(int face, int v)
{
    auto c = vertex_coords(v);
    auto ax = other_axes(face / 2);
    return {c[ax[0]], c[ax[1]]};
}

int face_vertex(int face, int s, int t)
{
    std::array<int, 3> c{};
    auto ax = other_axes(face / 2);
    c[face / 2] = face % 2;
    c[ax[0]] = s;
    c[ax[1]] = t;
    return vertex_id(c);
}

// The two faces containing a cube edge, in increasing order.
std::array<int, 2> edge_faces(int edge)
{
    auto ax = other_axes(edge / 4);
    int r = edge % 4;
    int f0 = 2 * ax[0] + (r & 1), f1 = 2 * ax[1] + (r >> 1);
    return {std::min(f0, f1), std::max(f0, f1)};
}

} // namespace

std::array<int, 2> apply_square_symmetry(int g, int s, int t) { return apply_symmetry(g, s, t, 1); }

int inverse_square_symmetry(int g)
{
    for (int h = 0; h < 8; ++h)
    {
        bool ok = true;
        for (int s = 0; s < 2; ++s)
            for (int t = 0; t < 2; ++t)
            {
                auto m = apply_square_symmetry(g, s, t);
                ok = ok && apply_square_symmetry(h, m[0], m[1]) == std::array{s, t};
            }
        if (ok)
            return h;
    }
    throw std::invalid_argument("square symmetry out of range");
}

int compose_square_symmetry(int first, int second)
{
    for (int h = 0; h < 8; ++h)
    {
        bool ok = true;
        for (int s = 0; s < 2; ++s)
            for (int t = 0; t < 2; ++t)
            {
                auto m = apply_square_symmetry(first, s, t);
                ok = ok && apply_square_symmetry(second, m[0], m[1]) == apply_square_symmetry(h, s, t);
            }
        if (ok)
            return h;
    }
    throw std::invalid_argument("square symmetry out of range");
}

std::array<int, 2> cube_edge_vertices(int edge)
{
    if (edge < 0 || edge >= 12)
        throw std::out_of_range("cube edge out of range");
    int axis = edge / 4, r = edge % 4;
    auto ax = other_axes(axis);
    std::array<int, 3> c{};
    c[ax[0]] = r & 1;
    c[ax[1]] = r >> 1;
    int v0 = vertex_id(c);
    c[axis] = 1;
    return {v0, vertex_id(c)};
}

int cube_edge_between(int v0, int v1)
{
    int diff = v0 ^ v1;
    if (diff != 1 && diff != 2 && diff != 4)
        throw std::invalid_argument("cube vertices are not adjacent");
    int axis = diff == 1 ? 0 : diff == 2 ? 1 : 2;
    auto c = vertex_coords(v0);
    auto ax = other_axes(axis);
    return 4 * axis + c[ax[0]] + 2 * c[ax[1]];
}

int Paving::add_cube()
{
    gluings_.emplace_back();
    return size() - 1;
}

void Paving::glue(int cubeA, int faceA, int cubeB, int faceB, int symmetry)
{
    if (cubeA < 0 || cubeA >= size() || cubeB < 0 || cubeB >= size() || faceA < 0 || faceA > 5 || faceB < 0 ||
        faceB > 5)
        throw std::out_of_range("gluing refers to a missing cube or face");
    if (symmetry < 0 || symmetry > 7)
        throw std::invalid_argument("square symmetry must be in 0..7");
    if (cubeA == cubeB && faceA == faceB)
        throw std::invalid_argument("face glued to itself");
    auto& a = gluings_[cubeA][faceA];
    auto& b = gluings_[cubeB][faceB];
    if (a.glued() && a.cube == cubeB && a.face == faceB && a.symmetry == symmetry)
        return;
    if (a.glued() || b.glued())
        throw std::invalid_argument("face slot (" + std::to_string(cubeA) + "," + std::to_string(faceA) + ") or (" +
                                    std::to_string(cubeB) + "," + std::to_string(faceB) + ") is already glued");
    a = {cubeB, faceB, symmetry};
    b = {cubeA, faceA, inverse_square_symmetry(symmetry)};
}

bool Paving::is_closed() const
{
    for (const auto& slots : gluings_)
        for (const auto& g : slots)
            if (!g.glued())
                return false;
    return true;
}

int Paving::map_vertex(int cube, int face, int vertex) const
{
    if (!face_contains_vertex(face, vertex))
        throw std::invalid_argument("vertex is not on the face");
    const auto& g = gluing(cube, face);
    auto st = face_coords(face, vertex);
    auto m = apply_square_symmetry(g.symmetry, st[0], st[1]);
    return face_vertex(g.face, m[0], m[1]);
}

PavingClasses paving_classes(const Paving& p)
{
    const int n = p.size();
    for (int c = 0; c < n; ++c)
        for (int f = 0; f < 6; ++f)
            if (!p.gluing(c, f).glued())
                throw std::invalid_argument("face " + std::to_string(f) + " of cube " + std::to_string(c) +
                                            " is not glued");

    Dsu dv(8 * n), de(12 * n), df(6 * n);
    for (int c = 0; c < n; ++c)
        for (int f = 0; f < 6; ++f)
        {
            const auto& g = p.gluing(c, f);
            df.unite(6 * c + f, 6 * g.cube + g.face);
            for (int v = 0; v < 8; ++v)
                if (face_contains_vertex(f, v))
                    dv.unite(8 * c + v, 8 * g.cube + p.map_vertex(c, f, v));
            for (int e = 0; e < 12; ++e)
            {
                auto [v0, v1] = cube_edge_vertices(e);
                if (face_contains_vertex(f, v0) && face_contains_vertex(f, v1))
                    de.unite(12 * c + e, 12 * g.cube + cube_edge_between(p.map_vertex(c, f, v0), p.map_vertex(c, f, v1)));
            }
        }

    PavingClasses out;
    auto vid = number_classes(dv, 8 * n, out.vertex_count);
    auto eid = number_classes(de, 12 * n, out.edge_count);
    auto fid = number_classes(df, 6 * n, out.face_count);
    out.cube_vertex.resize(n);
    out.cube_edge.resize(n);
    out.cube_face.resize(n);
    out.edge_vertices.assign(out.edge_count, {-1, -1});
    out.edge_degree.assign(out.edge_count, 0);
    std::vector<std::pair<int, int>> edge_rep(out.edge_count, {-1, -1});
    for (int c = 0; c < n; ++c)
    {
        for (int v = 0; v < 8; ++v)
            out.cube_vertex[c][v] = vid[8 * c + v];
        for (int f = 0; f < 6; ++f)
            out.cube_face[c][f] = fid[6 * c + f];
        for (int e = 0; e < 12; ++e)
        {
            int cls = eid[12 * c + e];
            out.cube_edge[c][e] = cls;
            ++out.edge_degree[cls];
            if (edge_rep[cls].first < 0)
            {
                edge_rep[cls] = {c, e};
                auto [v0, v1] = cube_edge_vertices(e);
                out.edge_vertices[cls] = {vid[8 * c + v0], vid[8 * c + v1]};
            }
        }
    }

    // Orientation transport and single-cycle check around every edge class.
    std::vector<int> first(12 * n, -1);
    for (int cls = 0; cls < out.edge_count; ++cls)
    {
        auto [c0, e0] = edge_rep[cls];
        first[12 * c0 + e0] = cube_edge_vertices(e0)[0];
        int c = c0, e = e0, exit = edge_faces(e0)[0], steps = 0;
        for (;;)
        {
            const auto& g = p.gluing(c, exit);
            auto [v0, v1] = cube_edge_vertices(e);
            int a = first[12 * c + e];
            int e2 = cube_edge_between(p.map_vertex(c, exit, v0), p.map_vertex(c, exit, v1));
            int a2 = p.map_vertex(c, exit, a);
            int idx2 = 12 * g.cube + e2;
            ++steps;
            auto faces2 = edge_faces(e2);
            int exit2 = faces2[0] == g.face ? faces2[1] : faces2[0];
            if (first[idx2] >= 0)
            {
                if (first[idx2] != a2)
                    throw NonManifoldPaving("edge class " + std::to_string(cls) +
                                            " is identified with itself reversed (cube " + std::to_string(g.cube) +
                                            ", edge " + std::to_string(e2) + ")");
                if (!(g.cube == c0 && e2 == e0 && exit2 == edge_faces(e0)[0]))
                    throw NonManifoldPaving("cubes around edge class " + std::to_string(cls) +
                                            " do not form a consistent cycle (cube " + std::to_string(g.cube) + ")");
                break;
            }
            first[idx2] = a2;
            c = g.cube;
            e = e2;
            exit = exit2;
        }
        if (steps != out.edge_degree[cls])
            throw NonManifoldPaving("cubes around edge class " + std::to_string(cls) + " form " +
                                    "more than one cycle (cube " + std::to_string(c0) + ", edge " +
                                    std::to_string(e0) + ")");
    }
    return out;
}

PavingReport validate_paving(const Paving& p)
{
    PavingReport r;
    r.classes = paving_classes(p);
    const auto& cl = r.classes;
    r.valid = true;
    std::vector<int> meets3(cl.vertex_count, 0), meets5(cl.vertex_count, 0);
    for (int e = 0; e < cl.edge_count; ++e)
    {
        int d = cl.edge_degree[e];
        r.edge_degrees[e] = d;
        if (d == 3 || d == 5)
        {
            (d == 3 ? r.degree3_edges : r.degree5_edges).push_back(e);
            auto& meets = d == 3 ? meets3 : meets5;
            ++meets[cl.edge_vertices[e][0]];
            ++meets[cl.edge_vertices[e][1]];
        }
        else if (d != 4)
        {
            r.valid = false;
            r.reasons.push_back("edge " + std::to_string(e) + " has degree " + std::to_string(d));
        }
    }
    for (int v = 0; v < cl.vertex_count; ++v)
    {
        if (meets3[v] != 0 && meets3[v] != 2)
        {
            r.valid = false;
            r.reasons.push_back("vertex " + std::to_string(v) + " meets " + std::to_string(meets3[v]) +
                                " degree-3 edges");
        }
        if (meets5[v] != 0 && meets5[v] != 2)
        {
            r.valid = false;
            r.reasons.push_back("vertex " + std::to_string(v) + " meets " + std::to_string(meets5[v]) +
                                " degree-5 edges");
        }
    }
    return r;
}

Paving torus_paving(int k)
{
    if (k < 1)
        throw std::invalid_argument("torus paving needs k >= 1");
    Paving p(k * k * k);
    auto index = [k](int i, int j, int l) { return (i % k) + k * (j % k) + k * k * (l % k); };
    for (int l = 0; l < k; ++l)
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < k; ++i)
            {
                int c = index(i, j, l);
                p.glue(c, 1, index(i + 1, j, l), 0, 0);
                p.glue(c, 3, index(i, j + 1, l), 2, 0);
                p.glue(c, 5, index(i, j, l + 1), 4, 0);
            }
    return p;
}

Paving subdivide(const Paving& p, int k)
{
    if (k < 1)
        throw std::invalid_argument("subdivision needs k >= 1");
    const int k3 = k * k * k;
    Paving out(p.size() * k3);
    auto index = [k, k3](int c, const std::array<int, 3>& x) { return c * k3 + x[0] + k * x[1] + k * k * x[2]; };
    for (int c = 0; c < p.size(); ++c)
    {
        for (int l = 0; l < k; ++l)
            for (int j = 0; j < k; ++j)
                for (int i = 0; i < k; ++i)
                {
                    std::array<int, 3> x{i, j, l};
                    for (int axis = 0; axis < 3; ++axis)
                    {
                        if (x[axis] == k - 1)
                            continue;
                        auto y = x;
                        ++y[axis];
                        out.glue(index(c, x), 2 * axis + 1, index(c, y), 2 * axis, 0);
                    }
                }
        for (int f = 0; f < 6; ++f)
        {
            const auto& g = p.gluing(c, f);
            if (!g.glued())
                throw std::invalid_argument("subdivide needs a closed paving");
            if (std::make_pair(g.cube, g.face) < std::make_pair(c, f))
                continue;
            auto ax = other_axes(f / 2);
            auto ax2 = other_axes(g.face / 2);
            for (int s = 0; s < k; ++s)
                for (int t = 0; t < k; ++t)
                {
                    std::array<int, 3> x{};
                    x[f / 2] = (f % 2) * (k - 1);
                    x[ax[0]] = s;
                    x[ax[1]] = t;
                    auto m = apply_symmetry(g.symmetry, s, t, k - 1);
                    std::array<int, 3> y{};
                    y[g.face / 2] = (g.face % 2) * (k - 1);
                    y[ax2[0]] = m[0];
                    y[ax2[1]] = m[1];
                    out.glue(index(c, x), f, index(g.cube, y), g.face, g.symmetry);
                }
        }
    }
    return out;
}

Paving circle_product(const SquareSurface& s)
{
    Paving p(s.squares);
    for (int c = 0; c < s.squares; ++c)
        p.glue(c, 4, c, 5, 0);
    for (const auto& g : s.gluings)
    {
        if (g.sideA < 0 || g.sideA > 3 || g.sideB < 0 || g.sideB > 3)
            throw std::invalid_argument("square side must be in 0..3");
        p.glue(g.squareA, g.sideA, g.squareB, g.sideB, g.flip ? 2 : 0);
    }
    return p;
}

namespace
{

const Rational kHalf(1, 2);

// Corner keys: cube vertices 0..7, face centres 8 + face, the cube centre 14.
Point3Q key_point(int key)
{
    if (key < 8)
    {
        auto c = vertex_coords(key);
        return {Rational(c[0]), Rational(c[1]), Rational(c[2])};
    }
    if (key < 14)
    {
        int f = key - 8;
        std::array<Rational, 3> c{kHalf, kHalf, kHalf};
        c[f / 2] = Rational(f % 2);
        return {c[0], c[1], c[2]};
    }
    return {kHalf, kHalf, kHalf};
}

std::array<int, 4> tet_keys(int local)
{
    int e = local / 2;
    auto [v0, v1] = cube_edge_vertices(e);
    return {v0, v1, 8 + edge_faces(e)[local % 2], 14};
}

int local_tet(int edge, int face) { return 2 * edge + (edge_faces(edge)[0] == face ? 0 : 1); }

} // namespace

std::vector<std::array<Point3Q, 4>> cube_tetrahedra()
{
    std::vector<std::array<Point3Q, 4>> out(24);
    for (int t = 0; t < 24; ++t)
    {
        auto keys = tet_keys(t);
        for (int i = 0; i < 4; ++i)
            out[t][i] = key_point(keys[i]);
    }
    return out;
}

GeometricTriangulation triangulate(const Paving& p)
{
    const int n = p.size();
    GeometricTriangulation out;
    out.triangulation = Triangulation(24 * n);
    out.coordinates.reserve(24 * n);
    out.origin.reserve(24 * n);
    auto shapes = cube_tetrahedra();

    // Interior faces: match key triples inside one cube.
    std::map<std::array<int, 3>, std::vector<std::pair<int, int>>> inner;
    for (int t = 0; t < 24; ++t)
    {
        auto keys = tet_keys(t);
        for (int f = 0; f < 3; ++f)
        {
            std::array<int, 3> tri{};
            for (int i = 0, k = 0; i < 4; ++i)
                if (i != f)
                    tri[k++] = keys[i];
            std::sort(tri.begin(), tri.end());
            inner[tri].emplace_back(t, f);
        }
    }

    for (int c = 0; c < n; ++c)
    {
        for (int t = 0; t < 24; ++t)
        {
            out.coordinates.push_back(shapes[t]);
            out.origin.push_back({c, t / 2, edge_faces(t / 2)[t % 2]});
        }
        for (const auto& [tri, slots] : inner)
        {
            if (slots.size() != 2)
                throw std::logic_error("cube subdivision is not closed");
            auto [t1, f1] = slots[0];
            auto [t2, f2] = slots[1];
            auto k1 = tet_keys(t1), k2 = tet_keys(t2);
            Perm4 perm{};
            for (int i = 0; i < 4; ++i)
                perm[i] = i == f1 ? f2 : static_cast<int>(std::find(k2.begin(), k2.end(), k1[i]) - k2.begin());
            out.triangulation.glue(24 * c + t1, f1, 24 * c + t2, f2, perm);
        }
    }

    for (int c = 0; c < n; ++c)
        for (int t = 0; t < 24; ++t)
        {
            auto keys = tet_keys(t);
            int face = keys[2] - 8;
            const auto& g = p.gluing(c, face);
            if (!g.glued())
                throw std::invalid_argument("triangulate needs a closed paving");
            int w0 = p.map_vertex(c, face, keys[0]);
            int w1 = p.map_vertex(c, face, keys[1]);
            int t2 = local_tet(cube_edge_between(w0, w1), g.face);
            Perm4 perm{w0 < w1 ? 0 : 1, w0 < w1 ? 1 : 0, 2, 3};
            out.triangulation.glue(24 * c + t, 3, 24 * g.cube + t2, 3, perm);
        }
    return out;
}

Point3Q barycenter(const std::array<Point3Q, 4>& c)
{
    Rational q(1, 4);
    return {(c[0].x + c[1].x + c[2].x + c[3].x) * q, (c[0].y + c[1].y + c[2].y + c[3].y) * q,
            (c[0].z + c[1].z + c[2].z + c[3].z) * q};
}

Rational squared_distance(const Point3Q& a, const Point3Q& b)
{
    Rational dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
    return dx * dx + dy * dy + dz * dz;
}

LengthReport euclidean_lengths(const GeometricTriangulation& t)
{
    std::vector<std::array<Point3Q, 4>> tets;
    for (std::size_t k = 0; k < t.coordinates.size() && k < 24; ++k)
        tets.push_back(t.coordinates[k]);
    if (tets.empty())
        tets = cube_tetrahedra();
    LengthReport r;
    for (const auto& tet : tets)
    {
        auto b = barycenter(tet);
        std::array<Rational, 4> d;
        for (int i = 0; i < 4; ++i)
        {
            d[i] = squared_distance(b, tet[i]);
            if (d[i] > r.max_squared)
            {
                r.max_squared = d[i];
                r.attaining_corners.clear();
            }
        }
        r.squared_distances.push_back(d);
    }
    for (std::size_t k = 0; k < tets.size(); ++k)
        for (int i = 0; i < 4; ++i)
            if (r.squared_distances[k][i] == r.max_squared &&
                std::find(r.attaining_corners.begin(), r.attaining_corners.end(), tets[k][i]) ==
                    r.attaining_corners.end())
                r.attaining_corners.push_back(tets[k][i]);
    r.max_distance = std::sqrt(r.max_squared.to_double());
    return r;
}

double path_length(const std::vector<std::array<double, 3>>& path, int scale)
{
    double total = 0;
    for (std::size_t i = 1; i < path.size(); ++i)
    {
        double dx = scale * (path[i][0] - path[i - 1][0]);
        double dy = scale * (path[i][1] - path[i - 1][1]);
        double dz = scale * (path[i][2] - path[i - 1][2]);
        total += std::sqrt(dx * dx + dy * dy + dz * dz);
    }
    return total;
}

std::map<int, long> expected_triangulation_degrees(const Paving& p)
{
    auto cl = paving_classes(p);
    std::map<int, long> out;
    for (int d : cl.edge_degree)
        ++out[2 * d];
    out[4] += 4L * cl.face_count + 6L * p.size();
    out[6] += 8L * p.size();
    return out;
}

} // namespace ctlink
