#include "ctlink/tangle.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace ctlink
{

bool TangleSpec::endpoints_inside_circles() const
{
    // Squared inradius of the unit equilateral triangle.
    const Rational inradius2(1, 12);
    if (arc_radius.sign() <= 0 || circle_radius.sign() <= 0)
        return false;
    // 0 < sqrt(1/12) - r_arc < r_circle, compared through squares of positive quantities.
    if (!(arc_radius * arc_radius < inradius2))
        return false;
    Rational bound = circle_radius + arc_radius;
    return inradius2 < bound * bound;
}

TangleSpec TangleSpec::relabeled(const Perm4& p) const
{
    TangleSpec out = *this;
    for (auto& c : out.circles)
        c.face = p[c.face];
    for (auto& a : out.arcs)
    {
        a.corners = {p[a.corners[0]], p[a.corners[1]]};
        a.end_faces = {p[a.end_faces[0]], p[a.end_faces[1]]};
    }
    return out;
}

bool TangleSpec::same_records(const TangleSpec& o) const
{
    auto key = [](const TangleSpec& t) {
        std::set<int> faces;
        for (const auto& c : t.circles)
            faces.insert(c.face);
        std::set<std::pair<std::array<int, 2>, std::array<int, 2>>> arcs;
        for (auto a : t.arcs)
        {
            std::sort(a.corners.begin(), a.corners.end());
            std::sort(a.end_faces.begin(), a.end_faces.end());
            arcs.insert({a.corners, a.end_faces});
        }
        return std::make_pair(faces, arcs);
    };
    return circle_radius == o.circle_radius && arc_radius == o.arc_radius && circles.size() == o.circles.size() &&
           arcs.size() == o.arcs.size() && key(*this) == key(o);
}

TangleSpec build_tangle_spec()
{
    TangleSpec t;
    for (int f = 0; f < 4; ++f)
        t.circles.push_back({f});
    for (const auto& e : kTetEdges)
    {
        std::array<int, 2> faces{};
        for (int c = 0, k = 0; c < 4; ++c)
            if (c != e[0] && c != e[1])
                faces[k++] = c;
        t.arcs.push_back({{e[0], e[1]}, faces});
    }
    return t;
}

std::string tangle_face_svg(const TangleSpec& spec, int size)
{
    const double h = std::sqrt(3.0) / 2;
    const double margin = 0.1, scale = size / (1 + 2 * margin);
    auto px = [&](double x) { return (x + margin) * scale; };
    auto py = [&](double y) { return (h - y + margin) * scale; };
    const double ax = 0, ay = 0, bx = 1, by = 0, cx = 0.5, cy = h;
    const double gx = 0.5, gy = h / 3;
    std::ostringstream out;
    out.precision(6);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\""
        << static_cast<int>((h + 2 * margin) * scale) << "\">\n";
    out << "  <polygon points=\"" << px(ax) << "," << py(ay) << " " << px(bx) << "," << py(by) << " " << px(cx) << ","
        << py(cy) << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "  <circle cx=\"" << px(gx) << "\" cy=\"" << py(gy) << "\" r=\"" << spec.circle_radius.to_double() * scale
        << "\" fill=\"none\" stroke=\"blue\"/>\n";
    const double pts[3][4] = {{ax, ay, bx, by}, {bx, by, cx, cy}, {cx, cy, ax, ay}};
    for (const auto& e : pts)
    {
        double mx = (e[0] + e[2]) / 2, my = (e[1] + e[3]) / 2;
        double dx = gx - mx, dy = gy - my, len = std::hypot(dx, dy);
        double r = spec.arc_radius.to_double();
        out << "  <circle cx=\"" << px(mx + r * dx / len) << "\" cy=\"" << py(my + r * dy / len)
            << "\" r=\"3\" fill=\"red\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

long LinkData::total_arcs() const
{
    long n = 0;
    for (const auto& c : components)
        n += static_cast<long>(c.arcs.size());
    return n;
}

LinkData build_link(const Triangulation& t, const Skeleton& s)
{
    LinkData l;
    l.face_components = s.face_count;
    l.edge_components = s.edge_count;
    l.components.reserve(s.face_count + s.edge_count);
    for (int f = 0; f < s.face_count; ++f)
        l.components.push_back({LinkComponent::Kind::Face, f, {}});
    for (int e = 0; e < s.edge_count; ++e)
        l.components.push_back({LinkComponent::Kind::Edge, e, edge_cycle(t, s, e)});
    return l;
}

const char* to_string(SurfaceDescriptor::Kind k)
{
    switch (k)
    {
    case SurfaceDescriptor::Kind::F:
        return "F";
    case SurfaceDescriptor::Kind::E:
        return "E";
    default:
        return "T";
    }
}

namespace
{

std::vector<int> sorted_unique(std::vector<int> v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

} // namespace

SurfaceDescriptor face_surface(const Skeleton& s, const LinkData& l, int face)
{
    SurfaceDescriptor d;
    d.kind = SurfaceDescriptor::Kind::F;
    d.index = face;
    d.puncture_count = 4;
    const auto& es = s.face_edges.at(face);
    d.boundary_edges = sorted_unique({es[0], es[1], es[2]});
    d.cusp_set = {l.face_component(face)};
    for (int e : d.boundary_edges)
        d.cusp_set.push_back(l.edge_component(e));
    d.cusp_set = sorted_unique(d.cusp_set);
    return d;
}

SurfaceDescriptor edge_surface(const Triangulation& t, const Skeleton& s, const LinkData& l, int edge)
{
    (void)t;
    SurfaceDescriptor d;
    d.kind = SurfaceDescriptor::Kind::E;
    d.index = edge;
    d.puncture_count = s.edge_degree.at(edge) + 1;
    d.boundary_edges = {edge};
    d.cusp_set = {l.edge_component(edge)};
    for (auto [tet, le] : l.components.at(l.edge_component(edge)).arcs)
        for (int c = 0; c < 4; ++c)
            if (c != kTetEdges[le][0] && c != kTetEdges[le][1])
                d.cusp_set.push_back(l.face_component(s.tet_face[tet][c]));
    d.cusp_set = sorted_unique(d.cusp_set);
    return d;
}

SurfaceDescriptor tet_surface(const Skeleton& s, const LinkData& l, int tet)
{
    SurfaceDescriptor d;
    d.kind = SurfaceDescriptor::Kind::T;
    d.index = tet;
    d.puncture_count = 4;
    const auto& te = s.tet_edge.at(tet);
    d.boundary_edges = sorted_unique({te.begin(), te.end()});
    for (int f : s.tet_face[tet])
        d.cusp_set.push_back(l.face_component(f));
    d.cusp_set = sorted_unique(d.cusp_set);
    return d;
}

std::vector<SurfaceDescriptor> surface_family(const Triangulation& t, const Skeleton& s, const LinkData& l)
{
    std::vector<SurfaceDescriptor> out;
    out.reserve(s.face_count + s.edge_count + t.size());
    for (int f = 0; f < s.face_count; ++f)
        out.push_back(face_surface(s, l, f));
    for (int e = 0; e < s.edge_count; ++e)
        out.push_back(edge_surface(t, s, l, e));
    for (int k = 0; k < t.size(); ++k)
        out.push_back(tet_surface(s, l, k));
    return out;
}

bool IntersectionPattern::meets(int i, int j) const
{
    if (i > j)
        std::swap(i, j);
    return std::binary_search(single_arc.begin(), single_arc.end(), std::make_pair(i, j));
}

IntersectionPattern intersection_pattern(const std::vector<SurfaceDescriptor>& surfaces)
{
    std::map<int, std::vector<int>> by_edge;
    for (int i = 0; i < static_cast<int>(surfaces.size()); ++i)
        if (surfaces[i].kind == SurfaceDescriptor::Kind::E)
            by_edge[surfaces[i].index].push_back(i);
    IntersectionPattern p;
    for (int i = 0; i < static_cast<int>(surfaces.size()); ++i)
    {
        if (surfaces[i].kind == SurfaceDescriptor::Kind::E)
            continue;
        for (int e : surfaces[i].boundary_edges)
        {
            auto it = by_edge.find(e);
            if (it == by_edge.end())
                continue;
            for (int j : it->second)
                p.single_arc.emplace_back(std::min(i, j), std::max(i, j));
        }
    }
    std::sort(p.single_arc.begin(), p.single_arc.end());
    p.single_arc.erase(std::unique(p.single_arc.begin(), p.single_arc.end()), p.single_arc.end());
    return p;
}

namespace
{

// Tetrahedra within dual distance 2: those sharing a face, edge or vertex.
std::vector<int> nearby_tets(const HatTau& g, int tet)
{
    std::vector<int> out;
    g.for_each_edge(tet, [&](int b, int) { g.for_each_edge(b, [&](int t2, int) { out.push_back(t2); }); });
    return sorted_unique(out);
}

} // namespace

std::vector<SurfaceDescriptor> barrier_family(const Triangulation& t, const Skeleton& s, const HatTau& g,
                                              const LinkData& l, int tet)
{
    if (tet < 0 || tet >= t.size())
        throw std::out_of_range("tetrahedron out of range");
    std::vector<SurfaceDescriptor> out;
    for (int f : sorted_unique({s.tet_face[tet].begin(), s.tet_face[tet].end()}))
        out.push_back(face_surface(s, l, f));
    const auto& tv = s.tet_vertex[tet];
    for (int e = 0; e < s.edge_count; ++e)
    {
        auto [a, b] = s.edge_vertices[e];
        if (std::find(tv.begin(), tv.end(), a) != tv.end() || std::find(tv.begin(), tv.end(), b) != tv.end())
            out.push_back(edge_surface(t, s, l, e));
    }
    for (int k : nearby_tets(g, tet))
        out.push_back(tet_surface(s, l, k));
    return out;
}

BarrierCertificate barrier_certificate(const Triangulation& t, const Skeleton& s, const HatTau& g,
                                       const HomologyAnnotation& a, const LinkData& l,
                                       const std::vector<int>& loop_vertices, const std::vector<int>& loop_edges,
                                       int sys_len)
{
    if (g.tet_count() != t.size())
        throw std::invalid_argument("dual graph does not belong to this triangulation");
    if (!loop_edges.empty() && walk_class(a, loop_edges) == 0)
        throw std::invalid_argument("certificate loop is homologically trivial");
    BarrierCertificate c;
    c.sys_len = sys_len;
    c.source_loop = loop_vertices;
    c.tetrahedra = separated_tetrahedra(g, loop_vertices, sys_len);
    c.n = static_cast<int>(c.tetrahedra.size());
    if (c.n != sys_len / 16)
        throw CertificateError("separated barycenter count differs from floor(sysLen/16)");

    for (int tet : c.tetrahedra)
    {
        int face = *std::min_element(s.tet_face[tet].begin(), s.tet_face[tet].end());
        auto surface = face_surface(s, l, face);

        std::vector<int> allowed;
        for (int k : nearby_tets(g, tet))
        {
            for (int f : s.tet_face[k])
                allowed.push_back(l.face_component(f));
            for (int e : s.tet_edge[k])
                allowed.push_back(l.edge_component(e));
        }
        allowed = sorted_unique(allowed);
        if (!std::includes(allowed.begin(), allowed.end(), surface.cusp_set.begin(), surface.cusp_set.end()))
            throw CertificateError("cusps of the surface chosen at tetrahedron " + std::to_string(tet) +
                                   " leave its distance-2 neighbourhood");
        c.surfaces.push_back(std::move(surface));
    }

    for (std::size_t i = 0; i < c.surfaces.size(); ++i)
        for (std::size_t j = i + 1; j < c.surfaces.size(); ++j)
        {
            std::vector<int> common;
            std::set_intersection(c.surfaces[i].cusp_set.begin(), c.surfaces[i].cusp_set.end(),
                                  c.surfaces[j].cusp_set.begin(), c.surfaces[j].cusp_set.end(),
                                  std::back_inserter(common));
            if (!common.empty())
            {
                c.pairwise_cusp_disjoint = false;
                throw CertificateError("surfaces at tetrahedra " + std::to_string(c.tetrahedra[i]) + " and " +
                                       std::to_string(c.tetrahedra[j]) + " share cusp " +
                                       std::to_string(common.front()));
            }
        }
    c.conclusion = "loop length >= " + std::to_string(c.n) + " * epsilon";
    return c;
}

double complement_volume(const Triangulation& t, double vol_p)
{
    if (!(vol_p >= 0))
        throw std::invalid_argument("polyhedron volume must be nonnegative");
    return static_cast<double>(t.size()) * 24.0 * vol_p;
}

} // namespace ctlink
