#include "ctlink/serialize.hpp"

#include <sstream>

namespace ctlink
{

namespace
{

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw SchemaError(std::string("missing field '") + key + "'");
    return j.at(key);
}

int int_field(const Json& j, const char* key)
{
    const Json& v = field(j, key);
    if (!v.is_number_integer())
        throw SchemaError(std::string("field '") + key + "' must be an integer");
    return v.get<int>();
}

Json point_json(const IdealPoint& p)
{
    if (p.at_infinity)
        return "infinity";
    return Json{{"x", p.x}, {"y", p.y}};
}

IdealPoint point_from_json(const Json& j)
{
    if (j.is_string() && j.get<std::string>() == "infinity")
        return IdealPoint::infinity();
    return {false, field(j, "x").get<double>(), field(j, "y").get<double>()};
}

Json point3_json(const Point3Q& p) { return Json::array({to_json(p.x), to_json(p.y), to_json(p.z)}); }

} // namespace

Json to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const Json& j)
{
    if (j.is_number_integer())
        return Rational(j.get<std::int64_t>());
    if (!j.is_string())
        throw SchemaError("rational must be a string \"p/q\" or an integer");
    try
    {
        return Rational::parse(j.get<std::string>());
    }
    catch (const std::exception& e)
    {
        throw SchemaError(std::string("bad rational: ") + e.what());
    }
}

Json to_json(const Scalar& s)
{
    if (s.is_exact())
        return Json{{"a", to_json(s.exact()->rational_part())}, {"b", to_json(s.exact()->sqrt2_part())}};
    return Json{{"value", s.value()}};
}

Scalar scalar_from_json(const Json& j)
{
    if (j.is_number())
        return j.is_number_integer() ? Scalar(Rational(j.get<std::int64_t>())) : Scalar(j.get<double>());
    if (j.is_object() && j.contains("value"))
        return Scalar(j.at("value").get<double>());
    Rational a = rational_from_json(field(j, "a"));
    Rational b = j.contains("b") ? rational_from_json(j.at("b")) : Rational(0);
    return Scalar(QSqrt2(a, b));
}

Json to_json(const Paving& p)
{
    Json gl = Json::array();
    for (int c = 0; c < p.size(); ++c)
        for (int f = 0; f < 6; ++f)
        {
            const auto& g = p.gluing(c, f);
            if (!g.glued() || std::make_pair(g.cube, g.face) < std::make_pair(c, f))
                continue;
            gl.push_back({{"cubeA", c}, {"faceA", f}, {"cubeB", g.cube}, {"faceB", g.face}, {"symmetry", g.symmetry}});
        }
    return Json{{"cubes", p.size()}, {"gluings", gl}};
}

Paving paving_from_json(const Json& j)
{
    int n = int_field(j, "cubes");
    if (n < 0)
        throw SchemaError("cube count must be non-negative");
    Paving p(n);
    for (const auto& g : field(j, "gluings"))
    {
        try
        {
            p.glue(int_field(g, "cubeA"), int_field(g, "faceA"), int_field(g, "cubeB"), int_field(g, "faceB"),
                   int_field(g, "symmetry"));
        }
        catch (const std::logic_error& e)
        {
            throw SchemaError(std::string("bad gluing record: ") + e.what());
        }
    }
    return p;
}

Json to_json(const Triangulation& t)
{
    Json gl = Json::array();
    for (int a = 0; a < t.size(); ++a)
        for (int f = 0; f < 4; ++f)
        {
            const auto& g = t.gluing(a, f);
            if (!g.glued() || std::make_pair(g.tet, g.face) < std::make_pair(a, f))
                continue;
            gl.push_back({{"tetA", a}, {"faceA", f}, {"tetB", g.tet}, {"faceB", g.face}, {"cornerPermutation", g.perm}});
        }
    return Json{{"tetrahedra", t.size()}, {"gluings", gl}};
}

Triangulation triangulation_from_json(const Json& j)
{
    int n = int_field(j, "tetrahedra");
    if (n < 0)
        throw SchemaError("tetrahedron count must be non-negative");
    Triangulation t(n);
    for (const auto& g : field(j, "gluings"))
    {
        const Json& p = field(g, "cornerPermutation");
        if (!p.is_array() || p.size() != 4)
            throw SchemaError("cornerPermutation must list four corners");
        try
        {
            t.glue(int_field(g, "tetA"), int_field(g, "faceA"), int_field(g, "tetB"), int_field(g, "faceB"),
                   p.get<Perm4>());
        }
        catch (const std::logic_error& e)
        {
            throw SchemaError(std::string("bad gluing record: ") + e.what());
        }
    }
    return t;
}

std::string gluing_matrix(const Triangulation& t)
{
    std::ostringstream out;
    out << t.size() << '\n';
    for (int a = 0; a < t.size(); ++a)
    {
        for (int f = 0; f < 4; ++f)
        {
            const auto& g = t.gluing(a, f);
            out << (f ? " " : "");
            if (!g.glued())
                out << '-';
            else
                out << g.tet << ':' << g.perm[0] << g.perm[1] << g.perm[2] << g.perm[3];
        }
        out << '\n';
    }
    return out.str();
}

Triangulation parse_gluing_matrix(const std::string& text)
{
    std::istringstream in(text);
    int n = -1;
    if (!(in >> n) || n < 0)
        throw SchemaError("gluing matrix must start with the tetrahedron count");
    Triangulation t(n);
    for (int a = 0; a < n; ++a)
        for (int f = 0; f < 4; ++f)
        {
            std::string entry;
            if (!(in >> entry))
                throw SchemaError("gluing matrix ends early at tetrahedron " + std::to_string(a));
            if (entry == "-")
                continue;
            auto colon = entry.find(':');
            if (colon == std::string::npos || entry.size() != colon + 5)
                throw SchemaError("bad gluing entry '" + entry + "'");
            Perm4 p;
            for (int i = 0; i < 4; ++i)
                p[i] = entry[colon + 1 + i] - '0';
            try
            {
                t.glue(a, f, std::stoi(entry.substr(0, colon)), p[f], p);
            }
            catch (const std::exception& e)
            {
                throw SchemaError("bad gluing entry '" + entry + "': " + e.what());
            }
        }
    std::string rest;
    if (in >> rest)
        throw SchemaError("trailing text in gluing matrix");
    return t;
}

Json to_json(const GeometricTriangulation& g)
{
    Json j = to_json(g.triangulation);
    Json coords = Json::array(), origin = Json::array();
    for (const auto& c : g.coordinates)
        coords.push_back({point3_json(c[0]), point3_json(c[1]), point3_json(c[2]), point3_json(c[3])});
    for (const auto& o : g.origin)
        origin.push_back({{"cube", o.cube}, {"edge", o.edge}, {"face", o.face}});
    j["coordinates"] = coords;
    j["origin"] = origin;
    return j;
}

Json to_json(const Wall& w)
{
    if (w.is_plane())
    {
        const auto& p = w.as_plane();
        return Json{{"type", "plane"},
                    {"a", to_json(p.a)},
                    {"b", to_json(p.b)},
                    {"c", to_json(p.c)},
                    {"keep", p.keep == PlaneSide::GreaterEqual ? ">=" : "<="}};
    }
    const auto& h = w.as_hemisphere();
    return Json{{"type", "hemisphere"},
                {"center", {to_json(h.cx), to_json(h.cy)}},
                {"radius", to_json(h.radius)},
                {"keep", h.keep == SphereSide::Outside ? "outside" : "inside"}};
}

Wall wall_from_json(const Json& j)
{
    const std::string type = field(j, "type").get<std::string>();
    const std::string keep = field(j, "keep").get<std::string>();
    try
    {
        if (type == "plane")
        {
            if (keep != ">=" && keep != "<=")
                throw SchemaError("plane keep must be \">=\" or \"<=\"");
            return Wall::plane(scalar_from_json(field(j, "a")), scalar_from_json(field(j, "b")),
                               scalar_from_json(field(j, "c")),
                               keep == ">=" ? PlaneSide::GreaterEqual : PlaneSide::LessEqual);
        }
        if (type == "hemisphere")
        {
            const Json& c = field(j, "center");
            if (!c.is_array() || c.size() != 2)
                throw SchemaError("hemisphere center must be [x, y]");
            if (keep != "outside" && keep != "inside")
                throw SchemaError("hemisphere keep must be \"outside\" or \"inside\"");
            return Wall::hemisphere(scalar_from_json(c[0]), scalar_from_json(c[1]), scalar_from_json(field(j, "radius")),
                                    keep == "outside" ? SphereSide::Outside : SphereSide::Inside);
        }
    }
    catch (const std::invalid_argument& e)
    {
        throw SchemaError(std::string("bad wall: ") + e.what());
    }
    throw SchemaError("unknown wall type '" + type + "'");
}

Json to_json(const PolyhedronSpec& p)
{
    Json walls = Json::array();
    for (const auto& w : p.walls)
        walls.push_back(to_json(w));
    return Json{{"walls", walls},
                {"labels", p.labels},
                {"witness", {p.witness.x, p.witness.y, p.witness.z}}};
}

PolyhedronSpec polyhedron_from_json(const Json& j)
{
    PolyhedronSpec p;
    for (const auto& w : field(j, "walls"))
        p.walls.push_back(wall_from_json(w));
    if (j.contains("labels"))
        p.labels = j.at("labels").get<std::vector<std::string>>();
    const Json& w = field(j, "witness");
    if (!w.is_array() || w.size() != 3)
        throw SchemaError("witness must be [x, y, z]");
    try
    {
        p.witness = H3Point::make(w[0].get<double>(), w[1].get<double>(), w[2].get<double>());
        p.validate();
    }
    catch (const std::invalid_argument& e)
    {
        throw SchemaError(std::string("bad polyhedron: ") + e.what());
    }
    return p;
}

Json to_json(const AngleResult& a)
{
    Json j{{"kind", to_string(a.kind)}};
    if (a.kind == AngleResult::Kind::Angle)
    {
        j["theta"] = a.theta;
        if (a.exact_cos)
            j["cos"] = to_json(Scalar(*a.exact_cos));
    }
    if (a.kind == AngleResult::Kind::TangentIdeal)
        j["point"] = point_json(a.point);
    return j;
}

AngleResult angle_from_json(const Json& j)
{
    const std::string kind = field(j, "kind").get<std::string>();
    if (kind == "angle")
    {
        std::optional<QSqrt2> c;
        if (j.contains("cos"))
        {
            Scalar s = scalar_from_json(j.at("cos"));
            if (!s.is_exact())
                throw SchemaError("exact cosine must be given as {a, b}");
            c = *s.exact();
        }
        return AngleResult::angle(field(j, "theta").get<double>(), c);
    }
    if (kind == "tangent_ideal")
        return AngleResult::tangent(point_from_json(field(j, "point")));
    if (kind == "disjoint")
        return AngleResult::disjoint();
    if (kind == "identical")
        return AngleResult::identical();
    throw SchemaError("unknown angle kind '" + kind + "'");
}

Json to_json(const AngleTable& t)
{
    Json pairs = Json::array();
    for (const auto& [ij, r] : t.entries)
    {
        Json e = to_json(r);
        e["i"] = ij.first;
        e["j"] = ij.second;
        pairs.push_back(e);
    }
    return Json{{"walls", t.wall_count}, {"pairs", pairs}};
}

AngleTable angle_table_from_json(const Json& j)
{
    AngleTable t;
    t.wall_count = int_field(j, "walls");
    for (const auto& e : field(j, "pairs"))
    {
        int i = int_field(e, "i"), k = int_field(e, "j");
        if (i < 0 || k < 0 || i >= t.wall_count || k >= t.wall_count || i == k)
            throw SchemaError("angle pair indices out of range");
        t.set(i, k, angle_from_json(e));
    }
    return t;
}

Json to_json(const VerificationReport& r)
{
    Json pairs = Json::array(), clusters = Json::array();
    for (const auto& p : r.pairs)
        pairs.push_back({{"i", p.i}, {"j", p.j}, {"expected", to_json(p.expected)}, {"computed", to_json(p.computed)},
                         {"match", p.match}});
    for (const auto& c : r.clusters)
        clusters.push_back({{"point", point_json(c.point)}, {"walls", c.walls}});
    return Json{{"passed", r.passed},
                {"tolerance", r.tolerance},
                {"pairs", pairs},
                {"clusters", clusters},
                {"failures", r.failures},
                {"rightAngles", r.count_angle(2, r.tolerance)},
                {"thirdAngles", r.count_angle(3, r.tolerance)},
                {"quarterAngles", r.count_angle(4, r.tolerance)}};
}

Json to_json(const VolumeResult& v)
{
    return Json{{"volume", v.volume}, {"errorEstimate", v.error_estimate}, {"cells", v.cells}};
}

Json to_json(const PavingReport& r)
{
    Json degrees = Json::object();
    std::map<int, int> hist;
    for (const auto& [e, d] : r.edge_degrees)
        ++hist[d];
    for (const auto& [d, n] : hist)
        degrees[std::to_string(d)] = n;
    return Json{{"valid", r.valid},
                {"vertices", r.classes.vertex_count},
                {"edges", r.classes.edge_count},
                {"faces", r.classes.face_count},
                {"edgeDegreeCounts", degrees},
                {"degree3Edges", r.degree3_edges},
                {"degree5Edges", r.degree5_edges},
                {"reasons", r.reasons}};
}

Json to_json(const CTReport& r)
{
    Json degrees = Json::object();
    for (const auto& [d, n] : r.edge_degree_multiset)
        degrees[std::to_string(d)] = n;
    Json j{{"valid", r.valid()},
           {"honest", r.honest},
           {"linksAreFlagSpheres", r.links_are_flag_spheres},
           {"edgeDegreeMultiset", degrees},
           {"degreesInAllowedSet", r.degrees_in_allowed_set},
           {"failures", r.failures}};
    j["catalogMatch"] = r.catalog_match ? Json(*r.catalog_match) : Json(nullptr);
    return j;
}

Json to_json(const SystoleResult& r)
{
    return Json{{"length", r.length ? Json(*r.length) : Json(nullptr)},
                {"lowerBoundOnly", r.lower_bound_only},
                {"exploredRadius", r.explored_radius},
                {"witness", r.witness},
                {"witnessEdges", r.witness_edges},
                {"witnessClass", r.witness_class},
                {"semantics", to_string(r.semantics)},
                {"statesExplored", r.states_explored}};
}

Json link_summary(const LinkData& l)
{
    std::map<std::size_t, int> arcs;
    for (const auto& c : l.components)
        if (c.kind == LinkComponent::Kind::Edge)
            ++arcs[c.arcs.size()];
    Json hist = Json::object();
    for (const auto& [n, count] : arcs)
        hist[std::to_string(n)] = count;
    return Json{{"components", l.components.size()},
                {"faceComponents", l.face_components},
                {"edgeComponents", l.edge_components},
                {"totalArcs", l.total_arcs()},
                {"arcsPerEdgeComponent", hist}};
}

Json to_json(const SurfaceDescriptor& s)
{
    return Json{{"kind", to_string(s.kind)},
                {"index", s.index},
                {"punctures", s.puncture_count},
                {"cusps", s.cusp_set},
                {"boundaryEdges", s.boundary_edges}};
}

Json to_json(const BarrierCertificate& c)
{
    Json surfaces = Json::array();
    for (const auto& s : c.surfaces)
        surfaces.push_back(to_json(s));
    return Json{{"sysLen", c.sys_len},
                {"n", c.n},
                {"tetrahedra", c.tetrahedra},
                {"surfaces", surfaces},
                {"pairwiseCuspDisjoint", c.pairwise_cusp_disjoint},
                {"sourceLoop", c.source_loop},
                {"conclusion", c.conclusion}};
}

Json cycle_json(const HatTau& g, const std::vector<int>& vertices)
{
    static const char* kinds[] = {"tetrahedron", "face", "edge", "vertex"};
    Json out = Json::array();
    for (int v : vertices)
        out.push_back({{"vertex", v}, {"kind", kinds[static_cast<int>(g.kind(v))]}, {"simplex", g.simplex(v)}});
    return out;
}

Json to_json(const GroupTuple& t)
{
    Json words = Json::array();
    for (const auto& w : t.elements)
        words.push_back(word_to_string(w));
    return Json{{"rank", t.rank}, {"target", to_string(t.target)}, {"elements", words}};
}

GroupTuple tuple_from_json(const Json& j)
{
    GroupTuple t;
    try
    {
        t.rank = int_field(j, "rank");
        t.target = parse_target(field(j, "target").get<std::string>());
        for (const auto& w : field(j, "elements"))
            t.elements.push_back(normalize(parse_word(w.get<std::string>()), t.target, t.rank));
    }
    catch (const std::logic_error& e)
    {
        throw SchemaError(std::string("bad tuple: ") + e.what());
    }
    return t;
}

Json moves_json(const std::vector<Move>& moves)
{
    Json out = Json::array();
    for (const auto& m : moves)
        out.push_back(move_to_string(m));
    return out;
}

std::vector<Move> moves_from_json(const Json& j)
{
    std::vector<Move> out;
    for (const auto& m : j)
    {
        auto parsed = parse_moves(m.get<std::string>());
        if (parsed.size() != 1)
            throw SchemaError("each move entry must hold one move");
        out.push_back(parsed[0]);
    }
    return out;
}

const char* to_string(StageResult::Status s)
{
    switch (s)
    {
    case StageResult::Status::Pass:
        return "pass";
    case StageResult::Status::Fail:
        return "fail";
    default:
        return "skipped";
    }
}

bool RunReport::passed() const
{
    for (const auto& s : stages)
        if (s.status == StageResult::Status::Fail)
            return false;
    return true;
}

void RunReport::add(std::string name, Json result, bool ok, std::string reason)
{
    stages.push_back({std::move(name), ok ? StageResult::Status::Pass : StageResult::Status::Fail, std::move(reason),
                      std::move(result)});
}

void RunReport::skip(std::string name, std::string reason)
{
    stages.push_back({std::move(name), StageResult::Status::Skipped, std::move(reason), nullptr});
}

Json to_json(const RunReport& r)
{
    Json stages = Json::array();
    for (const auto& s : r.stages)
        stages.push_back({{"name", s.name}, {"status", to_string(s.status)}, {"reason", s.reason}, {"result", s.result}});
    return Json{{"command", r.command}, {"inputs", r.inputs}, {"stages", stages}, {"passed", r.passed()}};
}

RunReport run_report_from_json(const Json& j)
{
    RunReport r;
    r.command = field(j, "command").get<std::string>();
    r.inputs = field(j, "inputs");
    for (const auto& s : field(j, "stages"))
    {
        StageResult st;
        st.name = field(s, "name").get<std::string>();
        const std::string status = field(s, "status").get<std::string>();
        if (status == "pass")
            st.status = StageResult::Status::Pass;
        else if (status == "fail")
            st.status = StageResult::Status::Fail;
        else if (status == "skipped")
            st.status = StageResult::Status::Skipped;
        else
            throw SchemaError("unknown stage status '" + status + "'");
        st.reason = field(s, "reason").get<std::string>();
        st.result = field(s, "result");
        r.stages.push_back(std::move(st));
    }
    return r;
}

std::string to_text(const RunReport& r)
{
    std::ostringstream out;
    out << r.command << ": " << (r.passed() ? "PASS" : "FAIL") << '\n';
    for (const auto& s : r.stages)
    {
        out << "  " << s.name << ": " << to_string(s.status);
        if (!s.reason.empty())
            out << " (" << s.reason << ')';
        out << '\n';
        if (s.result.is_object())
            for (const auto& [k, v] : s.result.items())
                if (v.is_primitive())
                    out << "    " << k << " = " << v.dump() << '\n';
    }
    return out.str();
}

} // namespace ctlink
