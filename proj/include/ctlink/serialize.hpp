#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ctlink/dual_graph.hpp"
#include "ctlink/halfspace.hpp"
#include "ctlink/nielsen.hpp"
#include "ctlink/paving.hpp"
#include "ctlink/tangle.hpp"
#include "ctlink/triangulation.hpp"
#include "ctlink/volume.hpp"

namespace ctlink
{

using Json = nlohmann::json;

/// Malformed or inconsistent JSON input.
class SchemaError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Exact values. Rationals are strings "p/q"; a Q(sqrt 2) scalar is {"a", "b"}
// meaning a + b sqrt2, an inexact scalar is {"value": x}.
Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);
Json to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j);

// {"cubes": n, "gluings": [{cubeA, faceA, cubeB, faceB, symmetry}]}, each pair once.
Json to_json(const Paving& p);
Paving paving_from_json(const Json& j);

// {"tetrahedra": n, "gluings": [{tetA, faceA, tetB, faceB, cornerPermutation}]}.
Json to_json(const Triangulation& t);
Triangulation triangulation_from_json(const Json& j);

/// One line per tetrahedron with four entries "tet:perm" (perm as four
/// digits, perm[i] the corner glued to corner i), or "-" for a free face.
/// Preceded by the tetrahedron count.
std::string gluing_matrix(const Triangulation& t);
Triangulation parse_gluing_matrix(const std::string& text);

Json to_json(const GeometricTriangulation& g);

// Walls: {"type": "plane", "a", "b", "c", "keep": ">=" | "<="} or
// {"type": "hemisphere", "center": [x, y], "radius", "keep": "outside" | "inside"}.
Json to_json(const Wall& w);
Wall wall_from_json(const Json& j);
Json to_json(const PolyhedronSpec& p);
PolyhedronSpec polyhedron_from_json(const Json& j);
Json to_json(const AngleResult& a);
AngleResult angle_from_json(const Json& j);
Json to_json(const AngleTable& t);
AngleTable angle_table_from_json(const Json& j);

Json to_json(const VerificationReport& r);
Json to_json(const VolumeResult& v);
Json to_json(const PavingReport& r);
Json to_json(const CTReport& r);
Json to_json(const SystoleResult& r);
Json link_summary(const LinkData& l);
Json to_json(const SurfaceDescriptor& s);
Json to_json(const BarrierCertificate& c);

/// Vertex list of a dual-graph walk with the simplex behind each vertex.
Json cycle_json(const HatTau& g, const std::vector<int>& vertices);

Json to_json(const GroupTuple& t);
GroupTuple tuple_from_json(const Json& j);
Json moves_json(const std::vector<Move>& moves);
std::vector<Move> moves_from_json(const Json& j);

struct StageResult
{
    enum class Status
    {
        Pass,
        Fail,
        Skipped
    };

    std::string name;
    Status status = Status::Skipped;
    std::string reason; // failure or skip reason
    Json result;

    bool operator==(const StageResult&) const = default;
};

const char* to_string(StageResult::Status s);

struct RunReport
{
    std::string command;
    Json inputs = Json::object();
    std::vector<StageResult> stages;

    bool passed() const;
    void add(std::string name, Json result, bool ok, std::string reason = {});
    void skip(std::string name, std::string reason);
    bool operator==(const RunReport&) const = default;
};

Json to_json(const RunReport& r);
RunReport run_report_from_json(const Json& j);
/// Short human-readable summary, one line per stage.
std::string to_text(const RunReport& r);

} // namespace ctlink
