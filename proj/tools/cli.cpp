#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ctlink/dual_graph.hpp"
#include "ctlink/halfspace.hpp"
#include "ctlink/nielsen.hpp"
#include "ctlink/tangle.hpp"
#include "ctlink/triangulation.hpp"
#include "ctlink/volume.hpp"

namespace ctlink::cli
{

namespace
{

class InputError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Json read_json(const std::string& path)
{
    try
    {
        return Json::parse(read_file(path));
    }
    catch (const Json::exception& e)
    {
        throw InputError("'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out || !(out << text))
        throw InputError("cannot write '" + path + "'");
}

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, sep))
        out.push_back(item);
    return out;
}

// Runs body, recording a failed stage with the exception text on error.
template <class F> bool guarded(RunReport& r, const std::string& name, F&& body)
{
    try
    {
        return body();
    }
    catch (const std::exception& e)
    {
        r.add(name, nullptr, false, e.what());
        return false;
    }
}

} // namespace

RunReport run_pipeline(const Paving& paving, const Json& inputs, const PipelineOptions& o)
{
    RunReport r;
    r.command = "pipeline";
    r.inputs = inputs;
    r.inputs["tol"] = o.tol;
    r.inputs["quadDepth"] = o.quad_depth;
    r.inputs["cap"] = o.cap;
    r.inputs["assertAbelianPi1"] = o.assert_abelian_pi1;

    if (o.stages.paving)
        guarded(r, "paving", [&] {
            auto rep = validate_paving(paving);
            r.add("paving", to_json(rep), rep.valid, rep.valid ? "" : "paving violates the degree conditions");
            return rep.valid;
        });
    else
        r.skip("paving", "not requested");

    std::optional<GeometricTriangulation> geo;
    std::optional<Skeleton> skel;
    guarded(r, "triangulation", [&] {
        if (!paving.is_closed())
            throw std::invalid_argument("paving has unglued faces");
        geo = triangulate(paving);
        skel = compute_skeleton(geo->triangulation);
        r.add("triangulation", {{"tetrahedra", geo->triangulation.size()},
                                {"vertices", skel->vertex_count},
                                {"edges", skel->edge_count},
                                {"faces", skel->face_count},
                                {"orientable", skel->orientable}},
              true);
        return true;
    });
    const Triangulation* tri = geo ? &geo->triangulation : nullptr;
    auto needs_tri = [&](const std::string& name, bool requested) {
        if (!requested)
            r.skip(name, "not requested");
        else if (!tri)
            r.skip(name, "triangulation unavailable");
        return requested && tri;
    };

    if (needs_tri("cooper_thurston", o.stages.cooper_thurston))
        guarded(r, "cooper_thurston", [&] {
            auto ct = validate_cooper_thurston(*tri);
            r.add("cooper_thurston", to_json(ct), ct.valid(),
                  ct.valid() ? "" : (ct.failures.empty() ? "not Cooper-Thurston" : ct.failures.front()));
            return ct.valid();
        });

    std::optional<HatTau> graph;
    std::optional<HomologyAnnotation> ann;
    std::optional<SystoleResult> sys;
    if (needs_tri("systole", o.stages.systole || o.stages.certificate))
        guarded(r, "systole", [&] {
            graph = build_dual_graph(*tri, *skel);
            ann = homology_annotations(*tri, *skel, *graph);
            SystoleParams p;
            p.cap = o.cap;
            p.assert_abelian_pi1 = o.assert_abelian_pi1;
            p.sources = o.sources;
            sys = homological_systole(*graph, *ann, p);
            Json j = to_json(*sys);
            j["homologyRank"] = ann->rank;
            j["cycle"] = cycle_json(*graph, sys->witness);
            r.add("systole", j, true, sys->lower_bound_only ? "search capped; length is a lower bound" : "");
            return true;
        });

    std::optional<LinkData> link;
    if (needs_tri("link", o.stages.link || o.stages.certificate))
        guarded(r, "link", [&] {
            link = build_link(*tri, *skel);
            auto fam = surface_family(*tri, *skel, *link);
            auto pat = intersection_pattern(fam);
            int max_p = 0;
            for (const auto& s : fam)
                max_p = std::max(max_p, s.puncture_count);
            Json j = link_summary(*link);
            j["surfaces"] = fam.size();
            j["maxPunctures"] = max_p;
            j["singleArcPairs"] = pat.single_arc.size();
            bool ok = static_cast<int>(link->components.size()) == skel->face_count + skel->edge_count &&
                      link->total_arcs() == 6L * tri->size() && max_p <= 11;
            r.add("link", j, ok, ok ? "" : "link counts disagree with the triangulation");
            return ok;
        });

    if (!o.stages.certificate)
        r.skip("certificate", "not requested");
    else if (!sys || !link)
        r.skip("certificate", "systole or link stage unavailable");
    else if (!sys->length)
        r.skip("certificate", "no homologically essential loop");
    else if (sys->lower_bound_only)
        r.skip("certificate", "systole search was capped");
    else
        guarded(r, "certificate", [&] {
            auto c = barrier_certificate(*tri, *skel, *graph, *ann, *link, sys->witness, sys->witness_edges,
                                         *sys->length);
            r.add("certificate", to_json(c), c.pairwise_cusp_disjoint,
                  c.pairwise_cusp_disjoint ? "" : "cusp sets overlap");
            return c.pairwise_cusp_disjoint;
        });

    if (o.stages.polyhedron)
        guarded(r, "polyhedron", [&] {
            auto v = verify_polyhedron(build_tangle_polyhedron(), tangle_polyhedron_expected_angles(), o.tol);
            r.add("polyhedron", to_json(v), v.passed, v.passed ? "" : v.failures.front());
            return v.passed;
        });
    else
        r.skip("polyhedron", "not requested");

    if (o.stages.volume)
        guarded(r, "volume", [&] {
            QuadratureParams q;
            q.max_depth = o.quad_depth;
            auto v = polyhedron_volume(build_tangle_polyhedron(), q);
            Json j = to_json(v);
            if (tri)
                j["complementVolume"] = complement_volume(*tri, v.volume);
            r.add("volume", j, true);
            return true;
        });
    else
        r.skip("volume", "not requested");
    return r;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Cube pavings, Cooper-Thurston triangulations, tangle links and their certificates"};
    app.require_subcommand(1);

    std::string out_path;
    bool quiet = false, json_stdout = false;
    double tol = Defaults::tol;
    int quad_depth = Defaults::quad_depth;
    std::size_t cap = Defaults::cap;
    const std::string pre = Defaults::env_prefix;
    auto common = [&](CLI::App* c) {
        c->add_option("--out", out_path, "Write the JSON report to this file");
        c->add_flag("--quiet", quiet, "Suppress the text summary");
        c->add_flag("--json", json_stdout, "Print the JSON report on stdout");
    };
    auto numeric = [&](CLI::App* c) {
        c->add_option("--tol", tol, "Angle tolerance")->envname(pre + "TOL");
        c->add_option("--quad-depth", quad_depth, "Quadrature depth")->envname(pre + "QUAD_DEPTH")->check(CLI::Range(2, 30));
        c->add_option("--cap", cap, "Search cap")->envname(pre + "CAP");
    };

    // Paving source shared by the manifold subcommands.
    int torus = 0;
    std::string paving_file, export_paving, export_tri, export_matrix;
    bool assert_abelian = false;
    auto source = [&](CLI::App* c) {
        auto* t = c->add_option("--torus", torus, "Use the k x k x k cube paving of the 3-torus")->check(CLI::PositiveNumber);
        auto* p = c->add_option("--paving", paving_file, "Read a paving JSON file");
        t->excludes(p);
        c->add_flag("--assert-abelian-pi1", assert_abelian, "Declare the fundamental group abelian");
        c->add_option("--export-paving", export_paving, "Write the paving as JSON");
        c->add_option("--export-triangulation", export_tri, "Write the triangulation with coordinates as JSON");
        c->add_option("--export-matrix", export_matrix, "Write the triangulation gluing matrix as text");
    };

    auto* pipeline = app.add_subcommand("pipeline", "Run the pipeline stages on a paving");
    bool all = false;
    Stages picked;
    source(pipeline);
    numeric(pipeline);
    common(pipeline);
    pipeline->add_flag("--all", all, "Run every stage");
    pipeline->add_flag("--systole", picked.systole, "Run the systole stage");
    pipeline->add_flag("--link", picked.link, "Run the link stage");
    pipeline->add_flag("--certificate", picked.certificate, "Run the certificate stage");
    pipeline->add_flag("--polyhedron", picked.polyhedron, "Run the polyhedron verification stage");
    pipeline->add_flag("--volume", picked.volume, "Run the volume stage");

    auto* systole = app.add_subcommand("systole", "Homological systole of the dual graph");
    source(systole);
    numeric(systole);
    common(systole);

    auto* linkcmd = app.add_subcommand("link", "Tangle link and barrier surfaces");
    std::string svg_path;
    source(linkcmd);
    numeric(linkcmd);
    common(linkcmd);
    linkcmd->add_option("--svg", svg_path, "Write the per-face tangle picture as SVG");

    auto* cert = app.add_subcommand("certificate", "Barrier certificate along a shortest essential loop");
    source(cert);
    numeric(cert);
    common(cert);

    auto* volume = app.add_subcommand("volume", "Hyperbolic volume of the polyhedron");
    std::string poly = "canonical";
    int tets = 0;
    volume->add_option("--polyhedron", poly, "canonical, or a polyhedron JSON file");
    volume->add_option("--complement-tets", tets, "Also report the complement volume for this many tetrahedra")
        ->check(CLI::NonNegativeNumber);
    numeric(volume);
    common(volume);

    auto* polycmd = app.add_subcommand("polyhedron", "Polyhedron tools");
    polycmd->require_subcommand(1);
    auto* verify = polycmd->add_subcommand("verify", "Check the dihedral angle table");
    std::string expected_file, export_poly;
    verify->add_option("--polyhedron", poly, "canonical, or a polyhedron JSON file");
    verify->add_option("--expected", expected_file, "Expected angle table JSON (default: the canonical table)");
    verify->add_option("--export", export_poly, "Write the polyhedron as JSON");
    numeric(verify);
    common(verify);

    auto* nielsen = app.add_subcommand("nielsen", "Nielsen moves in free groups");
    nielsen->require_subcommand(1);
    int rank = 2, target_rank = 0, max_len = 12;
    std::string target = "free", moves_text, images_text, elements_text, from_text, to_text_arg;
    auto* lift = nielsen->add_subcommand("lift", "Lift moves on images to a basis of the free group");
    lift->add_option("--rank", rank, "Free group rank")->check(CLI::PositiveNumber);
    lift->add_option("--target", target, "Target group: free or ab");
    lift->add_option("--target-rank", target_rank, "Target rank (default: rank)");
    lift->add_option("--images", images_text, "Comma-separated generator images (default: the generators)");
    lift->add_option("--moves", moves_text, "Moves such as \"R 1 2; I 2\"")->required();
    common(lift);
    auto* basis = nielsen->add_subcommand("basis", "Decide whether a tuple is a free basis");
    basis->add_option("--rank", rank, "Free group rank")->check(CLI::PositiveNumber);
    basis->add_option("--elements", elements_text, "Comma-separated words")->required();
    numeric(basis);
    common(basis);
    auto* search = nielsen->add_subcommand("search", "Bounded search for a move sequence between tuples");
    search->add_option("--rank", rank, "Group rank")->check(CLI::PositiveNumber);
    search->add_option("--target", target, "Group: free or ab");
    search->add_option("--from", from_text, "Comma-separated words")->required();
    search->add_option("--to", to_text_arg, "Comma-separated words")->required();
    search->add_option("--max-len", max_len, "Bound on the total word length")->check(CLI::PositiveNumber);
    numeric(search);
    common(search);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        return app.exit(e, out, err);
    }

    RunReport report;
    try
    {
        auto load_paving = [&](Json& inputs) {
            Paving p;
            if (!paving_file.empty())
            {
                inputs["paving"] = paving_file;
                try
                {
                    p = paving_from_json(read_json(paving_file));
                }
                catch (const SchemaError& e)
                {
                    throw InputError("'" + paving_file + "': " + e.what());
                }
            }
            else if (torus > 0)
            {
                inputs["torus"] = torus;
                p = torus_paving(torus);
            }
            else
                throw InputError("give --torus K or --paving FILE");
            if (!export_paving.empty())
                write_file(export_paving, to_json(p).dump(2) + "\n");
            if ((!export_tri.empty() || !export_matrix.empty()) && p.is_closed())
            {
                auto g = triangulate(p);
                if (!export_tri.empty())
                    write_file(export_tri, to_json(g).dump(2) + "\n");
                if (!export_matrix.empty())
                    write_file(export_matrix, gluing_matrix(g.triangulation));
            }
            return p;
        };
        auto options = [&] {
            PipelineOptions o;
            o.tol = tol;
            o.quad_depth = quad_depth;
            o.cap = cap;
            o.assert_abelian_pi1 = assert_abelian;
            // Translations act transitively on cubes of the torus paving,
            // so one cube's tetrahedra suffice as sources.
            if (torus >= 5)
                for (int t = 0; t < 24; ++t)
                    o.sources.push_back(t);
            return o;
        };
        auto manifold = [&](const std::string& name, Stages st) {
            Json inputs = Json::object();
            Paving p = load_paving(inputs);
            PipelineOptions o = options();
            o.stages = st;
            if (!o.sources.empty())
                inputs["systoleSources"] = "tetrahedra of cube 0";
            report = run_pipeline(p, inputs, o);
            report.command = name;
        };
        auto load_polyhedron = [&] {
            if (poly == "canonical")
                return build_tangle_polyhedron();
            try
            {
                return polyhedron_from_json(read_json(poly));
            }
            catch (const SchemaError& e)
            {
                throw InputError("'" + poly + "': " + e.what());
            }
        };
        auto parse_tuple = [&](const std::string& text, int rk, TargetKind tk) {
            GroupTuple t{rk, tk, {}};
            for (const auto& w : split(text, ','))
                t.elements.push_back(normalize(parse_word(w), tk, rk));
            return t;
        };

        if (*pipeline)
        {
            Stages st = all ? Stages::all() : picked;
            manifold("pipeline", st);
        }
        else if (*systole)
        {
            Stages st;
            st.paving = st.cooper_thurston = false;
            st.systole = true;
            manifold("systole", st);
        }
        else if (*linkcmd)
        {
            Stages st;
            st.paving = st.cooper_thurston = false;
            st.link = true;
            manifold("link", st);
            if (!svg_path.empty())
                write_file(svg_path, tangle_face_svg(build_tangle_spec()));
        }
        else if (*cert)
        {
            Stages st;
            st.paving = st.cooper_thurston = false;
            st.certificate = true;
            manifold("certificate", st);
        }
        else if (*volume)
        {
            report.command = "volume";
            report.inputs = {{"polyhedron", poly}, {"quadDepth", quad_depth}};
            PolyhedronSpec spec = load_polyhedron();
            guarded(report, "volume", [&] {
                QuadratureParams q;
                q.max_depth = quad_depth;
                auto v = polyhedron_volume(spec, q);
                Json j = to_json(v);
                if (tets > 0)
                {
                    report.inputs["complementTets"] = tets;
                    j["complementVolume"] = 24.0 * tets * v.volume;
                }
                report.add("volume", j, true);
                return true;
            });
        }
        else if (*verify)
        {
            report.command = "polyhedron verify";
            report.inputs = {{"polyhedron", poly}, {"tol", tol}};
            PolyhedronSpec spec = load_polyhedron();
            if (!export_poly.empty())
                write_file(export_poly, to_json(spec).dump(2) + "\n");
            AngleTable expected = tangle_polyhedron_expected_angles();
            if (!expected_file.empty())
            {
                report.inputs["expected"] = expected_file;
                try
                {
                    expected = angle_table_from_json(read_json(expected_file));
                }
                catch (const SchemaError& e)
                {
                    throw InputError("'" + expected_file + "': " + e.what());
                }
            }
            guarded(report, "polyhedron", [&] {
                auto v = verify_polyhedron(spec, expected, tol);
                report.add("polyhedron", to_json(v), v.passed, v.passed ? "" : v.failures.front());
                return v.passed;
            });
        }
        else if (*lift)
        {
            report.command = "nielsen lift";
            TargetKind tk = parse_target(target);
            int trk = target_rank > 0 ? target_rank : rank;
            Homomorphism phi{rank, trk, tk, {}};
            if (images_text.empty())
            {
                if (trk < rank)
                    throw InputError("default images need target rank >= rank");
                for (int k = 1; k <= rank; ++k)
                    phi.images.push_back({k});
            }
            else
                phi.images = parse_tuple(images_text, trk, tk).elements;
            if (static_cast<int>(phi.images.size()) != rank)
                throw InputError("need one image per generator");
            auto moves = parse_moves(moves_text);
            report.inputs = {{"rank", rank}, {"target", to_string(tk)}, {"targetRank", trk},
                             {"images", to_json(GroupTuple{trk, tk, phi.images})["elements"]},
                             {"moves", moves_json(moves)}};
            guarded(report, "lift", [&] {
                GroupTuple start = standard_basis(rank, TargetKind::Free);
                auto res = lift_moves(start, phi.apply(start), phi, moves);
                report.add("lift", {{"basis", to_json(res.basis)}, {"images", to_json(res.images)}}, true);
                return true;
            });
        }
        else if (*basis)
        {
            report.command = "nielsen basis";
            GroupTuple t = parse_tuple(elements_text, rank, TargetKind::Free);
            report.inputs = {{"tuple", to_json(t)}};
            guarded(report, "basis", [&] {
                Json j{{"isBasis", is_basis(t)}};
                if (static_cast<int>(t.elements.size()) == rank)
                    j["abelianizedDeterminant"] = abelianized_determinant(t);
                report.add("basis", j, true);
                return true;
            });
        }
        else if (*search)
        {
            report.command = "nielsen search";
            TargetKind tk = parse_target(target);
            GroupTuple a = parse_tuple(from_text, rank, tk), b = parse_tuple(to_text_arg, rank, tk);
            report.inputs = {{"from", to_json(a)}, {"to", to_json(b)}, {"maxLen", max_len}, {"cap", cap}};
            guarded(report, "search", [&] {
                auto res = equivalence_search(a, b, max_len, cap);
                report.add("search",
                           {{"status", to_string(res.status)}, {"moves", moves_json(res.moves)}, {"states", res.states}},
                           true);
                return true;
            });
        }
    }
    catch (const std::exception& e)
    {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try
    {
        if (!out_path.empty())
            write_file(out_path, to_json(report).dump(2) + "\n");
    }
    catch (const std::exception& e)
    {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    if (json_stdout)
        out << to_json(report).dump(2) << '\n';
    else if (!quiet)
        out << to_text(report);
    if (!report.passed())
        for (const auto& s : report.stages)
            if (s.status == StageResult::Status::Fail)
                err << "stage " << s.name << " failed: " << s.reason << '\n';
    return report.passed() ? 0 : 1;
}

} // namespace ctlink::cli
