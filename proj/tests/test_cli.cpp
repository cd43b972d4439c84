#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace ctlink;

namespace
{

struct Result
{
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args)
{
    args.insert(args.begin(), "ctlink");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name)
{
    return (std::filesystem::temp_directory_path() / ("ctlink_test_" + name)).string();
}

Json read(const std::string& path)
{
    std::ifstream in(path);
    return Json::parse(in);
}

} // namespace

TEST_CASE("polyhedron verify")
{
    auto r = run({"polyhedron", "verify"});
    CHECK(r.code == 0);
    CHECK(r.out.find("polyhedron: pass") != std::string::npos);
}

TEST_CASE("pipeline exit codes")
{
    CHECK(run({"pipeline", "--paving", "missing.json"}).code == 2);
    CHECK(run({"pipeline"}).code == 2);
    CHECK(run({"frobnicate"}).code != 0);
    CHECK(run({"pipeline", "--torus", "3", "--all", "--quiet", "--quad-depth", "5"}).code == 0);
    auto two = run({"pipeline", "--torus", "2", "--all", "--quiet", "--quad-depth", "5"});
    CHECK(two.code == 1);
    CHECK(two.err.find("cooper_thurston") != std::string::npos);

    auto bad = temp_path("bad.json");
    std::ofstream(bad) << "{ not json";
    CHECK(run({"pipeline", "--paving", bad}).code == 2);
    std::ofstream(bad) << R"({"cubes": 1, "gluings": []})";
    auto open = run({"pipeline", "--paving", bad, "--quiet"});
    CHECK(open.code == 1);
    std::remove(bad.c_str());
}

TEST_CASE("exported files load back")
{
    auto pav = temp_path("paving.json"), tri = temp_path("tri.json"), mat = temp_path("tri.txt");
    auto out1 = temp_path("r1.json"), out2 = temp_path("r2.json");
    auto a = run({"systole", "--torus", "3", "--quiet", "--export-paving", pav, "--export-triangulation", tri,
                  "--export-matrix", mat, "--out", out1});
    REQUIRE(a.code == 0);
    CHECK(read(tri)["tetrahedra"] == 648);
    auto b = run({"systole", "--paving", pav, "--quiet", "--out", out2});
    REQUIRE(b.code == 0);
    Json r1 = read(out1), r2 = read(out2);
    CHECK(r1["stages"] == r2["stages"]);
    CHECK(r1["stages"][3]["result"]["length"] == 6);
    for (const auto& p : {pav, tri, mat, out1, out2})
        std::remove(p.c_str());
}

TEST_CASE("systole with the abelian assertion")
{
    auto r = run({"systole", "--torus", "3", "--assert-abelian-pi1", "--json"});
    CHECK(r.code == 0);
    auto j = Json::parse(r.out);
    CHECK(j["stages"][3]["name"] == "systole");
    CHECK(j["stages"][3]["result"]["semantics"] == "exactForAbelianPi1");
}

TEST_CASE("certificate and link subcommands")
{
    auto c = run({"certificate", "--torus", "3", "--json"});
    CHECK(c.code == 0);
    auto j = Json::parse(c.out);
    CHECK(j["stages"][5]["name"] == "certificate");
    CHECK(j["stages"][5]["result"]["n"] == 0);

    auto svg = temp_path("face.svg");
    auto l = run({"link", "--torus", "2", "--json", "--svg", svg});
    CHECK(l.code == 0);
    auto lj = Json::parse(l.out);
    CHECK(lj["stages"][4]["result"]["totalArcs"] == 6 * 192);
    std::ifstream in(svg);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text.find("<svg") != std::string::npos);
    std::remove(svg.c_str());
}

TEST_CASE("nielsen subcommands")
{
    auto lift = run({"nielsen", "lift", "--rank", "2", "--target", "ab", "--moves", "R 1 2; I 2", "--json"});
    REQUIRE(lift.code == 0);
    auto j = Json::parse(lift.out);
    CHECK(j["stages"][0]["result"]["basis"]["elements"] == Json::array({"ab", "B"}));

    auto basis = run({"nielsen", "basis", "--elements", "ab,aba", "--json"});
    CHECK(Json::parse(basis.out)["stages"][0]["result"]["isBasis"] == true);
    auto search = run({"nielsen", "search", "--from", "a,b", "--to", "ab,b", "--json"});
    CHECK(Json::parse(search.out)["stages"][0]["result"]["status"] == "found");
    CHECK(run({"nielsen", "lift", "--rank", "2", "--moves", "R 1 1"}).code == 1);
    CHECK(run({"nielsen", "lift", "--rank", "2", "--moves", "X"}).code == 2);
}

TEST_CASE("flags override environment variables, which override defaults")
{
    auto depth = [](const Result& r) { return Json::parse(r.out)["inputs"]["quadDepth"].get<int>(); };
    ::unsetenv("CTLINK_QUAD_DEPTH");
    CHECK(depth(run({"volume", "--json", "--quad-depth", "4"})) == 4);
    ::setenv("CTLINK_QUAD_DEPTH", "5", 1);
    CHECK(depth(run({"volume", "--json"})) == 5);
    CHECK(depth(run({"volume", "--json", "--quad-depth", "6"})) == 6);
    ::unsetenv("CTLINK_QUAD_DEPTH");
    CHECK(depth(run({"volume", "--json"})) == 8);
    CHECK(cli::Defaults::quad_depth == 8);
    CHECK(cli::Defaults::tol == 1e-9);
    CHECK(cli::Defaults::cap == 10'000'000u);
}

TEST_CASE("volume with complement")
{
    auto r = run({"volume", "--quad-depth", "5", "--complement-tets", "10", "--json"});
    REQUIRE(r.code == 0);
    auto res = Json::parse(r.out)["stages"][0]["result"];
    CHECK(res["complementVolume"].get<double>() == doctest::Approx(240 * res["volume"].get<double>()));
    CHECK(run({"volume", "--polyhedron", "nope.json"}).code == 2);
}
