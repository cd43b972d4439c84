// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>

#include "cli.hpp"
#include "ctlink/dual_graph.hpp"
#include "ctlink/halfspace.hpp"
#include "ctlink/nielsen.hpp"
#include "ctlink/paving.hpp"
#include "ctlink/tangle.hpp"
#include "ctlink/triangulation.hpp"
#include "ctlink/volume.hpp"
#include "oracles.hpp"

using namespace ctlink;

namespace
{

struct Outcome
{
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok)
        {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
        }
    }
    void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<void(Outcome&)>& body)
{
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try
    {
        body(o);
    }
    catch (const std::exception& e)
    {
        o.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs < limit_s, "runtime " + std::to_string(secs) + " s over " + std::to_string(limit_s) + " s");
    std::printf("%s [%d] %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !o.pass;
}

std::string str(long v) { return std::to_string(v); }

} // namespace

int main()
{
    criterion(1, "polyhedron verification", 1.0, [](Outcome& o) {
        auto v = verify_polyhedron(build_tangle_polyhedron(), tangle_polyhedron_expected_angles(), 1e-9);
        o.require(v.passed, "angle table matches");
        int r = v.count_angle(2), t = v.count_angle(3), q = v.count_angle(4);
        o.require(r == 7 && t == 2 && q == 1, "angle counts 7/2/1");
        int exact = 0, other = 0;
        for (const auto& p : v.pairs)
        {
            const auto& c = p.computed;
            if (c.kind == AngleResult::Kind::Angle)
            {
                bool third = c.exact_cos && *c.exact_cos == QSqrt2(Rational(1, 2));
                bool quarter = c.exact_cos && *c.exact_cos == QSqrt2(Rational(0), Rational(1, 2));
                exact += third || quarter;
            }
            else if (c.kind != AngleResult::Kind::TangentIdeal && c.kind != AngleResult::Kind::Disjoint)
                ++other;
        }
        o.require(exact == 3, "exact cosines for the pi/3 and pi/4 pairs");
        o.require(other == 0, "remaining pairs tangent at an ideal vertex or disjoint");
        bool origin = false, inf = false;
        for (const auto& c : v.clusters)
        {
            inf |= c.point.at_infinity;
            origin |= !c.point.at_infinity && std::abs(c.point.x) < 1e-12 && std::abs(c.point.y) < 1e-12;
        }
        o.require(v.clusters.size() == 2 && origin && inf, "two ideal clusters at (0,0) and infinity");
        o.note("pi/2 x" + str(r) + ", pi/3 x" + str(t) + ", pi/4 x" + str(q) + ", clusters " + str(v.clusters.size()));
    });

    criterion(2, "edge-length bound", 1.0, [](Outcome& o) {
        auto lengths = euclidean_lengths(triangulate(torus_paving(1)));
        o.require(lengths.max_squared == Rational(21, 64), "max squared distance 21/64");
        bool cited = false;
        for (const auto& t : cube_tetrahedra())
            cited |= barycenter(t) == Point3Q{Rational(1, 4), Rational(1, 8), Rational(1, 2)};
        o.require(cited, "barycenter (1/4, 1/8, 1/2) present");
        o.note("max distance^2 = " + lengths.max_squared.str() + " (sqrt21/8 = " +
               std::to_string(lengths.max_distance) + ")");
    });

    criterion(3, "Cooper-Thurston validity", 10.0, [](Outcome& o) {
        int k = 1;
        for (; k <= 4; ++k)
        {
            auto t = triangulate(torus_paving(k)).triangulation;
            if (check_honesty(t, compute_skeleton(t)).honest)
                break;
        }
        o.require(k <= 4, "an honest torus triangulation with k <= 4");
        if (k > 4)
            return;
        auto t = triangulate(torus_paving(k)).triangulation;
        auto ct = validate_cooper_thurston(t);
        o.require(ct.links_are_flag_spheres, "vertex links are flag spheres");
        o.require(ct.degrees_in_allowed_set, "edge degrees in {4,6,8,10}");
        // Per cube: 12 cube edges of paving degree 4 shared by 4 cubes give
        // degree 8; 6 faces x 4 face-centre edges (red) shared by 2 cubes give
        // degree 4; 8 corner-to-centre edges (purple) give degree 6; 6
        // face-centre-to-centre edges (blue) give degree 4.
        long n = static_cast<long>(k) * k * k;
        std::map<int, long> closed{{8, 12 * n / 4}, {4, 6 * 4 * n / 2 + 6 * n}, {6, 8 * n}};
        o.require(ct.edge_degree_multiset == closed, "degree multiset matches the closed form");
        std::string ms;
        for (auto [d, c] : ct.edge_degree_multiset)
            ms += (ms.empty() ? "" : ", ") + str(d) + ":" + str(c);
        o.note("smallest honest k = " + str(k) + (k == 2 ? "" : " (k = 2 fails honesty)") + ", degrees {" + ms +
               "}");
    });

    criterion(4, "systole scaling", 300.0, [](Outcome& o) {
        int prev = 0;
        std::string lens;
        for (int k = 2; k <= 4; ++k)
        {
            testing::TorusFixture t(k);
            auto r = homological_systole(t.graph, t.ann);
            o.require(r.length.has_value() && !r.lower_bound_only, "finite exact systole at k = " + str(k));
            if (!r.length)
                return;
            o.require(*r.length > prev, "strictly increasing at k = " + str(k));
            prev = *r.length;
            lens += (lens.empty() ? "" : ", ") + str(*r.length);
            if (k == 2)
            {
                int brute = testing::brute_force_systole(t, 8);
                o.require(brute == *r.length, "brute-force oracle at k = 2 (got " + str(brute) + ")");
            }
        }
        o.note("sysLen(k=2,3,4) = " + lens + ", brute force agrees at k = 2");
    });

    criterion(5, "separated tetrahedra", 60.0, [](Outcome& o) {
        std::string notes;
        for (int k : {3, 4, 8})
        {
            testing::TorusFixture t(k);
            SystoleParams p;
            for (int i = 0; i < 24; ++i)
                p.sources.push_back(i);
            auto sys = homological_systole(t.graph, t.ann, p);
            o.require(sys.length.has_value(), "systole at k = " + str(k));
            if (!sys.length)
                return;
            auto sep = separated_tetrahedra(t.graph, sys.witness, *sys.length);
            o.require(static_cast<int>(sep.size()) == *sys.length / 16, "count floor(sysLen/16) at k = " + str(k));
            std::set<int> on(sys.witness.begin(), sys.witness.end());
            for (std::size_t i = 0; i < sep.size(); ++i)
            {
                o.require(on.count(sep[i]) && t.graph.is_barycenter(sep[i]), "barycenters on the loop");
                auto d = bfs_distances(t.graph, sep[i]);
                for (std::size_t j = i + 1; j < sep.size(); ++j)
                    o.require(d[sep[j]] >= 8 && d[sep[j]] >= 8 * static_cast<int>(j - i), "pairwise distance");
            }
            notes += (notes.empty() ? "" : ", ") + std::string("k=") + str(k) + ": sysLen " + str(*sys.length) +
                     " n=" + str(sep.size());
        }
        o.note(notes + " (k = 3, 4 are vacuous since sysLen < 16)");
    });

    criterion(6, "link combinatorics", 10.0, [](Outcome& o) {
        std::vector<Triangulation> complexes{boundary_of_4_simplex(), triangulate(torus_paving(2)).triangulation,
                                             triangulate(torus_paving(3)).triangulation};
        int global_max = 0;
        for (const auto& t : complexes)
        {
            auto s = compute_skeleton(t);
            auto l = build_link(t, s);
            o.require(static_cast<int>(l.components.size()) == s.face_count + s.edge_count, "components |F|+|E|");
            o.require(l.total_arcs() == 6L * t.size(), "total arcs 6|T|");
            auto fam = surface_family(t, s, l);
            for (const auto& d : fam)
            {
                int want = d.kind == SurfaceDescriptor::Kind::E ? s.edge_degree[d.index] + 1 : 4;
                o.require(d.puncture_count == want, "puncture table");
                global_max = std::max(global_max, d.puncture_count);
            }
            const int F = s.face_count, E = s.edge_count;
            std::set<std::pair<int, int>> oracle;
            for (int f = 0; f < F; ++f)
                for (int e : s.face_edges[f])
                    oracle.insert({f, F + e});
            for (int k = 0; k < t.size(); ++k)
                for (int e : s.tet_edge[k])
                    oracle.insert({F + e, F + E + k});
            auto pat = intersection_pattern(fam);
            o.require(std::set<std::pair<int, int>>(pat.single_arc.begin(), pat.single_arc.end()) == oracle &&
                          pat.single_arc.size() == oracle.size(),
                      "intersection pattern equals incidence oracle");
        }
        o.require(global_max <= 11, "max punctures <= 11");
        o.note(str(complexes.size()) + " complexes, max punctures " + str(global_max));
    });

    criterion(7, "barrier certificate pipeline", 300.0, [](Outcome& o) {
        int prev = -1;
        std::string notes;
        for (int k = 2; k <= 4; ++k)
        {
            cli::PipelineOptions opt;
            opt.stages = {};
            opt.stages.paving = opt.stages.cooper_thurston = false;
            opt.stages.certificate = true;
            auto r = cli::run_pipeline(torus_paving(k), Json{{"torus", k}}, opt);
            const StageResult* cert = nullptr;
            for (const auto& s : r.stages)
                if (s.name == "certificate")
                    cert = &s;
            o.require(cert && cert->status == StageResult::Status::Pass, "certificate produced at k = " + str(k));
            if (!cert || cert->status != StageResult::Status::Pass)
                return;
            int n = cert->result["n"], len = cert->result["sysLen"];
            o.require(n == len / 16, "n = floor(sysLen/16)");
            o.require(cert->result["pairwiseCuspDisjoint"] == true, "pairwise disjoint cusp sets");
            o.require(n >= prev, "n nondecreasing");
            prev = n;
            notes += (notes.empty() ? "" : ", ") + std::string("k=") + str(k) + ": n=" + str(n);
        }
        o.note(notes + " (sysLen < 16 gives n = 0)");
    });

    criterion(8, "volume bookkeeping", 60.0, [](Outcome& o) {
        auto spec = build_tangle_polyhedron();
        QuadratureParams q;
        q.max_depth = 14;
        double v14 = polyhedron_volume(spec, q).volume;
        q.max_depth = 15;
        double v15 = polyhedron_volume(spec, q).volume;
        double rel = std::abs(v15 - v14) / v15;
        o.require(rel < 1e-4, "depth 14 vs 15 within 1e-4 relative");
        auto t = triangulate(torus_paving(2)).triangulation;
        o.require(complement_volume(t, v15) == 24.0 * t.size() * v15, "complement volume 24|T| vol(P)");
        char buf[128];
        std::snprintf(buf, sizeof buf, "vol(P) = %.8f, relative change %.2e", v15, rel);
        o.note(buf);
    });

    criterion(9, "Nielsen suite", 30.0, [](Outcome& o) {
        std::mt19937 rng(2024);
        auto word = [&](int rank, int len) {
            Word w;
            for (int i = 0; i < len; ++i)
            {
                int g = 1 + static_cast<int>(rng() % rank);
                w.push_back(rng() % 2 ? g : -g);
            }
            return free_reduce(w);
        };
        auto move = [&](int n) {
            int i = static_cast<int>(rng() % n), j = static_cast<int>(rng() % (n - 1));
            j += j >= i;
            int kind = static_cast<int>(rng() % 3);
            return kind == 0 ? Move{Move::Kind::Invert, i, i}
                             : Move{kind == 1 ? Move::Kind::RightMultiply : Move::Kind::Swap, i, j};
        };
        int trials = 0;
        for (; trials < 1000 && o.pass; ++trials)
        {
            int rank = 2 + static_cast<int>(rng() % 2);
            TargetKind tk = rng() % 2 ? TargetKind::Free : TargetKind::FreeAbelian;
            Homomorphism phi{rank, rank, tk, {}};
            for (int i = 0; i < rank; ++i)
                phi.images.push_back(normalize(word(rank, 4), tk, rank));
            std::vector<Move> moves;
            for (int m = 0; m < 6; ++m)
                moves.push_back(move(rank));

            auto basis = standard_basis(rank, TargetKind::Free);
            GroupTuple cur = basis;
            for (std::size_t len = 1; len <= moves.size(); ++len)
            {
                std::vector<Move> prefix(moves.begin(), moves.begin() + len);
                auto r = lift_moves(basis, phi.apply(basis), phi, prefix);
                o.require(phi.apply(r.basis) == r.images, "phi-compatibility after a prefix");
                cur = r.basis;
            }
            GroupTuple back = cur;
            for (auto it = moves.rbegin(); it != moves.rend(); ++it)
                back = apply_moves(back, inverse_moves(*it));
            o.require(back == basis, "move invertibility");
            o.require(is_basis(cur), "moves preserve bases");
            long long det = abelianized_determinant(cur);
            o.require(det == 1 || det == -1, "determinant of a basis is +-1");
            GroupTuple bad = basis;
            bad.elements[rng() % rank] = normalize(word(rank, 5), TargetKind::Free, rank);
            bool was = is_basis(bad);
            auto moved = apply_moves(bad, moves);
            o.require(is_basis(moved) == was, "basis status invariant under moves");
            if (!was)
                continue;
            long long d2 = abelianized_determinant(moved);
            o.require(d2 == 1 || d2 == -1, "determinant necessary condition");
        }
        o.note(str(trials) + " randomized trials");
    });

    return failures == 0 ? 0 : 1;
}
