#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctlink/triangulation.hpp"

namespace ctlink
{

/// Bipartite graph joining each tetrahedron barycenter (colour A) to the
/// barycenters of its faces, edges and vertices (colour B).
/// Vertex ids: tetrahedra [0, T), then faces, edges, vertices.
/// Edge 14 t + slot leaves tetrahedron t; slots 0..3 are faces (opposite
/// corner i), 4..9 local edges, 10..13 corners.
class HatTau
{
  public:
    enum class Kind
    {
        Tetrahedron,
        Face,
        Edge,
        Vertex
    };

    HatTau() = default;
    HatTau(const Skeleton& s, int tetrahedra);

    int tet_count() const { return tets_; }
    int vertex_count() const { return tets_ + faces_ + edges_ + verts_; }
    int edge_total() const { return 14 * tets_; }

    Kind kind(int v) const;
    int simplex(int v) const; // class index of the simplex behind vertex v
    int face_vertex(int f) const { return tets_ + f; }
    int edge_vertex(int e) const { return tets_ + faces_ + e; }
    int vertex_vertex(int v) const { return tets_ + faces_ + edges_ + v; }
    bool is_barycenter(int v) const { return v >= 0 && v < tets_; }

    int edge_tet(int edge) const { return edge / 14; }
    int edge_other(int edge) const { return other_[edge]; }
    int edge_slot(int edge) const { return edge % 14; }

    // Calls f(neighbour, edge id) for every edge at v, in a fixed order.
    template <class F> void for_each_edge(int v, F&& f) const
    {
        if (v < tets_)
            for (int s = 0; s < 14; ++s)
                f(other_[14 * v + s], 14 * v + s);
        else
            for (int e : incident_[v - tets_])
                f(e / 14, e);
    }

  private:
    int tets_ = 0, faces_ = 0, edges_ = 0, verts_ = 0;
    std::vector<int> other_;
    std::vector<std::vector<int>> incident_;
};

HatTau build_dual_graph(const Triangulation& t, const Skeleton& s);

/// Breadth-first distances from one vertex (-1 when unreachable).
std::vector<int> bfs_distances(const HatTau& g, int source);

struct HomologyAnnotation
{
    int rank = 0;                             // dimension of H_1(M; Z/2)
    std::vector<std::uint64_t> edge_classes;  // per dual-graph edge
    std::vector<std::uint64_t> tedge_classes; // per edge class of the triangulation
};

/// Z/2 first cohomology of the triangulation's 2-skeleton pulled back to the
/// dual graph. `tree_choice` selects one of two spanning trees. Rank above 64
/// is rejected.
HomologyAnnotation homology_annotations(const Triangulation& t, const Skeleton& s, const HatTau& g,
                                        int tree_choice = 0);

/// Class of a closed walk given by its dual-graph edge ids.
std::uint64_t walk_class(const HomologyAnnotation& a, const std::vector<int>& edges);

struct SystoleParams
{
    std::size_t cap = 10'000'000;     // covering states per source
    bool assert_abelian_pi1 = false;
    std::vector<int> sources;         // barycenters to start from; empty means all, pruned by index
};

struct SystoleResult
{
    enum class Semantics
    {
        Homological,
        ExactForAbelianPi1
    };

    std::optional<int> length;       // empty when infinite
    bool lower_bound_only = false;   // length is then a lower bound
    int explored_radius = -1;        // radius fully explored from every source when capped
    std::vector<int> witness;        // closed walk as vertex list (first vertex not repeated)
    std::vector<int> witness_edges;
    std::uint64_t witness_class = 0;
    Semantics semantics = Semantics::Homological;
    std::size_t states_explored = 0;
};

const char* to_string(SystoleResult::Semantics s);

/// Shortest closed walk with nonzero Z/2 class, by breadth-first search in
/// the (Z/2)^b covering graph from each barycenter.
SystoleResult homological_systole(const HatTau& g, const HomologyAnnotation& a, const SystoleParams& params = {});

class SeparationError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// floor(sysLen / 16) barycenters on the cycle: the least-indexed barycenter,
/// then for each k a cycle vertex at distance exactly 8k from it. Pairwise
/// distances are checked against 8 |j - i| before returning.
std::vector<int> separated_tetrahedra(const HatTau& g, const std::vector<int>& cycle, int sys_len);

} // namespace ctlink
