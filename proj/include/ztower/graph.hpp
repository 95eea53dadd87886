#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ztower/bigint.hpp"
#include "ztower/error.hpp"
#include "ztower/matrix.hpp"

namespace ztower {

using VertexId = std::size_t;
using EdgeId = std::size_t;

struct DirectedEdge {
    VertexId origin = 0;
    VertexId terminus = 0;
    EdgeId inverse = 0;

    friend bool operator==(const DirectedEdge &, const DirectedEdge &) = default;
};

/// Finite multigraph in Serre's formalism: a set of directed edges with a
/// fixed-point-free inversion e -> ē satisfying o(ē) = t(e).
///
/// Construction never validates; call validate() on graphs that come from
/// outside. Graphs built through add_edge() are valid by construction.
class SerreGraph {
  public:
    SerreGraph() = default;

    /// Raw constructor, used by parsers and level construction. Endpoints out
    /// of range are kept as-is so that validate() can report them.
    SerreGraph(std::vector<std::string> vertex_names, std::vector<DirectedEdge> edges);

    VertexId add_vertex(std::string name);

    /// Adds the pair {e, ē} with o(e) = from, t(e) = to; returns e. ē = e + 1.
    EdgeId add_edge(VertexId from, VertexId to);

    std::size_t vertex_count() const noexcept { return names_.size(); }
    /// Number of directed edges (twice the number of geometric edges).
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::size_t undirected_edge_count() const noexcept { return edges_.size() / 2; }

    const std::string &name(VertexId v) const { return names_.at(v); }
    const std::vector<std::string> &names() const noexcept { return names_; }
    std::optional<VertexId> find(const std::string &name) const;

    const DirectedEdge &edge(EdgeId e) const { return edges_.at(e); }
    std::span<const DirectedEdge> edges() const noexcept { return edges_; }
    VertexId origin(EdgeId e) const { return edges_.at(e).origin; }
    VertexId terminus(EdgeId e) const { return edges_.at(e).terminus; }
    EdgeId inverse(EdgeId e) const { return edges_.at(e).inverse; }

    /// The edge star E_v = {e : o(e) = v}, in increasing edge index.
    std::span<const EdgeId> star(VertexId v) const;

    /// Canonical representative of the geometric edge {e, ē}: the smaller index.
    bool is_representative(EdgeId e) const { return e < inverse(e); }

    /// Representatives in increasing index: the canonical orientation.
    std::vector<EdgeId> orientation() const;

    friend bool operator==(const SerreGraph &a, const SerreGraph &b) {
        return a.names_ == b.names_ && a.edges_ == b.edges_;
    }

  private:
    void index_star(EdgeId e);

    std::vector<std::string> names_;
    std::vector<DirectedEdge> edges_;
    std::vector<std::vector<EdgeId>> stars_;
};

/// Axiom violations; empty means the graph is a valid Serre graph.
std::vector<std::string> validate(const SerreGraph &graph);

std::size_t valency(const SerreGraph &graph, VertexId v);

/// Throws Error(EmptyGraph) on a graph without vertices.
bool is_connected(const SerreGraph &graph);

/// Connected components as vertex lists, ordered by smallest member.
std::vector<std::vector<VertexId>> components(const SerreGraph &graph);

struct SpanningTree {
    /// Representative directed edges of the tree, increasing index.
    std::vector<EdgeId> edges;
    /// For each vertex, the directed edge from its parent (root: nullopt).
    std::vector<std::optional<EdgeId>> parent_edge;
    /// Vertices in breadth-first order from the root (vertex 0).
    std::vector<VertexId> order;

    bool contains(EdgeId representative) const;
};

/// The lexicographically smallest spanning tree: geometric edges are scanned in
/// index order and kept whenever they join two components. Loops never enter.
SpanningTree spanning_tree(const SerreGraph &graph);

/// Sums of an antisymmetric edge weight around each fundamental cycle. For each
/// non-tree geometric edge e (representative direction) the cycle is e followed
/// by the tree path from t(e) back to o(e). `weights` is indexed by directed
/// edge; T needs +, - and a value-initialised zero passed in.
template <class T>
std::vector<T> fundamental_cycle_sums(const SerreGraph &graph, const SpanningTree &tree,
                                      std::span<const T> weights, const T &zero) {
    if (weights.size() != graph.edge_count())
        throw Error(ErrorKind::MissingWeight,
                    "weight map has " + std::to_string(weights.size()) + " entries, graph has " +
                        std::to_string(graph.edge_count()) + " directed edges");
    // potential(v) = weight of the tree path root -> v
    std::vector<T> potential(graph.vertex_count(), zero);
    for (VertexId v : tree.order)
        if (auto pe = tree.parent_edge[v])
            potential[v] = potential[graph.origin(*pe)] + weights[*pe];
    std::vector<T> sums;
    for (EdgeId e : graph.orientation()) {
        if (tree.contains(e))
            continue;
        sums.push_back(potential[graph.origin(e)] + weights[e] - potential[graph.terminus(e)]);
    }
    return sums;
}

/// L = D - A with D(v,v) = val(v) and A(v,w) = #{e : o(e) = v, t(e) = w}.
Matrix<BigInt> laplacian_matrix(const SerreGraph &graph);

} // namespace ztower
