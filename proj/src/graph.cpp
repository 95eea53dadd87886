#include "ztower/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace ztower {

SerreGraph::SerreGraph(std::vector<std::string> vertex_names, std::vector<DirectedEdge> edges)
    : names_(std::move(vertex_names)), edges_(std::move(edges)), stars_(names_.size()) {
    for (EdgeId e = 0; e < edges_.size(); ++e)
        index_star(e);
}

VertexId SerreGraph::add_vertex(std::string name) {
    names_.push_back(std::move(name));
    stars_.emplace_back();
    return names_.size() - 1;
}

EdgeId SerreGraph::add_edge(VertexId from, VertexId to) {
    if (from >= vertex_count() || to >= vertex_count())
        throw Error(ErrorKind::UnknownVertex, "edge endpoint out of range");
    EdgeId e = edges_.size();
    edges_.push_back({from, to, e + 1});
    edges_.push_back({to, from, e});
    index_star(e);
    index_star(e + 1);
    return e;
}

void SerreGraph::index_star(EdgeId e) {
    if (edges_[e].origin < stars_.size())
        stars_[edges_[e].origin].push_back(e);
}

std::optional<VertexId> SerreGraph::find(const std::string &name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end())
        return std::nullopt;
    return static_cast<VertexId>(it - names_.begin());
}

std::span<const EdgeId> SerreGraph::star(VertexId v) const {
    if (v >= stars_.size())
        throw Error(ErrorKind::UnknownVertex, "vertex " + std::to_string(v) + " out of range");
    return stars_[v];
}

std::vector<EdgeId> SerreGraph::orientation() const {
    std::vector<EdgeId> out;
    out.reserve(undirected_edge_count());
    for (EdgeId e = 0; e < edges_.size(); ++e)
        if (edges_[e].inverse < edges_.size() && is_representative(e))
            out.push_back(e);
    return out;
}

std::vector<std::string> validate(const SerreGraph &graph) {
    std::vector<std::string> issues;
    const auto n = graph.vertex_count();
    const auto m = graph.edge_count();
    auto label = [](EdgeId e) { return "edge " + std::to_string(e); };
    if (m % 2 != 0)
        issues.push_back("odd number of directed edges (" + std::to_string(m) + ")");
    for (EdgeId e = 0; e < m; ++e) {
        const auto &d = graph.edge(e);
        if (d.origin >= n || d.terminus >= n) {
            issues.push_back(label(e) + ": endpoint out of range");
            continue;
        }
        if (d.inverse >= m) {
            issues.push_back(label(e) + ": inverse out of range");
            continue;
        }
        if (d.inverse == e) {
            issues.push_back(label(e) + ": ē = e");
            continue;
        }
        const auto &inv = graph.edge(d.inverse);
        if (inv.inverse != e)
            issues.push_back(label(e) + ": inverse of inverse is not e");
        if (inv.origin != d.terminus || inv.terminus != d.origin)
            issues.push_back(label(e) + ": o(ē) != t(e) or t(ē) != o(e)");
    }
    return issues;
}

std::size_t valency(const SerreGraph &graph, VertexId v) { return graph.star(v).size(); }

std::vector<std::vector<VertexId>> components(const SerreGraph &graph) {
    const auto n = graph.vertex_count();
    std::vector<bool> seen(n, false);
    std::vector<std::vector<VertexId>> out;
    for (VertexId s = 0; s < n; ++s) {
        if (seen[s])
            continue;
        std::vector<VertexId> comp{s};
        seen[s] = true;
        for (std::size_t head = 0; head < comp.size(); ++head)
            for (EdgeId e : graph.star(comp[head])) {
                auto w = graph.terminus(e);
                if (!seen[w]) {
                    seen[w] = true;
                    comp.push_back(w);
                }
            }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

bool is_connected(const SerreGraph &graph) {
    if (graph.vertex_count() == 0)
        throw Error(ErrorKind::EmptyGraph, "empty graph");
    return components(graph).size() == 1;
}

bool SpanningTree::contains(EdgeId representative) const {
    return std::binary_search(edges.begin(), edges.end(), representative);
}

namespace {

struct DisjointSets {
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
    std::vector<std::size_t> parent;
};

} // namespace

SpanningTree spanning_tree(const SerreGraph &graph) {
    if (!is_connected(graph))
        throw Error(ErrorKind::Disconnected, "spanning tree requested for a disconnected graph");
    const auto n = graph.vertex_count();
    SpanningTree tree;
    DisjointSets sets(n);
    for (EdgeId e : graph.orientation())
        if (sets.unite(graph.origin(e), graph.terminus(e)))
            tree.edges.push_back(e);

    // Root the tree at vertex 0 to get parent edges and a traversal order.
    std::vector<bool> in_tree(graph.edge_count(), false);
    for (EdgeId e : tree.edges)
        in_tree[e] = in_tree[graph.inverse(e)] = true;
    tree.parent_edge.assign(n, std::nullopt);
    std::vector<bool> seen(n, false);
    seen[0] = true;
    tree.order.push_back(0);
    for (std::size_t head = 0; head < tree.order.size(); ++head) {
        auto v = tree.order[head];
        for (EdgeId e : graph.star(v)) {
            auto w = graph.terminus(e);
            if (in_tree[e] && !seen[w]) {
                seen[w] = true;
                tree.parent_edge[w] = e;
                tree.order.push_back(w);
            }
        }
    }
    return tree;
}

Matrix<BigInt> laplacian_matrix(const SerreGraph &graph) {
    const auto n = graph.vertex_count();
    Matrix<BigInt> l(n, n, BigInt(0));
    for (VertexId v = 0; v < n; ++v) {
        l(v, v) += static_cast<unsigned long>(valency(graph, v));
        for (EdgeId e : graph.star(v))
            l(v, graph.terminus(e)) -= 1;
    }
    return l;
}

} // namespace ztower
