#include "ztower/oracle.hpp"

#include <numeric>
#include <utility>

namespace ztower::oracle {

namespace {

// Union-find with rollback so the enumeration can undo choices.
class RollbackSets {
  public:
    explicit RollbackSets(std::size_t n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    std::size_t find(std::size_t x) const {
        while (parent_[x] != x)
            x = parent_[x];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        if (rank_[a] < rank_[b])
            std::swap(a, b);
        history_.push_back({b, rank_[a] == rank_[b]});
        parent_[b] = a;
        if (history_.back().second)
            ++rank_[a];
        return true;
    }
    void undo() {
        auto [b, bumped] = history_.back();
        history_.pop_back();
        auto a = parent_[b];
        parent_[b] = b;
        if (bumped)
            --rank_[a];
    }

  private:
    std::vector<std::size_t> parent_;
    std::vector<unsigned> rank_;
    std::vector<std::pair<std::size_t, bool>> history_;
};

struct Enumerator {
    const std::vector<std::pair<VertexId, VertexId>> &edges;
    RollbackSets sets;
    BigInt count = 0;

    void run(std::size_t next, std::size_t needed) {
        if (needed == 0) {
            ++count;
            return;
        }
        if (edges.size() - next < needed)
            return;
        const auto [a, b] = edges[next];
        if (sets.unite(a, b)) {
            run(next + 1, needed - 1);
            sets.undo();
        }
        run(next + 1, needed);
    }
};

} // namespace

BigInt brute_force_spanning_trees(const SerreGraph &graph) {
    if (graph.undirected_edge_count() > kMaxEdges)
        throw Error(ErrorKind::CapExceeded, "brute-force enumeration is capped at " +
                                                std::to_string(kMaxEdges) + " edges, graph has " +
                                                std::to_string(graph.undirected_edge_count()));
    if (graph.vertex_count() == 0)
        throw Error(ErrorKind::EmptyGraph, "empty graph");
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (EdgeId e : graph.orientation())
        if (graph.origin(e) != graph.terminus(e))
            edges.emplace_back(graph.origin(e), graph.terminus(e));
    Enumerator en{edges, RollbackSets(graph.vertex_count())};
    en.run(0, graph.vertex_count() - 1);
    return en.count;
}

BigInt brute_force_group_order(const SerreGraph &graph) { return brute_force_spanning_trees(graph); }

} // namespace ztower::oracle
