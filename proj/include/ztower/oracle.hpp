#pragma once

#include "ztower/bigint.hpp"
#include "ztower/graph.hpp"

namespace ztower::oracle {

/// Hard limit on geometric edges for the subset enumeration.
inline constexpr std::size_t kMaxEdges = 16;

/// Counts (|V|-1)-subsets of geometric edges that form a spanning tree.
BigInt brute_force_spanning_trees(const SerreGraph &graph);

/// |Pic^0| by enumeration, through the spanning-tree count.
BigInt brute_force_group_order(const SerreGraph &graph);

} // namespace ztower::oracle
