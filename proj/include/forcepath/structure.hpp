#pragma once

#include <vector>

#include "forcepath/graph.hpp"

namespace forcepath {

/// Induced subgraph together with the map back to the parent's node ids.
/// Edges keep the parent's relative EdgeId order.
struct Subgraph {
  Graph graph;
  std::vector<NodeId> original;  // local id -> parent id
};

/// Induced subgraph on `nodes` (parent ids, any order; local ids follow
/// ascending parent id).
Subgraph induced_subgraph(const Graph& g, std::vector<NodeId> nodes);

/// Largest connected component; equal sizes resolve to the component
/// containing the smallest node id. Throws ArgumentError on an empty graph.
Subgraph largest_connected_component(const Graph& g);

/// Unweighted BFS hop distances from s (-1 for unreachable).
std::vector<int> hop_distances(const Graph& g, NodeId s);

/// Nodes whose hop distance from s is exactly h, ascending.
std::vector<NodeId> nodes_at_hop_distance(const Graph& g, NodeId s, int h);

/// Induced subgraph on nodes within h hops of s.
Subgraph induced_subgraph_within_hops(const Graph& g, NodeId s, int h);

bool is_connected(const Graph& g);

}  // namespace forcepath
