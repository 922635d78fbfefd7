#include "forcepath/structure.hpp"

#include <algorithm>
#include <queue>

namespace forcepath {

Subgraph induced_subgraph(const Graph& g, std::vector<NodeId> nodes) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  std::vector<NodeId> local(static_cast<std::size_t>(g.num_nodes()), -1);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!g.valid_node(nodes[i])) throw ArgumentError("induced_subgraph: unknown node");
    local[static_cast<std::size_t>(nodes[i])] = static_cast<NodeId>(i);
  }
  Subgraph out{Graph(static_cast<NodeId>(nodes.size())), std::move(nodes)};
  for (const Edge& e : g.edges()) {
    const NodeId a = local[static_cast<std::size_t>(e.u)];
    const NodeId b = local[static_cast<std::size_t>(e.v)];
    if (a >= 0 && b >= 0) out.graph.add_edge(a, b, e.w);
  }
  return out;
}

std::vector<int> hop_distances(const Graph& g, NodeId s) {
  if (!g.valid_node(s)) throw ArgumentError("hop_distances: source out of range");
  std::vector<int> dist(static_cast<std::size_t>(g.num_nodes()), -1);
  std::queue<NodeId> frontier;
  dist[static_cast<std::size_t>(s)] = 0;
  frontier.push(s);
  while (!frontier.empty()) {
    const NodeId u = frontier.front();
    frontier.pop();
    for (const Incidence& inc : g.neighbors(u)) {
      int& d = dist[static_cast<std::size_t>(inc.neighbor)];
      if (d < 0) {
        d = dist[static_cast<std::size_t>(u)] + 1;
        frontier.push(inc.neighbor);
      }
    }
  }
  return dist;
}

Subgraph largest_connected_component(const Graph& g) {
  if (g.num_nodes() == 0) throw ArgumentError("largest_connected_component: empty graph");
  std::vector<NodeId> best;
  std::vector<char> seen(static_cast<std::size_t>(g.num_nodes()), 0);
  for (NodeId root = 0; root < g.num_nodes(); ++root) {
    if (seen[static_cast<std::size_t>(root)]) continue;
    std::vector<NodeId> members{root};
    seen[static_cast<std::size_t>(root)] = 1;
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (const Incidence& inc : g.neighbors(members[head])) {
        char& flag = seen[static_cast<std::size_t>(inc.neighbor)];
        if (!flag) {
          flag = 1;
          members.push_back(inc.neighbor);
        }
      }
    }
    // strict comparison: the earlier root wins ties
    if (members.size() > best.size()) best = std::move(members);
  }
  return induced_subgraph(g, std::move(best));
}

std::vector<NodeId> nodes_at_hop_distance(const Graph& g, NodeId s, int h) {
  if (h < 0) throw ArgumentError("nodes_at_hop_distance: negative hop count");
  const auto dist = hop_distances(g, s);
  std::vector<NodeId> ring;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (dist[static_cast<std::size_t>(v)] == h) ring.push_back(v);
  }
  return ring;
}

Subgraph induced_subgraph_within_hops(const Graph& g, NodeId s, int h) {
  if (h < 0) throw ArgumentError("induced_subgraph_within_hops: negative hop count");
  const auto dist = hop_distances(g, s);
  std::vector<NodeId> ball;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    const int d = dist[static_cast<std::size_t>(v)];
    if (d >= 0 && d <= h) ball.push_back(v);
  }
  return induced_subgraph(g, std::move(ball));
}

bool is_connected(const Graph& g) {
  if (g.num_nodes() <= 1) return true;
  const auto dist = hop_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

}  // namespace forcepath
