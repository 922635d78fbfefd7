#include "forcepath/graph.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace forcepath {

Graph::Graph(NodeId n_nodes) : n_nodes_(n_nodes) {
  if (n_nodes < 0) throw ArgumentError("graph: negative node count");
  adjacency_.resize(static_cast<std::size_t>(n_nodes));
}

std::optional<EdgeId> Graph::find_edge(NodeId u, NodeId v) const {
  if (u > v) std::swap(u, v);
  auto it = index_.find(key(u, v));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

EdgeId Graph::add_edge(NodeId u, NodeId v, Weight w) {
  if (!valid_node(u) || !valid_node(v)) {
    throw ArgumentError("add_edge: node out of range (" + std::to_string(u) + ", " +
                        std::to_string(v) + ")");
  }
  if (u == v) throw ValidationError("add_edge: self-loop on node " + std::to_string(u));
  if (!(w >= 0.0) || !std::isfinite(w)) {
    throw ValidationError("add_edge: weight must be finite and nonnegative");
  }
  if (u > v) std::swap(u, v);
  const auto id = static_cast<EdgeId>(edges_.size());
  if (!index_.emplace(key(u, v), id).second) {
    throw ValidationError("add_edge: duplicate edge {" + std::to_string(u) + ", " +
                          std::to_string(v) + "}");
  }
  edges_.push_back({u, v, w});
  adjacency_[static_cast<std::size_t>(u)].push_back({v, id});
  adjacency_[static_cast<std::size_t>(v)].push_back({u, id});
  return id;
}

Graph Graph::with_weights(std::span<const Weight> weights) const {
  if (weights.size() != edges_.size()) {
    throw ArgumentError("with_weights: expected one weight per edge");
  }
  Graph out(n_nodes_);
  out.edges_.reserve(edges_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    out.add_edge(edges_[i].u, edges_[i].v, weights[i]);
  }
  return out;
}

std::vector<Weight> Graph::weights() const {
  std::vector<Weight> w;
  w.reserve(edges_.size());
  for (const auto& e : edges_) w.push_back(e.w);
  return w;
}

Path make_path(const Graph& g, std::vector<NodeId> nodes) {
  if (nodes.empty()) throw ArgumentError("path: empty node sequence");
  Path p;
  p.edges.reserve(nodes.size() - 1);
  std::vector<char> seen(static_cast<std::size_t>(g.num_nodes()), 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const NodeId u = nodes[i];
    if (!g.valid_node(u)) throw ArgumentError("path: unknown node " + std::to_string(u));
    if (seen[static_cast<std::size_t>(u)]) {
      throw ArgumentError("path: repeated node " + std::to_string(u));
    }
    seen[static_cast<std::size_t>(u)] = 1;
    if (i > 0) {
      auto e = g.find_edge(nodes[i - 1], u);
      if (!e) {
        throw ArgumentError("path: nodes " + std::to_string(nodes[i - 1]) + " and " +
                            std::to_string(u) + " are not adjacent");
      }
      p.edges.push_back(*e);
    }
  }
  p.nodes = std::move(nodes);
  return p;
}

void check_delta_size(const Graph& g, std::span<const double> delta) {
  if (!delta.empty() && delta.size() != static_cast<std::size_t>(g.num_edges())) {
    throw ArgumentError("perturbation length " + std::to_string(delta.size()) +
                        " does not match edge count " + std::to_string(g.num_edges()));
  }
}

double path_length(const Graph& g, const Path& p, std::span<const double> delta) {
  check_delta_size(g, delta);
  if (p.nodes.empty() || p.edges.size() + 1 != p.nodes.size()) {
    throw ArgumentError("path_length: malformed path");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    const EdgeId e = p.edges[i];
    if (e < 0 || e >= g.num_edges()) throw ArgumentError("path_length: unknown edge id");
    const Edge& ed = g.edge(e);
    const NodeId a = std::min(p.nodes[i], p.nodes[i + 1]);
    const NodeId b = std::max(p.nodes[i], p.nodes[i + 1]);
    if (ed.u != a || ed.v != b) {
      throw ArgumentError("path_length: consecutive nodes " + std::to_string(p.nodes[i]) +
                          " and " + std::to_string(p.nodes[i + 1]) + " are not adjacent");
    }
    total += perturbed_weight(g, e, delta);
  }
  return total;
}

std::string to_string(const Path& p) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    if (i) os << ' ';
    os << p.nodes[i];
  }
  os << ']';
  return os.str();
}

}  // namespace forcepath
