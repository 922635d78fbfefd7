#pragma once

// Undirected weighted graph with stable edge identities, plus the Path and
// perturbation types that attacks operate on.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace forcepath {

using NodeId = std::int32_t;
using EdgeId = std::int32_t;
using Weight = double;

/// Per-edge nonnegative weight additions, indexed by EdgeId.
using Perturbation = std::vector<double>;

/// Bad caller input (out-of-range ids, malformed paths, invalid parameters).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A structurally valid request whose data violates a graph invariant
/// (negative weight, self-loop, duplicate edge).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  NodeId u;  // u < v
  NodeId v;
  Weight w;
};

struct Incidence {
  NodeId neighbor;
  EdgeId edge;
};

class Graph {
 public:
  Graph() = default;
  explicit Graph(NodeId n_nodes);

  NodeId num_nodes() const { return n_nodes_; }
  EdgeId num_edges() const { return static_cast<EdgeId>(edges_.size()); }

  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const Incidence> neighbors(NodeId u) const {
    return adjacency_[static_cast<std::size_t>(u)];
  }
  NodeId degree(NodeId u) const {
    return static_cast<NodeId>(adjacency_[static_cast<std::size_t>(u)].size());
  }

  /// EdgeId for the unordered pair {u, v}, if present.
  std::optional<EdgeId> find_edge(NodeId u, NodeId v) const;
  bool has_edge(NodeId u, NodeId v) const { return find_edge(u, v).has_value(); }

  bool valid_node(NodeId u) const { return u >= 0 && u < n_nodes_; }

  /// Appends {u, v}; EdgeId is insertion order. Rejects self-loops,
  /// duplicates and negative weights.
  EdgeId add_edge(NodeId u, NodeId v, Weight w = 1.0);

  /// Same topology and EdgeIds with replaced weights.
  Graph with_weights(std::span<const Weight> weights) const;

  std::vector<Weight> weights() const;

 private:
  static std::uint64_t key(NodeId u, NodeId v) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
  }

  NodeId n_nodes_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
  std::unordered_map<std::uint64_t, EdgeId> index_;
};

/// Ordered simple path. `edges` is derived from `nodes` and always has
/// size nodes.size() - 1 (empty for a single-node path).
struct Path {
  std::vector<NodeId> nodes;
  std::vector<EdgeId> edges;

  NodeId source() const { return nodes.front(); }
  NodeId target() const { return nodes.back(); }
  std::size_t hops() const { return edges.size(); }

  friend bool operator==(const Path& a, const Path& b) { return a.nodes == b.nodes; }
};

/// Validates adjacency and simplicity and derives edge ids.
/// Throws ArgumentError on a non-adjacent step, repeated node, unknown
/// node or empty sequence.
Path make_path(const Graph& g, std::vector<NodeId> nodes);

/// Sum of w(e) + delta(e) over the path's edges. An empty `delta` is
/// treated as all zeros; otherwise it must have one entry per edge.
double path_length(const Graph& g, const Path& p, std::span<const double> delta = {});

/// Weight of `e` under w + delta (delta may be empty).
inline double perturbed_weight(const Graph& g, EdgeId e, std::span<const double> delta) {
  const double base = g.edge(e).w;
  return delta.empty() ? base : base + delta[static_cast<std::size_t>(e)];
}

/// Throws ArgumentError unless delta is empty or has exactly one entry per edge.
void check_delta_size(const Graph& g, std::span<const double> delta);

std::string to_string(const Path& p);

}  // namespace forcepath
