#include "forcepath/shortest_paths.hpp"

#include <algorithm>
#include <climits>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>
#include <tuple>

namespace forcepath {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Reverse Dijkstra from the destination keyed by (distance, hops, node id),
// followed by a greedy walk from the origin that always steps to the
// smallest-id neighbor lying on a shortest path. Requiring the (distance,
// hops) key to strictly decrease along the walk keeps it simple even with
// zero-weight edges.
class PathSearch {
 public:
  PathSearch(const Graph& g, std::span<const double> delta)
      : g_(g),
        delta_(delta),
        dist_(static_cast<std::size_t>(g.num_nodes())),
        hops_(static_cast<std::size_t>(g.num_nodes())),
        blocked_nodes_(static_cast<std::size_t>(g.num_nodes()), 0),
        blocked_edges_(static_cast<std::size_t>(g.num_edges()), 0) {}

  void block_node(NodeId u) { blocked_nodes_[idx(u)] = 1; }
  void block_edge(EdgeId e) { blocked_edges_[idx(e)] = 1; }
  void clear_blocks() {
    std::fill(blocked_nodes_.begin(), blocked_nodes_.end(), 0);
    std::fill(blocked_edges_.begin(), blocked_edges_.end(), 0);
  }

  std::optional<Path> run(NodeId from, NodeId to) {
    if (blocked_nodes_[idx(from)] || blocked_nodes_[idx(to)]) return std::nullopt;
    std::fill(dist_.begin(), dist_.end(), kInf);
    std::fill(hops_.begin(), hops_.end(), INT_MAX);

    using Key = std::tuple<double, int, NodeId>;
    std::priority_queue<Key, std::vector<Key>, std::greater<>> heap;
    dist_[idx(to)] = 0.0;
    hops_[idx(to)] = 0;
    heap.emplace(0.0, 0, to);
    bool reached = false;
    while (!heap.empty()) {
      const auto [d, h, u] = heap.top();
      heap.pop();
      if (d != dist_[idx(u)] || h != hops_[idx(u)]) continue;
      if (u == from) {
        reached = true;
        break;
      }
      for (const Incidence& inc : g_.neighbors(u)) {
        if (blocked_edges_[idx(inc.edge)] || blocked_nodes_[idx(inc.neighbor)]) continue;
        const double nd = d + perturbed_weight(g_, inc.edge, delta_);
        const int nh = h + 1;
        double& dv = dist_[idx(inc.neighbor)];
        int& hv = hops_[idx(inc.neighbor)];
        if (nd < dv || (nd == dv && nh < hv)) {
          dv = nd;
          hv = nh;
          heap.emplace(nd, nh, inc.neighbor);
        }
      }
    }
    if (!reached) return std::nullopt;

    Path p;
    p.nodes.push_back(from);
    NodeId u = from;
    while (u != to) {
      const double du = dist_[idx(u)];
      const int hu = hops_[idx(u)];
      NodeId best = -1;
      EdgeId best_edge = -1;
      for (const Incidence& inc : g_.neighbors(u)) {
        const NodeId v = inc.neighbor;
        if (blocked_edges_[idx(inc.edge)] || blocked_nodes_[idx(v)]) continue;
        const double dv = dist_[idx(v)];
        if (dv == kInf) continue;
        const bool descends = dv < du || (dv == du && hops_[idx(v)] < hu);
        if (!descends || dv + perturbed_weight(g_, inc.edge, delta_) != du) continue;
        if (best < 0 || v < best) {
          best = v;
          best_edge = inc.edge;
        }
      }
      if (best < 0) throw std::logic_error("path search: broken shortest-path walk");
      p.nodes.push_back(best);
      p.edges.push_back(best_edge);
      u = best;
    }
    return p;
  }

 private:
  template <typename I>
  static std::size_t idx(I i) {
    return static_cast<std::size_t>(i);
  }

  const Graph& g_;
  std::span<const double> delta_;
  std::vector<double> dist_;
  std::vector<int> hops_;
  std::vector<char> blocked_nodes_;
  std::vector<char> blocked_edges_;
};

void check_endpoints(const Graph& g, NodeId s, NodeId t) {
  if (!g.valid_node(s) || !g.valid_node(t)) {
    throw ArgumentError("endpoint out of range: s=" + std::to_string(s) +
                        " t=" + std::to_string(t));
  }
}

struct Ranked {
  double length;
  Path path;
  friend bool operator<(const Ranked& a, const Ranked& b) {
    return path_precedes(a.length, a.path, b.length, b.path);
  }
};

Path join(const Path& prefix, std::size_t root_hops, const Path& spur) {
  Path out;
  out.nodes.assign(prefix.nodes.begin(), prefix.nodes.begin() + static_cast<long>(root_hops));
  out.edges.assign(prefix.edges.begin(), prefix.edges.begin() + static_cast<long>(root_hops));
  out.nodes.insert(out.nodes.end(), spur.nodes.begin(), spur.nodes.end());
  out.edges.insert(out.edges.end(), spur.edges.begin(), spur.edges.end());
  return out;
}

}  // namespace

bool path_precedes(double len_a, const Path& a, double len_b, const Path& b) {
  if (len_a != len_b) return len_a < len_b;
  return a.nodes < b.nodes;
}

std::optional<Path> dijkstra(const Graph& g, NodeId s, NodeId t, std::span<const double> delta) {
  check_endpoints(g, s, t);
  check_delta_size(g, delta);
  PathSearch search(g, delta);
  return search.run(s, t);
}

std::vector<Path> yen_k_shortest(const Graph& g, NodeId s, NodeId t, std::size_t k,
                                 std::span<const double> delta) {
  check_endpoints(g, s, t);
  check_delta_size(g, delta);
  if (k == 0) throw ArgumentError("yen_k_shortest: k must be at least 1");

  PathSearch search(g, delta);
  std::vector<Path> found;
  auto first = search.run(s, t);
  if (!first) return found;
  found.push_back(std::move(*first));

  std::set<Ranked> candidates;
  while (found.size() < k) {
    const Path prev = found.back();
    for (std::size_t j = 0; j + 1 < prev.nodes.size(); ++j) {
      for (const Path& p : found) {
        if (p.nodes.size() > j + 1 &&
            std::equal(prev.nodes.begin(), prev.nodes.begin() + static_cast<long>(j) + 1,
                       p.nodes.begin())) {
          search.block_edge(p.edges[j]);
        }
      }
      for (std::size_t i = 0; i < j; ++i) search.block_node(prev.nodes[i]);
      if (auto spur = search.run(prev.nodes[j], t)) {
        Path candidate = join(prev, j, *spur);
        const double len = path_length(g, candidate, delta);
        candidates.insert({len, std::move(candidate)});
      }
      search.clear_blocks();
    }
    if (candidates.empty()) break;
    auto node = candidates.extract(candidates.begin());
    found.push_back(std::move(node.value().path));
  }
  return found;
}

std::optional<Path> second_shortest_excluding(const Graph& g, const Path& excluded,
                                              std::span<const double> delta) {
  check_delta_size(g, delta);
  path_length(g, excluded);  // structural validation
  const NodeId t = excluded.target();

  PathSearch search(g, delta);
  std::optional<Ranked> best;
  for (std::size_t j = 0; j < excluded.edges.size(); ++j) {
    search.block_edge(excluded.edges[j]);
    for (std::size_t i = 0; i < j; ++i) search.block_node(excluded.nodes[i]);
    if (auto spur = search.run(excluded.nodes[j], t)) {
      Path candidate = join(excluded, j, *spur);
      const double len = path_length(g, candidate, delta);
      Ranked r{len, std::move(candidate)};
      if (!best || r < *best) best = std::move(r);
    }
    search.clear_blocks();
  }
  if (!best) return std::nullopt;
  return std::move(best->path);
}

}  // namespace forcepath
