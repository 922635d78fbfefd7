#include "forcepath/oracle.hpp"

#include "forcepath/shortest_paths.hpp"

namespace forcepath {

OracleResult constraint_oracle(const Graph& g, std::span<const double> delta, const Path& target,
                               double buffer, double eps) {
  if (!(buffer >= 0.0)) throw ArgumentError("constraint_oracle: buffer must be >= 0");
  check_delta_size(g, delta);
  const double target_length = path_length(g, target);
  if (!delta.empty()) {
    for (EdgeId e : target.edges) {
      if (delta[static_cast<std::size_t>(e)] != 0.0) {
        throw ArgumentError("constraint_oracle: perturbation touches target edge " +
                            std::to_string(e));
      }
    }
  }

  std::optional<Path> p = dijkstra(g, target.source(), target.target(), delta);
  if (p && *p == target) p = second_shortest_excluding(g, target, delta);
  if (!p) return {};

  const double len = path_length(g, *p, delta);
  if (len >= target_length + buffer - eps) return {};
  return {std::move(p), len};
}

}  // namespace forcepath
