#pragma once

// Shortest and k-shortest simple paths under perturbed weights w + delta.
//
// Ordering of equal-length paths is deterministic: among paths of equal
// length the lexicographically smallest node sequence wins. Lengths are
// compared exactly; no epsilon is applied here.

#include <optional>
#include <span>
#include <vector>

#include "forcepath/graph.hpp"

namespace forcepath {

/// Minimum-length s->t path under w + delta, or nullopt if t is
/// unreachable. Ties go to the lexicographically smallest node sequence.
std::optional<Path> dijkstra(const Graph& g, NodeId s, NodeId t,
                             std::span<const double> delta = {});

/// Up to k shortest simple s->t paths (Yen), sorted by (length, nodes).
std::vector<Path> yen_k_shortest(const Graph& g, NodeId s, NodeId t, std::size_t k,
                                 std::span<const double> delta = {});

/// Shortest simple s->t path whose node sequence differs from `excluded`,
/// or nullopt when `excluded` is the only s->t path.
std::optional<Path> second_shortest_excluding(const Graph& g, const Path& excluded,
                                              std::span<const double> delta = {});

/// Total order used for ranking: (length, node sequence).
bool path_precedes(double len_a, const Path& a, double len_b, const Path& b);

}  // namespace forcepath
