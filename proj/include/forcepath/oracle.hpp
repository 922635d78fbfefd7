#pragma once

// Separation oracle for the path-length constraints: given a candidate
// perturbation, return the shortest s->t path other than the target if it
// is still shorter than target_length + buffer.

#include <limits>
#include <optional>
#include <span>

#include "forcepath/graph.hpp"

namespace forcepath {

inline constexpr double kDefaultFeasibilityEps = 1e-9;

struct OracleResult {
  std::optional<Path> path;
  double perturbed_length = std::numeric_limits<double>::infinity();

  bool violated() const { return path.has_value(); }
};

/// Most-violated path constraint at `delta`, or an empty result.
///
/// The threshold is len_w(target) + buffer - eps with len_w taken under the
/// original weights. Throws ArgumentError if `target` is not a valid path
/// in `g`, if buffer < 0, or if delta perturbs an edge of `target`.
OracleResult constraint_oracle(const Graph& g, std::span<const double> delta, const Path& target,
                               double buffer, double eps = kDefaultFeasibilityEps);

}  // namespace forcepath
