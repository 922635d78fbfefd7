#pragma once

// Attacks that raise edge weights until a target path is the shortest
// s->t path by at least `buffer`:
//
//   pathperturb   constraint generation over the covering LP; optimal
//   greedy_first  raise the first off-target edge of the current shortest
//                 violating path just enough to reach the threshold
//   greedy_min    same, but raise the lightest off-target edge

#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "forcepath/graph.hpp"
#include "forcepath/lp.hpp"
#include "forcepath/oracle.hpp"

namespace forcepath {

enum class Algorithm { pathperturb, greedy_first, greedy_min };

const char* to_string(Algorithm a);
/// Accepts "pathperturb", "greedy_first"/"greedy-first", "greedy_min"/"greedy-min".
Algorithm parse_algorithm(const std::string& name);

struct AttackConfig {
  double buffer = 1.0;
  double eps = kDefaultFeasibilityEps;
  // Checked after optimization; never changes the perturbation.
  std::optional<double> budget_cap;
  std::size_t max_iterations = 10000;
  SimplexOptions lp;
};

struct AttackResult {
  Perturbation delta;
  double budget = 0.0;
  // Oracle calls made, including the final one that found nothing.
  std::size_t iterations = 0;
  std::size_t constraints_generated = 0;
  std::chrono::nanoseconds wall_time{0};
  Algorithm algorithm = Algorithm::pathperturb;
  bool converged = false;
  bool success = false;
  // LP objective after each re-solve and the generated constraint paths
  // (pathperturb only).
  std::vector<double> objective_trace;
  std::vector<Path> constraint_paths;
};

AttackResult pathperturb(const Graph& g, const Path& target, const AttackConfig& cfg = {});
AttackResult greedy_first(const Graph& g, const Path& target, const AttackConfig& cfg = {});
AttackResult greedy_min(const Graph& g, const Path& target, const AttackConfig& cfg = {});
AttackResult run_attack(Algorithm algorithm, const Graph& g, const Path& target,
                        const AttackConfig& cfg = {});

/// Copy of g with weights w + delta. Throws ArgumentError on a size
/// mismatch or a negative entry.
Graph apply_perturbation(const Graph& g, std::span<const double> delta);

struct Verification {
  bool ok = false;
  std::string diagnostic;
  std::optional<Path> violating;
};

/// Checks delta >= 0, delta == 0 on every target edge, and that no other
/// s->t path is shorter than len(target) + buffer - eps.
Verification verify_attack(const Graph& g, const Path& target, std::span<const double> delta,
                           double buffer, double eps = kDefaultFeasibilityEps);

}  // namespace forcepath
