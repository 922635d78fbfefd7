#include "forcepath/attack.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace forcepath {
namespace {

using Clock = std::chrono::steady_clock;

double sum(const Perturbation& delta) { return std::accumulate(delta.begin(), delta.end(), 0.0); }

void finish(AttackResult& r, const AttackConfig& cfg, Clock::time_point start) {
  r.budget = sum(r.delta);
  r.success = r.converged && (!cfg.budget_cap || r.budget <= *cfg.budget_cap);
  r.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
}

void check_config(const AttackConfig& cfg) {
  if (!(cfg.buffer >= 0.0)) throw ArgumentError("attack: buffer must be >= 0");
  if (!(cfg.eps >= 0.0)) throw ArgumentError("attack: eps must be >= 0");
}

std::vector<char> target_edge_mask(const Graph& g, const Path& target) {
  std::vector<char> mask(static_cast<std::size_t>(g.num_edges()), 0);
  for (EdgeId e : target.edges) mask[static_cast<std::size_t>(e)] = 1;
  return mask;
}

// Picks the edge of the violating path to raise; -1 if every edge is on
// the target.
using EdgeSelector = EdgeId (*)(const Graph&, const Path&, const std::vector<char>&,
                                const Perturbation&);

EdgeId first_off_target(const Graph&, const Path& p, const std::vector<char>& on_target,
                        const Perturbation&) {
  for (EdgeId e : p.edges) {
    if (!on_target[static_cast<std::size_t>(e)]) return e;
  }
  return -1;
}

EdgeId lightest_off_target(const Graph& g, const Path& p, const std::vector<char>& on_target,
                           const Perturbation& delta) {
  EdgeId best = -1;
  double best_w = 0.0;
  for (EdgeId e : p.edges) {
    if (on_target[static_cast<std::size_t>(e)]) continue;
    const double w = perturbed_weight(g, e, delta);
    if (best < 0 || w < best_w || (w == best_w && e < best)) {
      best = e;
      best_w = w;
    }
  }
  return best;
}

AttackResult greedy(Algorithm algorithm, EdgeSelector select, const Graph& g, const Path& target,
                    const AttackConfig& cfg) {
  check_config(cfg);
  const auto start = Clock::now();
  const double threshold = path_length(g, target) + cfg.buffer;
  const auto on_target = target_edge_mask(g, target);

  AttackResult r;
  r.algorithm = algorithm;
  r.delta.assign(static_cast<std::size_t>(g.num_edges()), 0.0);
  for (;;) {
    const OracleResult hit = constraint_oracle(g, r.delta, target, cfg.buffer, cfg.eps);
    ++r.iterations;
    if (!hit.violated()) {
      r.converged = true;
      break;
    }
    if (r.iterations > cfg.max_iterations) break;

    const Path& p = *hit.path;
    const EdgeId e = select(g, p, on_target, r.delta);
    if (e < 0) throw std::logic_error("greedy: violating path lies entirely on the target");
    r.delta[static_cast<std::size_t>(e)] += threshold - hit.perturbed_length;

    const double raised = path_length(g, p, r.delta);
    if (!(raised > hit.perturbed_length) ||
        std::abs(raised - threshold) > 1e-9 * std::max(1.0, std::abs(threshold))) {
      throw std::logic_error("greedy: raised path length " + std::to_string(raised) +
                             " does not meet threshold " + std::to_string(threshold));
    }
  }
  finish(r, cfg, start);
  return r;
}

}  // namespace

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::pathperturb: return "pathperturb";
    case Algorithm::greedy_first: return "greedy_first";
    case Algorithm::greedy_min: return "greedy_min";
  }
  return "unknown";
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "pathperturb") return Algorithm::pathperturb;
  if (name == "greedy_first" || name == "greedy-first") return Algorithm::greedy_first;
  if (name == "greedy_min" || name == "greedy-min") return Algorithm::greedy_min;
  throw ArgumentError("unknown algorithm '" + name + "'");
}

AttackResult pathperturb(const Graph& g, const Path& target, const AttackConfig& cfg) {
  check_config(cfg);
  const auto start = Clock::now();
  LpModel model = empty_model(g, target);
  std::set<std::vector<NodeId>> generated;

  AttackResult r;
  r.algorithm = Algorithm::pathperturb;
  r.delta.assign(static_cast<std::size_t>(g.num_edges()), 0.0);
  for (;;) {
    const OracleResult hit = constraint_oracle(g, r.delta, target, cfg.buffer, cfg.eps);
    ++r.iterations;
    if (!hit.violated()) {
      r.converged = true;
      break;
    }
    if (r.iterations > cfg.max_iterations) break;
    if (!generated.insert(hit.path->nodes).second) {
      throw LpError("pathperturb: oracle returned already-constrained path " +
                    to_string(*hit.path));
    }

    model.rows.push_back(path_row(g, target, *hit.path, cfg.buffer));
    r.constraint_paths.push_back(*hit.path);
    ++r.constraints_generated;
    LpSolution sol = solve(model, cfg.lp);
    if (sol.status != LpStatus::optimal) {
      throw LpError(std::string("pathperturb: LP ") + to_string(sol.status));
    }
    r.delta = std::move(sol.delta);
    r.objective_trace.push_back(sol.objective_value);
  }
  finish(r, cfg, start);
  return r;
}

AttackResult greedy_first(const Graph& g, const Path& target, const AttackConfig& cfg) {
  return greedy(Algorithm::greedy_first, first_off_target, g, target, cfg);
}

AttackResult greedy_min(const Graph& g, const Path& target, const AttackConfig& cfg) {
  return greedy(Algorithm::greedy_min, lightest_off_target, g, target, cfg);
}

AttackResult run_attack(Algorithm algorithm, const Graph& g, const Path& target,
                        const AttackConfig& cfg) {
  switch (algorithm) {
    case Algorithm::pathperturb: return pathperturb(g, target, cfg);
    case Algorithm::greedy_first: return greedy_first(g, target, cfg);
    case Algorithm::greedy_min: return greedy_min(g, target, cfg);
  }
  throw ArgumentError("run_attack: unknown algorithm");
}

Graph apply_perturbation(const Graph& g, std::span<const double> delta) {
  if (delta.size() != static_cast<std::size_t>(g.num_edges())) {
    throw ArgumentError("apply_perturbation: expected one entry per edge");
  }
  std::vector<Weight> w = g.weights();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!(delta[i] >= 0.0)) {
      throw ArgumentError("apply_perturbation: negative entry on edge " + std::to_string(i));
    }
    w[i] += delta[i];
  }
  return g.with_weights(w);
}

Verification verify_attack(const Graph& g, const Path& target, std::span<const double> delta,
                           double buffer, double eps) {
  Verification v;
  if (delta.size() != static_cast<std::size_t>(g.num_edges())) {
    v.diagnostic = "perturbation has " + std::to_string(delta.size()) + " entries, graph has " +
                   std::to_string(g.num_edges()) + " edges";
    return v;
  }
  for (std::size_t e = 0; e < delta.size(); ++e) {
    if (!(delta[e] >= 0.0) || !std::isfinite(delta[e])) {
      v.diagnostic = "negative or non-finite perturbation on edge " + std::to_string(e);
      return v;
    }
  }
  for (EdgeId e : target.edges) {
    if (delta[static_cast<std::size_t>(e)] != 0.0) {
      v.diagnostic = "perturbed protected edge " + std::to_string(e);
      return v;
    }
  }
  OracleResult hit = constraint_oracle(g, delta, target, buffer, eps);
  if (hit.violated()) {
    v.diagnostic = "path " + to_string(*hit.path) + " has perturbed length " +
                   std::to_string(hit.perturbed_length) + " below " +
                   std::to_string(path_length(g, target) + buffer);
    v.violating = std::move(hit.path);
    return v;
  }
  v.ok = true;
  return v;
}

}  // namespace forcepath
