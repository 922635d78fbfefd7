#include "test_support.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "forcepath/graphgen.hpp"
#include "forcepath/rng.hpp"
#include "forcepath/structure.hpp"

namespace forcepath::testing {

std::vector<RankedPath> enumerate_simple_paths(const Graph& g, NodeId s, NodeId t,
                                               std::span<const double> delta) {
  std::vector<RankedPath> out;
  std::vector<NodeId> stack{s};
  std::vector<EdgeId> edges;
  std::vector<char> on_stack(static_cast<std::size_t>(g.num_nodes()), 0);
  on_stack[static_cast<std::size_t>(s)] = 1;

  std::function<void(NodeId)> dfs = [&](NodeId u) {
    if (u == t) {
      double len = 0.0;
      for (EdgeId e : edges) len += g.edge(e).w + (delta.empty() ? 0.0 : delta[static_cast<std::size_t>(e)]);
      out.push_back({stack, len});
      return;
    }
    for (const Incidence& inc : g.neighbors(u)) {
      if (on_stack[static_cast<std::size_t>(inc.neighbor)]) continue;
      on_stack[static_cast<std::size_t>(inc.neighbor)] = 1;
      stack.push_back(inc.neighbor);
      edges.push_back(inc.edge);
      dfs(inc.neighbor);
      edges.pop_back();
      stack.pop_back();
      on_stack[static_cast<std::size_t>(inc.neighbor)] = 0;
    }
  };
  dfs(s);
  std::sort(out.begin(), out.end(), [](const RankedPath& a, const RankedPath& b) {
    if (a.length != b.length) return a.length < b.length;
    return a.nodes < b.nodes;
  });
  return out;
}

namespace {

struct DenseLp {
  std::size_t n = 0;                      // variables
  std::vector<std::vector<double>> rows;  // coefficient rows
  std::vector<double> rhs;
};

DenseLp densify(const LpModel& model) {
  std::vector<char> fixed(static_cast<std::size_t>(model.n_vars), 0);
  for (EdgeId e : model.fixed_zero) fixed[static_cast<std::size_t>(e)] = 1;
  std::map<EdgeId, std::size_t> col;
  for (const LpRow& r : model.rows) {
    for (EdgeId e : r.support) {
      if (!fixed[static_cast<std::size_t>(e)]) col.emplace(e, 0);
    }
  }
  std::size_t next = 0;
  for (auto& [e, c] : col) c = next++;
  DenseLp lp;
  lp.n = col.size();
  for (const LpRow& r : model.rows) {
    std::vector<double> a(lp.n, 0.0);
    for (EdgeId e : r.support) {
      auto it = col.find(e);
      if (it != col.end()) a[it->second] += 1.0;
    }
    lp.rows.push_back(std::move(a));
    lp.rhs.push_back(r.rhs);
  }
  return lp;
}

// Solves M x = b in place; false if singular.
bool gauss_solve(std::vector<std::vector<double>> m, std::vector<double> b, std::vector<double>& x) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    }
    if (std::abs(m[piv][c]) < 1e-12) return false;
    std::swap(m[piv], m[c]);
    std::swap(b[piv], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      b[r] -= f * b[c];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / m[i][i];
  return true;
}

}  // namespace

std::optional<double> vertex_enumeration_optimum(const LpModel& model) {
  const DenseLp lp = densify(model);
  const std::size_t n = lp.n;
  const std::size_t m = lp.rows.size();
  if (n == 0) {
    for (double b : lp.rhs) {
      if (b > 1e-12) return std::nullopt;
    }
    return 0.0;
  }
  // Constraint k < m is row k; k >= m is x_{k-m} >= 0.
  const std::size_t total = m + n;
  std::optional<double> best;
  std::vector<std::size_t> pick(n);
  std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t start, std::size_t depth) {
    if (depth == n) {
      std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
      std::vector<double> b(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        if (pick[i] < m) {
          a[i] = lp.rows[pick[i]];
          b[i] = lp.rhs[pick[i]];
        } else {
          a[i][pick[i] - m] = 1.0;
        }
      }
      std::vector<double> x;
      if (!gauss_solve(a, b, x)) return;
      for (double v : x) {
        if (v < -1e-9) return;
      }
      for (std::size_t r = 0; r < m; ++r) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < n; ++j) lhs += lp.rows[r][j] * x[j];
        if (lhs < lp.rhs[r] - 1e-9) return;
      }
      double obj = 0.0;
      for (double v : x) obj += v;
      if (!best || obj < *best) best = obj;
      return;
    }
    for (std::size_t k = start; k < total; ++k) {
      pick[depth] = k;
      choose(k + 1, depth + 1);
    }
  };
  choose(0, 0);
  return best;
}

double packing_dual_optimum(const LpModel& model) {
  const DenseLp lp = densify(model);
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    if (lp.rhs[i] > 0.0) active.push_back(i);
  }
  const std::size_t k = active.size();  // dual variables
  const std::size_t n = lp.n;           // dual constraints (one per primal column)
  if (k == 0) return 0.0;
  for (std::size_t i : active) {
    if (std::all_of(lp.rows[i].begin(), lp.rows[i].end(), [](double a) { return a == 0.0; })) {
      return std::numeric_limits<double>::infinity();  // dual unbounded, primal infeasible
    }
  }
  // Tableau rows: n constraints sum_i A[i][j] y_i + s_j = 1; columns y (k) then s (n).
  const std::size_t cols = k + n;
  std::vector<std::vector<double>> t(n, std::vector<double>(cols + 1, 0.0));
  std::vector<std::size_t> basis(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t c = 0; c < k; ++c) t[j][c] = lp.rows[active[c]][j];
    t[j][k + j] = 1.0;
    t[j][cols] = 1.0;
    basis[j] = k + j;
  }
  std::vector<double> reduced(cols + 1, 0.0);  // maximize: entering when reduced > 0
  for (std::size_t c = 0; c < k; ++c) reduced[c] = lp.rhs[active[c]];

  for (int guard = 0; guard < 100000; ++guard) {
    std::size_t enter = cols;
    for (std::size_t c = 0; c < cols; ++c) {
      if (reduced[c] > 1e-12) {
        enter = c;
        break;
      }
    }
    if (enter == cols) return -reduced[cols];
    std::size_t leave = n;
    double best = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      if (t[r][enter] <= 1e-12) continue;
      const double ratio = t[r][cols] / t[r][enter];
      if (leave == n || ratio < best - 1e-15 ||
          (std::abs(ratio - best) <= 1e-15 && basis[r] < basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave == n) return std::numeric_limits<double>::infinity();
    const double p = t[leave][enter];
    for (double& v : t[leave]) v /= p;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == leave || t[r][enter] == 0.0) continue;
      const double f = t[r][enter];
      for (std::size_t c = 0; c <= cols; ++c) t[r][c] -= f * t[leave][c];
    }
    const double f = reduced[enter];
    for (std::size_t c = 0; c <= cols; ++c) reduced[c] -= f * t[leave][c];
    basis[leave] = enter;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

LpModel random_lp(std::uint64_t seed) {
  Rng rng(seed);
  LpModel model;
  model.n_vars = static_cast<EdgeId>(rng.between(1, 6));
  for (EdgeId e = 0; e < model.n_vars; ++e) {
    if (rng.bernoulli(0.1)) model.fixed_zero.push_back(e);
  }
  const auto rows = rng.between(1, 6);
  for (std::int64_t r = 0; r < rows; ++r) {
    LpRow row;
    for (EdgeId e = 0; e < model.n_vars; ++e) {
      if (rng.bernoulli(0.5)) row.support.push_back(e);
    }
    if (row.support.empty()) row.support.push_back(static_cast<EdgeId>(rng.below(
        static_cast<std::uint64_t>(model.n_vars))));
    row.rhs = 20.0 * rng.uniform01();
    model.rows.push_back(std::move(row));
  }
  return model;
}

LpModel full_enumeration_model(const Graph& g, const Path& target, double buffer) {
  double target_len = 0.0;
  for (EdgeId e : target.edges) target_len += g.edge(e).w;
  std::vector<char> on_target(static_cast<std::size_t>(g.num_edges()), 0);
  for (EdgeId e : target.edges) on_target[static_cast<std::size_t>(e)] = 1;

  LpModel model;
  model.n_vars = g.num_edges();
  model.fixed_zero = target.edges;
  std::sort(model.fixed_zero.begin(), model.fixed_zero.end());
  for (const RankedPath& p : enumerate_simple_paths(g, target.source(), target.target())) {
    if (p.nodes == target.nodes || !(p.length < target_len + buffer)) continue;
    LpRow row;
    for (std::size_t i = 0; i + 1 < p.nodes.size(); ++i) {
      const EdgeId e = *g.find_edge(p.nodes[i], p.nodes[i + 1]);
      if (!on_target[static_cast<std::size_t>(e)]) row.support.push_back(e);
    }
    std::sort(row.support.begin(), row.support.end());
    row.rhs = target_len + buffer - p.length;
    model.rows.push_back(std::move(row));
  }
  return model;
}

std::optional<Instance> random_instance(std::uint64_t seed) {
  Rng rng(seed);
  const auto shape = rng.below(3);
  GenSpec spec;
  std::string desc;
  if (shape == 0) {
    const auto n = static_cast<std::int32_t>(rng.between(6, 10));
    spec = GenSpec::erdos_renyi(n, 0.35 + 0.3 * rng.uniform01(), rng.next());
  } else if (shape == 1) {
    spec = GenSpec::complete(static_cast<std::int32_t>(rng.between(6, 8)));
  } else {
    static const std::pair<int, int> dims[] = {{2, 3}, {2, 4}, {3, 3}, {2, 5}, {3, 3}};
    const auto [r, c] = dims[rng.below(5)];
    spec = GenSpec::lattice(r, c);
  }
  Graph g = generate(spec);
  if (!is_connected(g)) {
    g = largest_connected_component(g).graph;
    if (g.num_nodes() < 4) return std::nullopt;
  }

  WeightScheme w;
  const auto kind = rng.below(3);
  w.kind = kind == 0 ? WeightKind::unit : kind == 1 ? WeightKind::poisson_plus_one
                                                    : WeightKind::uniform_int;
  w.rate = 20.0;
  w.lo = 1;
  w.hi = 41;
  w.seed = rng.next();
  g = apply_weights(g, w);

  const auto n = static_cast<std::uint64_t>(g.num_nodes());
  const auto s = static_cast<NodeId>(rng.below(n));
  auto t = static_cast<NodeId>(rng.below(n - 1));
  if (t >= s) ++t;
  const auto rank = static_cast<std::size_t>(rng.between(2, 5));
  const double buffer = rng.below(2) == 0 ? 0.0 : 1.0;

  const auto paths = enumerate_simple_paths(g, s, t);
  if (paths.size() < rank) return std::nullopt;
  Path target = make_path(g, paths[rank - 1].nodes);
  desc = describe(spec) + " " + to_string(w) + " s=" + std::to_string(s) + " t=" +
         std::to_string(t) + " rank=" + std::to_string(rank) + " delta=" + std::to_string(buffer);
  return Instance{std::move(g), std::move(target), buffer, desc};
}

Graph worked_graph() {
  Graph g(5);
  g.add_edge(0, 3, 10);  // s-c
  g.add_edge(3, 4, 10);  // c-t
  g.add_edge(0, 1, 1);   // s-a
  g.add_edge(1, 4, 1);   // a-t
  g.add_edge(0, 2, 1);   // s-b
  g.add_edge(2, 1, 1);   // b-a
  return g;
}

Path worked_target(const Graph& g) { return make_path(g, {0, 3, 4}); }

}  // namespace forcepath::testing
