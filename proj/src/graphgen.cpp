#include "forcepath/graphgen.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include "forcepath/rng.hpp"
#include "forcepath/structure.hpp"

namespace forcepath {

std::int64_t Rng::poisson(double rate) {
  const double u = uniform01();
  double term = std::exp(-rate);
  double cdf = term;
  std::int64_t k = 0;
  while (u >= cdf && term > 0.0) {
    ++k;
    term *= rate / static_cast<double>(k);
    cdf += term;
  }
  return k;
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ArgumentError("generate: " + what);
}

Graph erdos_renyi(const GenSpec& s) {
  require(s.n >= 0, "er needs n >= 0");
  require(s.p >= 0.0 && s.p <= 1.0, "er needs 0 <= p <= 1");
  Rng rng(s.seed);
  Graph g(s.n);
  for (NodeId i = 0; i < s.n; ++i) {
    for (NodeId j = i + 1; j < s.n; ++j) {
      if (rng.bernoulli(s.p)) g.add_edge(i, j);
    }
  }
  return g;
}

// Starts from a star on m+1 nodes; every later node attaches to m distinct
// existing nodes chosen proportionally to degree.
Graph barabasi_albert(const GenSpec& s) {
  require(s.m_attach >= 1, "ba needs m_attach >= 1");
  require(s.n > s.m_attach, "ba needs n > m_attach");
  Rng rng(s.seed);
  Graph g(s.n);
  std::vector<NodeId> endpoints;
  for (NodeId leaf = 1; leaf <= s.m_attach; ++leaf) {
    g.add_edge(0, leaf);
    endpoints.push_back(0);
    endpoints.push_back(leaf);
  }
  for (NodeId v = s.m_attach + 1; v < s.n; ++v) {
    std::set<NodeId> chosen;
    while (static_cast<std::int32_t>(chosen.size()) < s.m_attach) {
      chosen.insert(endpoints[rng.below(endpoints.size())]);
    }
    for (NodeId u : chosen) {
      g.add_edge(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  return g;
}

Graph watts_strogatz_once(const GenSpec& s, std::uint64_t seed) {
  Rng rng(seed);
  const std::int32_t half = s.k_degree / 2;
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::set<std::pair<NodeId, NodeId>> present;
  auto norm = [](NodeId a, NodeId b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
  for (std::int32_t j = 1; j <= half; ++j) {
    for (NodeId u = 0; u < s.n; ++u) {
      const auto e = norm(u, (u + j) % s.n);
      edges.push_back(e);
      present.insert(e);
    }
  }
  // Rewire the far endpoint of ring edge (u, u+j) with probability p.
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!rng.bernoulli(s.p_rewire)) continue;
    const NodeId u = static_cast<NodeId>(i % static_cast<std::size_t>(s.n));
    const NodeId w = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(s.n)));
    const auto replacement = norm(u, w);
    if (w == u || present.count(replacement)) continue;
    present.erase(edges[i]);
    present.insert(replacement);
    edges[i] = replacement;
  }
  Graph g(s.n);
  for (const auto& [a, b] : edges) g.add_edge(a, b);
  return g;
}

Graph watts_strogatz(const GenSpec& s) {
  require(s.k_degree >= 2 && s.k_degree % 2 == 0, "ws needs an even k_degree >= 2");
  require(s.n > s.k_degree, "ws needs n > k_degree");
  require(s.p_rewire >= 0.0 && s.p_rewire <= 1.0, "ws needs 0 <= p_rewire <= 1");
  for (std::uint64_t attempt = 0; attempt <= 10; ++attempt) {
    Graph g = watts_strogatz_once(s, s.seed + attempt);
    if (is_connected(g)) return g;
  }
  throw ArgumentError("generate: ws stayed disconnected after 10 regenerations");
}

Graph kronecker(const GenSpec& s) {
  require(s.log2_n >= 1 && s.log2_n <= 24, "kron needs 1 <= log2_n <= 24");
  const double a = s.kron_a;
  const double b = s.kron_b;
  const double c = kronecker_c(s);
  require(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0, "kron initiator entries must be in [0, 1]");
  require(c >= 0.0 && c <= 1.0,
          "kron density implies initiator corner c outside [0, 1]");
  const NodeId n = NodeId{1} << s.log2_n;

  // Edge probability is a product over bit positions; evaluate it in
  // chunks of up to 7 bits through a lookup table.
  const int width = std::min(7, s.log2_n);
  const std::uint32_t span = 1u << width;
  std::vector<double> table(span * span, 1.0);
  for (std::uint32_t x = 0; x < span; ++x) {
    for (std::uint32_t y = 0; y < span; ++y) {
      double prob = 1.0;
      for (int bit = 0; bit < width; ++bit) {
        const int bx = (x >> bit) & 1;
        const int by = (y >> bit) & 1;
        prob *= bx == by ? (bx ? c : a) : b;
      }
      table[x * span + y] = prob;
    }
  }
  const double theta[2][2] = {{a, b}, {b, c}};
  auto probability = [&](std::uint32_t i, std::uint32_t j) {
    double prob = 1.0;
    int done = 0;
    while (s.log2_n - done >= width) {
      prob *= table[((i >> done) & (span - 1)) * span + ((j >> done) & (span - 1))];
      done += width;
    }
    for (; done < s.log2_n; ++done) prob *= theta[(i >> done) & 1][(j >> done) & 1];
    return prob;
  };

  Rng rng(s.seed);
  Graph g(n);
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      if (rng.bernoulli(probability(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)))) {
        g.add_edge(i, j);
      }
    }
  }
  return g;
}

Graph lattice(const GenSpec& s) {
  require(s.rows >= 1 && s.cols >= 1, "lattice needs rows, cols >= 1");
  Graph g(s.rows * s.cols);
  for (std::int32_t r = 0; r < s.rows; ++r) {
    for (std::int32_t c = 0; c < s.cols; ++c) {
      const NodeId v = r * s.cols + c;
      if (c + 1 < s.cols) g.add_edge(v, v + 1);
      if (r + 1 < s.rows) g.add_edge(v, v + s.cols);
    }
  }
  return g;
}

Graph complete(const GenSpec& s) {
  require(s.n >= 0, "complete needs n >= 0");
  Graph g(s.n);
  for (NodeId i = 0; i < s.n; ++i) {
    for (NodeId j = i + 1; j < s.n; ++j) g.add_edge(i, j);
  }
  return g;
}

}  // namespace

const char* to_string(GraphModel m) {
  switch (m) {
    case GraphModel::er: return "er";
    case GraphModel::ba: return "ba";
    case GraphModel::ws: return "ws";
    case GraphModel::kron: return "kron";
    case GraphModel::lattice: return "lattice";
    case GraphModel::complete: return "complete";
  }
  return "unknown";
}

GraphModel parse_graph_model(const std::string& name) {
  for (GraphModel m : {GraphModel::er, GraphModel::ba, GraphModel::ws, GraphModel::kron,
                       GraphModel::lattice, GraphModel::complete}) {
    if (name == to_string(m)) return m;
  }
  throw ArgumentError("unknown graph model '" + name + "'");
}

GenSpec GenSpec::erdos_renyi(std::int32_t n, double p, std::uint64_t seed) {
  GenSpec s;
  s.model = GraphModel::er;
  s.n = n;
  s.p = p;
  s.seed = seed;
  return s;
}

GenSpec GenSpec::barabasi_albert(std::int32_t n, std::int32_t m_attach, std::uint64_t seed) {
  GenSpec s;
  s.model = GraphModel::ba;
  s.n = n;
  s.m_attach = m_attach;
  s.seed = seed;
  return s;
}

GenSpec GenSpec::watts_strogatz(std::int32_t n, std::int32_t k_degree, double p_rewire,
                                std::uint64_t seed) {
  GenSpec s;
  s.model = GraphModel::ws;
  s.n = n;
  s.k_degree = k_degree;
  s.p_rewire = p_rewire;
  s.seed = seed;
  return s;
}

GenSpec GenSpec::kronecker(std::int32_t log2_n, double density, std::uint64_t seed) {
  GenSpec s;
  s.model = GraphModel::kron;
  s.log2_n = log2_n;
  s.density = density;
  s.seed = seed;
  return s;
}

GenSpec GenSpec::lattice(std::int32_t rows, std::int32_t cols) {
  GenSpec s;
  s.model = GraphModel::lattice;
  s.rows = rows;
  s.cols = cols;
  return s;
}

GenSpec GenSpec::complete(std::int32_t n) {
  GenSpec s;
  s.model = GraphModel::complete;
  s.n = n;
  return s;
}

double kronecker_c(const GenSpec& spec) {
  if (spec.kron_c) return *spec.kron_c;
  // sum over ordered pairs of edge probabilities = (a + 2b + c)^k
  // = density * n^2 = density * 4^k
  const double total = 4.0 * std::pow(spec.density, 1.0 / spec.log2_n);
  return total - spec.kron_a - 2.0 * spec.kron_b;
}

std::string describe(const GenSpec& s) {
  std::ostringstream os;
  os << to_string(s.model) << '(';
  switch (s.model) {
    case GraphModel::er: os << "n=" << s.n << ",p=" << s.p; break;
    case GraphModel::ba: os << "n=" << s.n << ",m=" << s.m_attach; break;
    case GraphModel::ws: os << "n=" << s.n << ",k=" << s.k_degree << ",p=" << s.p_rewire; break;
    case GraphModel::kron: os << "log2n=" << s.log2_n << ",density=" << s.density; break;
    case GraphModel::lattice: os << s.rows << 'x' << s.cols; break;
    case GraphModel::complete: os << "n=" << s.n; break;
  }
  os << ')';
  return os.str();
}

Graph generate(const GenSpec& spec) {
  switch (spec.model) {
    case GraphModel::er: return erdos_renyi(spec);
    case GraphModel::ba: return barabasi_albert(spec);
    case GraphModel::ws: return watts_strogatz(spec);
    case GraphModel::kron: return kronecker(spec);
    case GraphModel::lattice: return lattice(spec);
    case GraphModel::complete: return complete(spec);
  }
  throw ArgumentError("generate: unknown model");
}

WeightScheme parse_weight_scheme(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  WeightScheme w;
  try {
    if (parts.size() == 1 && parts[0] == "unit") {
      w.kind = WeightKind::unit;
    } else if (parts.size() == 2 && parts[0] == "poisson") {
      w.kind = WeightKind::poisson_plus_one;
      w.rate = std::stod(parts[1]);
    } else if (parts.size() == 3 && parts[0] == "uniform") {
      w.kind = WeightKind::uniform_int;
      w.lo = std::stoll(parts[1]);
      w.hi = std::stoll(parts[2]);
    } else {
      throw ArgumentError("");
    }
  } catch (const std::exception&) {
    throw ArgumentError("bad weight scheme '" + text +
                        "' (expected unit, poisson:RATE or uniform:LO:HI)");
  }
  if (w.kind == WeightKind::poisson_plus_one && !(w.rate > 0.0 && w.rate <= 700.0)) {
    throw ArgumentError("poisson rate must be in (0, 700]");
  }
  if (w.kind == WeightKind::uniform_int && !(1 <= w.lo && w.lo <= w.hi)) {
    throw ArgumentError("uniform weights need 1 <= lo <= hi");
  }
  return w;
}

std::string to_string(const WeightScheme& scheme) {
  std::ostringstream os;
  switch (scheme.kind) {
    case WeightKind::unit: os << "unit"; break;
    case WeightKind::poisson_plus_one: os << "poisson:" << scheme.rate; break;
    case WeightKind::uniform_int: os << "uniform:" << scheme.lo << ':' << scheme.hi; break;
  }
  return os.str();
}

Graph apply_weights(const Graph& g, const WeightScheme& scheme) {
  std::vector<Weight> w(static_cast<std::size_t>(g.num_edges()), 1.0);
  if (scheme.kind != WeightKind::unit) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      Rng rng(substream_seed(scheme.seed, i));
      w[i] = scheme.kind == WeightKind::poisson_plus_one
                 ? static_cast<double>(rng.poisson(scheme.rate) + 1)
                 : static_cast<double>(rng.between(scheme.lo, scheme.hi));
    }
  }
  return g.with_weights(w);
}

Graph invert_weights(const Graph& g) {
  std::vector<Weight> w = g.weights();
  for (double& x : w) {
    if (!(x > 0.0)) throw ArgumentError("invert_weights: zero weight cannot be inverted");
    x = 1.0 / x;
  }
  return g.with_weights(w);
}

}  // namespace forcepath
