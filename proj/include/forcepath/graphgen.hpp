#pragma once

// Seeded synthetic graph generators and edge-weight schemes.

#include <cstdint>
#include <optional>
#include <string>

#include "forcepath/graph.hpp"

namespace forcepath {

enum class GraphModel { er, ba, ws, kron, lattice, complete };

const char* to_string(GraphModel m);
GraphModel parse_graph_model(const std::string& name);

struct GenSpec {
  GraphModel model = GraphModel::complete;
  std::int32_t n = 0;        // er, ba, ws, complete
  double p = 0.0;            // er edge probability
  std::int32_t m_attach = 0; // ba edges per new node
  std::int32_t k_degree = 0; // ws ring degree (even)
  double p_rewire = 0.0;     // ws
  std::int32_t log2_n = 0;   // kron
  double density = 0.0;      // kron: expected edges ~ density * n^2 / 2
  double kron_a = 0.9;
  double kron_b = 0.6;
  std::optional<double> kron_c;  // derived from density when absent
  std::int32_t rows = 0;     // lattice
  std::int32_t cols = 0;
  std::uint64_t seed = 0;

  static GenSpec erdos_renyi(std::int32_t n, double p, std::uint64_t seed);
  static GenSpec barabasi_albert(std::int32_t n, std::int32_t m_attach, std::uint64_t seed);
  static GenSpec watts_strogatz(std::int32_t n, std::int32_t k_degree, double p_rewire,
                                std::uint64_t seed);
  static GenSpec kronecker(std::int32_t log2_n, double density, std::uint64_t seed);
  static GenSpec lattice(std::int32_t rows, std::int32_t cols);
  static GenSpec complete(std::int32_t n);
};

/// Short descriptor such as "ba(n=500,m=5)".
std::string describe(const GenSpec& spec);

/// Kronecker initiator corner c actually used for `spec`.
double kronecker_c(const GenSpec& spec);

/// Unit-weight graph, deterministic in (spec, seed). Throws ArgumentError
/// on invalid parameters. Watts-Strogatz draws that come out disconnected
/// are regenerated with seed+1, up to 10 times.
Graph generate(const GenSpec& spec);

enum class WeightKind { unit, poisson_plus_one, uniform_int };

struct WeightScheme {
  WeightKind kind = WeightKind::unit;
  double rate = 20.0;     // poisson_plus_one
  std::int64_t lo = 1;    // uniform_int, inclusive
  std::int64_t hi = 41;
  std::uint64_t seed = 0;
};

/// Parses "unit", "poisson:RATE" or "uniform:LO:HI".
WeightScheme parse_weight_scheme(const std::string& text);
std::string to_string(const WeightScheme& scheme);

/// Edge i's weight is drawn from substream i of the scheme seed.
Graph apply_weights(const Graph& g, const WeightScheme& scheme);

/// w'(e) = 1 / w(e); throws ArgumentError on a zero weight.
Graph invert_weights(const Graph& g);

}  // namespace forcepath
