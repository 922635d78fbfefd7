#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "forcepath/graphgen.hpp"
#include "forcepath/structure.hpp"

using namespace forcepath;

TEST(Generate, Complete) {
  Graph g = generate(GenSpec::complete(5));
  EXPECT_EQ(g.num_nodes(), 5);
  EXPECT_EQ(g.num_edges(), 10);
  for (NodeId v = 0; v < 5; ++v) EXPECT_EQ(g.degree(v), 4);
}

TEST(Generate, Lattice) {
  Graph g = generate(GenSpec::lattice(3, 3));
  EXPECT_EQ(g.num_nodes(), 9);
  EXPECT_EQ(g.num_edges(), 12);
  Graph h = generate(GenSpec::lattice(4, 7));
  EXPECT_EQ(h.num_edges(), 2 * 4 * 7 - 4 - 7);
}

TEST(Generate, ErdosRenyiCount) {
  Graph g = generate(GenSpec::erdos_renyi(1000, 0.01, 42));
  const double mean = 0.01 * 1000 * 999 / 2;
  const double sd = std::sqrt(mean * 0.99);
  EXPECT_LT(std::abs(g.num_edges() - mean), 4 * sd);
  Graph again = generate(GenSpec::erdos_renyi(1000, 0.01, 42));
  ASSERT_EQ(again.num_edges(), g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    EXPECT_EQ(again.edge(e).u, g.edge(e).u);
    EXPECT_EQ(again.edge(e).v, g.edge(e).v);
  }
}

TEST(Generate, BarabasiAlbert) {
  Graph g = generate(GenSpec::barabasi_albert(500, 5, 3));
  EXPECT_EQ(g.num_nodes(), 500);
  EXPECT_EQ(g.num_edges(), (500 - 5) * 5);
  EXPECT_TRUE(is_connected(g));
  // preferential attachment leaves a heavy tail
  NodeId max_degree = 0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) max_degree = std::max(max_degree, g.degree(v));
  EXPECT_GT(max_degree, 40);
}

TEST(Generate, WattsStrogatz) {
  Graph ring = generate(GenSpec::watts_strogatz(20, 4, 0.0, 1));
  EXPECT_EQ(ring.num_edges(), 40);
  for (NodeId v = 0; v < 20; ++v) EXPECT_EQ(ring.degree(v), 4);
  Graph g = generate(GenSpec::watts_strogatz(200, 6, 0.2, 9));
  EXPECT_EQ(g.num_edges(), 600);
  EXPECT_TRUE(is_connected(g));
  EXPECT_THROW(generate(GenSpec::watts_strogatz(20, 3, 0.1, 1)), ArgumentError);
}

TEST(Generate, KroneckerExpectedCount) {
  GenSpec spec = GenSpec::kronecker(10, 0.01, 5);
  const double a = spec.kron_a, b = spec.kron_b, c = kronecker_c(spec);
  // independent check of the expected count: sum of pair probabilities
  // over i<j is (total mass - diagonal mass) / 2
  const double expected = (std::pow(a + 2 * b + c, 10) - std::pow(a + c, 10)) / 2;
  Graph g = generate(spec);
  EXPECT_LT(std::abs(g.num_edges() - expected), 5 * std::sqrt(expected));
  EXPECT_NEAR(expected, 0.01 * 1024.0 * 1024.0 / 2, 0.02 * 0.01 * 1024 * 1024);
}

TEST(Generate, InvalidParameters) {
  EXPECT_THROW(generate(GenSpec::erdos_renyi(10, 1.5, 0)), ArgumentError);
  EXPECT_THROW(generate(GenSpec::barabasi_albert(5, 5, 0)), ArgumentError);
  EXPECT_THROW(generate(GenSpec::lattice(0, 3)), ArgumentError);
}

TEST(Weights, Unit) {
  Graph g = apply_weights(generate(GenSpec::complete(6)), WeightScheme{});
  for (double w : g.weights()) EXPECT_EQ(w, 1.0);
}

TEST(Weights, PoissonMean) {
  Graph g = generate(GenSpec::erdos_renyi(1000, 0.2, 11));
  ASSERT_GT(g.num_edges(), 99000);
  WeightScheme s{WeightKind::poisson_plus_one, 20.0, 1, 41, 17};
  auto w = apply_weights(g, s).weights();
  const double mean = std::accumulate(w.begin(), w.end(), 0.0) / static_cast<double>(w.size());
  EXPECT_NEAR(mean, 21.0, 0.1);
  EXPECT_GE(*std::min_element(w.begin(), w.end()), 1.0);
  EXPECT_EQ(apply_weights(g, s).weights(), w);
}

TEST(Weights, UniformMean) {
  Graph g = generate(GenSpec::erdos_renyi(1000, 0.2, 12));
  auto w = apply_weights(g, WeightScheme{WeightKind::uniform_int, 20.0, 1, 41, 5}).weights();
  const double mean = std::accumulate(w.begin(), w.end(), 0.0) / static_cast<double>(w.size());
  EXPECT_NEAR(mean, 21.0, 0.2);
  EXPECT_GE(*std::min_element(w.begin(), w.end()), 1.0);
  EXPECT_LE(*std::max_element(w.begin(), w.end()), 41.0);
}

TEST(Weights, ParseAndInvert) {
  EXPECT_EQ(parse_weight_scheme("unit").kind, WeightKind::unit);
  WeightScheme p = parse_weight_scheme("poisson:5");
  EXPECT_EQ(p.kind, WeightKind::poisson_plus_one);
  EXPECT_EQ(p.rate, 5.0);
  WeightScheme u = parse_weight_scheme("uniform:2:9");
  EXPECT_EQ(u.lo, 2);
  EXPECT_EQ(u.hi, 9);
  EXPECT_THROW(parse_weight_scheme("gauss"), ArgumentError);

  Graph g(2);
  g.add_edge(0, 1, 2.0);
  EXPECT_DOUBLE_EQ(invert_weights(g).edge(0).w, 0.5);
  Graph z(2);
  z.add_edge(0, 1, 0.0);
  EXPECT_THROW(invert_weights(z), ArgumentError);
}
