#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "forcepath/io.hpp"

using namespace forcepath;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = FORCEPATH_FIXTURES;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string write(const LabeledGraph& lg) {
  std::ostringstream out;
  write_edge_list(lg.graph, lg.labels, out);
  return out.str();
}

}  // namespace

TEST(EdgeList, Basic) {
  std::istringstream in("a b 1\nb c 2\n");
  LabeledGraph lg = read_edge_list(in);
  EXPECT_EQ(lg.graph.num_nodes(), 3);
  EXPECT_EQ(lg.graph.num_edges(), 2);
  EXPECT_EQ(lg.graph.weights(), (std::vector<Weight>{1, 2}));
  EXPECT_EQ(lg.node("c"), 2);
}

TEST(EdgeList, DefaultWeight) {
  std::istringstream in("# comment\na b\n");
  LabeledGraph lg = read_edge_list(in);
  ASSERT_EQ(lg.graph.num_edges(), 1);
  EXPECT_EQ(lg.graph.edge(0).w, 1.0);
}

TEST(EdgeList, Errors) {
  std::istringstream loop("a a 1");
  EXPECT_THROW(read_edge_list(loop), ValidationError);
  std::istringstream dup("a b 1\nb a 3\n");
  EXPECT_THROW(read_edge_list(dup), ValidationError);
}

TEST(EdgeList, DuplicatePolicies) {
  std::istringstream a("a b 5\nb a 3\n");
  EXPECT_EQ(read_edge_list(a, DuplicatePolicy::keep_min).graph.edge(0).w, 3.0);
  std::istringstream b("a b 5\nb a 3\n");
  EXPECT_EQ(read_edge_list(b, DuplicatePolicy::sum).graph.edge(0).w, 8.0);
  EXPECT_EQ(parse_duplicate_policy("min"), DuplicatePolicy::keep_min);
  EXPECT_THROW(parse_duplicate_policy("max"), ArgumentError);
}

TEST(EdgeList, FixtureRoundTrip) {
  int seen = 0;
  for (const auto& entry : fs::directory_iterator(kFixtures / "graphs")) {
    ++seen;
    LabeledGraph first = read_edge_list_file(entry.path().string());
    const std::string text = write(first);
    std::istringstream in(text);
    LabeledGraph second = read_edge_list(in);
    EXPECT_EQ(second.labels, first.labels) << entry.path();
    EXPECT_EQ(second.graph.weights(), first.graph.weights()) << entry.path();
    for (EdgeId e = 0; e < first.graph.num_edges(); ++e) {
      EXPECT_EQ(second.graph.edge(e).u, first.graph.edge(e).u);
      EXPECT_EQ(second.graph.edge(e).v, first.graph.edge(e).v);
    }
    EXPECT_EQ(write(second), text) << entry.path();
  }
  EXPECT_GE(seen, 3);
  // canonical files come back byte for byte
  EXPECT_EQ(write(read_edge_list_file((kFixtures / "graphs" / "chain.el").string())),
            slurp(kFixtures / "graphs" / "chain.el"));
  EXPECT_EQ(write(read_edge_list_file((kFixtures / "graphs" / "triangle.el").string())),
            slurp(kFixtures / "graphs" / "triangle.el"));
}

TEST(EdgeList, MalformedCorpus) {
  std::ifstream expected(kFixtures / "bad" / "EXPECTED");
  std::string name;
  std::size_t line = 0;
  int seen = 0;
  while (expected >> name >> line) {
    ++seen;
    const std::string want = "line " + std::to_string(line) + ":";
    try {
      read_edge_list_file((kFixtures / "bad" / name).string());
      ADD_FAILURE() << name << " was accepted";
    } catch (const std::exception& e) {
      EXPECT_EQ(std::string(e.what()).rfind(want, 0), 0u) << name << ": " << e.what();
    }
  }
  EXPECT_EQ(seen, 7);
}

TEST(ResultsCsv, HeaderOnly) {
  std::ostringstream out;
  write_results_csv({}, out);
  EXPECT_EQ(out.str(),
            "trial,graph,weights,s,t,path_rank,delta,algorithm,budget,baseline_budget,"
            "cost_ratio,iterations,constraints_generated,wall_time_ms,success\n");
  std::istringstream in(out.str());
  EXPECT_TRUE(read_results_csv(in).empty());
}

TEST(ResultsCsv, RecordRoundTrip) {
  ResultRecord r;
  r.trial = 4;
  r.graph = "er(n=10,p=0.3)";
  r.weights = "uniform:1:41";
  r.source = "3";
  r.target = "7";
  r.path_rank = 5;
  r.buffer = 0.1;
  r.algorithm = "pathperturb";
  r.budget = 1.0 / 3.0;
  r.baseline_budget = 2.0;
  r.cost_ratio = r.budget / r.baseline_budget;
  r.iterations = 9;
  r.constraints_generated = 8;
  r.wall_time_ms = 0.125;
  r.success = true;
  std::ostringstream out;
  write_results_csv(std::span<const ResultRecord>(&r, 1), out);
  std::istringstream in(out.str());
  auto back = read_results_csv(in);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0], r);
  // ratio keeps at least 9 significant digits
  EXPECT_NE(out.str().find("0.16666666"), std::string::npos);
}

TEST(ResultsCsv, FixtureRoundTrip) {
  const std::string text = slurp(kFixtures / "results.csv");
  std::istringstream in(text);
  auto records = read_results_csv(in);
  ASSERT_EQ(records.size(), 4u);
  EXPECT_EQ(records[2].graph, "ba(n=500,m=5)");
  EXPECT_EQ(records[3].graph, "file \"odd\", name");
  EXPECT_FALSE(records[3].success);
  std::ostringstream out;
  write_results_csv(records, out);
  EXPECT_EQ(out.str(), text);
}

TEST(ResultsCsv, Rejects) {
  std::istringstream wrong_header("a,b\n1,2\n");
  EXPECT_THROW(read_results_csv(wrong_header), ParseError);
  std::istringstream unterminated("\"abc\n");
  EXPECT_THROW(read_csv(unterminated), ParseError);
}

TEST(Csv, Escape) {
  EXPECT_EQ(csv_escape("plain"), "plain");
  EXPECT_EQ(csv_escape("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_escape("say \"hi\""), "\"say \"\"hi\"\"\"");
  std::istringstream in("x,\"a,b\",\"multi\nline\"\r\n1,2,3\n");
  auto rows = read_csv(in);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0][1], "a,b");
  EXPECT_EQ(rows[0][2], "multi\nline");
  EXPECT_EQ(rows[1][2], "3");
}

TEST(Numbers, FormatDoubleRoundTrips) {
  for (double x : {0.0, 1.0, 0.1, 18.0 / 35.0, 1e-300, 123456789.125}) {
    EXPECT_EQ(parse_double(format_double(x)), x);
  }
  EXPECT_EQ(format_double(18.0), "18");
}
