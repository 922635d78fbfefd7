// forcepath: generate graphs, run Force Path attacks, run experiments and
// verify perturbations.
//
// Exit codes: 0 success, 1 validation/config error, 2 runtime failure,
// 3 verification failed.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "forcepath/attack.hpp"
#include "forcepath/graphgen.hpp"
#include "forcepath/harness.hpp"
#include "forcepath/io.hpp"
#include "forcepath/lp.hpp"
#include "forcepath/rng.hpp"
#include "forcepath/shortest_paths.hpp"

namespace fp = forcepath;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kRuntime = 2;
constexpr int kVerifyFailed = 3;

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

struct GenOptions {
  std::string model;
  fp::GenSpec spec;
  std::optional<double> kron_c;
  std::string weights = "unit";
  std::uint64_t seed = 0;
  std::string out = "-";
};

int run_gen(const GenOptions& o) {
  fp::GenSpec spec = o.spec;
  spec.model = fp::parse_graph_model(o.model);
  spec.kron_c = o.kron_c;
  spec.seed = o.seed;
  fp::WeightScheme scheme = fp::parse_weight_scheme(o.weights);
  scheme.seed = fp::substream_seed(o.seed, 2);
  fp::LabeledGraph lg = fp::with_numeric_labels(fp::apply_weights(fp::generate(spec), scheme));
  Output out(o.out);
  out.stream() << "# " << fp::describe(spec) << " weights=" << o.weights << " seed=" << o.seed
               << '\n';
  fp::write_edge_list(lg.graph, lg.labels, out.stream());
  return kOk;
}

struct GraphOptions {
  std::string path;
  bool invert = false;
  std::string merge = "reject";
};

fp::LabeledGraph load_graph(const GraphOptions& o) {
  fp::LabeledGraph lg = fp::read_edge_list_file(o.path, fp::parse_duplicate_policy(o.merge));
  if (o.invert) {
    auto labels = lg.labels;
    lg = fp::make_labeled(fp::invert_weights(lg.graph), std::move(labels));
  }
  return lg;
}

fp::Path path_from_labels(const fp::LabeledGraph& lg, const std::vector<std::string>& labels) {
  std::vector<fp::NodeId> nodes;
  for (const auto& l : labels) nodes.push_back(lg.node(l));
  return fp::make_path(lg.graph, std::move(nodes));
}

struct AttackOptions {
  GraphOptions graph;
  std::string source;
  std::string target;
  std::vector<std::string> path;
  std::size_t path_rank = 0;
  std::optional<double> delta;
  std::string algo = "pathperturb";
  std::uint64_t seed = 0;
  std::optional<double> budget_cap;
  std::size_t max_iterations = 10000;
  std::string out = "-";
  std::string dump_lp;
};

int run_attack_cmd(const AttackOptions& o) {
  const fp::LabeledGraph lg = load_graph(o.graph);
  const fp::NodeId s = lg.node(o.source);
  const fp::NodeId t = lg.node(o.target);

  fp::Path target;
  if (!o.path.empty()) {
    target = path_from_labels(lg, o.path);
    if (target.source() != s || target.target() != t) {
      throw fp::ArgumentError("--path must run from --source to --target");
    }
  } else {
    if (o.path_rank < 1) throw fp::ArgumentError("either --path or --path-rank is required");
    auto p = fp::select_target_path(lg.graph, s, t, o.path_rank);
    if (!p) {
      throw fp::ArgumentError("fewer than " + std::to_string(o.path_rank) + " simple paths from " +
                              o.source + " to " + o.target);
    }
    target = std::move(*p);
  }

  fp::AttackConfig cfg;
  cfg.buffer = o.delta ? *o.delta : (o.graph.invert ? 0.1 : 1.0);
  cfg.budget_cap = o.budget_cap;
  cfg.max_iterations = o.max_iterations;
  const fp::Algorithm algo = fp::parse_algorithm(o.algo);
  const fp::AttackResult r = fp::run_attack(algo, lg.graph, target, cfg);

  json doc;
  doc["algorithm"] = fp::to_string(algo);
  doc["source"] = o.source;
  doc["target"] = o.target;
  doc["path"] = json::array();
  for (fp::NodeId v : target.nodes) doc["path"].push_back(lg.labels[static_cast<std::size_t>(v)]);
  doc["path_length"] = fp::path_length(lg.graph, target);
  doc["delta_buffer"] = cfg.buffer;
  doc["seed"] = o.seed;
  doc["budget"] = r.budget;
  doc["iterations"] = r.iterations;
  doc["constraints_generated"] = r.constraints_generated;
  doc["wall_time_ms"] = static_cast<double>(r.wall_time.count()) / 1e6;
  doc["converged"] = r.converged;
  doc["success"] = r.success;
  doc["delta"] = json::array();
  for (fp::EdgeId e = 0; e < lg.graph.num_edges(); ++e) {
    const double d = r.delta[static_cast<std::size_t>(e)];
    if (d == 0.0) continue;
    const fp::Edge& ed = lg.graph.edge(e);
    doc["delta"].push_back({{"edge", e},
                            {"u", lg.labels[static_cast<std::size_t>(ed.u)]},
                            {"v", lg.labels[static_cast<std::size_t>(ed.v)]},
                            {"value", d}});
  }

  if (!o.dump_lp.empty()) {
    Output lp(o.dump_lp);
    lp.stream() << fp::to_lp_text(
        fp::build_model(lg.graph, target, r.constraint_paths, cfg.buffer));
  }
  Output out(o.out);
  out.stream() << doc.dump(2) << '\n';
  return r.success ? kOk : kRuntime;
}

struct VerifyOptions {
  GraphOptions graph;
  std::vector<std::string> path;
  std::string delta_file;
  double buffer = 1.0;
  double eps = fp::kDefaultFeasibilityEps;
};

int run_verify(const VerifyOptions& o) {
  const fp::LabeledGraph lg = load_graph(o.graph);
  const fp::Path target = path_from_labels(lg, o.path);

  std::ifstream in(o.delta_file);
  if (!in) throw std::runtime_error("cannot open delta file '" + o.delta_file + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw fp::ArgumentError(std::string("delta file: ") + e.what());
  }
  const json& entries = doc.is_array() ? doc : doc.at("delta");
  fp::Perturbation delta(static_cast<std::size_t>(lg.graph.num_edges()), 0.0);
  for (const json& item : entries) {
    fp::EdgeId e = -1;
    if (item.contains("u") && item.contains("v")) {
      auto found = lg.graph.find_edge(lg.node(item.at("u").get<std::string>()),
                                      lg.node(item.at("v").get<std::string>()));
      if (!found) throw fp::ArgumentError("delta file names a non-edge");
      e = *found;
    } else {
      e = item.at("edge").get<fp::EdgeId>();
      if (e < 0 || e >= lg.graph.num_edges()) throw fp::ArgumentError("delta edge id out of range");
    }
    delta[static_cast<std::size_t>(e)] += item.at("value").get<double>();
  }

  const fp::Verification v = fp::verify_attack(lg.graph, target, delta, o.buffer, o.eps);
  if (v.ok) {
    std::cout << "verified: target is the shortest path with margin " << o.buffer << '\n';
    return kOk;
  }
  std::cout << "verification failed: " << v.diagnostic << '\n';
  return kVerifyFailed;
}

struct ExperimentOptions {
  std::string config;
  std::size_t workers = 1;
  std::string out;
};

int run_experiment_cmd(const ExperimentOptions& o) {
  fp::ExperimentConfig cfg = fp::load_config(o.config);
  const std::string dir = o.out.empty() ? cfg.output : o.out;
  if (dir.empty()) throw fp::ConfigError("no output directory (--out or config 'output')");
  std::filesystem::create_directories(dir);
  const std::filesystem::path root(dir);

  std::ofstream results(root / "results.csv");
  if (!results) throw std::runtime_error("cannot write results.csv");
  const fp::ExperimentOutput out = fp::run_experiment(cfg, o.workers, &results);

  std::ofstream summary(root / "summary.csv");
  fp::write_summary_csv(out.summary, summary);
  std::ofstream skipped(root / "skipped.csv");
  fp::write_skipped_csv(out.skipped, skipped);

  std::cerr << out.records.size() << " records, " << out.skipped.size() << " skipped -> " << dir
            << '\n';
  for (const auto& row : out.summary) {
    std::cerr << "  " << row.graph << ' ' << row.weights << " rank " << row.path_rank << ' '
              << row.algorithm << ": mean cost ratio " << row.mean_cost_ratio << " (se "
              << row.se_cost_ratio << ", n=" << row.trials << ")\n";
  }
  return kOk;
}

void add_graph_options(CLI::App* cmd, GraphOptions& g) {
  cmd->add_option("--graph", g.path, "Edge-list file")->required();
  cmd->add_flag("--invert", g.invert, "Use 1/w (similarity weights)");
  cmd->add_option("--merge", g.merge, "Duplicate edges: reject, min or sum");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Force Path attacks on shortest paths"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic weighted graph");
  gen_cmd->add_option("--model", gen.model, "er|ba|ws|kron|lattice|complete")->required();
  gen_cmd->add_option("--n", gen.spec.n, "Node count (er, ba, ws, complete)");
  gen_cmd->add_option("--p", gen.spec.p, "Edge probability (er)");
  gen_cmd->add_option("--m-attach", gen.spec.m_attach, "Edges per new node (ba)");
  gen_cmd->add_option("--k-degree", gen.spec.k_degree, "Ring degree (ws)");
  gen_cmd->add_option("--p-rewire", gen.spec.p_rewire, "Rewiring probability (ws)");
  gen_cmd->add_option("--log2n", gen.spec.log2_n, "log2 of node count (kron)");
  gen_cmd->add_option("--density", gen.spec.density, "Edge density (kron)");
  gen_cmd->add_option("--kron-a", gen.spec.kron_a, "Initiator a (kron)");
  gen_cmd->add_option("--kron-b", gen.spec.kron_b, "Initiator b (kron)");
  gen_cmd->add_option("--kron-c", gen.kron_c, "Initiator c (kron; derived from density if unset)");
  gen_cmd->add_option("--rows", gen.spec.rows, "Rows (lattice)");
  gen_cmd->add_option("--cols", gen.spec.cols, "Columns (lattice)");
  gen_cmd->add_option("--weights", gen.weights, "unit | poisson:RATE | uniform:LO:HI");
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("--out", gen.out, "Output edge list ('-' for stdout)");

  AttackOptions atk;
  auto* atk_cmd = app.add_subcommand("attack", "Force a path to be the shortest");
  add_graph_options(atk_cmd, atk.graph);
  atk_cmd->add_option("--source", atk.source, "Source label")->required();
  atk_cmd->add_option("--target", atk.target, "Target label")->required();
  auto* path_opt = atk_cmd->add_option("--path", atk.path, "Target path as node labels");
  auto* rank_opt = atk_cmd->add_option("--path-rank", atk.path_rank, "Use the k-th shortest path");
  path_opt->excludes(rank_opt);
  atk_cmd->add_option("--delta", atk.delta, "Required margin (default 1, or 0.1 with --invert)");
  atk_cmd->add_option("--algo", atk.algo, "pathperturb|greedy-first|greedy-min");
  atk_cmd->add_option("--seed", atk.seed, "Recorded seed");
  atk_cmd->add_option("--budget-cap", atk.budget_cap, "Adversary budget");
  atk_cmd->add_option("--max-iterations", atk.max_iterations, "Iteration limit");
  atk_cmd->add_option("--out", atk.out, "Result JSON ('-' for stdout)");
  atk_cmd->add_option("--dump-lp", atk.dump_lp, "Write the final LP model as text");

  ExperimentOptions exp;
  auto* exp_cmd = app.add_subcommand("experiment", "Run a configured batch of trials");
  exp_cmd->add_option("--config", exp.config, "JSON experiment config")->required();
  exp_cmd->add_option("--workers", exp.workers, "Parallel trial workers");
  exp_cmd->add_option("--out", exp.out, "Output directory");

  VerifyOptions ver;
  auto* ver_cmd = app.add_subcommand("verify", "Check that a perturbation forces a path");
  add_graph_options(ver_cmd, ver.graph);
  ver_cmd->add_option("--path", ver.path, "Target path as node labels")->required();
  ver_cmd->add_option("--delta", ver.delta_file, "Perturbation JSON (attack output)")->required();
  ver_cmd->add_option("--delta-buffer", ver.buffer, "Required margin");
  ver_cmd->add_option("--eps", ver.eps, "Comparison tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*atk_cmd) return run_attack_cmd(atk);
    if (*exp_cmd) return run_experiment_cmd(exp);
    if (*ver_cmd) return run_verify(ver);
  } catch (const fp::ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const fp::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const fp::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const fp::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return kRuntime;
  }
  return kInvalid;
}
