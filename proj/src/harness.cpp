#include "forcepath/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "json.hpp"
#include "forcepath/shortest_paths.hpp"

namespace forcepath {

using nlohmann::json;

namespace {

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const char* where) {
  if (!obj.is_object()) throw ConfigError(std::string(where) + " must be an object");
  for (const auto& item : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(),
                     [&](const char* k) { return item.key() == k; })) {
      throw ConfigError(std::string("unknown key '") + item.key() + "' in " + where);
    }
  }
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
  return obj.contains(key) ? obj.at(key).get<T>() : fallback;
}

template <typename T>
T require_field(const json& obj, const char* key, const char* where) {
  if (!obj.contains(key)) {
    throw ConfigError(std::string("missing '") + key + "' in " + where);
  }
  return obj.at(key).get<T>();
}

GraphSource parse_source(const json& j) {
  GraphSource src;
  if (j.contains("edge_list")) {
    check_keys(j, {"edge_list", "merge"}, "graph");
    src.edge_list = j.at("edge_list").get<std::string>();
    src.duplicates = parse_duplicate_policy(get_or<std::string>(j, "merge", "reject"));
    return src;
  }
  check_keys(j, {"model", "n", "p", "m_attach", "k_degree", "p_rewire", "log2_n", "density",
                 "kron_a", "kron_b", "kron_c", "rows", "cols"},
             "graph");
  GenSpec g;
  g.model = parse_graph_model(require_field<std::string>(j, "model", "graph"));
  g.n = get_or(j, "n", 0);
  g.p = get_or(j, "p", 0.0);
  g.m_attach = get_or(j, "m_attach", 0);
  g.k_degree = get_or(j, "k_degree", 0);
  g.p_rewire = get_or(j, "p_rewire", 0.0);
  g.log2_n = get_or(j, "log2_n", 0);
  g.density = get_or(j, "density", 0.0);
  g.kron_a = get_or(j, "kron_a", g.kron_a);
  g.kron_b = get_or(j, "kron_b", g.kron_b);
  if (j.contains("kron_c")) g.kron_c = j.at("kron_c").get<double>();
  g.rows = get_or(j, "rows", 0);
  g.cols = get_or(j, "cols", 0);
  src.generator = g;
  return src;
}

Selection parse_selection(const json& j) {
  check_keys(j, {"mode", "h_target", "h_limit", "source", "target"}, "selection");
  Selection sel;
  const auto mode = require_field<std::string>(j, "mode", "selection");
  if (mode == "uniform_component") {
    sel.mode = SelectionMode::uniform_component;
  } else if (mode == "hop_target") {
    sel.mode = SelectionMode::hop_target;
    sel.h_target = get_or(j, "h_target", sel.h_target);
    sel.h_limit = get_or(j, "h_limit", sel.h_limit);
    if (sel.h_target < 1 || sel.h_limit < sel.h_target) {
      throw ConfigError("selection: need 1 <= h_target <= h_limit");
    }
  } else if (mode == "fixed") {
    sel.mode = SelectionMode::fixed;
    sel.source_label = require_field<std::string>(j, "source", "selection");
    sel.target_label = require_field<std::string>(j, "target", "selection");
  } else {
    throw ConfigError("selection: unknown mode '" + mode + "'");
  }
  return sel;
}

struct TrialOutput {
  std::vector<ResultRecord> records;
  std::vector<SkippedTrial> skipped;
};

struct Shared {
  const ExperimentConfig& cfg;
  std::optional<LabeledGraph> fixed_graph;
};

LabeledGraph trial_graph(const Shared& shared, std::uint64_t trial_seed) {
  const ExperimentConfig& cfg = shared.cfg;
  Graph g;
  std::vector<std::string> labels;
  if (cfg.source.generator) {
    GenSpec spec = *cfg.source.generator;
    spec.seed = substream_seed(trial_seed, 1);
    g = generate(spec);
  } else {
    g = shared.fixed_graph->graph;
    labels = shared.fixed_graph->labels;
  }
  if (cfg.weights) {
    WeightScheme scheme = *cfg.weights;
    scheme.seed = substream_seed(trial_seed, 2);
    g = apply_weights(g, scheme);
  }
  if (cfg.invert) g = invert_weights(g);
  if (labels.empty()) return with_numeric_labels(std::move(g));
  return make_labeled(std::move(g), std::move(labels));
}

TrialOutput run_trial(const Shared& shared, std::size_t trial) {
  const ExperimentConfig& cfg = shared.cfg;
  TrialOutput out;
  auto skip_all = [&](const std::string& reason) {
    for (std::size_t rank : cfg.path_ranks) out.skipped.push_back({trial, rank, reason});
  };

  const std::uint64_t trial_seed = substream_seed(cfg.seed, trial);
  try {
    const LabeledGraph lg = trial_graph(shared, trial_seed);
    Rng rng(substream_seed(trial_seed, 3));
    std::string reason;
    auto ends = select_endpoints(lg.graph, lg.labels, cfg.selection, rng, reason);
    if (!ends) {
      skip_all(reason);
      return out;
    }
    const Graph& work = ends->working.graph;
    const std::size_t max_rank = *std::max_element(cfg.path_ranks.begin(), cfg.path_ranks.end());
    const auto ranked = yen_k_shortest(work, ends->source, ends->target, max_rank);

    const auto label = [&](NodeId local) {
      return lg.labels[static_cast<std::size_t>(ends->working.original[static_cast<std::size_t>(local)])];
    };

    AttackConfig attack;
    attack.buffer = cfg.effective_buffer();
    attack.budget_cap = cfg.budget_cap;
    attack.max_iterations = cfg.max_iterations;

    for (std::size_t rank : cfg.path_ranks) {
      if (ranked.size() < rank) {
        out.skipped.push_back({trial, rank,
                               "only " + std::to_string(ranked.size()) + " simple paths"});
        continue;
      }
      const Path& target = ranked[rank - 1];
      std::vector<ResultRecord> rows;
      double baseline = 0.0;
      try {
        for (Algorithm algo : cfg.run_order()) {
          AttackResult res = run_attack(algo, work, target, attack);
          const bool ok =
              res.success && verify_attack(work, target, res.delta, attack.buffer, attack.eps).ok;
          if (algo == Algorithm::greedy_first) baseline = res.budget;
          ResultRecord r;
          r.trial = trial;
          r.graph = cfg.graph_descriptor();
          r.weights = cfg.weight_descriptor();
          r.source = label(ends->source);
          r.target = label(ends->target);
          r.path_rank = rank;
          r.buffer = attack.buffer;
          r.algorithm = to_string(algo);
          r.budget = res.budget;
          r.iterations = res.iterations;
          r.constraints_generated = res.constraints_generated;
          r.wall_time_ms = cfg.record_wall_time
                               ? static_cast<double>(res.wall_time.count()) / 1e6
                               : 0.0;
          r.success = ok;
          rows.push_back(std::move(r));
        }
      } catch (const std::exception& e) {
        out.skipped.push_back({trial, rank, std::string("attack failed: ") + e.what()});
        continue;
      }
      for (ResultRecord& r : rows) {
        r.baseline_budget = baseline;
        if (baseline > 0.0) {
          r.cost_ratio = r.budget / baseline;
        } else {
          r.cost_ratio = r.budget == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
        }
        out.records.push_back(std::move(r));
      }
    }
  } catch (const std::exception& e) {
    out.records.clear();
    out.skipped.clear();
    skip_all(std::string("trial failed: ") + e.what());
  }
  return out;
}

double mean_of(const std::vector<double>& xs) {
  double total = 0.0;
  for (double x : xs) total += x;
  return xs.empty() ? 0.0 : total / static_cast<double>(xs.size());
}

double standard_error(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean_of(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  const double n = static_cast<double>(xs.size());
  return std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
}

}  // namespace

std::vector<Algorithm> ExperimentConfig::run_order() const {
  std::vector<Algorithm> order{Algorithm::greedy_first};
  for (Algorithm a : algorithms) {
    if (std::find(order.begin(), order.end(), a) == order.end()) order.push_back(a);
  }
  return order;
}

std::string ExperimentConfig::graph_descriptor() const {
  if (source.generator) return describe(*source.generator);
  const auto slash = source.edge_list.find_last_of('/');
  return slash == std::string::npos ? source.edge_list : source.edge_list.substr(slash + 1);
}

std::string ExperimentConfig::weight_descriptor() const {
  std::string w = weights ? to_string(*weights) : "given";
  if (invert) w += "+invert";
  return w;
}

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  ExperimentConfig cfg;
  try {
    check_keys(j, {"graph", "weights", "invert", "trials", "path_ranks", "delta", "selection",
                   "algorithms", "seed", "output", "record_wall_time", "budget_cap",
                   "max_iterations"},
               "config");
    cfg.source = parse_source(require_field<json>(j, "graph", "config"));
    if (j.contains("weights") && !j.at("weights").is_null()) {
      cfg.weights = parse_weight_scheme(j.at("weights").get<std::string>());
    }
    cfg.invert = get_or(j, "invert", false);
    cfg.trials = require_field<std::size_t>(j, "trials", "config");
    cfg.path_ranks = require_field<std::vector<std::size_t>>(j, "path_ranks", "config");
    if (j.contains("delta")) cfg.buffer = j.at("delta").get<double>();
    if (j.contains("selection")) cfg.selection = parse_selection(j.at("selection"));
    if (j.contains("algorithms")) {
      cfg.algorithms.clear();
      for (const auto& name : j.at("algorithms")) {
        cfg.algorithms.push_back(parse_algorithm(name.get<std::string>()));
      }
    }
    cfg.seed = get_or<std::uint64_t>(j, "seed", 0);
    cfg.output = get_or<std::string>(j, "output", "");
    cfg.record_wall_time = get_or(j, "record_wall_time", true);
    if (j.contains("budget_cap") && !j.at("budget_cap").is_null()) {
      cfg.budget_cap = j.at("budget_cap").get<double>();
    }
    cfg.max_iterations = get_or<std::size_t>(j, "max_iterations", cfg.max_iterations);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const ArgumentError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (cfg.trials < 1) throw ConfigError("config: trials must be >= 1");
  if (cfg.path_ranks.empty()) throw ConfigError("config: path_ranks must not be empty");
  for (std::size_t k : cfg.path_ranks) {
    if (k < 1) throw ConfigError("config: path ranks must be >= 1");
  }
  if (cfg.buffer && !(*cfg.buffer >= 0.0)) throw ConfigError("config: delta must be >= 0");
  if (cfg.selection.mode == SelectionMode::fixed && cfg.source.generator) {
    throw ConfigError("config: fixed selection needs an edge_list graph");
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::optional<Endpoints> select_endpoints(const Graph& g, std::span<const std::string> labels,
                                          const Selection& selection, Rng& rng,
                                          std::string& reason) {
  if (selection.mode == SelectionMode::fixed) {
    auto find = [&](const std::string& l) -> NodeId {
      auto it = std::find(labels.begin(), labels.end(), l);
      if (it == labels.end()) throw ArgumentError("unknown node label '" + l + "'");
      return static_cast<NodeId>(it - labels.begin());
    };
    const NodeId s = find(selection.source_label);
    const NodeId t = find(selection.target_label);
    std::vector<NodeId> all(static_cast<std::size_t>(g.num_nodes()));
    for (NodeId v = 0; v < g.num_nodes(); ++v) all[static_cast<std::size_t>(v)] = v;
    return Endpoints{s, t, induced_subgraph(g, std::move(all))};
  }

  if (g.num_nodes() == 0) {
    reason = "empty graph";
    return std::nullopt;
  }
  Subgraph lcc = largest_connected_component(g);
  const NodeId n = lcc.graph.num_nodes();
  if (n < 2) {
    reason = "largest component has fewer than 2 nodes";
    return std::nullopt;
  }

  if (selection.mode == SelectionMode::uniform_component) {
    const auto s = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(n)));
    auto t = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(n - 1)));
    if (t >= s) ++t;
    return Endpoints{s, t, std::move(lcc)};
  }

  for (int attempt = 0; attempt < 100; ++attempt) {
    const auto s = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(n)));
    const auto ring = nodes_at_hop_distance(lcc.graph, s, selection.h_target);
    if (ring.empty()) continue;
    const NodeId t = ring[rng.below(ring.size())];
    Subgraph ball = induced_subgraph_within_hops(lcc.graph, s, selection.h_limit);
    // ball.original holds lcc ids (ascending); translate endpoints and ids.
    auto local = [&](NodeId lcc_id) {
      return static_cast<NodeId>(
          std::lower_bound(ball.original.begin(), ball.original.end(), lcc_id) -
          ball.original.begin());
    };
    Endpoints ends{local(s), local(t), std::move(ball)};
    for (NodeId& id : ends.working.original) id = lcc.original[static_cast<std::size_t>(id)];
    return ends;
  }
  reason = "no node at hop distance " + std::to_string(selection.h_target) +
           " after 100 attempts";
  return std::nullopt;
}

std::optional<Path> select_target_path(const Graph& g, NodeId s, NodeId t, std::size_t rank) {
  if (rank < 1) throw ArgumentError("select_target_path: rank must be >= 1");
  auto paths = yen_k_shortest(g, s, t, rank);
  if (paths.size() < rank) return std::nullopt;
  return std::move(paths[rank - 1]);
}

ExperimentOutput run_experiment(const ExperimentConfig& cfg, std::size_t workers,
                                std::ostream* results_sink) {
  Shared shared{cfg, std::nullopt};
  if (!cfg.source.generator) {
    try {
      shared.fixed_graph = read_edge_list_file(cfg.source.edge_list, cfg.source.duplicates);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  }
  workers = std::max<std::size_t>(1, std::min(workers, cfg.trials));

  std::vector<std::optional<TrialOutput>> slots(cfg.trials);
  std::mutex mu;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < cfg.trials;) {
      TrialOutput result = run_trial(shared, i);
      {
        std::lock_guard lock(mu);
        slots[i] = std::move(result);
      }
      ready.notify_all();
    }
  };

  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);

  ExperimentOutput out;
  if (results_sink) write_results_header(*results_sink);
  for (std::size_t i = 0; i < cfg.trials; ++i) {
    TrialOutput trial;
    {
      std::unique_lock lock(mu);
      ready.wait(lock, [&] { return slots[i].has_value(); });
      trial = std::move(*slots[i]);
      slots[i].reset();
    }
    if (results_sink) {
      for (const ResultRecord& r : trial.records) write_result_row(r, *results_sink);
      results_sink->flush();
    }
    out.records.insert(out.records.end(), trial.records.begin(), trial.records.end());
    out.skipped.insert(out.skipped.end(), trial.skipped.begin(), trial.skipped.end());
  }
  for (auto& t : pool) t.join();

  out.summary = summarize(out.records, out.skipped);
  return out;
}

std::vector<SummaryRow> summarize(std::span<const ResultRecord> records,
                                  std::span<const SkippedTrial> skipped) {
  struct Acc {
    std::vector<double> budget, ratio, wall;
  };
  using Key = std::tuple<std::string, std::string, std::size_t, std::string>;
  std::map<Key, Acc> groups;
  for (const ResultRecord& r : records) {
    Acc& a = groups[{r.graph, r.weights, r.path_rank, r.algorithm}];
    a.budget.push_back(r.budget);
    a.ratio.push_back(r.cost_ratio);
    a.wall.push_back(r.wall_time_ms);
  }
  std::map<std::size_t, std::size_t> skipped_by_rank;
  for (const SkippedTrial& s : skipped) ++skipped_by_rank[s.path_rank];

  std::vector<SummaryRow> rows;
  for (const auto& [key, acc] : groups) {
    SummaryRow row;
    std::tie(row.graph, row.weights, row.path_rank, row.algorithm) = key;
    row.trials = acc.budget.size();
    auto it = skipped_by_rank.find(row.path_rank);
    row.skipped = it == skipped_by_rank.end() ? 0 : it->second;
    row.mean_budget = mean_of(acc.budget);
    row.se_budget = standard_error(acc.budget);
    row.mean_cost_ratio = mean_of(acc.ratio);
    row.se_cost_ratio = standard_error(acc.ratio);
    row.mean_wall_time_ms = mean_of(acc.wall);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_summary_csv(std::span<const SummaryRow> rows, std::ostream& out) {
  out << "graph,weights,path_rank,algorithm,trials,skipped,mean_budget,se_budget,"
         "mean_cost_ratio,se_cost_ratio,mean_wall_time_ms\n";
  for (const SummaryRow& r : rows) {
    out << csv_escape(r.graph) << ',' << csv_escape(r.weights) << ',' << r.path_rank << ','
        << csv_escape(r.algorithm) << ',' << r.trials << ',' << r.skipped << ','
        << format_double(r.mean_budget) << ',' << format_double(r.se_budget) << ','
        << format_double(r.mean_cost_ratio) << ',' << format_double(r.se_cost_ratio) << ','
        << format_double(r.mean_wall_time_ms) << '\n';
  }
}

void write_skipped_csv(std::span<const SkippedTrial> rows, std::ostream& out) {
  out << "trial,path_rank,reason\n";
  for (const SkippedTrial& s : rows) {
    out << s.trial << ',' << s.path_rank << ',' << csv_escape(s.reason) << '\n';
  }
}

}  // namespace forcepath
