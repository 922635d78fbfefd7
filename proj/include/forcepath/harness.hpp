#pragma once

// Experiment runner: per trial, build (or reuse) a graph, pick endpoints,
// take the k-th shortest simple path as the target, run every algorithm on
// identical inputs and report budgets relative to greedy_first.
//
// Seeding: trial i uses trial_seed = substream_seed(master, i); the graph
// structure, edge weights and endpoint draws use substreams 1, 2 and 3 of
// trial_seed. Output is identical for any worker count.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "forcepath/attack.hpp"
#include "forcepath/graphgen.hpp"
#include "forcepath/io.hpp"
#include "forcepath/rng.hpp"
#include "forcepath/structure.hpp"

namespace forcepath {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SelectionMode { uniform_component, hop_target, fixed };

struct Selection {
  SelectionMode mode = SelectionMode::uniform_component;
  int h_target = 50;
  int h_limit = 60;
  std::string source_label;  // fixed mode
  std::string target_label;
};

struct GraphSource {
  std::optional<GenSpec> generator;
  std::string edge_list;  // used when no generator is set
  DuplicatePolicy duplicates = DuplicatePolicy::reject;
};

struct ExperimentConfig {
  GraphSource source;
  std::optional<WeightScheme> weights;
  bool invert = false;
  std::size_t trials = 1;
  std::vector<std::size_t> path_ranks;
  std::optional<double> buffer;
  Selection selection;
  std::vector<Algorithm> algorithms{Algorithm::greedy_first, Algorithm::pathperturb};
  std::uint64_t seed = 0;
  std::string output;
  // When false, wall_time_ms is written as 0 so results are byte-stable.
  bool record_wall_time = true;
  std::optional<double> budget_cap;
  std::size_t max_iterations = 10000;

  /// 0.1 for inverted (similarity) weights, 1 otherwise, unless set.
  double effective_buffer() const { return buffer ? *buffer : (invert ? 0.1 : 1.0); }
  /// Algorithms in run order; greedy_first is always present as baseline.
  std::vector<Algorithm> run_order() const;
  std::string graph_descriptor() const;
  std::string weight_descriptor() const;
};

/// Parses the JSON config text. Throws ConfigError on unknown keys, missing
/// fields or invalid values.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

struct Endpoints {
  NodeId source = -1;  // local ids in `working`
  NodeId target = -1;
  Subgraph working;    // original[] maps to the input graph's ids
};

/// Draws endpoints according to `selection`. Returns nullopt and sets
/// `reason` when no valid pair exists (after 100 attempts in hop mode).
std::optional<Endpoints> select_endpoints(const Graph& g, std::span<const std::string> labels,
                                          const Selection& selection, Rng& rng,
                                          std::string& reason);

/// k-th shortest simple s->t path (1-based), or nullopt if fewer exist.
std::optional<Path> select_target_path(const Graph& g, NodeId s, NodeId t, std::size_t rank);

struct SkippedTrial {
  std::size_t trial = 0;
  std::size_t path_rank = 0;
  std::string reason;
};

struct SummaryRow {
  std::string graph;
  std::string weights;
  std::size_t path_rank = 0;
  std::string algorithm;
  std::size_t trials = 0;
  std::size_t skipped = 0;
  double mean_budget = 0.0;
  double se_budget = 0.0;
  double mean_cost_ratio = 0.0;
  double se_cost_ratio = 0.0;
  double mean_wall_time_ms = 0.0;
};

struct ExperimentOutput {
  std::vector<ResultRecord> records;
  std::vector<SkippedTrial> skipped;
  std::vector<SummaryRow> summary;
};

/// Runs every trial. When `results_sink` is given, the CSV header and each
/// trial's rows are written and flushed in trial order as trials finish.
/// Trial-level failures become SkippedTrial entries.
ExperimentOutput run_experiment(const ExperimentConfig& cfg, std::size_t workers = 1,
                                std::ostream* results_sink = nullptr);

/// Groups by (graph, weights, path_rank, algorithm); standard errors are
/// sample standard deviation / sqrt(count).
std::vector<SummaryRow> summarize(std::span<const ResultRecord> records,
                                  std::span<const SkippedTrial> skipped);

void write_summary_csv(std::span<const SummaryRow> rows, std::ostream& out);
void write_skipped_csv(std::span<const SkippedTrial> rows, std::ostream& out);

}  // namespace forcepath
