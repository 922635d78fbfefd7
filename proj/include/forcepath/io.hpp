#pragma once

// Edge-list graphs and CSV result records.
//
// Edge list: one `u v [w]` per line, labels are arbitrary non-whitespace
// tokens mapped to NodeIds in first-appearance order, w defaults to 1.
// Lines starting with '#' and blank lines are skipped. Isolated nodes are
// not representable.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "forcepath/graph.hpp"

namespace forcepath {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct LabeledGraph {
  Graph graph;
  std::vector<std::string> labels;  // NodeId -> label

  /// Throws ArgumentError for an unknown label.
  NodeId node(const std::string& label) const;

 private:
  friend LabeledGraph make_labeled(Graph, std::vector<std::string>);
  std::unordered_map<std::string, NodeId> index_;
};

LabeledGraph make_labeled(Graph g, std::vector<std::string> labels);

/// Labels "0", "1", ... for a generated graph.
LabeledGraph with_numeric_labels(Graph g);

enum class DuplicatePolicy { reject, keep_min, sum };

DuplicatePolicy parse_duplicate_policy(const std::string& text);

/// Throws ParseError (malformed line) or ValidationError (negative weight,
/// self-loop, duplicate edge under `reject`); both messages carry the
/// line number.
LabeledGraph read_edge_list(std::istream& in, DuplicatePolicy duplicates = DuplicatePolicy::reject);
LabeledGraph read_edge_list_file(const std::string& path,
                                 DuplicatePolicy duplicates = DuplicatePolicy::reject);

/// Writes edges in EdgeId order with round-trip exact weights.
void write_edge_list(const Graph& g, std::span<const std::string> labels, std::ostream& out);

struct ResultRecord {
  std::size_t trial = 0;
  std::string graph;
  std::string weights;
  std::string source;
  std::string target;
  std::size_t path_rank = 0;
  double buffer = 0.0;
  std::string algorithm;
  double budget = 0.0;
  double baseline_budget = 0.0;
  double cost_ratio = 0.0;
  std::size_t iterations = 0;
  std::size_t constraints_generated = 0;
  double wall_time_ms = 0.0;
  bool success = false;

  friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

/// Column names, in order.
const std::vector<std::string>& result_columns();

void write_results_header(std::ostream& out);
void write_result_row(const ResultRecord& r, std::ostream& out);
void write_results_csv(std::span<const ResultRecord> records, std::ostream& out);
std::vector<ResultRecord> read_results_csv(std::istream& in);

/// RFC 4180 helpers.
std::string csv_escape(const std::string& field);
std::vector<std::vector<std::string>> read_csv(std::istream& in);

/// Shortest representation that parses back to the same double.
std::string format_double(double x);
double parse_double(const std::string& text);

}  // namespace forcepath
