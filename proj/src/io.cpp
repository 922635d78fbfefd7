#include "forcepath/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace forcepath {

NodeId LabeledGraph::node(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw ArgumentError("unknown node label '" + label + "'");
  return it->second;
}

LabeledGraph make_labeled(Graph g, std::vector<std::string> labels) {
  if (labels.size() != static_cast<std::size_t>(g.num_nodes())) {
    throw ArgumentError("make_labeled: one label per node required");
  }
  LabeledGraph out;
  out.graph = std::move(g);
  out.labels = std::move(labels);
  for (std::size_t i = 0; i < out.labels.size(); ++i) {
    if (!out.index_.emplace(out.labels[i], static_cast<NodeId>(i)).second) {
      throw ArgumentError("make_labeled: duplicate label '" + out.labels[i] + "'");
    }
  }
  return out;
}

LabeledGraph with_numeric_labels(Graph g) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(g.num_nodes()));
  for (NodeId i = 0; i < g.num_nodes(); ++i) labels.push_back(std::to_string(i));
  return make_labeled(std::move(g), std::move(labels));
}

DuplicatePolicy parse_duplicate_policy(const std::string& text) {
  if (text == "reject") return DuplicatePolicy::reject;
  if (text == "min") return DuplicatePolicy::keep_min;
  if (text == "sum") return DuplicatePolicy::sum;
  throw ArgumentError("unknown duplicate policy '" + text + "' (expected reject, min or sum)");
}

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

double parse_double(const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) throw ArgumentError("not a number: '" + text + "'");
  return value;
}

LabeledGraph read_edge_list(std::istream& in, DuplicatePolicy duplicates) {
  struct Pending {
    NodeId u, v;
    double w;
  };
  std::vector<std::string> labels;
  std::unordered_map<std::string, NodeId> ids;
  std::vector<Pending> edges;
  std::map<std::pair<NodeId, NodeId>, std::size_t> seen;

  auto id_of = [&](const std::string& label) {
    auto [it, inserted] = ids.emplace(label, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(label);
    return it->second;
  };

  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream tokens(line);
    std::vector<std::string> fields;
    for (std::string tok; tokens >> tok;) fields.push_back(tok);
    if (fields.empty() || fields[0][0] == '#') continue;
    if (fields.size() < 2 || fields.size() > 3) {
      throw ParseError(lineno, "expected 'u v [w]', got " + std::to_string(fields.size()) +
                                   " fields");
    }
    double w = 1.0;
    if (fields.size() == 3) {
      try {
        w = parse_double(fields[2]);
      } catch (const ArgumentError&) {
        throw ParseError(lineno, "bad weight '" + fields[2] + "'");
      }
      if (!std::isfinite(w)) throw ParseError(lineno, "non-finite weight '" + fields[2] + "'");
      if (w < 0.0) {
        throw ValidationError("line " + std::to_string(lineno) + ": negative weight " + fields[2]);
      }
    }
    if (fields[0] == fields[1]) {
      throw ValidationError("line " + std::to_string(lineno) + ": self-loop on '" + fields[0] +
                            "'");
    }
    NodeId u = id_of(fields[0]);
    NodeId v = id_of(fields[1]);
    const auto key = std::minmax(u, v);
    auto [it, fresh] = seen.emplace(std::make_pair(key.first, key.second), edges.size());
    if (fresh) {
      edges.push_back({u, v, w});
      continue;
    }
    Pending& prior = edges[it->second];
    switch (duplicates) {
      case DuplicatePolicy::reject:
        throw ValidationError("line " + std::to_string(lineno) + ": duplicate edge {" +
                              fields[0] + ", " + fields[1] + "}");
      case DuplicatePolicy::keep_min: prior.w = std::min(prior.w, w); break;
      case DuplicatePolicy::sum: prior.w += w; break;
    }
  }
  if (in.bad()) throw std::runtime_error("read_edge_list: stream failure");

  Graph g(static_cast<NodeId>(labels.size()));
  for (const Pending& e : edges) g.add_edge(e.u, e.v, e.w);
  return make_labeled(std::move(g), std::move(labels));
}

LabeledGraph read_edge_list_file(const std::string& path, DuplicatePolicy duplicates) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file '" + path + "'");
  return read_edge_list(in, duplicates);
}

void write_edge_list(const Graph& g, std::span<const std::string> labels, std::ostream& out) {
  if (labels.size() != static_cast<std::size_t>(g.num_nodes())) {
    throw ArgumentError("write_edge_list: one label per node required");
  }
  for (const Edge& e : g.edges()) {
    out << labels[static_cast<std::size_t>(e.u)] << ' ' << labels[static_cast<std::size_t>(e.v)]
        << ' ' << format_double(e.w) << '\n';
  }
  if (!out) throw std::runtime_error("write_edge_list: sink failure");
}

const std::vector<std::string>& result_columns() {
  static const std::vector<std::string> columns = {
      "trial",      "graph",         "weights",         "s",
      "t",          "path_rank",     "delta",           "algorithm",
      "budget",     "baseline_budget", "cost_ratio",    "iterations",
      "constraints_generated", "wall_time_ms", "success"};
  return columns;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::vector<std::string>> read_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  char c;
  while (in.get(c)) {
    any = true;
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\r') {
      continue;
    } else if (c == '\n') {
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else {
      field += c;
    }
  }
  if (quoted) throw ParseError(rows.size() + 1, "unterminated quoted field");
  if (any) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_results_header(std::ostream& out) {
  const auto& cols = result_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
}

namespace {

// Fixed 17 significant digits: round-trip exact and never fewer than 9.
std::string format_ratio(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.17g", x);
  return buf;
}

std::size_t parse_count(const std::string& text, std::size_t line) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(line, "bad integer '" + text + "'");
  }
  return value;
}

double parse_real(const std::string& text, std::size_t line) {
  try {
    return parse_double(text);
  } catch (const ArgumentError&) {
    throw ParseError(line, "bad number '" + text + "'");
  }
}

}  // namespace

void write_result_row(const ResultRecord& r, std::ostream& out) {
  out << r.trial << ',' << csv_escape(r.graph) << ',' << csv_escape(r.weights) << ','
      << csv_escape(r.source) << ',' << csv_escape(r.target) << ',' << r.path_rank << ','
      << format_double(r.buffer) << ',' << csv_escape(r.algorithm) << ','
      << format_double(r.budget) << ',' << format_double(r.baseline_budget) << ','
      << format_ratio(r.cost_ratio) << ',' << r.iterations << ',' << r.constraints_generated
      << ',' << format_double(r.wall_time_ms) << ',' << (r.success ? "true" : "false") << '\n';
}

void write_results_csv(std::span<const ResultRecord> records, std::ostream& out) {
  write_results_header(out);
  for (const ResultRecord& r : records) write_result_row(r, out);
  if (!out) throw std::runtime_error("write_results_csv: sink failure");
}

std::vector<ResultRecord> read_results_csv(std::istream& in) {
  const auto rows = read_csv(in);
  if (rows.empty() || rows[0] != result_columns()) {
    throw ParseError(1, "missing or unexpected results header");
  }
  std::vector<ResultRecord> records;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& f = rows[i];
    const std::size_t line = i + 1;
    if (f.size() != result_columns().size()) {
      throw ParseError(line, "expected " + std::to_string(result_columns().size()) +
                                 " fields, got " + std::to_string(f.size()));
    }
    ResultRecord r;
    r.trial = parse_count(f[0], line);
    r.graph = f[1];
    r.weights = f[2];
    r.source = f[3];
    r.target = f[4];
    r.path_rank = parse_count(f[5], line);
    r.buffer = parse_real(f[6], line);
    r.algorithm = f[7];
    r.budget = parse_real(f[8], line);
    r.baseline_budget = parse_real(f[9], line);
    r.cost_ratio = parse_real(f[10], line);
    r.iterations = parse_count(f[11], line);
    r.constraints_generated = parse_count(f[12], line);
    r.wall_time_ms = parse_real(f[13], line);
    if (f[14] != "true" && f[14] != "false") throw ParseError(line, "bad success flag");
    r.success = f[14] == "true";
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace forcepath
