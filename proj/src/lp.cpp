#include "forcepath/lp.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>
#include <unordered_map>

namespace forcepath {
namespace {

std::string format_double(double x) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

// Dense simplex tableau. Rows 0..m-1 are constraints, row m holds the
// reduced costs; the last column holds the right-hand side (objective row:
// minus the current objective value).
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : m_(rows), n_(cols), cells_((rows + 1) * (cols + 1), 0.0), basis_(rows, 0) {}

  double& at(std::size_t i, std::size_t j) { return cells_[i * (n_ + 1) + j]; }
  double at(std::size_t i, std::size_t j) const { return cells_[i * (n_ + 1) + j]; }
  double& rhs(std::size_t i) { return at(i, n_); }
  double& cost(std::size_t j) { return at(m_, j); }

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c) {
    const double inv = 1.0 / at(r, c);
    for (std::size_t j = 0; j <= n_; ++j) at(r, j) *= inv;
    at(r, c) = 1.0;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= n_; ++j) at(i, j) -= f * at(r, j);
      at(i, c) = 0.0;
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (rhs(i) < 0.0 && rhs(i) > -1e-12) rhs(i) = 0.0;
    }
    basis_[r] = c;
  }

  // Rebuild the reduced-cost row for costs c over the current basis.
  void price(const std::vector<double>& c) {
    for (std::size_t j = 0; j <= n_; ++j) cost(j) = j < n_ ? c[j] : 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = c[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= n_; ++j) cost(j) -= cb * at(i, j);
    }
  }

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<double> cells_;
  std::vector<std::size_t> basis_;
};

enum class PhaseResult { optimal, unbounded };

class Simplex {
 public:
  Simplex(Tableau& t, const SimplexOptions& opt, std::size_t pivot_cap)
      : t_(t), opt_(opt), cap_(pivot_cap) {}

  // Minimize over columns [0, allowed) of the current reduced-cost row.
  PhaseResult run(std::size_t allowed) {
    std::size_t phase_pivots = 0;
    for (;;) {
      const auto entering = choose_entering(allowed);
      if (!entering) return PhaseResult::optimal;
      const auto leaving = choose_leaving(*entering);
      if (!leaving) return PhaseResult::unbounded;
      if (++phase_pivots > cap_) {
        throw LpError("simplex: pivot cap of " + std::to_string(cap_) + " exceeded");
      }
      const double step = t_.rhs(*leaving) / t_.at(*leaving, *entering);
      if (step <= opt_.eps_feas && ++degenerate_ >= opt_.bland_after_degenerate) bland_ = true;
      t_.pivot(*leaving, *entering);
      ++pivots_;
    }
  }

  std::size_t pivots() const { return pivots_; }

 private:
  std::optional<std::size_t> choose_entering(std::size_t allowed) {
    std::optional<std::size_t> best;
    double best_cost = -opt_.eps_pivot;
    for (std::size_t j = 0; j < allowed; ++j) {
      const double r = t_.cost(j);
      if (bland_) {
        if (r < -opt_.eps_pivot) return j;
      } else if (r < best_cost) {
        best_cost = r;
        best = j;
      }
    }
    return best;
  }

  std::optional<std::size_t> choose_leaving(std::size_t col) {
    std::optional<std::size_t> best;
    double best_ratio = 0.0;
    for (std::size_t i = 0; i < t_.rows(); ++i) {
      const double a = t_.at(i, col);
      if (a <= opt_.eps_pivot) continue;
      const double ratio = t_.rhs(i) / a;
      if (!best || ratio < best_ratio ||
          (ratio == best_ratio && t_.basis()[i] < t_.basis()[*best])) {
        best = i;
        best_ratio = ratio;
      }
    }
    return best;
  }

  Tableau& t_;
  const SimplexOptions& opt_;
  std::size_t cap_;
  std::size_t pivots_ = 0;
  std::size_t degenerate_ = 0;
  bool bland_ = false;
};

}  // namespace

LpRow path_row(const Graph& g, const Path& target, const Path& p, double buffer) {
  std::vector<char> on_target(static_cast<std::size_t>(g.num_edges()), 0);
  for (EdgeId e : target.edges) on_target[static_cast<std::size_t>(e)] = 1;
  LpRow row;
  for (EdgeId e : p.edges) {
    if (!on_target[static_cast<std::size_t>(e)]) row.support.push_back(e);
  }
  std::sort(row.support.begin(), row.support.end());
  row.rhs = path_length(g, target) + buffer - path_length(g, p);
  return row;
}

LpModel empty_model(const Graph& g, const Path& target) {
  LpModel model;
  model.n_vars = g.num_edges();
  model.fixed_zero = target.edges;
  std::sort(model.fixed_zero.begin(), model.fixed_zero.end());
  return model;
}

LpModel build_model(const Graph& g, const Path& target, std::span<const Path> constraint_paths,
                    double buffer) {
  if (!(buffer >= 0.0)) throw ArgumentError("build_model: buffer must be >= 0");
  path_length(g, target);
  LpModel model = empty_model(g, target);
  for (const Path& p : constraint_paths) {
    if (p == target) throw ArgumentError("build_model: constraint path equals the target path");
    model.rows.push_back(path_row(g, target, p, buffer));
  }
  return model;
}

LpSolution solve(const LpModel& model, const SimplexOptions& options) {
  LpSolution out;
  out.delta.assign(static_cast<std::size_t>(model.n_vars), 0.0);

  std::vector<char> fixed(static_cast<std::size_t>(model.n_vars), 0);
  for (EdgeId e : model.fixed_zero) fixed[static_cast<std::size_t>(e)] = 1;

  // Compress to the variables that appear in some row.
  std::vector<EdgeId> columns;
  std::unordered_map<EdgeId, std::size_t> column_of;
  for (const LpRow& row : model.rows) {
    for (EdgeId e : row.support) {
      if (e < 0 || e >= model.n_vars) throw ArgumentError("solve: row references unknown edge");
      if (fixed[static_cast<std::size_t>(e)]) continue;
      if (column_of.emplace(e, columns.size()).second) columns.push_back(e);
    }
  }

  const std::size_t m = model.rows.size();
  const std::size_t n = columns.size();
  if (m == 0) {
    out.status = LpStatus::optimal;
    return out;
  }

  // Columns: structural [0, n), surplus [n, n+m), artificial [n+m, n+2m).
  Tableau t(m, n + 2 * m);
  double max_rhs = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const LpRow& row = model.rows[i];
    const double sign = row.rhs < 0.0 ? -1.0 : 1.0;
    for (EdgeId e : row.support) {
      auto it = column_of.find(e);
      if (it != column_of.end()) t.at(i, it->second) += sign;
    }
    t.at(i, n + i) = -sign;
    t.at(i, n + m + i) = 1.0;
    t.rhs(i) = sign * row.rhs;
    t.basis()[i] = n + m + i;
    max_rhs = std::max(max_rhs, std::abs(row.rhs));
  }

  const std::size_t cap = options.cap_factor * (n + m);
  Simplex simplex(t, options, cap);

  std::vector<double> phase1_cost(n + 2 * m, 0.0);
  std::fill(phase1_cost.begin() + static_cast<long>(n + m), phase1_cost.end(), 1.0);
  t.price(phase1_cost);
  simplex.run(n + 2 * m);
  const double infeasibility = -t.rhs(m);
  if (infeasibility > 1e3 * options.eps_feas * (1.0 + max_rhs)) {
    out.status = LpStatus::infeasible;
    out.pivots = simplex.pivots();
    return out;
  }

  // Drive remaining artificials out of the basis; rows where that is
  // impossible are redundant and keep a zero-valued artificial.
  for (std::size_t i = 0; i < m; ++i) {
    if (t.basis()[i] < n + m) continue;
    for (std::size_t j = 0; j < n + m; ++j) {
      if (std::abs(t.at(i, j)) > options.eps_pivot) {
        t.pivot(i, j);
        break;
      }
    }
  }

  std::vector<double> phase2_cost(n + 2 * m, 0.0);
  std::fill(phase2_cost.begin(), phase2_cost.begin() + static_cast<long>(n), 1.0);
  t.price(phase2_cost);
  const PhaseResult result = simplex.run(n + m);
  out.pivots = simplex.pivots();
  if (result == PhaseResult::unbounded) {
    out.status = LpStatus::unbounded;
    return out;
  }

  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t b = t.basis()[i];
    if (b < n) {
      out.delta[static_cast<std::size_t>(columns[b])] = std::max(0.0, t.rhs(i));
    }
  }
  out.status = LpStatus::optimal;
  out.objective_value = 0.0;
  for (double d : out.delta) out.objective_value += d;
  return out;
}

std::string to_lp_text(const LpModel& model) {
  std::vector<char> fixed(static_cast<std::size_t>(model.n_vars), 0);
  for (EdgeId e : model.fixed_zero) fixed[static_cast<std::size_t>(e)] = 1;
  std::ostringstream os;
  os << "vars " << model.n_vars << '\n';
  os << "min :";
  for (EdgeId e = 0; e < model.n_vars; ++e) {
    if (!fixed[static_cast<std::size_t>(e)]) os << " e" << e;
  }
  os << "\nfixed0 :";
  for (EdgeId e : model.fixed_zero) os << " e" << e;
  os << '\n';
  for (const LpRow& row : model.rows) {
    os << "ge " << format_double(row.rhs) << " :";
    for (EdgeId e : row.support) os << " e" << e;
    os << '\n';
  }
  return os.str();
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
  }
  return "unknown";
}

}  // namespace forcepath
