#pragma once

// Covering LP for Force Path:
//
//   minimize   sum_e delta_e
//   subject to sum_{e in row} delta_e >= rhs   for every row
//              delta_e >= 0, delta_e = 0 for e on the target path
//
// Each row comes from a competing s->t path p with rhs = len(target) +
// buffer - len(p). Target edges are eliminated from the rows instead of
// being pinned by an equality, so their zeros are exact.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "forcepath/graph.hpp"

namespace forcepath {

struct LpRow {
  std::vector<EdgeId> support;  // ascending, unique
  double rhs = 0.0;
};

struct LpModel {
  EdgeId n_vars = 0;
  std::vector<EdgeId> fixed_zero;  // ascending
  std::vector<LpRow> rows;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  Perturbation delta;
  double objective_value = 0.0;
  std::size_t pivots = 0;
};

struct SimplexOptions {
  double eps_feas = 1e-9;
  double eps_pivot = 1e-10;
  std::size_t bland_after_degenerate = 1000;
  // pivots allowed per phase = cap_factor * (vars + rows)
  std::size_t cap_factor = 50;
};

/// Raised when the simplex exceeds its pivot budget.
class LpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Row for competing path `p`: support = edges of p not on `target`,
/// rhs = len(target) + buffer - len(p) under original weights.
LpRow path_row(const Graph& g, const Path& target, const Path& p, double buffer);

/// Empty model (no rows) over g's edges with the target's edges fixed.
LpModel empty_model(const Graph& g, const Path& target);

/// One row per constraint path. Rows with rhs <= 0 are kept; they are
/// trivially satisfied at delta = 0. Throws ArgumentError if a constraint
/// path equals the target or buffer < 0.
LpModel build_model(const Graph& g, const Path& target, std::span<const Path> constraint_paths,
                    double buffer);

/// Two-phase dense primal simplex (Dantzig pricing, Bland's rule after a
/// run of degenerate pivots). Deterministic for a given model.
LpSolution solve(const LpModel& model, const SimplexOptions& options = {});

/// Plain-text dump for cross-checking with external solvers:
///   vars <M>
///   min : e<i> ...
///   fixed0 : e<j> ...
///   ge <rhs> : e<i> e<j> ...
std::string to_lp_text(const LpModel& model);

const char* to_string(LpStatus status);

}  // namespace forcepath
