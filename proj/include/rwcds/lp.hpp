#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace rwcds {

enum class RowSense : std::uint8_t { Le, Eq, Ge };

struct LpRow {
  std::vector<std::pair<int, double>> terms;  // (column, coefficient)
  RowSense sense = RowSense::Le;
  double rhs = 0.0;
  int family = 0;  // caller tag, carried into dumps
};

/// maximize objective . x  subject to rows, 0 <= x (<= upper_bound when set).
struct LpProblem {
  int num_cols = 0;
  std::vector<double> objective;
  std::vector<double> upper_bound;  // empty or per-column; <0 means unbounded
  std::vector<LpRow> rows;
  std::vector<std::string> col_names;  // optional, dumps only

  int add_col(double obj_coef, double upper = -1.0, std::string name = {});
  void add_row(LpRow row) { rows.push_back(std::move(row)); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct SimplexOptions {
  double feas_tol = 1e-7;
  double opt_tol = 1e-7;
  long max_pivots = 1'000'000;
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
  std::vector<double> x;
  long pivots = 0;
};

/// Dense two-phase primal simplex. Dantzig pricing with a Bland fallback once
/// the objective stalls, so degenerate models terminate.
LpSolution solve_simplex(const LpProblem& problem, const SimplexOptions& options = {});

}  // namespace rwcds
