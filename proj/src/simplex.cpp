#include "rwcds/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace rwcds {

int LpProblem::add_col(double obj_coef, double upper, std::string name) {
  objective.push_back(obj_coef);
  if (!upper_bound.empty() || upper >= 0.0) {
    upper_bound.resize(static_cast<std::size_t>(num_cols), -1.0);
    upper_bound.push_back(upper);
  }
  if (!col_names.empty() || !name.empty()) {
    col_names.resize(static_cast<std::size_t>(num_cols));
    col_names.push_back(std::move(name));
  }
  return num_cols++;
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kZeroTol = 1e-11;

class Tableau {
public:
  Tableau(int rows, int width) : m_(rows), width_(width), a_(static_cast<std::size_t>(rows) * width, 0.0) {}

  double* row(int r) { return a_.data() + static_cast<std::size_t>(r) * width_; }
  const double* row(int r) const { return a_.data() + static_cast<std::size_t>(r) * width_; }
  int rows() const { return m_; }
  int width() const { return width_; }

  void pivot(int pr, int pc, std::vector<double>& z1, std::vector<double>& z2, bool use_z1) {
    double* prow = row(pr);
    const double inv = 1.0 / prow[pc];
    for (int j = 0; j < width_; ++j) prow[j] *= inv;
    prow[pc] = 1.0;
    for (int r = 0; r < m_; ++r) {
      if (r == pr) continue;
      double* tr = row(r);
      const double f = tr[pc];
      if (std::abs(f) <= kZeroTol) { tr[pc] = 0.0; continue; }
      for (int j = 0; j < width_; ++j) tr[j] -= f * prow[j];
      tr[pc] = 0.0;
    }
    auto apply = [&](std::vector<double>& zrow) {
      const double f = zrow[static_cast<std::size_t>(pc)];
      if (std::abs(f) <= kZeroTol) { zrow[static_cast<std::size_t>(pc)] = 0.0; return; }
      for (int j = 0; j < width_; ++j) zrow[static_cast<std::size_t>(j)] -= f * prow[j];
      zrow[static_cast<std::size_t>(pc)] = 0.0;
    };
    if (use_z1) apply(z1);
    apply(z2);
  }

private:
  int m_;
  int width_;
  std::vector<double> a_;
};

}  // namespace

LpSolution solve_simplex(const LpProblem& problem, const SimplexOptions& options) {
  LpSolution sol;
  const int n_struct = problem.num_cols;

  // Normalized rows: upper bounds become explicit <= rows, rhs made >= 0.
  struct NRow {
    std::vector<std::pair<int, double>> terms;
    RowSense sense;
    double rhs;
  };
  std::vector<NRow> rows;
  rows.reserve(problem.rows.size() + problem.upper_bound.size());
  for (const LpRow& r : problem.rows) rows.push_back({r.terms, r.sense, r.rhs});
  if (!problem.upper_bound.empty()) {
    for (int j = 0; j < n_struct; ++j) {
      double ub = problem.upper_bound[static_cast<std::size_t>(j)];
      if (ub >= 0.0) rows.push_back({{{j, 1.0}}, RowSense::Le, ub});
    }
  }
  for (NRow& r : rows) {
    if (r.rhs < 0.0) {
      for (auto& t : r.terms) t.second = -t.second;
      r.rhs = -r.rhs;
      if (r.sense == RowSense::Le) r.sense = RowSense::Ge;
      else if (r.sense == RowSense::Ge) r.sense = RowSense::Le;
    }
  }

  // Constant rows (no terms after construction) are either trivial or a
  // certificate of infeasibility.
  for (auto it = rows.begin(); it != rows.end();) {
    if (!it->terms.empty()) { ++it; continue; }
    bool ok = (it->sense == RowSense::Le) ? (0.0 <= it->rhs + options.feas_tol)
             : (it->sense == RowSense::Ge) ? (0.0 >= it->rhs - options.feas_tol)
                                           : (std::abs(it->rhs) <= options.feas_tol);
    if (!ok) { sol.status = LpStatus::Infeasible; return sol; }
    it = rows.erase(it);
  }

  const int m = static_cast<int>(rows.size());
  int n_slack = 0, n_art = 0;
  for (const NRow& r : rows) {
    if (r.sense != RowSense::Eq) ++n_slack;
    if (r.sense != RowSense::Le) ++n_art;
  }
  const int slack0 = n_struct;
  const int art0 = n_struct + n_slack;
  const int total = n_struct + n_slack + n_art;
  const int rhs_col = total;
  const int width = total + 1;

  Tableau t(m, width);
  std::vector<int> basis(static_cast<std::size_t>(m), -1);
  std::vector<char> is_art(static_cast<std::size_t>(total), 0);

  int next_slack = slack0, next_art = art0;
  bool any_positive_art = false;
  for (int r = 0; r < m; ++r) {
    double* tr = t.row(r);
    for (auto [c, v] : rows[static_cast<std::size_t>(r)].terms) tr[c] += v;
    tr[rhs_col] = rows[static_cast<std::size_t>(r)].rhs;
    switch (rows[static_cast<std::size_t>(r)].sense) {
      case RowSense::Le:
        tr[next_slack] = 1.0;
        basis[static_cast<std::size_t>(r)] = next_slack++;
        break;
      case RowSense::Ge:
        tr[next_slack] = -1.0;
        ++next_slack;
        tr[next_art] = 1.0;
        is_art[static_cast<std::size_t>(next_art)] = 1;
        basis[static_cast<std::size_t>(r)] = next_art++;
        if (tr[rhs_col] > options.feas_tol) any_positive_art = true;
        break;
      case RowSense::Eq:
        tr[next_art] = 1.0;
        is_art[static_cast<std::size_t>(next_art)] = 1;
        basis[static_cast<std::size_t>(r)] = next_art++;
        if (tr[rhs_col] > options.feas_tol) any_positive_art = true;
        break;
    }
  }

  // z rows hold reduced costs: z[j] = c_B B^-1 A_j - c_j, entering while
  // z[j] < -tol. z1 drives sum of artificials to zero, z2 is the objective.
  std::vector<double> z1(static_cast<std::size_t>(width), 0.0);
  std::vector<double> z2(static_cast<std::size_t>(width), 0.0);
  for (int j = 0; j < n_struct; ++j) z2[static_cast<std::size_t>(j)] = -problem.objective[static_cast<std::size_t>(j)];
  for (int r = 0; r < m; ++r) {
    int b = basis[static_cast<std::size_t>(r)];
    if (is_art[static_cast<std::size_t>(b)]) {
      const double* tr = t.row(r);
      for (int j = 0; j < width; ++j) z1[static_cast<std::size_t>(j)] -= tr[j];  // c_art = -1 in phase 1
      z1[static_cast<std::size_t>(b)] = 0.0;
    }
  }

  long pivots = 0;
  bool bland = false;
  long stall = 0;
  const long stall_limit = 1000 + 2L * (m + total);

  auto run_phase = [&](std::vector<double>& z, bool phase1) -> LpStatus {
    double last_obj = -std::numeric_limits<double>::infinity();
    while (true) {
      if (pivots >= options.max_pivots) return LpStatus::IterationLimit;
      // Entering column.
      int enter = -1;
      if (!bland) {
        double best = -kPivotTol;
        for (int j = 0; j < total; ++j) {
          if (is_art[static_cast<std::size_t>(j)] && !phase1) continue;
          double v = z[static_cast<std::size_t>(j)];
          if (v < best) { best = v; enter = j; }
        }
      } else {
        for (int j = 0; j < total; ++j) {
          if (is_art[static_cast<std::size_t>(j)] && !phase1) continue;
          if (z[static_cast<std::size_t>(j)] < -kPivotTol) { enter = j; break; }
        }
      }
      if (enter < 0) return LpStatus::Optimal;

      // Ratio test; prefer kicking artificials out, then larger pivots.
      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      double best_piv = 0.0;
      for (int r = 0; r < m; ++r) {
        double a = t.row(r)[enter];
        if (a <= kPivotTol) continue;
        double ratio = t.row(r)[rhs_col] / a;
        bool better = false;
        if (ratio < best_ratio - 1e-12) {
          better = true;
        } else if (ratio <= best_ratio + 1e-12 && leave >= 0) {
          bool cand_art = is_art[static_cast<std::size_t>(basis[static_cast<std::size_t>(r)])];
          bool cur_art = is_art[static_cast<std::size_t>(basis[static_cast<std::size_t>(leave)])];
          if (bland) {
            better = basis[static_cast<std::size_t>(r)] < basis[static_cast<std::size_t>(leave)];
          } else if (cand_art != cur_art) {
            better = cand_art;
          } else if (a > best_piv) {
            better = true;
          }
        }
        if (better) { leave = r; best_ratio = std::min(best_ratio, ratio); best_piv = a; }
      }
      if (leave < 0) return LpStatus::Unbounded;

      t.pivot(leave, enter, z1, z2, phase1);
      basis[static_cast<std::size_t>(leave)] = enter;
      ++pivots;

      double obj = z[static_cast<std::size_t>(rhs_col)];
      if (obj > last_obj + 1e-13) { last_obj = obj; stall = 0; }
      else if (++stall > stall_limit) bland = true;
    }
  };

  // Phase 1 only iterates when some artificial starts positive; either way the
  // artificials still basic at zero must be pivoted out before phase 2.
  if (any_positive_art) {
    LpStatus st = run_phase(z1, true);
    sol.pivots = pivots;
    if (st == LpStatus::IterationLimit) { sol.status = st; return sol; }
    if (st == LpStatus::Unbounded) { sol.status = LpStatus::Infeasible; return sol; }
    double art_sum = z1[static_cast<std::size_t>(rhs_col)];
    if (std::abs(art_sum) > options.feas_tol) { sol.status = LpStatus::Infeasible; return sol; }
  }
  bland = false;
  stall = 0;
  for (int r = 0; r < m; ++r) {
    int b = basis[static_cast<std::size_t>(r)];
    if (!is_art[static_cast<std::size_t>(b)]) continue;
    int pc = -1;
    const double* tr = t.row(r);
    for (int j = 0; j < art0; ++j) {
      if (std::abs(tr[j]) > kPivotTol) { pc = j; break; }
    }
    if (pc < 0) continue;  // redundant row, stays inert
    t.pivot(r, pc, z1, z2, false);
    basis[static_cast<std::size_t>(r)] = pc;
    ++pivots;
  }

  LpStatus st = run_phase(z2, false);
  sol.pivots = pivots;
  if (st != LpStatus::Optimal) { sol.status = st; return sol; }

  sol.x.assign(static_cast<std::size_t>(n_struct), 0.0);
  for (int r = 0; r < m; ++r) {
    int b = basis[static_cast<std::size_t>(r)];
    if (b < n_struct) sol.x[static_cast<std::size_t>(b)] = t.row(r)[rhs_col];
  }
  double obj = 0.0;
  for (int j = 0; j < n_struct; ++j)
    obj += problem.objective[static_cast<std::size_t>(j)] * sol.x[static_cast<std::size_t>(j)];
  sol.objective = obj;
  sol.status = LpStatus::Optimal;
  return sol;
}

}  // namespace rwcds
