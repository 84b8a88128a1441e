#pragma once

#include <iosfwd>
#include <vector>

#include "rwcds/graph.hpp"
#include "rwcds/lp.hpp"
#include "rwcds/roles.hpp"

namespace rwcds {

/// Per-node role input for model construction; Free marks a relaxed [0,1]
/// variable for the branch-and-bound optimizer.
enum class RoleSpec : std::uint8_t { Dominator = 0, Dominatee = 1, Free = 2 };

std::vector<RoleSpec> to_role_specs(const RoleAssignment& ra);

/// Constraint families, used for residual reporting and LP dumps.
enum ConstraintFamily : int {
  kFamLinkUpper = 0,     // role(u)+role(v) + traffic/BW <= 2
  kFamLinkLower = 1,     // traffic/BW <= role(u)+role(v)
  kFamConservation = 2,  // out(u,d) = in(u,d) + T_min
  kFamSinkDemand = 3,    // arriving-at-destination = (n-1) T_min
  kFamNodeCapacity = 4,  // all traffic touching u <= BW
  kFamDominationCut = 5, // 1 <= role(u) + sum_N(u) role <= deg(u)
};

/// Variable layout of a built model. Directed edge 2e is u->v of edge e
/// (u < v), 2e+1 is v->u. traffic_col is -1 for variables pinned to zero
/// (self-destined traffic, or edges between equal fixed roles).
struct FlowVarMap {
  int n = 0;
  int num_dir = 0;
  std::vector<int> traffic_col;  // [dir * n + dest] -> column or -1
  int tmin_col = -1;
  std::vector<int> role_col;     // per node; -1 when the role is fixed

  int col(int dir, NodeId dest) const {
    return traffic_col[static_cast<std::size_t>(dir) * static_cast<std::size_t>(n) +
                       static_cast<std::size_t>(dest)];
  }
};

struct LpModel {
  LpProblem lp;
  FlowVarMap vars;
  const NetworkGraph* graph = nullptr;
  std::vector<RoleSpec> roles;
  double bw = 1.0;
  bool with_cuts = false;
};

enum class SolStatus { Optimal, Infeasible };

/// Traffic values plus the achieved max-min throughput.
struct FlowSolution {
  SolStatus status = SolStatus::Infeasible;
  double t_min = 0.0;
  int n = 0;
  int num_dir = 0;
  std::vector<double> traffic;  // [dir * n + dest], zero-filled for pinned vars
  long pivots = 0;

  double at(int dir, NodeId dest) const {
    return traffic[static_cast<std::size_t>(dir) * static_cast<std::size_t>(n) +
                   static_cast<std::size_t>(dest)];
  }
};

/// Builds the max-min multicommodity flow model for the given (possibly
/// relaxed) roles. Fixed roles are substituted as constants; traffic across
/// equal fixed roles is eliminated.
LpModel build_lp(const NetworkGraph& g, const std::vector<RoleSpec>& roles, double bw,
                 bool with_cuts);

/// Simplex solve; throws NumericalFailure when the pivot budget is exhausted.
FlowSolution solve_lp(const LpModel& model, const SimplexOptions& options = {});

/// Validates the assignment, then solves with all roles fixed and no cuts.
/// A single-node graph yields t_min = 0, status Optimal.
FlowSolution evaluate_tmin(const NetworkGraph& g, const RoleAssignment& ra, double bw = 1.0);

/// Max absolute violation per constraint family, recomputed from the graph
/// and roles without touching the model rows.
struct ResidualReport {
  double link_upper = 0.0;
  double link_lower = 0.0;
  double conservation = 0.0;
  double sink_demand = 0.0;
  double node_capacity = 0.0;
  double max() const;
};

ResidualReport check_flow_solution(const NetworkGraph& g, const RoleAssignment& ra,
                                   const FlowSolution& sol, double bw = 1.0);

/// CPLEX-style LP text dump for cross-checking with external solvers.
void dump_lp(const LpModel& model, std::ostream& os);

/// Traffic lookup helper: value sent by u over {u,v} toward dest, 0 when the
/// edge does not exist.
double traffic_value(const NetworkGraph& g, const FlowSolution& sol, NodeId u, NodeId v,
                     NodeId dest);

}  // namespace rwcds
