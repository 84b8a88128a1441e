#pragma once

#include <map>
#include <optional>

#include "rwcds/flow_lp.hpp"
#include "rwcds/graph.hpp"
#include "rwcds/roles.hpp"

namespace rwcds {

/// Roles pinned before solving; every key must exist in the target graph.
using FixedRoles = std::map<NodeId, Role>;

enum class BnbStatus { Optimal, Infeasible, BudgetExceeded };

struct BnbResult {
  BnbStatus status = BnbStatus::Infeasible;
  RoleAssignment assignment;  // empty when no incumbent was found
  double t_min = 0.0;
  long nodes_explored = 0;
};

inline constexpr long kDefaultBnbBudget = 200;

/// Exact role optimization: maximizes t_min over assignments extending
/// `fixed`, branch-and-bound over relaxed role variables with domination
/// cuts. Deterministic: most-fractional branching (ties by lowest id),
/// depth-first, prune when the LP bound is within 1e-9 of the incumbent.
/// `warm_start` seeds the incumbent; by default the BFS-tree parity coloring
/// is used when it extends `fixed`.
BnbResult solve_opt(const NetworkGraph& g, const FixedRoles& fixed, long budget = kDefaultBnbBudget,
                    const std::optional<RoleAssignment>& warm_start = std::nullopt);

/// Independent ground truth: tries every assignment extending `fixed` in
/// lexicographic order (Dominator < Dominatee), keeps the valid one with the
/// highest t_min. Limited to n <= 14.
BnbResult enumerate_oracle(const NetworkGraph& g, const FixedRoles& fixed);

/// Per-cluster solve; throws InfeasibleFixed when no valid extension exists.
/// On budget exhaustion the best incumbent is returned.
RoleAssignment assign_cluster_roles(const NetworkGraph& cluster_subgraph,
                                    const FixedRoles& leader_fixed, long budget,
                                    const std::optional<RoleAssignment>& warm_start = std::nullopt);

}  // namespace rwcds
