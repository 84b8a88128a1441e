#include "rwcds/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rwcds {

namespace {

constexpr double kPruneTol = 1e-9;
constexpr double kIntTol = 1e-7;

void check_fixed(const NetworkGraph& g, const FixedRoles& fixed) {
  for (const auto& [u, r] : fixed) {
    (void)r;
    if (!g.contains(u)) fail(Errc::UnknownNode, "fixed role for unknown node " + std::to_string(u));
  }
}

bool extends_fixed(const RoleAssignment& ra, const FixedRoles& fixed) {
  for (const auto& [u, r] : fixed)
    if (ra.at(u) != r) return false;
  return true;
}

// Dominator < Dominatee, node 0 most significant.
bool lex_less(const RoleAssignment& a, const RoleAssignment& b) {
  for (NodeId u = 0; u < a.size(); ++u) {
    if (a.at(u) != b.at(u)) return a.at(u) == Role::Dominator;
  }
  return false;
}

double fixed_role_tmin(const NetworkGraph& g, const RoleAssignment& ra, double bw = 1.0) {
  LpModel model = build_lp(g, to_role_specs(ra), bw, /*with_cuts=*/false);
  FlowSolution s = solve_lp(model);
  return s.status == SolStatus::Optimal ? s.t_min : 0.0;
}

// Cheap valid upper bounds on t_min for a fully fixed assignment, used to
// skip LP evaluations during leaf enumeration. Returns 0 exactly when the
// assignment is not a valid r-WCDS (some node isolated in E' or E'
// disconnected).
//
// Distance bound: summing the node-capacity rows counts every traversal at
// both endpoints, and a unit of commodity travels at least its E'-distance,
// so 2 * t_min * sum over ordered pairs of dist_{E'}(s,d) <= n * BW.
//
// Separator bound: traffic at u covers 2(n-1) endpoint flows plus two
// traversals for every ordered pair split by removing u from (V, E').
//
// The scratch buffers keep the per-assignment cost allocation-free; the
// enumeration calls this tens of thousands of times per block.
class BoundScratch {
public:
  explicit BoundScratch(const NetworkGraph& g) : g_(g), n_(g.size()) {
    deg_.resize(static_cast<std::size_t>(n_));
    start_.resize(static_cast<std::size_t>(n_) + 1);
    flat_.resize(2 * g.edges().size());
    dist_.resize(static_cast<std::size_t>(n_));
    queue_.resize(static_cast<std::size_t>(n_));
    blocked_.resize(static_cast<std::size_t>(n_));
  }

  // `cutoff`: callers that only care whether the bound clears a threshold can
  // skip the separator pass once the distance bound already fails it.
  double bound(const RoleAssignment& ra, double bw, double cutoff = -1.0) {
    const int n = n_;
    std::fill(deg_.begin(), deg_.end(), 0);
    for (const Edge& e : g_.edges()) {
      if (ra.at(e.u) != ra.at(e.v)) {
        ++deg_[static_cast<std::size_t>(e.u)];
        ++deg_[static_cast<std::size_t>(e.v)];
      }
    }
    start_[0] = 0;
    for (int u = 0; u < n; ++u)
      start_[static_cast<std::size_t>(u) + 1] = start_[static_cast<std::size_t>(u)] + deg_[static_cast<std::size_t>(u)];
    std::fill(deg_.begin(), deg_.end(), 0);
    for (const Edge& e : g_.edges()) {
      if (ra.at(e.u) != ra.at(e.v)) {
        flat_[static_cast<std::size_t>(start_[static_cast<std::size_t>(e.u)] + deg_[static_cast<std::size_t>(e.u)]++)] = e.v;
        flat_[static_cast<std::size_t>(start_[static_cast<std::size_t>(e.v)] + deg_[static_cast<std::size_t>(e.v)]++)] = e.u;
      }
    }

    long long sum_dist = 0;
    for (NodeId s = 0; s < n; ++s) {
      std::fill(dist_.begin(), dist_.end(), -1);
      int head = 0, tail = 0;
      dist_[static_cast<std::size_t>(s)] = 0;
      queue_[static_cast<std::size_t>(tail++)] = s;
      while (head < tail) {
        NodeId u = queue_[static_cast<std::size_t>(head++)];
        for (int i = start_[static_cast<std::size_t>(u)]; i < start_[static_cast<std::size_t>(u) + 1]; ++i) {
          NodeId v = flat_[static_cast<std::size_t>(i)];
          if (dist_[static_cast<std::size_t>(v)] < 0) {
            dist_[static_cast<std::size_t>(v)] = dist_[static_cast<std::size_t>(u)] + 1;
            queue_[static_cast<std::size_t>(tail++)] = v;
          }
        }
      }
      if (tail < n) return 0.0;  // E' disconnects the graph
      for (NodeId d = 0; d < n; ++d) sum_dist += dist_[static_cast<std::size_t>(d)];
    }
    double bound = static_cast<double>(n) * bw / (2.0 * static_cast<double>(sum_dist));
    if (bound <= cutoff) return bound;

    long long max_forced = 0;
    for (NodeId cut = 0; cut < n; ++cut) {
      std::fill(blocked_.begin(), blocked_.end(), 0);
      blocked_[static_cast<std::size_t>(cut)] = 1;
      long long sq = 0;
      for (NodeId s = 0; s < n; ++s) {
        if (blocked_[static_cast<std::size_t>(s)]) continue;
        long long comp = 0;
        int head = 0, tail = 0;
        blocked_[static_cast<std::size_t>(s)] = 1;
        queue_[static_cast<std::size_t>(tail++)] = s;
        while (head < tail) {
          NodeId u = queue_[static_cast<std::size_t>(head++)];
          ++comp;
          for (int i = start_[static_cast<std::size_t>(u)]; i < start_[static_cast<std::size_t>(u) + 1]; ++i) {
            NodeId v = flat_[static_cast<std::size_t>(i)];
            if (!blocked_[static_cast<std::size_t>(v)]) {
              blocked_[static_cast<std::size_t>(v)] = 1;
              queue_[static_cast<std::size_t>(tail++)] = v;
            }
          }
        }
        sq += comp * comp;
      }
      long long m = n - 1;
      long long forced = 2LL * (n - 1) + 2LL * (m * m - sq);
      max_forced = std::max(max_forced, forced);
    }
    if (max_forced > 0) bound = std::min(bound, bw / static_cast<double>(max_forced));
    return bound;
  }

private:
  const NetworkGraph& g_;
  int n_;
  std::vector<int> deg_;
  std::vector<int> start_;
  std::vector<NodeId> flat_;
  std::vector<int> dist_;
  std::vector<NodeId> queue_;
  std::vector<char> blocked_;
};

}  // namespace

BnbResult solve_opt(const NetworkGraph& g, const FixedRoles& fixed, long budget,
                    const std::optional<RoleAssignment>& warm_start) {
  check_fixed(g, fixed);
  if (!is_connected(g)) fail(Errc::Disconnected, "solve_opt requires a connected graph");

  BnbResult best;
  best.status = BnbStatus::Infeasible;
  if (g.size() == 1) return best;  // a lone node has no valid r-WCDS

  auto try_incumbent = [&](const RoleAssignment& cand, double value) {
    if (best.assignment.empty() || value > best.t_min + kPruneTol) {
      best.assignment = cand;
      best.t_min = value;
      return;
    }
    if (value >= best.t_min - kPruneTol && lex_less(cand, best.assignment))
      best.assignment = cand;
  };

  // Search: LP-relaxation branch-and-bound while many roles are free, then
  // leaf enumeration guarded by the cheap combinatorial bounds. The pure
  // relaxation prunes too little on its own (fractional roles at 0.5 unlock
  // every link, so the bound ignores the role structure). Work is budgeted
  // in units that track real cost: plain evaluations on graphs past 20 nodes
  // and relaxations over many free roles charge superlinearly, so a small
  // budget degrades to the warm start instead of stalling.
  constexpr int kEnumThreshold = 16;
  long work_units = 0;
  bool budget_hit = false;
  // One unit is roughly a 10-node evaluation; LP cost about doubles per two
  // extra nodes.
  const long eval_charge =
      g.size() <= 10 ? 1 : 1L << std::min(20, (g.size() - 10 + 1) / 2);

  // Incumbent: caller hint first, else parity coloring of the BFS tree. Its
  // value is an LP solve of its own; when even that exceeds the budget the
  // assignment is kept with the conservative value 0.
  {
    std::optional<RoleAssignment> seed = warm_start;
    if (!seed) seed = parity_coloring(bfs_tree(g, 0));
    if (seed->size() == g.size() && extends_fixed(*seed, fixed) &&
        validate_rwcds(g, *seed).valid()) {
      if (eval_charge <= budget) {
        work_units += eval_charge;
        try_incumbent(*seed, fixed_role_tmin(g, *seed));
      } else {
        budget_hit = true;
        best.assignment = *seed;
        best.t_min = 0.0;
      }
    }
  }

  std::vector<NodeId> free_nodes;
  RoleAssignment scratch(g.size());
  BoundScratch bounds(g);

  auto enumerate_block = [&](const std::vector<RoleSpec>& specs) {
    int block_free = 0;
    for (RoleSpec sp : specs)
      if (sp == RoleSpec::Free) ++block_free;
    // A full scan of the block is charged up front, one unit per 8192
    // assignments, so small budgets cannot be swamped by a single block.
    long charge = 1 + (block_free > 13 ? (1L << (block_free - 13)) : 0);
    if (work_units + charge > budget) {
      budget_hit = true;
      return;
    }
    work_units += charge;
    free_nodes.clear();
    for (NodeId u = 0; u < g.size(); ++u) {
      RoleSpec sp = specs[static_cast<std::size_t>(u)];
      if (sp == RoleSpec::Free)
        free_nodes.push_back(u);
      else
        scratch.set(u, sp == RoleSpec::Dominator ? Role::Dominator : Role::Dominatee);
    }
    const int f = static_cast<int>(free_nodes.size());
    auto apply_mask = [&](std::uint64_t mask) {
      for (int k = 0; k < f; ++k) {
        bool dominatee = (mask >> (f - 1 - k)) & 1ULL;
        scratch.set(free_nodes[static_cast<std::size_t>(k)],
                    dominatee ? Role::Dominatee : Role::Dominator);
      }
    };

    std::vector<std::pair<double, std::uint64_t>> candidates;
    const std::uint64_t limit = 1ULL << f;
    for (std::uint64_t mask = 0; mask < limit; ++mask) {
      apply_mask(mask);
      double cutoff = best.assignment.empty() ? 0.0 : best.t_min + kPruneTol;
      double bound = bounds.bound(scratch, 1.0, cutoff);
      if (bound <= 0.0) continue;  // not a valid r-WCDS
      if (!best.assignment.empty() && bound <= best.t_min + kPruneTol) continue;
      candidates.emplace_back(bound, mask);
    }
    std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    for (const auto& [bound, mask] : candidates) {
      if (!best.assignment.empty() && bound <= best.t_min + kPruneTol) continue;
      if (work_units + eval_charge > budget) {
        budget_hit = true;
        return;
      }
      work_units += eval_charge;
      apply_mask(mask);
      try_incumbent(scratch, fixed_role_tmin(g, scratch));
    }
  };

  std::vector<RoleSpec> specs(static_cast<std::size_t>(g.size()), RoleSpec::Free);
  for (const auto& [u, r] : fixed)
    specs[static_cast<std::size_t>(u)] =
        r == Role::Dominator ? RoleSpec::Dominator : RoleSpec::Dominatee;

  auto explore = [&](auto&& self, double parent_bound) -> void {
    if (budget_hit) return;
    if (!best.assignment.empty() && parent_bound <= best.t_min + kPruneTol) return;
    int free_count = 0;
    for (RoleSpec sp : specs)
      if (sp == RoleSpec::Free) ++free_count;
    if (free_count <= kEnumThreshold) {
      enumerate_block(specs);
      return;
    }
    // Relaxations over many free roles are large; charge them so a small
    // budget falls back to the warm start instead of diving into them.
    long charge = 1 + std::min(1L << 20, 1L << std::min(20, 2 * (free_count - kEnumThreshold)));
    if (work_units + charge > budget) {
      budget_hit = true;
      return;
    }
    work_units += charge;
    LpModel model = build_lp(g, specs, 1.0, /*with_cuts=*/true);
    LpSolution raw = solve_simplex(model.lp);
    if (raw.status == LpStatus::Infeasible) return;
    if (raw.status != LpStatus::Optimal)
      fail(Errc::NumericalFailure, "relaxation solve did not certify optimality");
    const double bound = raw.objective;
    if (!best.assignment.empty() && bound <= best.t_min + kPruneTol) return;

    // Most-fractional branch variable, ties by lowest id.
    int branch_node = -1;
    double branch_frac = kIntTol;
    bool integral = true;
    for (NodeId u = 0; u < g.size(); ++u) {
      if (specs[static_cast<std::size_t>(u)] != RoleSpec::Free) continue;
      double x = raw.x[static_cast<std::size_t>(
          model.vars.role_col[static_cast<std::size_t>(u)])];
      double frac = std::min(x, 1.0 - x);
      if (frac > kIntTol) integral = false;
      if (frac > branch_frac + 1e-12) {
        branch_frac = frac;
        branch_node = u;
      }
    }
    if (integral) {
      RoleAssignment rounded(g.size());
      for (NodeId u = 0; u < g.size(); ++u) {
        double x = specs[static_cast<std::size_t>(u)] == RoleSpec::Dominator ? 1.0
                 : specs[static_cast<std::size_t>(u)] == RoleSpec::Dominatee ? 0.0
                 : raw.x[static_cast<std::size_t>(
                       model.vars.role_col[static_cast<std::size_t>(u)])];
        rounded.set(u, x >= 0.5 ? Role::Dominator : Role::Dominatee);
      }
      if (validate_rwcds(g, rounded).valid()) try_incumbent(rounded, bound);
      return;
    }

    // Depth-first, nearest rounding first.
    double x = raw.x[static_cast<std::size_t>(
        model.vars.role_col[static_cast<std::size_t>(branch_node)])];
    RoleSpec near = x >= 0.5 ? RoleSpec::Dominator : RoleSpec::Dominatee;
    RoleSpec far = x >= 0.5 ? RoleSpec::Dominatee : RoleSpec::Dominator;
    specs[static_cast<std::size_t>(branch_node)] = near;
    self(self, bound);
    specs[static_cast<std::size_t>(branch_node)] = far;
    self(self, bound);
    specs[static_cast<std::size_t>(branch_node)] = RoleSpec::Free;
  };
  explore(explore, std::numeric_limits<double>::infinity());

  best.nodes_explored = work_units;
  if (budget_hit)
    best.status = BnbStatus::BudgetExceeded;
  else
    best.status = best.assignment.empty() ? BnbStatus::Infeasible : BnbStatus::Optimal;
  return best;
}

BnbResult enumerate_oracle(const NetworkGraph& g, const FixedRoles& fixed) {
  check_fixed(g, fixed);
  const int n = g.size();
  if (n > 14) fail(Errc::TooLarge, "enumeration bound is n <= 14");

  std::vector<NodeId> free_nodes;
  RoleAssignment ra(n);
  for (NodeId u = 0; u < n; ++u) {
    auto it = fixed.find(u);
    if (it == fixed.end())
      free_nodes.push_back(u);
    else
      ra.set(u, it->second);
  }

  BnbResult best;
  best.status = BnbStatus::Infeasible;
  const int f = static_cast<int>(free_nodes.size());
  const std::uint64_t limit = 1ULL << f;
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    // Bit (f-1-k) drives the k-th smallest free node, so masks ascend in
    // lexicographic assignment order with Dominator = 0; ties keep the
    // earlier, lexicographically smaller assignment.
    for (int k = 0; k < f; ++k) {
      bool dominatee = (mask >> (f - 1 - k)) & 1ULL;
      ra.set(free_nodes[static_cast<std::size_t>(k)],
             dominatee ? Role::Dominatee : Role::Dominator);
    }
    ++best.nodes_explored;
    if (!validate_rwcds(g, ra).valid()) continue;
    LpModel model = build_lp(g, to_role_specs(ra), 1.0, /*with_cuts=*/false);
    FlowSolution s = solve_lp(model);
    if (s.status != SolStatus::Optimal) continue;
    if (best.status == BnbStatus::Infeasible || s.t_min > best.t_min + kPruneTol) {
      best.status = BnbStatus::Optimal;
      best.t_min = s.t_min;
      best.assignment = ra;
    }
  }
  return best;
}

RoleAssignment assign_cluster_roles(const NetworkGraph& cluster_subgraph,
                                    const FixedRoles& leader_fixed, long budget,
                                    const std::optional<RoleAssignment>& warm_start) {
  if (cluster_subgraph.size() == 1) {
    // Degenerate single-node cluster: the fixed leader role stands alone.
    RoleAssignment ra(1, Role::Dominator);
    auto it = leader_fixed.find(0);
    if (it != leader_fixed.end()) ra.set(0, it->second);
    return ra;
  }
  BnbResult res = solve_opt(cluster_subgraph, leader_fixed, budget, warm_start);
  if (res.status == BnbStatus::Infeasible || res.assignment.empty())
    fail(Errc::InfeasibleFixed, "no valid r-WCDS extends the fixed leader roles");
  return res.assignment;
}

}  // namespace rwcds
