#include "rwcds/cluster_tree.hpp"

#include <algorithm>
#include <cassert>

namespace rwcds {

int ClusterTree::cluster_of_leader(NodeId leader) const {
  for (std::size_t i = 0; i < clusters.size(); ++i)
    if (clusters[i].leader == leader) return static_cast<int>(i);
  return -1;
}

ClusterTree build_cluster_tree_oracle(const NetworkGraph& g, int D) {
  if (D < 1) fail(Errc::MalformedTree, "cluster radius must be >= 1");
  if (!is_connected(g)) fail(Errc::Disconnected, "cluster tree requires a connected graph");

  ClusterTree ct;
  ct.radius = D;
  const NodeId root = 0;  // ids are dense, so the minimum id is 0
  ct.tree = bfs_tree(g, root);
  const int n = g.size();

  std::vector<char> has_child(static_cast<std::size_t>(n), 0);
  for (NodeId u = 0; u < n; ++u) {
    NodeId p = ct.tree.parent[static_cast<std::size_t>(u)];
    if (p >= 0) has_child[static_cast<std::size_t>(p)] = 1;
  }

  auto depth = [&](NodeId u) { return ct.tree.depth[static_cast<std::size_t>(u)]; };
  std::vector<char> is_leader(static_cast<std::size_t>(n), 0);
  for (NodeId u = 0; u < n; ++u)
    is_leader[static_cast<std::size_t>(u)] =
        depth(u) % D == 0 && (has_child[static_cast<std::size_t>(u)] || u == root);

  // Nearest proper ancestor at a depth multiple of D; such an ancestor always
  // has a child on the path down, so it is a leader.
  auto anchor = [&](NodeId u) {
    NodeId w = ct.tree.parent[static_cast<std::size_t>(u)];
    while (w >= 0 && depth(w) % D != 0) w = ct.tree.parent[static_cast<std::size_t>(w)];
    return w;
  };

  ct.leader_of.assign(static_cast<std::size_t>(n), -1);
  for (NodeId u = 0; u < n; ++u)
    ct.leader_of[static_cast<std::size_t>(u)] = is_leader[static_cast<std::size_t>(u)] ? u : anchor(u);

  // Emit clusters ordered by (leader depth, leader id) so parents precede
  // children.
  std::vector<NodeId> leaders;
  for (NodeId u = 0; u < n; ++u)
    if (is_leader[static_cast<std::size_t>(u)]) leaders.push_back(u);
  std::sort(leaders.begin(), leaders.end(),
            [&](NodeId a, NodeId b) { return std::pair(depth(a), a) < std::pair(depth(b), b); });

  std::vector<int> cluster_index(static_cast<std::size_t>(n), -1);  // by leader id
  for (NodeId L : leaders) {
    Cluster c;
    c.leader = L;
    c.level = depth(L) / D;
    cluster_index[static_cast<std::size_t>(L)] = static_cast<int>(ct.clusters.size());
    ct.clusters.push_back(std::move(c));
  }

  ct.own_cluster_of.assign(static_cast<std::size_t>(n), -1);
  for (NodeId L : leaders)
    ct.own_cluster_of[static_cast<std::size_t>(L)] = cluster_index[static_cast<std::size_t>(L)];

  ct.home_cluster_of.assign(static_cast<std::size_t>(n), -1);
  for (NodeId u = 0; u < n; ++u) {
    if (is_leader[static_cast<std::size_t>(u)]) {
      int own = cluster_index[static_cast<std::size_t>(u)];
      NodeId up = anchor(u);
      if (up < 0) {
        // Root leader: role comes from its own cluster's solve.
        ct.home_cluster_of[static_cast<std::size_t>(u)] = own;
        ct.clusters[static_cast<std::size_t>(own)].members.push_back(u);
      } else {
        int parent_cluster = cluster_index[static_cast<std::size_t>(up)];
        ct.clusters[static_cast<std::size_t>(own)].parent = parent_cluster;
        ct.clusters[static_cast<std::size_t>(own)].members.push_back(u);
        ct.clusters[static_cast<std::size_t>(parent_cluster)].members.push_back(u);
        ct.home_cluster_of[static_cast<std::size_t>(u)] = parent_cluster;
      }
    } else {
      NodeId L = ct.leader_of[static_cast<std::size_t>(u)];
      int idx = cluster_index[static_cast<std::size_t>(L)];
      ct.clusters[static_cast<std::size_t>(idx)].members.push_back(u);
      ct.home_cluster_of[static_cast<std::size_t>(u)] = idx;
    }
  }
  for (Cluster& c : ct.clusters) std::sort(c.members.begin(), c.members.end());
  return ct;
}

FixedRoles leader_parity_roles(const ClusterTree& ct) {
  FixedRoles fixed;
  for (const Cluster& c : ct.clusters) {
    if (ct.radius % 2 == 0)
      fixed[c.leader] = Role::Dominator;
    else
      fixed[c.leader] = c.level % 2 == 0 ? Role::Dominator : Role::Dominatee;
  }
  return fixed;
}

ClusterProblem make_cluster_problem(const NetworkGraph& g, const ClusterTree& ct,
                                    int cluster_index, const FixedRoles& global_fixed) {
  const Cluster& c = ct.clusters[static_cast<std::size_t>(cluster_index)];
  ClusterProblem p;
  p.members = c.members;
  p.subgraph = g.induced_subgraph(p.members);

  for (std::size_t i = 0; i < p.members.size(); ++i) {
    auto it = global_fixed.find(p.members[i]);
    if (it != global_fixed.end()) p.fixed[static_cast<NodeId>(i)] = it->second;
  }

  // Tree-depth parity restricted to the cluster: alternates along the
  // spanning-tree paths that stay inside the cluster, so it is a valid
  // r-WCDS of the subgraph and extends the fixed leader parities.
  p.warm_start = RoleAssignment(static_cast<int>(p.members.size()));
  for (std::size_t i = 0; i < p.members.size(); ++i) {
    int d = ct.tree.depth[static_cast<std::size_t>(p.members[i])];
    p.warm_start.set(static_cast<NodeId>(i), d % 2 == 0 ? Role::Dominator : Role::Dominatee);
  }
  return p;
}

RoleAssignment potatoes(const NetworkGraph& g, int D, long budget) {
  if (g.size() == 1) return RoleAssignment(1, Role::Dominator);  // degenerate, root rule
  ClusterTree ct = build_cluster_tree_oracle(g, D);
  FixedRoles fixed = leader_parity_roles(ct);

  RoleAssignment result(g.size());
  std::vector<char> assigned(static_cast<std::size_t>(g.size()), 0);
  for (int ci = 0; ci < static_cast<int>(ct.clusters.size()); ++ci) {
    ClusterProblem p = make_cluster_problem(g, ct, ci, fixed);
    RoleAssignment local = assign_cluster_roles(p.subgraph, p.fixed, budget, p.warm_start);
    for (std::size_t i = 0; i < p.members.size(); ++i) {
      NodeId u = p.members[i];
      if (ct.home_cluster_of[static_cast<std::size_t>(u)] != ci) continue;
      result.set(u, local.at(static_cast<NodeId>(i)));
      assigned[static_cast<std::size_t>(u)] = 1;
    }
  }
  assert(std::all_of(assigned.begin(), assigned.end(), [](char c) { return c == 1; }));
  return result;
}

}  // namespace rwcds
