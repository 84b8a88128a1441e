#pragma once

#include <vector>

#include "rwcds/graph.hpp"
#include "rwcds/optimizer.hpp"
#include "rwcds/roles.hpp"

namespace rwcds {

struct Cluster {
  NodeId leader = -1;
  std::vector<NodeId> members;  // sorted ascending, includes the leader
  int parent = -1;              // index into ClusterTree::clusters, -1 at the root
  int level = 0;                // root cluster is level 0
};

/// Cluster-tree over a spanning tree with radius D. Leaders sit at depths
/// = 0 (mod D); a depth-multiple node with no tree children forms no cluster
/// of its own and stays a plain member of the cluster above it. Every node
/// belongs to one cluster, a non-root leader additionally to its parent
/// cluster, and any two clusters share at most one node.
struct ClusterTree {
  SpanningTree tree;
  int radius = 1;  // D
  std::vector<Cluster> clusters;
  std::vector<NodeId> leader_of;      // per node; leaders map to themselves
  std::vector<int> home_cluster_of;   // cluster whose solve assigns the node's role
  std::vector<int> own_cluster_of;    // per node: cluster led by the node, or -1

  int cluster_of_leader(NodeId leader) const;
};

/// Centralized construction: min-id root, deterministic BFS tree, modulo-D
/// leader election with degenerate-leader suppression.
ClusterTree build_cluster_tree_oracle(const NetworkGraph& g, int D);

/// Pre-fixed leader roles: the root leader is a Dominator; with even D every
/// leader is a Dominator, with odd D leaders alternate by cluster-tree level.
FixedRoles leader_parity_roles(const ClusterTree& ct);

/// The full divide-and-conquer pipeline: cluster tree, parity-fixed leaders,
/// one independent per-cluster solve, merge. The merge cannot conflict:
/// shared nodes are leaders whose role is the same fixed constant in both
/// solves.
RoleAssignment potatoes(const NetworkGraph& g, int D, long budget = kDefaultBnbBudget);

/// Per-cluster inputs the pipeline (and the distributed protocol) feed to the
/// solver: local subgraph over sorted members plus the fixed parity roles and
/// the always-feasible tree-parity warm start, all in local ids.
struct ClusterProblem {
  std::vector<NodeId> members;  // sorted; local id = index
  NetworkGraph subgraph;
  FixedRoles fixed;             // local ids
  RoleAssignment warm_start;    // local ids
};

ClusterProblem make_cluster_problem(const NetworkGraph& g, const ClusterTree& ct,
                                    int cluster_index, const FixedRoles& global_fixed);

}  // namespace rwcds
