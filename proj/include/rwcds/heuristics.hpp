#pragma once

#include <map>
#include <vector>

#include "rwcds/graph.hpp"
#include "rwcds/roles.hpp"

namespace rwcds {

/// Spanning-tree baseline: BFS tree from root, dominators at even depths.
/// With prune set, dominators are greedily demoted (descending degree, ties
/// by id) while the assignment stays a valid r-WCDS.
RoleAssignment st_assign(const NetworkGraph& g, NodeId root, bool prune = false);

struct MisResult {
  RoleAssignment roles;
  ValidityReport validity;  // MIS frequently fails weak connectivity
};

/// Greedy maximal independent set scanned by (BFS depth from the min id,
/// then id); selected nodes become dominators. The result is returned even
/// when invalid, with the validity report attached.
MisResult mis_assign(const NetworkGraph& g);

/// Channel index per dominator, in [0, nbCH).
struct ChannelAssignment {
  std::map<NodeId, int> channel;
};

/// Nuclei pairs sharing a channel within interference range.
struct ConflictReport {
  std::vector<std::pair<NodeId, NodeId>> pairs;  // u < v, each counted once
  int count() const { return static_cast<int>(pairs.size()); }
};

/// Dominators pick channels in ascending id order, each taking the channel
/// with the minimum load among already-assigned nuclei in interference range
/// (Euclidean), ties by lowest index.
ChannelAssignment greedy_channels(const NetworkGraph& g, const RoleAssignment& ra, int nbCH);

ConflictReport channel_conflicts(const NetworkGraph& g, const ChannelAssignment& ca);

}  // namespace rwcds
