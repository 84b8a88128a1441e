#include "rwcds/heuristics.hpp"

#include <algorithm>

namespace rwcds {

RoleAssignment st_assign(const NetworkGraph& g, NodeId root, bool prune) {
  if (!is_connected(g)) fail(Errc::Disconnected, "st_assign requires a connected graph");
  RoleAssignment ra = parity_coloring(bfs_tree(g, root));
  if (!prune) return ra;

  std::vector<NodeId> order;
  for (NodeId u = 0; u < g.size(); ++u)
    if (ra.at(u) == Role::Dominator) order.push_back(u);
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
    return a < b;
  });
  for (NodeId u : order) {
    ra.set(u, Role::Dominatee);
    if (!validate_rwcds(g, ra).valid()) ra.set(u, Role::Dominator);
  }
  return ra;
}

MisResult mis_assign(const NetworkGraph& g) {
  if (!is_connected(g)) fail(Errc::Disconnected, "mis_assign requires a connected graph");
  auto depth = bfs_distances(g, 0);
  std::vector<NodeId> order(static_cast<std::size_t>(g.size()));
  for (NodeId u = 0; u < g.size(); ++u) order[static_cast<std::size_t>(u)] = u;
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    return std::pair(depth[static_cast<std::size_t>(a)], a) <
           std::pair(depth[static_cast<std::size_t>(b)], b);
  });

  std::vector<char> selected(static_cast<std::size_t>(g.size()), 0);
  for (NodeId u : order) {
    bool blocked = false;
    for (NodeId v : g.neighbors(u)) {
      if (selected[static_cast<std::size_t>(v)]) {
        blocked = true;
        break;
      }
    }
    if (!blocked) selected[static_cast<std::size_t>(u)] = 1;
  }

  MisResult res;
  res.roles = RoleAssignment(g.size());
  for (NodeId u = 0; u < g.size(); ++u)
    res.roles.set(u, selected[static_cast<std::size_t>(u)] ? Role::Dominator : Role::Dominatee);
  res.validity = validate_rwcds(g, res.roles);
  return res;
}

ChannelAssignment greedy_channels(const NetworkGraph& g, const RoleAssignment& ra, int nbCH) {
  if (nbCH < 1) fail(Errc::NoChannels, "need at least one channel");
  if (ra.size() != g.size()) fail(Errc::PartialAssignment, "roles do not cover the graph");

  ChannelAssignment ca;
  for (NodeId u = 0; u < g.size(); ++u) {
    if (ra.at(u) != Role::Dominator) continue;
    std::vector<int> load(static_cast<std::size_t>(nbCH), 0);
    for (const auto& [w, c] : ca.channel)
      if (g.distance(u, w) <= g.interference_range()) ++load[static_cast<std::size_t>(c)];
    int pick = 0;
    for (int c = 1; c < nbCH; ++c)
      if (load[static_cast<std::size_t>(c)] < load[static_cast<std::size_t>(pick)]) pick = c;
    ca.channel[u] = pick;
  }
  return ca;
}

ConflictReport channel_conflicts(const NetworkGraph& g, const ChannelAssignment& ca) {
  ConflictReport rep;
  for (auto it = ca.channel.begin(); it != ca.channel.end(); ++it) {
    auto jt = it;
    for (++jt; jt != ca.channel.end(); ++jt) {
      if (it->second == jt->second && g.distance(it->first, jt->first) <= g.interference_range())
        rep.pairs.emplace_back(it->first, jt->first);
    }
  }
  return rep;
}

}  // namespace rwcds
