#include "rwcds/roles.hpp"

#include <algorithm>
#include <queue>

namespace rwcds {

namespace {

void require_total(const NetworkGraph& g, const RoleAssignment& ra) {
  if (ra.size() != g.size())
    fail(Errc::PartialAssignment, "assignment covers " + std::to_string(ra.size()) + " of " +
                                      std::to_string(g.size()) + " nodes");
}

std::vector<std::vector<NodeId>> induced_adjacency(const NetworkGraph& g,
                                                   const RoleAssignment& ra) {
  std::vector<std::vector<NodeId>> adj(static_cast<std::size_t>(g.size()));
  for (const Edge& e : g.edges()) {
    if (ra.at(e.u) != ra.at(e.v)) {
      adj[static_cast<std::size_t>(e.u)].push_back(e.v);
      adj[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
  }
  return adj;
}

std::vector<int> bfs_on_adjacency(const std::vector<std::vector<NodeId>>& adj, NodeId src) {
  std::vector<int> dist(adj.size(), -1);
  std::queue<NodeId> q;
  dist[static_cast<std::size_t>(src)] = 0;
  q.push(src);
  while (!q.empty()) {
    NodeId u = q.front();
    q.pop();
    for (NodeId v : adj[static_cast<std::size_t>(u)]) {
      if (dist[static_cast<std::size_t>(v)] < 0) {
        dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
        q.push(v);
      }
    }
  }
  return dist;
}

}  // namespace

int RoleAssignment::dominator_count() const {
  return static_cast<int>(std::count(roles_.begin(), roles_.end(), Role::Dominator));
}

std::vector<Edge> induced_edges(const NetworkGraph& g, const RoleAssignment& ra) {
  require_total(g, ra);
  std::vector<Edge> out;
  for (const Edge& e : g.edges())
    if (ra.at(e.u) != ra.at(e.v)) out.push_back(e);
  return out;
}

ValidityReport validate_rwcds(const NetworkGraph& g, const RoleAssignment& ra) {
  require_total(g, ra);
  ValidityReport report;
  report.dominated = true;
  for (NodeId u = 0; u < g.size(); ++u) {
    bool covered = false;
    for (NodeId v : g.neighbors(u)) {
      if (ra.at(v) != ra.at(u)) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      report.dominated = false;
      report.undominated_nodes.push_back(u);
    }
  }

  auto adj = induced_adjacency(g, ra);
  std::vector<char> seen(static_cast<std::size_t>(g.size()), 0);
  int components = 0;
  for (NodeId u = 0; u < g.size(); ++u) {
    if (seen[static_cast<std::size_t>(u)]) continue;
    ++components;
    auto dist = bfs_on_adjacency(adj, u);
    for (NodeId v = 0; v < g.size(); ++v)
      if (dist[static_cast<std::size_t>(v)] >= 0) seen[static_cast<std::size_t>(v)] = 1;
  }
  report.component_count = components;
  report.weakly_connected = (components <= 1);
  return report;
}

RoleAssignment parity_coloring(const SpanningTree& tree) {
  const int n = static_cast<int>(tree.parent.size());
  if (tree.root < 0 || tree.root >= n || tree.parent[static_cast<std::size_t>(tree.root)] != -1)
    fail(Errc::MalformedTree, "root has a parent or is out of range");

  std::vector<int> depth(static_cast<std::size_t>(n), -1);
  depth[static_cast<std::size_t>(tree.root)] = 0;
  for (NodeId u = 0; u < n; ++u) {
    if (depth[static_cast<std::size_t>(u)] >= 0) continue;
    // Walk up to a node of known depth, then unwind.
    std::vector<NodeId> chain;
    NodeId w = u;
    while (depth[static_cast<std::size_t>(w)] < 0) {
      chain.push_back(w);
      NodeId p = tree.parent[static_cast<std::size_t>(w)];
      if (p < 0 || p >= n) fail(Errc::MalformedTree, "multiple roots or dangling parent");
      if (static_cast<int>(chain.size()) > n) fail(Errc::MalformedTree, "cycle in parent map");
      w = p;
    }
    int d = depth[static_cast<std::size_t>(w)];
    for (auto it = chain.rbegin(); it != chain.rend(); ++it)
      depth[static_cast<std::size_t>(*it)] = ++d;
  }

  RoleAssignment ra(n);
  for (NodeId u = 0; u < n; ++u)
    ra.set(u, depth[static_cast<std::size_t>(u)] % 2 == 0 ? Role::Dominator : Role::Dominatee);
  return ra;
}

StretchReport stretch_factor(const NetworkGraph& g, const RoleAssignment& ra) {
  require_total(g, ra);
  StretchReport report;
  auto adj = induced_adjacency(g, ra);

  std::vector<char> discarded(static_cast<std::size_t>(g.size()), 0);
  for (NodeId u = 0; u < g.size(); ++u) {
    if (adj[static_cast<std::size_t>(u)].empty() && g.size() > 1) {
      discarded[static_cast<std::size_t>(u)] = 1;
      report.discarded_nodes.push_back(u);
    }
  }

  double total = 0.0;
  long counted = 0;
  for (NodeId u = 0; u < g.size(); ++u) {
    if (discarded[static_cast<std::size_t>(u)]) continue;
    auto dg = bfs_distances(g, u);
    auto di = bfs_on_adjacency(adj, u);
    for (NodeId v = 0; v < g.size(); ++v) {
      if (v == u || discarded[static_cast<std::size_t>(v)]) continue;
      if (di[static_cast<std::size_t>(v)] < 0) {
        ++report.disconnected_pairs;
        continue;
      }
      double s = static_cast<double>(di[static_cast<std::size_t>(v)]) /
                 static_cast<double>(dg[static_cast<std::size_t>(v)]);
      report.per_pair.emplace_back(u, v, s);
      total += s;
      ++counted;
    }
  }
  report.average_stretch = counted > 0 ? total / static_cast<double>(counted) : 1.0;
  return report;
}

}  // namespace rwcds
