#include "rwcds/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <random>

namespace rwcds {

namespace {

// Canonical double in [0,1) from the top 53 bits; keeps generated corpora
// identical across standard library implementations.
double unit_real(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

void NetworkGraph::check_node(NodeId u) const {
  if (!contains(u)) fail(Errc::UnknownNode, "node " + std::to_string(u) + " not in graph");
}

std::span<const NodeId> NetworkGraph::neighbors(NodeId u) const {
  check_node(u);
  return adj_[static_cast<std::size_t>(u)];
}

int NetworkGraph::degree(NodeId u) const {
  check_node(u);
  return static_cast<int>(adj_[static_cast<std::size_t>(u)].size());
}

bool NetworkGraph::has_edge(NodeId u, NodeId v) const {
  check_node(u);
  check_node(v);
  const auto& nb = adj_[static_cast<std::size_t>(u)];
  return std::binary_search(nb.begin(), nb.end(), v);
}

const Point& NetworkGraph::position(NodeId u) const {
  check_node(u);
  return positions_[static_cast<std::size_t>(u)];
}

double NetworkGraph::distance(NodeId u, NodeId v) const {
  const Point& a = position(u);
  const Point& b = position(v);
  return std::hypot(a.x - b.x, a.y - b.y);
}

NetworkGraph NetworkGraph::from_positions(std::vector<Point> positions, double radio_range,
                                          double interference_range) {
  NetworkGraph g;
  g.positions_ = std::move(positions);
  g.radio_range_ = radio_range;
  g.interference_range_ = std::max(interference_range, radio_range);
  const int n = g.size();
  g.adj_.assign(static_cast<std::size_t>(n), {});
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (g.distance(u, v) <= radio_range) {
        g.adj_[static_cast<std::size_t>(u)].push_back(v);
        g.adj_[static_cast<std::size_t>(v)].push_back(u);
        g.edges_.push_back({u, v});
      }
    }
  }
  return g;
}

NetworkGraph NetworkGraph::from_edges(int n, const std::vector<std::pair<NodeId, NodeId>>& edges,
                                      std::vector<Point> positions, double radio_range,
                                      double interference_range) {
  NetworkGraph g;
  if (positions.empty()) positions.assign(static_cast<std::size_t>(n), Point{});
  if (static_cast<int>(positions.size()) != n)
    fail(Errc::UnknownNode, "positions size does not match node count");
  g.positions_ = std::move(positions);
  g.radio_range_ = radio_range;
  g.interference_range_ = std::max(interference_range, radio_range);
  g.adj_.assign(static_cast<std::size_t>(n), {});
  for (auto [a, b] : edges) {
    if (a == b) continue;
    NodeId u = std::min(a, b), v = std::max(a, b);
    if (u < 0 || v >= n) fail(Errc::UnknownNode, "edge endpoint out of range");
    g.edges_.push_back({u, v});
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());
  for (const Edge& e : g.edges_) {
    g.adj_[static_cast<std::size_t>(e.u)].push_back(e.v);
    g.adj_[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  for (auto& nb : g.adj_) std::sort(nb.begin(), nb.end());
  return g;
}

NetworkGraph NetworkGraph::induced_subgraph(const std::vector<NodeId>& nodes) const {
  std::vector<int> local(static_cast<std::size_t>(size()), -1);
  std::vector<Point> pos;
  pos.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    check_node(nodes[i]);
    local[static_cast<std::size_t>(nodes[i])] = static_cast<int>(i);
    pos.push_back(position(nodes[i]));
  }
  std::vector<std::pair<NodeId, NodeId>> sub_edges;
  for (const Edge& e : edges_) {
    int lu = local[static_cast<std::size_t>(e.u)];
    int lv = local[static_cast<std::size_t>(e.v)];
    if (lu >= 0 && lv >= 0) sub_edges.emplace_back(lu, lv);
  }
  return from_edges(static_cast<int>(nodes.size()), sub_edges, std::move(pos), radio_range_,
                    interference_range_);
}

NetworkGraph gen_grid(int rows, int cols, double radio_range) {
  std::vector<Point> pos;
  pos.reserve(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      pos.push_back({static_cast<double>(c) * radio_range, static_cast<double>(r) * radio_range});
  return NetworkGraph::from_positions(std::move(pos), radio_range, 3.0 * radio_range);
}

NetworkGraph gen_random_geometric(int n, double radio_range, double target_mean_degree,
                                  std::uint64_t seed, int max_attempts) {
  if (n < 2) fail(Errc::UnknownNode, "random geometric graph needs n >= 2");
  // Two uniform points in a square of side L are adjacent with probability
  // pi t^2 - (8/3) t^3 + t^4/2 for t = r/L, so the expected mean degree is
  // (n-1) times that. Solving for t keeps the measured density on target even
  // at small L/r where border effects bite; the bare pi t^2 area term alone
  // undershoots by ~20%.
  const double pi = std::numbers::pi_v<double>;
  double t = std::sqrt(target_mean_degree / (pi * (n - 1)));
  for (int i = 0; i < 50; ++i) {
    double f = (n - 1) * (pi * t * t - 8.0 / 3.0 * t * t * t + 0.5 * t * t * t * t) -
               target_mean_degree;
    double df = (n - 1) * (2.0 * pi * t - 8.0 * t * t + 2.0 * t * t * t);
    double step = f / df;
    t -= step;
    if (std::abs(step) < 1e-14) break;
  }
  t = std::min(t, 1.0);  // denser than one-disk-covers-the-square is moot
  const double side = radio_range / t;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(attempt)};
    std::mt19937_64 rng(seq);
    std::vector<Point> pos(static_cast<std::size_t>(n));
    for (auto& p : pos) {
      p.x = unit_real(rng) * side;
      p.y = unit_real(rng) * side;
    }
    NetworkGraph g =
        NetworkGraph::from_positions(std::move(pos), radio_range, 3.0 * radio_range);
    if (is_connected(g)) return g;
  }
  fail(Errc::FailsConnectivity, "no connected instance within " + std::to_string(max_attempts) +
                                    " attempts (density too low?)");
}

std::vector<int> bfs_distances(const NetworkGraph& g, NodeId src) {
  if (!g.contains(src)) fail(Errc::UnknownNode, "bfs source " + std::to_string(src));
  std::vector<int> dist(static_cast<std::size_t>(g.size()), -1);
  std::queue<NodeId> q;
  dist[static_cast<std::size_t>(src)] = 0;
  q.push(src);
  while (!q.empty()) {
    NodeId u = q.front();
    q.pop();
    for (NodeId v : g.neighbors(u)) {
      if (dist[static_cast<std::size_t>(v)] < 0) {
        dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
        q.push(v);
      }
    }
  }
  return dist;
}

bool is_connected(const NetworkGraph& g) {
  if (g.size() == 0) return true;
  auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

SpanningTree bfs_tree(const NetworkGraph& g, NodeId root) {
  auto dist = bfs_distances(g, root);
  for (int d : dist)
    if (d < 0) fail(Errc::Disconnected, "bfs_tree requires a connected graph");
  SpanningTree t;
  t.root = root;
  t.depth = dist;
  t.parent.assign(static_cast<std::size_t>(g.size()), -1);
  for (NodeId v = 0; v < g.size(); ++v) {
    if (v == root) continue;
    // Smallest-id predecessor on a shortest path; adjacency is sorted.
    for (NodeId u : g.neighbors(v)) {
      if (dist[static_cast<std::size_t>(u)] == dist[static_cast<std::size_t>(v)] - 1) {
        t.parent[static_cast<std::size_t>(v)] = u;
        break;
      }
    }
  }
  return t;
}

}  // namespace rwcds
