#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rwcds/error.hpp"

namespace rwcds {

/// Node identifiers are dense in [0, n) for a graph of n nodes.
using NodeId = std::int32_t;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Edge {
  NodeId u = -1;  // always u < v
  NodeId v = -1;
  auto operator<=>(const Edge&) const = default;
};

/// Undirected unit-disk graph with node positions.
///
/// Adjacency is symmetric and irreflexive. For generated graphs the edge set
/// equals the unit-disk predicate dist(u,v) <= radio_range; hand-built graphs
/// (from_edges) may carry an arbitrary edge set.
class NetworkGraph {
public:
  NetworkGraph() = default;

  /// Derives edges from positions: {u,v} present iff dist <= radio_range.
  static NetworkGraph from_positions(std::vector<Point> positions, double radio_range,
                                     double interference_range);

  /// Explicit edge list; positions default to the origin when omitted.
  static NetworkGraph from_edges(int n, const std::vector<std::pair<NodeId, NodeId>>& edges,
                                 std::vector<Point> positions = {}, double radio_range = 1.0,
                                 double interference_range = 3.0);

  int size() const { return static_cast<int>(positions_.size()); }
  bool contains(NodeId u) const { return u >= 0 && u < size(); }

  std::span<const NodeId> neighbors(NodeId u) const;
  int degree(NodeId u) const;
  bool has_edge(NodeId u, NodeId v) const;
  const std::vector<Edge>& edges() const { return edges_; }

  const Point& position(NodeId u) const;
  double radio_range() const { return radio_range_; }
  double interference_range() const { return interference_range_; }
  double distance(NodeId u, NodeId v) const;

  /// Node-induced subgraph; `nodes[i]` becomes local id i. Positions and
  /// ranges are carried over.
  NetworkGraph induced_subgraph(const std::vector<NodeId>& nodes) const;

private:
  std::vector<Point> positions_;
  std::vector<std::vector<NodeId>> adj_;  // sorted ascending
  std::vector<Edge> edges_;               // sorted, u < v
  double radio_range_ = 1.0;
  double interference_range_ = 3.0;

  void check_node(NodeId u) const;
};

/// rows x cols grid; node (r,c) sits at (c*radio_range, r*radio_range), ids
/// row-major. Only horizontal/vertical neighbors fall within range.
/// Interference range defaults to 3x the radio range.
NetworkGraph gen_grid(int rows, int cols, double radio_range);

/// n nodes placed uniformly at random in a square sized so the expected mean
/// degree is close to target_mean_degree (side = range*sqrt(pi*n/degree)).
/// Resamples with derived sub-seeds until the graph is connected; throws
/// FailsConnectivity once the retry budget is exhausted.
NetworkGraph gen_random_geometric(int n, double radio_range, double target_mean_degree,
                                  std::uint64_t seed, int max_attempts = 1000);

/// Exact hop counts from src; unreachable nodes are marked -1.
std::vector<int> bfs_distances(const NetworkGraph& g, NodeId src);

bool is_connected(const NetworkGraph& g);

/// Rooted spanning tree as a parent map. parent[root] == -1.
struct SpanningTree {
  NodeId root = -1;
  std::vector<NodeId> parent;
  std::vector<int> depth;
};

/// Deterministic BFS tree: parent(v) is the smallest-id neighbor of v at
/// depth(v)-1, the fixpoint the distributed election converges to.
SpanningTree bfs_tree(const NetworkGraph& g, NodeId root);

}  // namespace rwcds
