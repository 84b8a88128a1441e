#pragma once

// Small graph builders and a random connected generator for property tests.
// The generator is tree-plus-extra-edges, on purpose a different construction
// from the library's geometric sampler.

#include <random>
#include <utility>
#include <vector>

#include "rwcds/graph.hpp"

namespace testgraphs {

using rwcds::NetworkGraph;
using rwcds::NodeId;

inline NetworkGraph path(int n) {
  std::vector<std::pair<NodeId, NodeId>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return NetworkGraph::from_edges(n, e);
}

inline NetworkGraph cycle(int n) {
  std::vector<std::pair<NodeId, NodeId>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return NetworkGraph::from_edges(n, e);
}

inline NetworkGraph star(int leaves) {
  std::vector<std::pair<NodeId, NodeId>> e;
  for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return NetworkGraph::from_edges(leaves + 1, e);
}

inline NetworkGraph complete(int n) {
  std::vector<std::pair<NodeId, NodeId>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return NetworkGraph::from_edges(n, e);
}

inline NetworkGraph random_connected(int n, double extra_edge_prob, std::mt19937& rng) {
  std::vector<std::pair<NodeId, NodeId>> e;
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> pick(0, v - 1);
    e.emplace_back(pick(rng), v);
  }
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng) < extra_edge_prob) e.emplace_back(u, v);
  return NetworkGraph::from_edges(n, e);
}

}  // namespace testgraphs
