#pragma once

#include <cstdint>
#include <tuple>
#include <vector>

#include "rwcds/graph.hpp"

namespace rwcds {

/// Dominator maps to a Molecular MAC nucleus, Dominatee to an electron.
enum class Role : std::uint8_t { Dominator = 0, Dominatee = 1 };

inline Role opposite(Role r) { return r == Role::Dominator ? Role::Dominatee : Role::Dominator; }

/// Total map NodeId -> Role over the nodes of the graph it is paired with.
class RoleAssignment {
public:
  RoleAssignment() = default;
  explicit RoleAssignment(int n, Role fill = Role::Dominatee)
      : roles_(static_cast<std::size_t>(n), fill) {}
  explicit RoleAssignment(std::vector<Role> roles) : roles_(std::move(roles)) {}

  int size() const { return static_cast<int>(roles_.size()); }
  bool empty() const { return roles_.empty(); }
  Role at(NodeId u) const {
    if (u < 0 || u >= size()) fail(Errc::UnknownNode, "role lookup " + std::to_string(u));
    return roles_[static_cast<std::size_t>(u)];
  }
  void set(NodeId u, Role r) {
    if (u < 0 || u >= size()) fail(Errc::UnknownNode, "role set " + std::to_string(u));
    roles_[static_cast<std::size_t>(u)] = r;
  }
  bool is_dominator(NodeId u) const { return at(u) == Role::Dominator; }
  int dominator_count() const;
  const std::vector<Role>& raw() const { return roles_; }

  bool operator==(const RoleAssignment&) const = default;

private:
  std::vector<Role> roles_;
};

struct ValidityReport {
  bool dominated = false;        // every node has an opposite-role neighbor
  bool weakly_connected = false; // (V, E') is a single component
  std::vector<NodeId> undominated_nodes;
  int component_count = 0;
  bool valid() const { return dominated && weakly_connected; }
};

struct StretchReport {
  double average_stretch = 1.0;
  std::vector<std::tuple<NodeId, NodeId, double>> per_pair;  // counted ordered pairs
  long disconnected_pairs = 0;
  std::vector<NodeId> discarded_nodes;  // isolated in (V, E')
};

/// Edges with one Dominator and one Dominatee endpoint; monochromatic edges
/// are dropped.
std::vector<Edge> induced_edges(const NetworkGraph& g, const RoleAssignment& ra);

/// Checks domination in both directions (a dominator with no dominatee
/// neighbor is flagged too) and weak connectivity of (V, E').
ValidityReport validate_rwcds(const NetworkGraph& g, const RoleAssignment& ra);

/// Dominator iff tree depth is even. Always a valid r-WCDS of the underlying
/// connected graph: tree edges alternate roles.
RoleAssignment parity_coloring(const SpanningTree& tree);

/// Average over ordered pairs of dist_{(V,E')}(u,v) / dist_G(u,v). Nodes
/// isolated in (V,E') are discarded from the average; remaining unreachable
/// pairs are counted in disconnected_pairs.
StretchReport stretch_factor(const NetworkGraph& g, const RoleAssignment& ra);

}  // namespace rwcds
