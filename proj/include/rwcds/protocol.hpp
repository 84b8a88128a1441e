#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rwcds/cluster_tree.hpp"
#include "rwcds/graph.hpp"
#include "rwcds/roles.hpp"

namespace rwcds {

struct ChurnEvent {
  double time = 0.0;
  NodeId node = -1;
  bool leave = true;  // false = join
};

struct ProtocolConfig {
  int D = 2;
  double hello_period = 1.0;      // H
  double t_dead = -1.0;           // < 0 means the 3.5 * H default
  int stabilization_periods = 3;  // S: quiet hello periods before a leader solves
  double loss = 0.0;              // per-receiver hello loss probability
  std::uint64_t seed = 1;
  double max_time = 200.0;
  long cluster_budget = 2000;     // branch-and-bound budget per leader solve
  bool trace_hellos = false;
  std::vector<ChurnEvent> churn;

  double dead_interval() const { return t_dead >= 0.0 ? t_dead : 3.5 * hello_period; }
};

/// One node's record inside the piggybacked topology fragments. Rows are
/// tagged by the child that reported them and flushed wholesale whenever that
/// child sends a new hello.
struct TopoRow {
  NodeId node = -1;
  NodeId leader = -1;
  NodeId parent = -1;
  int role = -1;  // echoed assigned role, -1 while unset
  std::vector<NodeId> neighbors;
  bool operator==(const TopoRow&) const = default;
};

struct RoleEntry {
  NodeId node = -1;
  int role = -1;
  bool operator==(const RoleEntry&) const = default;
};

/// The wire record piggybacked on every hello.
struct HelloMessage {
  NodeId sender = -1;
  std::vector<NodeId> neighbors;
  NodeId min_id = -1;       // sender's current root candidate
  int distance = 0;         // hops to that root
  std::uint64_t seq_nb = 0; // originated only by the current root
  NodeId parent = -1;
  NodeId leader = -1;
  int leader_level = -1;
  int own_role = -1;
  std::vector<TopoRow> topology;  // own row plus child fragments (leaders stop their subtree)
  NodeId payload_leader = -1;
  std::vector<RoleEntry> role_payload;
};

struct NeighborRecord {
  double last_heard = -1.0e18;
  NodeId min_id = -1;
  int distance = 0;
  std::uint64_t seq_nb = 0;
  NodeId parent = -1;
  NodeId leader = -1;
  int leader_level = -1;
  int own_role = -1;
  std::vector<NodeId> neighbors;
  std::vector<TopoRow> topo;
};

/// Per-node protocol state.
struct NodeState {
  NodeId id = -1;
  bool alive = true;

  std::map<NodeId, NeighborRecord> nbr;

  NodeId root = -1;
  int distance = 0;
  std::uint64_t seq_nb = 0;        // newest seen for the current root
  std::uint64_t own_seq = 0;       // incremented per hello while root
  double seq_last_advanced = 0.0;
  NodeId parent = -1;
  std::map<NodeId, double> dead_roots;  // root id -> blacklist expiry

  bool is_leader = false;
  NodeId leader = -1;
  int leader_level = -1;

  double view_last_changed = 0.0;
  std::string view_fingerprint;
  std::string solved_fingerprint;
  std::vector<RoleEntry> solution;  // leader's computed roles, global ids
  std::map<std::string, std::vector<RoleEntry>> solve_cache;  // by view fingerprint

  NodeId stored_payload_leader = -1;
  std::vector<RoleEntry> stored_payload;

  int assigned_role = -1;  // -1 unset, else static_cast<int>(Role)
};

/// Leader parity role: with even D every leader is a Dominator; with odd D
/// leaders alternate by cluster-tree level starting from the root Dominator.
Role leader_parity_role(int D, int level);

/// Processes one received hello: records the sender, re-runs the election
/// (min-id root, parent minimizing (distance, id) among fresh entries with
/// the newest seq_nb), refreshes the leader/level derivation, marks the root
/// dead when its sequence number stalls past the dead interval, and consumes
/// any role payload for this node's cluster.
void handle_hello(NodeState& s, const HelloMessage& m, double now, const ProtocolConfig& cfg);

struct TraceLine {
  double time = 0.0;
  std::string event;
  NodeId node = -1;
  std::string detail;
};

struct ProtocolResult {
  bool converged = false;
  double convergence_time = -1.0;
  std::vector<int> roles;       // per node, -1 unset or dead
  std::vector<NodeId> parent;   // final protocol spanning forest
  std::vector<NodeId> leader;
  std::vector<Cluster> clusters;  // reconstructed from the final state
  std::vector<TraceLine> trace;
  long hellos_sent = 0;
  long hellos_dropped = 0;

  /// Total assignment; throws InvalidAssignment while any live node is unset.
  RoleAssignment role_assignment() const;
};

/// Discrete-event simulation of the distributed construction. Runs per
/// component when the graph is disconnected. Nodes broadcast hellos on
/// independent jittered timers; each leader solves its cluster once its view
/// has been stable for S hello periods and disseminates roles down the tree.
/// Converged means every live node's parent, leader, and role equal the
/// centralized pipeline's output for the same graph, D, and budget.
ProtocolResult run_protocol(const NetworkGraph& g, const ProtocolConfig& cfg);

void dump_trace(const std::vector<TraceLine>& trace, std::ostream& os);

}  // namespace rwcds
