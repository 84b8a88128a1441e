#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "rwcds/protocol.hpp"
#include "support/testgraphs.hpp"

using namespace rwcds;

namespace {

ProtocolConfig quick_config(int D = 2, std::uint64_t seed = 1) {
  ProtocolConfig cfg;
  cfg.D = D;
  cfg.seed = seed;
  cfg.hello_period = 1.0;
  cfg.max_time = 300.0;
  cfg.cluster_budget = 50;
  return cfg;
}

// The oracle pipeline the protocol must converge to, with matching budget.
RoleAssignment pipeline(const NetworkGraph& g, int D, long budget) {
  return potatoes(g, D, budget);
}

}  // namespace

TEST_CASE("handle_hello: a fresh node adopts the root it hears") {
  ProtocolConfig cfg = quick_config();
  NodeState s;
  s.id = 5;
  s.root = 5;
  HelloMessage m;
  m.sender = 0;
  m.min_id = 0;
  m.distance = 0;
  m.seq_nb = 3;
  m.parent = -1;
  m.leader = 0;
  m.leader_level = 0;
  handle_hello(s, m, 1.0, cfg);
  CHECK(s.root == 0);
  CHECK(s.parent == 0);
  CHECK(s.distance == 1);
  CHECK(s.leader == 0);
}

TEST_CASE("handle_hello: a stale sequence number cannot move the distance") {
  ProtocolConfig cfg = quick_config();
  NodeState s;
  s.id = 7;
  s.root = 7;
  HelloMessage via2;
  via2.sender = 2;
  via2.min_id = 0;
  via2.distance = 2;
  via2.seq_nb = 10;
  handle_hello(s, via2, 1.0, cfg);
  REQUIRE(s.parent == 2);
  REQUIRE(s.distance == 3);

  // Neighbor 3 offers a shorter path but lags two periods behind.
  HelloMessage via3;
  via3.sender = 3;
  via3.min_id = 0;
  via3.distance = 1;
  via3.seq_nb = 8;
  handle_hello(s, via3, 1.1, cfg);
  CHECK(s.parent == 2);
  CHECK(s.distance == 3);

  // Once it catches up, the shorter path wins.
  via3.seq_nb = 10;
  handle_hello(s, via3, 1.2, cfg);
  CHECK(s.parent == 3);
  CHECK(s.distance == 2);
}

TEST_CASE("handle_hello: reparented children drop out of the table view") {
  ProtocolConfig cfg = quick_config();
  NodeState s;
  s.id = 1;
  s.root = 1;
  HelloMessage child;
  child.sender = 4;
  child.min_id = 1;
  child.distance = 1;
  child.seq_nb = 1;
  child.parent = 1;
  TopoRow row;
  row.node = 4;
  row.leader = 1;
  row.parent = 1;
  row.neighbors = {1};
  child.topology.push_back(row);
  handle_hello(s, child, 1.0, cfg);
  CHECK(s.nbr.at(4).parent == 1);
  CHECK(s.nbr.at(4).topo.size() == 1);

  // The child switches parents; its next hello replaces the stored rows.
  child.parent = 2;
  child.topology.clear();
  handle_hello(s, child, 2.0, cfg);
  CHECK(s.nbr.at(4).parent == 2);
  CHECK(s.nbr.at(4).topo.empty());
}

TEST_CASE("leader parity role helper") {
  CHECK(leader_parity_role(2, 0) == Role::Dominator);
  CHECK(leader_parity_role(2, 3) == Role::Dominator);
  CHECK(leader_parity_role(3, 0) == Role::Dominator);
  CHECK(leader_parity_role(3, 1) == Role::Dominatee);
  CHECK(leader_parity_role(3, 2) == Role::Dominator);
  CHECK(leader_parity_role(1, 1) == Role::Dominatee);
}

TEST_CASE("K2 converges to a dominator root") {
  NetworkGraph k2 = testgraphs::path(2);
  ProtocolResult res = run_protocol(k2, quick_config());
  REQUIRE(res.converged);
  CHECK(res.roles[0] == static_cast<int>(Role::Dominator));
  CHECK(res.roles[1] == static_cast<int>(Role::Dominatee));
  CHECK(res.leader[0] == 0);
  CHECK(res.leader[1] == 0);
}

TEST_CASE("P5 with D=2 reaches the oracle cluster tree and roles") {
  NetworkGraph p5 = testgraphs::path(5);
  ProtocolConfig cfg = quick_config();
  ProtocolResult res = run_protocol(p5, cfg);
  REQUIRE(res.converged);

  ClusterTree ct = build_cluster_tree_oracle(p5, 2);
  for (NodeId u = 0; u < 5; ++u) {
    CHECK(res.parent[u] == ct.tree.parent[static_cast<std::size_t>(u)]);
    CHECK(res.leader[u] == ct.leader_of[static_cast<std::size_t>(u)]);
  }
  RoleAssignment target = pipeline(p5, 2, cfg.cluster_budget);
  for (NodeId u = 0; u < 5; ++u)
    CHECK(res.roles[static_cast<std::size_t>(u)] == static_cast<int>(target.at(u)));

  REQUIRE(res.clusters.size() == 2);
  CHECK(res.clusters[0].members == std::vector<NodeId>{0, 1, 2});
  CHECK(res.clusters[1].members == std::vector<NodeId>{2, 3, 4});
}

TEST_CASE("lossy runs still converge to the same fixpoint") {
  NetworkGraph p5 = testgraphs::path(5);
  ProtocolConfig cfg = quick_config(2, 9);
  cfg.loss = 0.2;
  cfg.max_time = 600.0;
  ProtocolResult res = run_protocol(p5, cfg);
  REQUIRE(res.converged);
  RoleAssignment target = pipeline(p5, 2, cfg.cluster_budget);
  for (NodeId u = 0; u < 5; ++u)
    CHECK(res.roles[static_cast<std::size_t>(u)] == static_cast<int>(target.at(u)));
  CHECK(res.hellos_dropped > 0);
}

TEST_CASE("zero-loss convergence matches the oracle within the period bound") {
  std::mt19937 rng(131);
  for (int it = 0; it < 8; ++it) {
    std::uniform_int_distribution<int> nd(3, 24);
    int n = nd(rng);
    NetworkGraph g = testgraphs::random_connected(n, 0.15, rng);
    ProtocolConfig cfg = quick_config(2, static_cast<std::uint64_t>(200 + it));
    int diameter = 0;
    for (NodeId u = 0; u < g.size(); ++u)
      for (int d : bfs_distances(g, u)) diameter = std::max(diameter, d);
    cfg.max_time = std::max(10.0, 4.0 * diameter) * cfg.hello_period;
    ProtocolResult res = run_protocol(g, cfg);
    CHECK(res.converged);
    if (res.converged) {
      RoleAssignment target = pipeline(g, 2, cfg.cluster_budget);
      for (NodeId u = 0; u < g.size(); ++u)
        CHECK(res.roles[static_cast<std::size_t>(u)] == static_cast<int>(target.at(u)));
    }
  }
}

TEST_CASE("killing the root re-elects the next id and reconverges") {
  NetworkGraph g = testgraphs::cycle(6);
  ProtocolConfig cfg = quick_config(2, 5);
  cfg.max_time = 400.0;
  cfg.churn.push_back({30.0, 0, true});
  ProtocolResult res = run_protocol(g, cfg);
  REQUIRE(res.converged);
  CHECK(res.roles[0] == -1);  // dead node carries no role
  for (NodeId u = 1; u < 6; ++u) CHECK(res.leader[u] >= 1);

  // Survivors match the pipeline on the surviving path 1-2-3-4-5.
  NetworkGraph survivor = NetworkGraph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  RoleAssignment target = pipeline(survivor, 2, cfg.cluster_budget);
  for (NodeId u = 1; u < 6; ++u)
    CHECK(res.roles[static_cast<std::size_t>(u)] == static_cast<int>(target.at(u - 1)));
}

TEST_CASE("a joining node is absorbed and the fixpoint tracks the larger graph") {
  NetworkGraph g = testgraphs::path(4);
  ProtocolConfig cfg = quick_config(2, 3);
  cfg.max_time = 400.0;
  cfg.churn.push_back({25.0, 3, false});  // node 3 joins late
  // Node 3 starts dead, so the initial component is 0-1-2.
  ProtocolResult res = run_protocol(g, cfg);
  REQUIRE(res.converged);
  RoleAssignment target = pipeline(g, 2, cfg.cluster_budget);
  for (NodeId u = 0; u < 4; ++u)
    CHECK(res.roles[static_cast<std::size_t>(u)] == static_cast<int>(target.at(u)));
}

TEST_CASE("disconnected graphs converge per component") {
  NetworkGraph g = NetworkGraph::from_edges(5, {{0, 1}, {2, 3}, {3, 4}});
  ProtocolResult res = run_protocol(g, quick_config(2, 11));
  REQUIRE(res.converged);
  CHECK(res.leader[0] == 0);
  CHECK(res.leader[1] == 0);
  CHECK(res.leader[2] == 2);
  CHECK(res.roles[0] == static_cast<int>(Role::Dominator));
  CHECK(res.roles[2] == static_cast<int>(Role::Dominator));
}

TEST_CASE("trace records elections and role dissemination") {
  NetworkGraph p3 = testgraphs::path(3);
  ProtocolResult res = run_protocol(p3, quick_config(2, 13));
  REQUIRE(res.converged);
  bool saw_parent = false, saw_role = false, saw_converged = false;
  for (const TraceLine& t : res.trace) {
    if (t.event == "parent_change") saw_parent = true;
    if (t.event == "role_set") saw_role = true;
    if (t.event == "converged") saw_converged = true;
  }
  CHECK(saw_parent);
  CHECK(saw_role);
  CHECK(saw_converged);
  std::ostringstream os;
  dump_trace(res.trace, os);
  CHECK(os.str().find("converged") != std::string::npos);
}

TEST_CASE("unconverged runs report their budget exhaustion") {
  NetworkGraph g = testgraphs::path(6);
  ProtocolConfig cfg = quick_config(2, 17);
  cfg.max_time = 1.5;  // far too short
  ProtocolResult res = run_protocol(g, cfg);
  CHECK_FALSE(res.converged);
  CHECK(res.convergence_time < 0);
}
