#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rwcds/optimizer.hpp"
#include "support/testgraphs.hpp"

using namespace rwcds;

namespace {
constexpr Role D = Role::Dominator;
constexpr Role E = Role::Dominatee;
}  // namespace

TEST_CASE("solve_opt on K2 finds t_min 0.5") {
  NetworkGraph k2 = testgraphs::path(2);
  BnbResult res = solve_opt(k2, {});
  REQUIRE(res.status == BnbStatus::Optimal);
  CHECK(res.t_min == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(validate_rwcds(k2, res.assignment).valid());
}

TEST_CASE("solve_opt on P3 finds t_min 0.125") {
  NetworkGraph p3 = testgraphs::path(3);
  BnbResult res = solve_opt(p3, {});
  REQUIRE(res.status == BnbStatus::Optimal);
  CHECK(res.t_min == doctest::Approx(0.125).epsilon(1e-9));
}

TEST_CASE("solve_opt respects fixed roles") {
  NetworkGraph p3 = testgraphs::path(3);
  BnbResult res = solve_opt(p3, {{1, E}});
  REQUIRE(res.status == BnbStatus::Optimal);
  CHECK(res.assignment.at(0) == D);
  CHECK(res.assignment.at(1) == E);
  CHECK(res.assignment.at(2) == D);
  CHECK(res.t_min == doctest::Approx(0.125).epsilon(1e-9));
}

TEST_CASE("enumerate_oracle agrees with solve_opt on named graphs") {
  for (const NetworkGraph& g :
       {testgraphs::path(2), testgraphs::cycle(4), testgraphs::star(3), testgraphs::path(5)}) {
    BnbResult a = solve_opt(g, {});
    BnbResult b = enumerate_oracle(g, {});
    REQUIRE(a.status == BnbStatus::Optimal);
    REQUIRE(b.status == BnbStatus::Optimal);
    CHECK(a.t_min == doctest::Approx(b.t_min).epsilon(1e-6));
  }
}

TEST_CASE("all-dominator fixing is infeasible") {
  NetworkGraph k2 = testgraphs::path(2);
  BnbResult res = enumerate_oracle(k2, {{0, D}, {1, D}});
  CHECK(res.status == BnbStatus::Infeasible);
  BnbResult bnb = solve_opt(k2, {{0, D}, {1, D}});
  CHECK(bnb.status == BnbStatus::Infeasible);
}

TEST_CASE("enumerate_oracle rejects oversized graphs") {
  NetworkGraph g = testgraphs::path(15);
  CHECK_THROWS_AS(enumerate_oracle(g, {}), Error);
}

TEST_CASE("oracle equivalence on random graphs, including fixed leaders") {
  std::mt19937 rng(71);
  for (int it = 0; it < 30; ++it) {
    std::uniform_int_distribution<int> nd(3, 8);
    int n = nd(rng);
    NetworkGraph g = testgraphs::random_connected(n, 0.25, rng);
    FixedRoles fixed;
    if (it % 3 == 0) fixed[0] = D;
    if (it % 5 == 0 && n > 2) fixed[n - 1] = E;
    BnbResult a = solve_opt(g, fixed);
    BnbResult b = enumerate_oracle(g, fixed);
    REQUIRE(a.status == b.status);
    if (a.status == BnbStatus::Optimal) {
      CHECK(a.t_min == doctest::Approx(b.t_min).epsilon(1e-6));
      CHECK(validate_rwcds(g, a.assignment).valid());
      for (const auto& [u, r] : fixed) CHECK(a.assignment.at(u) == r);
    }
  }
}

TEST_CASE("warm start dominance: solve_opt never loses to the parity coloring") {
  std::mt19937 rng(83);
  for (int it = 0; it < 10; ++it) {
    NetworkGraph g = testgraphs::random_connected(7, 0.3, rng);
    RoleAssignment parity = parity_coloring(bfs_tree(g, 0));
    double parity_value = evaluate_tmin(g, parity).t_min;
    BnbResult res = solve_opt(g, {});
    REQUIRE(res.status == BnbStatus::Optimal);
    CHECK(res.t_min >= parity_value - 1e-9);
  }
}

TEST_CASE("budget exhaustion still returns the incumbent") {
  NetworkGraph g = testgraphs::cycle(8);
  BnbResult res = solve_opt(g, {}, 0);
  CHECK(res.status == BnbStatus::BudgetExceeded);
  CHECK_FALSE(res.assignment.empty());
  CHECK(validate_rwcds(g, res.assignment).valid());
}

TEST_CASE("assign_cluster_roles on a star fixes the leader and settles the leaves") {
  NetworkGraph star = testgraphs::star(4);
  RoleAssignment ra = assign_cluster_roles(star, {{0, D}}, 1000);
  CHECK(ra.at(0) == D);
  for (NodeId u = 1; u <= 4; ++u) CHECK(ra.at(u) == E);
}

TEST_CASE("assign_cluster_roles on P3 with dominator ends") {
  NetworkGraph p3 = testgraphs::path(3);
  RoleAssignment ra = assign_cluster_roles(p3, {{0, D}, {2, D}}, 1000);
  CHECK(ra.at(1) == E);
}

TEST_CASE("assign_cluster_roles on P5 with dominator ends matches the oracle") {
  NetworkGraph p5 = testgraphs::path(5);
  FixedRoles fixed{{0, D}, {4, D}};
  RoleAssignment ra = assign_cluster_roles(p5, fixed, 5000);
  BnbResult oracle_res = enumerate_oracle(p5, fixed);
  REQUIRE(oracle_res.status == BnbStatus::Optimal);
  CHECK(evaluate_tmin(p5, ra).t_min == doctest::Approx(oracle_res.t_min).epsilon(1e-6));
}

TEST_CASE("assign_cluster_roles propagates infeasibility") {
  NetworkGraph k2 = testgraphs::path(2);
  CHECK_THROWS_AS(assign_cluster_roles(k2, {{0, D}, {1, D}}, 100), Error);
}

TEST_CASE("disconnected input is rejected") {
  NetworkGraph g = NetworkGraph::from_edges(4, {{0, 1}, {2, 3}});
  CHECK_THROWS_AS(solve_opt(g, {}), Error);
}
