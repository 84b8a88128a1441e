#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "rwcds/flow_lp.hpp"
#include "support/lp_oracle.hpp"
#include "support/testgraphs.hpp"

using namespace rwcds;

namespace {

constexpr Role D = Role::Dominator;
constexpr Role E = Role::Dominatee;

RoleAssignment make_roles(std::initializer_list<Role> roles) {
  return RoleAssignment(std::vector<Role>(roles));
}

}  // namespace

TEST_CASE("simplex handles a plain bounded maximization") {
  LpProblem lp;
  int x = lp.add_col(1.0);
  int y = lp.add_col(2.0);
  lp.add_row({{{x, 1.0}, {y, 1.0}}, RowSense::Le, 4.0, 0});
  lp.add_row({{{x, 1.0}}, RowSense::Le, 3.0, 0});
  auto sol = solve_simplex(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(8.0));
  CHECK(sol.x[static_cast<std::size_t>(y)] == doctest::Approx(4.0));
}

TEST_CASE("simplex honors equalities and upper bounds") {
  LpProblem lp;
  int x = lp.add_col(3.0, 2.0);
  int y = lp.add_col(1.0);
  lp.add_row({{{x, 1.0}, {y, 1.0}}, RowSense::Eq, 3.0, 0});
  auto sol = solve_simplex(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.x[static_cast<std::size_t>(x)] == doctest::Approx(2.0));
  CHECK(sol.x[static_cast<std::size_t>(y)] == doctest::Approx(1.0));
  CHECK(sol.objective == doctest::Approx(7.0));
}

TEST_CASE("simplex reports infeasible systems") {
  LpProblem lp;
  int x = lp.add_col(1.0);
  lp.add_row({{{x, 1.0}}, RowSense::Le, 1.0, 0});
  lp.add_row({{{x, 1.0}}, RowSense::Ge, 2.0, 0});
  CHECK(solve_simplex(lp).status == LpStatus::Infeasible);
}

TEST_CASE("simplex reports unbounded problems") {
  LpProblem lp;
  int x = lp.add_col(1.0);
  lp.add_row({{{x, -1.0}}, RowSense::Le, 1.0, 0});
  CHECK(solve_simplex(lp).status == LpStatus::Unbounded);
}

TEST_CASE("build_lp variable and row counts on K2") {
  NetworkGraph k2 = testgraphs::path(2);
  LpModel m = build_lp(k2, to_role_specs(make_roles({D, E})), 1.0, false);
  CHECK(m.lp.num_cols == 3);  // two usable directed-traffic vars + Tmin
  int cap_rows = 0;
  for (const auto& row : m.lp.rows)
    if (row.family == kFamNodeCapacity) ++cap_rows;
  CHECK(cap_rows == 2);
}

TEST_CASE("build_lp emits n sink and n capacity rows") {
  for (int n : {3, 5, 7}) {
    NetworkGraph g = testgraphs::cycle(n);
    RoleAssignment ra(n);
    for (NodeId u = 0; u < n; ++u) ra.set(u, u % 2 == 0 ? D : E);
    LpModel m = build_lp(g, to_role_specs(ra), 1.0, false);
    int sink = 0, cap = 0;
    for (const auto& row : m.lp.rows) {
      if (row.family == kFamSinkDemand) ++sink;
      if (row.family == kFamNodeCapacity) ++cap;
    }
    CHECK(sink == n);
    CHECK(cap == n);
  }
}

TEST_CASE("fixed equal-role edges carry no traffic variables") {
  NetworkGraph tri = testgraphs::complete(3);
  LpModel m = build_lp(tri, to_role_specs(make_roles({D, D, E})), 1.0, false);
  // Edge {0,1} is dominator-dominator: all its traffic columns are pinned.
  for (int d = 0; d < 3; ++d) {
    CHECK(m.vars.col(0, d) == -1);  // dir 0 is 0->1 (first edge is {0,1})
    CHECK(m.vars.col(1, d) == -1);
  }
}

TEST_CASE("golden t_min values, each pre-verified by the dense oracle") {
  NetworkGraph k2 = testgraphs::path(2);
  RoleAssignment k2r = make_roles({D, E});
  auto oracle_k2 = oracle::tmin_oracle(k2, k2r);
  REQUIRE(oracle_k2.has_value());
  CHECK(*oracle_k2 == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(evaluate_tmin(k2, k2r).t_min == doctest::Approx(0.5).epsilon(1e-9));

  NetworkGraph p3 = testgraphs::path(3);
  RoleAssignment p3r = make_roles({E, D, E});
  auto oracle_p3 = oracle::tmin_oracle(p3, p3r);
  REQUIRE(oracle_p3.has_value());
  CHECK(*oracle_p3 == doctest::Approx(0.125).epsilon(1e-9));
  CHECK(evaluate_tmin(p3, p3r).t_min == doctest::Approx(0.125).epsilon(1e-9));

  NetworkGraph star = testgraphs::star(3);
  RoleAssignment starr = make_roles({D, E, E, E});
  auto oracle_star = oracle::tmin_oracle(star, starr);
  REQUIRE(oracle_star.has_value());
  CHECK(*oracle_star == doctest::Approx(1.0 / 18.0).epsilon(1e-9));
  CHECK(evaluate_tmin(star, starr).t_min == doctest::Approx(1.0 / 18.0).epsilon(1e-9));
}

TEST_CASE("P3 with dominator endpoints matches the symmetric case") {
  NetworkGraph p3 = testgraphs::path(3);
  CHECK(evaluate_tmin(p3, make_roles({D, E, D})).t_min == doctest::Approx(0.125).epsilon(1e-9));
}

TEST_CASE("C4 alternating assignments agree with the oracle and each other") {
  NetworkGraph c4 = testgraphs::cycle(4);
  RoleAssignment a = make_roles({D, E, D, E});
  RoleAssignment b = make_roles({E, D, E, D});
  auto expect = oracle::tmin_oracle(c4, a);
  REQUIRE(expect.has_value());
  CHECK(evaluate_tmin(c4, a).t_min == doctest::Approx(*expect).epsilon(1e-8));
  CHECK(evaluate_tmin(c4, b).t_min == doctest::Approx(*expect).epsilon(1e-8));
}

TEST_CASE("evaluate_tmin rejects invalid assignments") {
  NetworkGraph p3 = testgraphs::path(3);
  CHECK_THROWS_AS(evaluate_tmin(p3, make_roles({E, E, E})), Error);
}

TEST_CASE("single node evaluates to zero") {
  NetworkGraph g = NetworkGraph::from_edges(1, {});
  auto sol = evaluate_tmin(g, RoleAssignment(1, Role::Dominator));
  CHECK(sol.status == SolStatus::Optimal);
  CHECK(sol.t_min == 0.0);
}

TEST_CASE("BW scaling scales t_min linearly") {
  NetworkGraph k2 = testgraphs::path(2);
  NetworkGraph p3 = testgraphs::path(3);
  for (double k : {0.5, 2.0, 7.0}) {
    CHECK(evaluate_tmin(k2, make_roles({D, E}), k).t_min == doctest::Approx(0.5 * k));
    CHECK(evaluate_tmin(p3, make_roles({E, D, E}), k).t_min == doctest::Approx(0.125 * k));
  }
}

TEST_CASE("cuts are redundant once roles are fixed and valid") {
  std::mt19937 rng(31);
  for (int it = 0; it < 15; ++it) {
    NetworkGraph g = testgraphs::random_connected(6, 0.3, rng);
    RoleAssignment ra = parity_coloring(bfs_tree(g, 0));
    LpModel plain = build_lp(g, to_role_specs(ra), 1.0, false);
    LpModel cuts = build_lp(g, to_role_specs(ra), 1.0, true);
    CHECK(solve_lp(plain).t_min == doctest::Approx(solve_lp(cuts).t_min).epsilon(1e-8));
  }
}

TEST_CASE("solver matches the independent oracle on all small graphs") {
  std::mt19937 rng(41);
  int solved = 0;
  for (int it = 0; it < 40; ++it) {
    std::uniform_int_distribution<int> nd(2, 5);
    int n = nd(rng);
    NetworkGraph g = testgraphs::random_connected(n, 0.35, rng);
    std::uniform_int_distribution<int> coin(0, 1);
    RoleAssignment ra(n);
    for (NodeId u = 0; u < n; ++u) ra.set(u, coin(rng) ? D : E);
    LpModel m = build_lp(g, to_role_specs(ra), 1.0, false);
    FlowSolution s = solve_lp(m);
    auto expect = oracle::tmin_oracle(g, ra);
    REQUIRE(expect.has_value());  // t_min = 0 is always feasible
    REQUIRE(s.status == SolStatus::Optimal);
    CHECK(s.t_min == doctest::Approx(*expect).epsilon(1e-6));
    ++solved;
  }
  CHECK(solved == 40);
}

TEST_CASE("removing an edge never increases t_min") {
  std::mt19937 rng(53);
  for (int it = 0; it < 12; ++it) {
    std::uniform_int_distribution<int> nd(3, 6);
    int n = nd(rng);
    NetworkGraph g = testgraphs::random_connected(n, 0.5, rng);
    RoleAssignment ra = parity_coloring(bfs_tree(g, 0));
    double base = solve_lp(build_lp(g, to_role_specs(ra), 1.0, false)).t_min;
    for (std::size_t drop = 0; drop < g.edges().size(); ++drop) {
      std::vector<std::pair<NodeId, NodeId>> kept;
      for (std::size_t i = 0; i < g.edges().size(); ++i)
        if (i != drop) kept.emplace_back(g.edges()[i].u, g.edges()[i].v);
      NetworkGraph h = NetworkGraph::from_edges(n, kept);
      double reduced = solve_lp(build_lp(h, to_role_specs(ra), 1.0, false)).t_min;
      CHECK(reduced <= base + 1e-7);
    }
  }
}

TEST_CASE("residual checker accepts solver output and sees perturbations") {
  NetworkGraph p3 = testgraphs::path(3);
  RoleAssignment ra = make_roles({E, D, E});
  FlowSolution sol = evaluate_tmin(p3, ra);
  ResidualReport rep = check_flow_solution(p3, ra, sol);
  CHECK(rep.max() <= 1e-6);

  // Hand-built zero flow: conservation holds trivially at t_min = 0.
  FlowSolution zero;
  zero.status = SolStatus::Optimal;
  zero.t_min = 0.0;
  zero.n = 3;
  zero.num_dir = 4;
  zero.traffic.assign(static_cast<std::size_t>(4 * 3), 0.0);
  ResidualReport zrep = check_flow_solution(p3, ra, zero);
  CHECK(zrep.conservation == doctest::Approx(0.0));
  CHECK(zrep.sink_demand == doctest::Approx(0.0));

  // Perturb one traffic value: the conservation family must light up.
  FlowSolution bad = sol;
  bad.traffic[1] += 0.1;
  ResidualReport brep = check_flow_solution(p3, ra, bad);
  CHECK(brep.conservation > 0.05);
}

TEST_CASE("every optimal solution in a random corpus passes the residual check") {
  std::mt19937 rng(67);
  for (int it = 0; it < 15; ++it) {
    std::uniform_int_distribution<int> nd(3, 8);
    int n = nd(rng);
    NetworkGraph g = testgraphs::random_connected(n, 0.3, rng);
    RoleAssignment ra = parity_coloring(bfs_tree(g, 0));
    FlowSolution sol = evaluate_tmin(g, ra);
    REQUIRE(sol.status == SolStatus::Optimal);
    CHECK(check_flow_solution(g, ra, sol).max() <= 1e-6);
  }
}

TEST_CASE("LP dump is parseable text with the expected sections") {
  NetworkGraph k2 = testgraphs::path(2);
  LpModel m = build_lp(k2, to_role_specs(make_roles({D, E})), 1.0, true);
  std::ostringstream os;
  dump_lp(m, os);
  std::string text = os.str();
  CHECK(text.find("Maximize") != std::string::npos);
  CHECK(text.find("Subject To") != std::string::npos);
  CHECK(text.find("Bounds") != std::string::npos);
  CHECK(text.find("End") != std::string::npos);
  CHECK(text.find("Tmin") != std::string::npos);
}

TEST_CASE("traffic_value reads flows along edges") {
  NetworkGraph k2 = testgraphs::path(2);
  RoleAssignment ra = make_roles({D, E});
  FlowSolution sol = evaluate_tmin(k2, ra);
  CHECK(traffic_value(k2, sol, 0, 1, 1) == doctest::Approx(0.5));
  CHECK(traffic_value(k2, sol, 1, 0, 0) == doctest::Approx(0.5));
  CHECK(traffic_value(k2, sol, 0, 1, 0) == 0.0);
}
