#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rwcds/heuristics.hpp"
#include "support/testgraphs.hpp"

using namespace rwcds;

namespace {
constexpr Role D = Role::Dominator;
constexpr Role E = Role::Dominatee;
}  // namespace

TEST_CASE("st_assign on P3 marks the even depths") {
  NetworkGraph p3 = testgraphs::path(3);
  RoleAssignment ra = st_assign(p3, 0);
  CHECK(ra.raw() == std::vector<Role>{D, E, D});
}

TEST_CASE("st_assign on the 3x3 grid is the checkerboard") {
  NetworkGraph g = gen_grid(3, 3, 10.0);
  RoleAssignment ra = st_assign(g, 0);
  for (NodeId u = 0; u < 9; ++u) CHECK((ra.at(u) == D) == (u % 2 == 0));
  CHECK(validate_rwcds(g, ra).valid());
}

TEST_CASE("pruned ST stays valid") {
  NetworkGraph g = gen_grid(3, 3, 10.0);
  RoleAssignment pruned = st_assign(g, 0, true);
  CHECK(validate_rwcds(g, pruned).valid());
  CHECK(pruned.dominator_count() <= st_assign(g, 0, false).dominator_count());
}

TEST_CASE("st_assign without pruning is valid on random connected graphs") {
  std::mt19937 rng(139);
  for (int it = 0; it < 30; ++it) {
    std::uniform_int_distribution<int> nd(2, 40);
    NetworkGraph g = testgraphs::random_connected(nd(rng), 0.12, rng);
    CHECK(validate_rwcds(g, st_assign(g, 0)).valid());
  }
}

TEST_CASE("mis_assign on P3 selects the endpoints") {
  NetworkGraph p3 = testgraphs::path(3);
  MisResult res = mis_assign(p3);
  CHECK(res.roles.raw() == std::vector<Role>{D, E, D});
  CHECK(res.validity.valid());
}

TEST_CASE("mis_assign on C4 follows the depth-then-id order") {
  NetworkGraph c4 = testgraphs::cycle(4);
  MisResult res = mis_assign(c4);
  CHECK(res.roles.raw() == std::vector<Role>{D, E, D, E});
  CHECK(res.validity.valid());
}

TEST_CASE("mis dominators are independent and maximal") {
  std::mt19937 rng(149);
  for (int it = 0; it < 25; ++it) {
    std::uniform_int_distribution<int> nd(2, 35);
    NetworkGraph g = testgraphs::random_connected(nd(rng), 0.15, rng);
    MisResult res = mis_assign(g);
    for (const Edge& e : g.edges())
      CHECK((res.roles.at(e.u) == D && res.roles.at(e.v) == D) == false);
    // Maximality: every dominatee sees a dominator.
    for (NodeId u = 0; u < g.size(); ++u) {
      if (res.roles.at(u) == D) continue;
      bool covered = false;
      for (NodeId v : g.neighbors(u))
        if (res.roles.at(v) == D) covered = true;
      CHECK(covered);
    }
  }
}

TEST_CASE("mis validity rate on geometric graphs is reported, not assumed") {
  // The depth-then-id greedy turns out to stay weakly connected on unit-disk
  // graphs; unlike the historical baselines it never loses validity here.
  // Domination holds by maximality either way, so only the report varies.
  int invalid = 0;
  for (int s = 1; s <= 10; ++s) {
    NetworkGraph g = gen_random_geometric(49, 10.0, 10.0, static_cast<std::uint64_t>(s));
    MisResult res = mis_assign(g);
    if (!res.validity.valid()) ++invalid;
    CHECK(res.validity.dominated);  // Eq-1 style coverage always holds
  }
  MESSAGE("mis invalid instances: ", invalid, "/10");
}

TEST_CASE("greedy_channels basics") {
  // Two interfering nuclei split channels; a distant pair reuses channel 0.
  std::vector<Point> close = {{0, 0}, {5, 0}, {10, 0}};
  NetworkGraph g = NetworkGraph::from_positions(close, 10.0, 30.0);
  RoleAssignment ra(3);
  ra.set(0, D);
  ra.set(1, E);
  ra.set(2, D);
  ChannelAssignment ca = greedy_channels(g, ra, 12);
  CHECK(ca.channel.at(0) == 0);
  CHECK(ca.channel.at(2) == 1);

  std::vector<Point> far = {{0, 0}, {5, 0}, {100, 0}, {95, 0}};
  NetworkGraph h = NetworkGraph::from_positions(far, 10.0, 30.0);
  RoleAssignment rb(4);
  rb.set(0, D);
  rb.set(1, E);
  rb.set(2, D);
  rb.set(3, E);
  ChannelAssignment cb = greedy_channels(h, rb, 12);
  CHECK(cb.channel.at(0) == 0);
  CHECK(cb.channel.at(2) == 0);
}

TEST_CASE("single dominator takes channel zero") {
  NetworkGraph star = testgraphs::star(3);
  RoleAssignment ra(4, E);
  ra.set(0, D);
  ChannelAssignment ca = greedy_channels(star, ra, 12);
  REQUIRE(ca.channel.size() == 1);
  CHECK(ca.channel.at(0) == 0);
}

TEST_CASE("greedy_channels needs at least one channel") {
  NetworkGraph k2 = testgraphs::path(2);
  RoleAssignment ra(2);
  ra.set(0, D);
  ra.set(1, E);
  CHECK_THROWS_AS(greedy_channels(k2, ra, 0), Error);
}

TEST_CASE("channel conflicts count interfering same-channel pairs") {
  std::vector<Point> pos = {{0, 0}, {5, 0}, {10, 0}, {15, 0}};
  NetworkGraph g = NetworkGraph::from_positions(pos, 10.0, 30.0);
  ChannelAssignment all_zero;
  all_zero.channel = {{0, 0}, {2, 0}};
  CHECK(channel_conflicts(g, all_zero).count() == 1);

  ChannelAssignment spread;
  spread.channel = {{0, 0}, {2, 1}};
  CHECK(channel_conflicts(g, spread).count() == 0);
}

TEST_CASE("enough channels means zero conflicts") {
  std::mt19937 rng(151);
  for (int s = 0; s < 8; ++s) {
    NetworkGraph g = gen_random_geometric(20, 10.0, 8.0, static_cast<std::uint64_t>(400 + s));
    RoleAssignment ra = st_assign(g, 0);
    ChannelAssignment ca = greedy_channels(g, ra, g.size());
    CHECK(channel_conflicts(g, ca).count() == 0);
  }
}

TEST_CASE("greedy_channels is deterministic") {
  NetworkGraph g = gen_random_geometric(25, 10.0, 8.0, 777);
  RoleAssignment ra = st_assign(g, 0);
  ChannelAssignment a = greedy_channels(g, ra, 3);
  ChannelAssignment b = greedy_channels(g, ra, 3);
  CHECK(a.channel == b.channel);
}

TEST_CASE("nbCH=1 conflicts equal the in-range dominator pairs") {
  NetworkGraph g = gen_random_geometric(15, 10.0, 8.0, 31);
  RoleAssignment ra = st_assign(g, 0);
  ChannelAssignment ca = greedy_channels(g, ra, 1);
  int expected = 0;
  std::vector<NodeId> doms;
  for (NodeId u = 0; u < g.size(); ++u)
    if (ra.at(u) == D) doms.push_back(u);
  for (std::size_t i = 0; i < doms.size(); ++i)
    for (std::size_t j = i + 1; j < doms.size(); ++j)
      if (g.distance(doms[i], doms[j]) <= g.interference_range()) ++expected;
  CHECK(channel_conflicts(g, ca).count() == expected);
}

TEST_CASE("disconnected inputs are rejected") {
  NetworkGraph split = NetworkGraph::from_edges(4, {{0, 1}, {2, 3}});
  CHECK_THROWS_AS(st_assign(split, 0), Error);
  CHECK_THROWS_AS(mis_assign(split), Error);
}
