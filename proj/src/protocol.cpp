#include "rwcds/protocol.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <queue>
#include <random>
#include <sstream>
#include <tuple>

namespace rwcds {

namespace {

double unit_real(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

bool fresh(const NeighborRecord& rec, double now, double t_dead) {
  return now - rec.last_heard <= t_dead;
}

bool root_usable(const NodeState& s, NodeId root, double now) {
  auto it = s.dead_roots.find(root);
  return it == s.dead_roots.end() || now >= it->second;
}

// Election + spanning tree + leader derivation from the neighbor table.
void recompute(NodeState& s, double now, const ProtocolConfig& cfg) {
  const double t_dead = cfg.dead_interval();

  // Root liveness: the sequence number must keep advancing.
  if (s.root >= 0 && s.root != s.id && now - s.seq_last_advanced > t_dead) {
#ifdef RWCDS_PROTO_DEBUG
    std::fprintf(stderr, "t=%.2f node %d declares root %d dead (last_adv=%.2f seq=%llu)\n", now,
                 s.id, s.root, s.seq_last_advanced, (unsigned long long)s.seq_nb);
#endif
    s.dead_roots[s.root] = now + 3.0 * t_dead;  // expiry heals a spurious loss streak
  }

  NodeId best = s.id;
  for (const auto& [v, rec] : s.nbr) {
    (void)v;
    if (!fresh(rec, now, t_dead)) continue;
    if (rec.min_id >= 0 && rec.min_id < best && root_usable(s, rec.min_id, now)) best = rec.min_id;
  }

  if (best == s.id) {
    if (s.root != s.id) {
      s.root = s.id;
      s.seq_nb = s.own_seq;
      s.seq_last_advanced = now;
    }
    s.distance = 0;
    s.parent = -1;
  } else {
    std::uint64_t max_seq = 0;
    for (const auto& [v, rec] : s.nbr) {
      (void)v;
      if (fresh(rec, now, t_dead) && rec.min_id == best) max_seq = std::max(max_seq, rec.seq_nb);
    }
    // One period of grace keeps the pool usable across isolated losses; a
    // genuinely stale echo (seq lagging further) cannot update the distance.
    // The established parent stays in the running while it keeps hello-ing at
    // all, so a short loss streak cannot evict it and churn the tree.
    const std::uint64_t floor_seq = max_seq > 0 ? max_seq - 1 : 0;
    NodeId pick = -1;
    int pick_dist = 0;
    auto consider = [&](NodeId v, const NeighborRecord& rec) {
      if (pick < 0 || std::pair(rec.distance, v) < std::pair(pick_dist, pick)) {
        pick = v;
        pick_dist = rec.distance;
      }
    };
    for (const auto& [v, rec] : s.nbr) {
      if (!fresh(rec, now, t_dead) || rec.min_id != best || rec.seq_nb < floor_seq) continue;
      consider(v, rec);
    }
    if (s.parent >= 0) {
      auto it = s.nbr.find(s.parent);
      if (it != s.nbr.end() && fresh(it->second, now, t_dead) && it->second.min_id == best)
        consider(s.parent, it->second);
    }
    if (pick >= 0) {
      if (s.root != best) {
        s.seq_last_advanced = now;
        s.seq_nb = max_seq;
      } else if (max_seq > s.seq_nb) {
        s.seq_last_advanced = now;
        s.seq_nb = max_seq;
      }
      s.root = best;
      s.parent = pick;
      s.distance = pick_dist + 1;
    }
  }

  // Leader: a node at a depth multiple of D owning at least one tree child,
  // plus the root itself. Everyone else points at the parent's leader.
  bool has_child = false;
  for (const auto& [v, rec] : s.nbr) {
    if (fresh(rec, now, t_dead) && rec.parent == s.id) {
      (void)v;
      has_child = true;
      break;
    }
  }
  bool was_leader = s.is_leader;
  NodeId old_leader = s.leader;
  if (s.root == s.id) {
    s.is_leader = true;
    s.leader = s.id;
    s.leader_level = 0;
  } else if (s.distance % cfg.D == 0 && has_child) {
    s.is_leader = true;
    s.leader = s.id;
    auto it = s.nbr.find(s.parent);
    s.leader_level =
        (it != s.nbr.end() && it->second.leader_level >= 0) ? it->second.leader_level + 1 : -1;
  } else {
    s.is_leader = false;
    auto it = s.nbr.find(s.parent);
    s.leader = it != s.nbr.end() ? it->second.leader : -1;
    s.leader_level = it != s.nbr.end() ? it->second.leader_level : -1;
  }
  if (s.is_leader && s.leader_level >= 0)
    s.assigned_role = static_cast<int>(leader_parity_role(cfg.D, s.leader_level));
  if (!s.is_leader && was_leader) {
    s.solution.clear();
    s.solved_fingerprint.clear();
    s.view_fingerprint.clear();
    s.solve_cache.clear();
  }
  if (s.leader != old_leader) {
    s.stored_payload.clear();
    s.stored_payload_leader = -1;
  }
}

}  // namespace

Role leader_parity_role(int D, int level) {
  if (D % 2 == 0) return Role::Dominator;
  return level % 2 == 0 ? Role::Dominator : Role::Dominatee;
}

void handle_hello(NodeState& s, const HelloMessage& m, double now, const ProtocolConfig& cfg) {
  NeighborRecord rec;
  rec.last_heard = now;
  rec.min_id = m.min_id;
  rec.distance = m.distance;
  rec.seq_nb = m.seq_nb;
  rec.parent = m.parent;
  rec.leader = m.leader;
  rec.leader_level = m.leader_level;
  rec.own_role = m.own_role;
  rec.neighbors = m.neighbors;
  rec.topo = m.topology;  // flush-and-replace of the sender's rows
  s.nbr[m.sender] = std::move(rec);

  recompute(s, now, cfg);

  // Role payload travels along tree paths inside one cluster.
  if (m.payload_leader >= 0 && !s.is_leader && m.payload_leader == s.leader) {
    s.stored_payload = m.role_payload;
    s.stored_payload_leader = m.payload_leader;
    for (const RoleEntry& e : m.role_payload)
      if (e.node == s.id) s.assigned_role = e.role;
  }
}

RoleAssignment ProtocolResult::role_assignment() const {
  std::vector<Role> out;
  out.reserve(roles.size());
  for (int r : roles) {
    if (r < 0) fail(Errc::InvalidAssignment, "protocol left nodes without a role");
    out.push_back(static_cast<Role>(r));
  }
  return RoleAssignment(std::move(out));
}

void dump_trace(const std::vector<TraceLine>& trace, std::ostream& os) {
  for (const TraceLine& t : trace)
    os << t.time << " " << t.event << " " << t.node << " " << t.detail << "\n";
}

namespace {

struct ConvergenceTarget {
  std::vector<NodeId> parent;
  std::vector<NodeId> leader;
  std::vector<int> role;
  std::vector<NodeId> root;
};

ConvergenceTarget compute_target(const NetworkGraph& g, const std::vector<char>& alive,
                                 const ProtocolConfig& cfg) {
  const int n = g.size();
  ConvergenceTarget t;
  t.parent.assign(static_cast<std::size_t>(n), -1);
  t.leader.assign(static_cast<std::size_t>(n), -1);
  t.role.assign(static_cast<std::size_t>(n), -1);
  t.root.assign(static_cast<std::size_t>(n), -1);

  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (NodeId src = 0; src < n; ++src) {
    if (!alive[static_cast<std::size_t>(src)] || seen[static_cast<std::size_t>(src)]) continue;
    // Collect src's live component.
    std::vector<NodeId> comp;
    std::vector<NodeId> stack{src};
    seen[static_cast<std::size_t>(src)] = 1;
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (NodeId v : g.neighbors(u)) {
        if (alive[static_cast<std::size_t>(v)] && !seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = 1;
          stack.push_back(v);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    NetworkGraph sub = g.induced_subgraph(comp);

    if (sub.size() == 1) {
      t.leader[static_cast<std::size_t>(comp[0])] = comp[0];
      t.role[static_cast<std::size_t>(comp[0])] = static_cast<int>(Role::Dominator);
      t.root[static_cast<std::size_t>(comp[0])] = comp[0];
      continue;
    }

    ClusterTree ct = build_cluster_tree_oracle(sub, cfg.D);
    FixedRoles fixed = leader_parity_roles(ct);
    RoleAssignment roles(sub.size());
    for (int ci = 0; ci < static_cast<int>(ct.clusters.size()); ++ci) {
      ClusterProblem p = make_cluster_problem(sub, ct, ci, fixed);
      RoleAssignment local = assign_cluster_roles(p.subgraph, p.fixed, cfg.cluster_budget,
                                                  p.warm_start);
      for (std::size_t i = 0; i < p.members.size(); ++i) {
        NodeId lu = p.members[i];
        if (ct.home_cluster_of[static_cast<std::size_t>(lu)] == ci)
          roles.set(lu, local.at(static_cast<NodeId>(i)));
      }
    }
    for (NodeId lu = 0; lu < sub.size(); ++lu) {
      NodeId gu = comp[static_cast<std::size_t>(lu)];
      NodeId lp = ct.tree.parent[static_cast<std::size_t>(lu)];
      t.parent[static_cast<std::size_t>(gu)] = lp < 0 ? -1 : comp[static_cast<std::size_t>(lp)];
      NodeId ll = ct.leader_of[static_cast<std::size_t>(lu)];
      t.leader[static_cast<std::size_t>(gu)] = comp[static_cast<std::size_t>(ll)];
      t.role[static_cast<std::size_t>(gu)] = static_cast<int>(roles.at(lu));
      t.root[static_cast<std::size_t>(gu)] = comp[0];
    }
  }
  return t;
}

struct Event {
  double time = 0.0;
  long seq = 0;
  int kind = 0;  // 0 = hello tick, 1 = churn
  NodeId node = -1;
  int churn_index = -1;
  bool operator>(const Event& o) const { return std::tie(time, seq) > std::tie(o.time, o.seq); }
};

class Simulator {
public:
  Simulator(const NetworkGraph& g, const ProtocolConfig& cfg)
      : g_(g), cfg_(cfg), jitter_rng_(cfg.seed), loss_rng_(cfg.seed ^ 0x9e3779b97f4a7c15ULL) {
    states_.resize(static_cast<std::size_t>(g.size()));
    alive_.assign(static_cast<std::size_t>(g.size()), 1);
    for (NodeId u = 0; u < g.size(); ++u) {
      states_[static_cast<std::size_t>(u)].id = u;
      states_[static_cast<std::size_t>(u)].root = u;
    }
    for (const ChurnEvent& c : cfg.churn) {
      if (!c.leave) alive_[static_cast<std::size_t>(c.node)] = 0;  // joins start dead
    }
  }

  ProtocolResult run() {
    for (NodeId u = 0; u < g_.size(); ++u) {
      if (alive_[static_cast<std::size_t>(u)])
        schedule_hello(u, first_jitter());
      else
        states_[static_cast<std::size_t>(u)].alive = false;
    }
    for (int i = 0; i < static_cast<int>(cfg_.churn.size()); ++i)
      queue_.push({cfg_.churn[static_cast<std::size_t>(i)].time, next_seq_++, 1, cfg_.churn[static_cast<std::size_t>(i)].node, i});
    pending_churn_ = static_cast<int>(cfg_.churn.size());

    target_ = compute_target(g_, alive_after_churn(), cfg_);

    while (!queue_.empty()) {
      Event ev = queue_.top();
      queue_.pop();
      if (ev.time > cfg_.max_time) break;
      now_ = ev.time;
      if (ev.kind == 1) {
        apply_churn(cfg_.churn[static_cast<std::size_t>(ev.churn_index)]);
        continue;
      }
      if (!alive_[static_cast<std::size_t>(ev.node)]) continue;
      hello_tick(ev.node);
      if (pending_churn_ == 0 && check_converged()) {
        result_.converged = true;
        result_.convergence_time = now_;
        trace(now_, "converged", -1, "");
        break;
      }
    }
    finalize();
    return std::move(result_);
  }

private:
  const NetworkGraph& g_;
  ProtocolConfig cfg_;
  std::vector<NodeState> states_;
  std::vector<char> alive_;
  std::priority_queue<Event, std::vector<Event>, std::greater<Event>> queue_;
  long next_seq_ = 0;
  double now_ = 0.0;
  std::mt19937_64 jitter_rng_;
  std::mt19937_64 loss_rng_;
  ConvergenceTarget target_;
  ProtocolResult result_;
  int pending_churn_ = 0;

  double first_jitter() { return unit_real(jitter_rng_) * 0.1 * cfg_.hello_period; }

  std::vector<char> alive_after_churn() {
    std::vector<char> final_alive = alive_;
    for (const ChurnEvent& c : cfg_.churn)
      final_alive[static_cast<std::size_t>(c.node)] = c.leave ? 0 : 1;
    return final_alive;
  }

  void schedule_hello(NodeId u, double at) { queue_.push({at, next_seq_++, 0, u, -1}); }

  void trace(double t, const char* event, NodeId node, std::string detail) {
    result_.trace.push_back({t, event, node, std::move(detail)});
  }

  void apply_churn(const ChurnEvent& c) {
    --pending_churn_;
    alive_[static_cast<std::size_t>(c.node)] = c.leave ? 0 : 1;
    states_[static_cast<std::size_t>(c.node)].alive = !c.leave;
    if (!c.leave) {
      NodeState fresh_state;
      fresh_state.id = c.node;
      fresh_state.root = c.node;
      states_[static_cast<std::size_t>(c.node)] = std::move(fresh_state);
      schedule_hello(c.node, now_ + first_jitter());
    }
    trace(now_, c.leave ? "leave" : "join", c.node, "");
  }

  // Rows visible to u from its current tree children. Topology content uses
  // a wider horizon than the election: one lost-hello streak must not flap
  // the leaders' views and reset their stabilization clocks.
  double row_horizon() const { return 2.0 * cfg_.dead_interval(); }

  std::vector<TopoRow> collect_rows(const NodeState& s) {
    std::vector<TopoRow> rows;
    for (const auto& [v, rec] : s.nbr) {
      (void)v;
      if (!fresh(rec, now_, row_horizon()) || rec.parent != s.id) continue;
      rows.insert(rows.end(), rec.topo.begin(), rec.topo.end());
    }
    return rows;
  }

  TopoRow own_row(const NodeState& s) {
    TopoRow row;
    row.node = s.id;
    row.leader = s.leader;
    row.parent = s.parent;
    row.role = s.assigned_role;
    for (const auto& [v, rec] : s.nbr)
      if (fresh(rec, now_, row_horizon())) row.neighbors.push_back(v);
    return row;
  }

  // Leader-side cluster view and solve; returns true when the view changed.
  void leader_maintenance(NodeState& s, const std::vector<TopoRow>& rows) {
    if (!s.is_leader || s.leader_level < 0) return;

    // Membership: plain rows pointing at this leader plus direct child
    // leaders (their fragments were already cut off at themselves).
    std::map<NodeId, const TopoRow*> row_of;
    for (const TopoRow& r : rows) {
      if (r.leader == s.id || (r.leader == r.node && r.node != s.id)) row_of[r.node] = &r;
    }
    std::vector<NodeId> members{s.id};
    for (const auto& [node, r] : row_of) {
      (void)r;
      members.push_back(node);
    }
    std::sort(members.begin(), members.end());

    std::ostringstream fp;
    fp << cfg_.D << ";" << s.leader_level << ";";
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId m : members) {
      fp << m;
      if (row_of.count(m) && row_of[m]->leader == m) fp << "L";
      fp << ",";
      const std::vector<NodeId>* nbrs = nullptr;
      std::vector<NodeId> self_nbrs;
      if (m == s.id) {
        for (const auto& [v, rec] : s.nbr)
          if (fresh(rec, now_, row_horizon())) self_nbrs.push_back(v);
        nbrs = &self_nbrs;
      } else {
        nbrs = &row_of[m]->neighbors;
      }
      for (NodeId w : *nbrs) {
        if (w > m && std::binary_search(members.begin(), members.end(), w))
          edges.emplace_back(m, w);
        else if (w < m && std::binary_search(members.begin(), members.end(), w))
          edges.emplace_back(w, m);
      }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    fp << "|";
    for (auto [a, b] : edges) fp << a << "-" << b << ",";
    std::string fingerprint = fp.str();

    if (fingerprint != s.view_fingerprint) {
      s.view_fingerprint = fingerprint;
      s.view_last_changed = now_;
      return;
    }
    if (now_ - s.view_last_changed < cfg_.stabilization_periods * cfg_.hello_period) return;
    if (fingerprint == s.solved_fingerprint) return;
    if (auto hit = s.solve_cache.find(fingerprint); hit != s.solve_cache.end()) {
      s.solution = hit->second;
      s.solved_fingerprint = fingerprint;
      for (const RoleEntry& e : s.solution)
        if (e.node == s.id) s.assigned_role = e.role;
      return;
    }

    // Local tree depths via parent chains; bail out on a still-inconsistent
    // view and wait for the next stable fingerprint.
    std::map<NodeId, int> depth;
    depth[s.id] = 0;
    bool ok = true;
    for (NodeId m : members) {
      if (m == s.id) continue;
      std::vector<NodeId> chain;
      NodeId w = m;
      while (w != s.id) {
        auto it = row_of.find(w);
        if (it == row_of.end() || static_cast<int>(chain.size()) > g_.size()) {
          ok = false;
          break;
        }
        chain.push_back(w);
        w = it->second->parent;
        if (w < 0) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
      int d = static_cast<int>(chain.size());
      for (NodeId c : chain) depth[c] = d--;
    }
    if (!ok) return;

    // Build the subgraph from the learned edges, not the real graph: the
    // leader only knows what the rows told it.
    std::vector<std::pair<NodeId, NodeId>> local_edges;
    std::vector<int> local(static_cast<std::size_t>(g_.size()), -1);
    for (std::size_t i = 0; i < members.size(); ++i) local[static_cast<std::size_t>(members[i])] = static_cast<int>(i);
    for (auto [a, b] : edges)
      local_edges.emplace_back(local[static_cast<std::size_t>(a)], local[static_cast<std::size_t>(b)]);
    std::vector<Point> pos;
    pos.reserve(members.size());
    for (NodeId m : members) pos.push_back(g_.position(m));
    NetworkGraph sub =
        NetworkGraph::from_edges(static_cast<int>(members.size()), local_edges, std::move(pos),
                                 g_.radio_range(), g_.interference_range());
    if (!is_connected(sub)) return;

    FixedRoles fixed;
    RoleAssignment warm(static_cast<int>(members.size()));
    for (std::size_t i = 0; i < members.size(); ++i) {
      NodeId m = members[static_cast<std::size_t>(i)];
      int d = depth.count(m) ? depth[m] : 0;
      int global_depth = s.distance + d;
      warm.set(static_cast<NodeId>(i),
               global_depth % 2 == 0 ? Role::Dominator : Role::Dominatee);
      if (m == s.id)
        fixed[static_cast<NodeId>(i)] = leader_parity_role(cfg_.D, s.leader_level);
      else if (row_of[m]->leader == m)
        fixed[static_cast<NodeId>(i)] = leader_parity_role(cfg_.D, s.leader_level + 1);
    }

    try {
      RoleAssignment local_roles =
          assign_cluster_roles(sub, fixed, cfg_.cluster_budget, warm);
      s.solution.clear();
      for (std::size_t i = 0; i < members.size(); ++i)
        s.solution.push_back({members[i], static_cast<int>(local_roles.at(static_cast<NodeId>(i)))});
      s.solved_fingerprint = fingerprint;
      s.solve_cache[fingerprint] = s.solution;
      trace(now_, "cluster_solved", s.id, "members=" + std::to_string(members.size()));
      for (const RoleEntry& e : s.solution)
        if (e.node == s.id) s.assigned_role = e.role;
    } catch (const Error&) {
      // Transient inconsistent view; solved again once it changes.
    }
  }

  void hello_tick(NodeId u) {
    NodeState& s = states_[static_cast<std::size_t>(u)];
    const double t_dead = cfg_.dead_interval();

    // Lazy timer maintenance.
    for (auto it = s.nbr.begin(); it != s.nbr.end();) {
      if (now_ - it->second.last_heard > 3.0 * t_dead)
        it = s.nbr.erase(it);
      else
        ++it;
    }

    auto before = snapshot(s);
    recompute(s, now_, cfg_);
    std::vector<TopoRow> rows = collect_rows(s);
    leader_maintenance(s, rows);
    emit_diffs(before, s);

    if (s.root == s.id) {
      ++s.own_seq;  // only the root advances the stream
      s.seq_nb = s.own_seq;
      s.seq_last_advanced = now_;
    }

    HelloMessage m;
    m.sender = u;
    for (const auto& [v, rec] : s.nbr)
      if (fresh(rec, now_, t_dead)) m.neighbors.push_back(v);
    m.min_id = s.root;
    m.distance = s.distance;
    m.seq_nb = s.seq_nb;
    m.parent = s.parent;
    m.leader = s.leader;
    m.leader_level = s.leader_level;
    m.own_role = s.assigned_role;
    m.topology.push_back(own_row(s));
    if (!s.is_leader)
      m.topology.insert(m.topology.end(), rows.begin(), rows.end());

    if (s.is_leader && !s.solution.empty()) {
      if (payload_wanted(s, rows, s.solution)) {
        m.payload_leader = u;
        m.role_payload = s.solution;
      }
    } else if (!s.is_leader && s.stored_payload_leader >= 0 &&
               s.stored_payload_leader == s.leader) {
      if (payload_wanted(s, rows, s.stored_payload)) {
        m.payload_leader = s.stored_payload_leader;
        m.role_payload = s.stored_payload;
      }
    }

    ++result_.hellos_sent;
    if (cfg_.trace_hellos) trace(now_, "hello", u, "seq=" + std::to_string(m.seq_nb));

    for (NodeId v : g_.neighbors(u)) {
      if (!alive_[static_cast<std::size_t>(v)]) continue;
      if (cfg_.loss > 0.0 && unit_real(loss_rng_) < cfg_.loss) {
        ++result_.hellos_dropped;
        continue;
      }
      NodeState& r = states_[static_cast<std::size_t>(v)];
      auto rb = snapshot(r);
      handle_hello(r, m, now_, cfg_);
      emit_diffs(rb, r);
    }

    schedule_hello(u, now_ + cfg_.hello_period + first_jitter());
  }

  // Keep sending the payload while any fresh same-cluster child has not
  // echoed its assigned role.
  bool payload_wanted(const NodeState& s, const std::vector<TopoRow>& rows,
                      const std::vector<RoleEntry>& payload) {
    const double t_dead = row_horizon();
    std::map<NodeId, int> want;
    for (const RoleEntry& e : payload) want[e.node] = e.role;
    if (s.is_leader) {
      // Ack state climbs back up inside the topology rows.
      for (const RoleEntry& e : payload) {
        if (e.node == s.id) continue;
        bool acked = false;
        for (const TopoRow& r : rows)
          if (r.node == e.node && r.role == e.role) acked = true;
        if (!acked) return true;
      }
      return false;
    }
    for (const auto& [v, rec] : s.nbr) {
      if (!fresh(rec, now_, t_dead) || rec.parent != s.id) continue;
      auto it = want.find(v);
      if (it != want.end() && rec.own_role != it->second) return true;
      // A child with deeper unacked members keeps asking through its own
      // relay; rows tell us.
      for (const TopoRow& r : rec.topo) {
        auto jt = want.find(r.node);
        if (jt != want.end() && r.role != jt->second) return true;
      }
    }
    return false;
  }

  struct Snapshot {
    NodeId root, parent, leader;
    int role;
    bool is_leader;
  };
  Snapshot snapshot(const NodeState& s) {
    return {s.root, s.parent, s.leader, s.assigned_role, s.is_leader};
  }
  void emit_diffs(const Snapshot& b, const NodeState& s) {
    if (b.root != s.root) trace(now_, "root_change", s.id, "root=" + std::to_string(s.root));
    if (b.parent != s.parent)
      trace(now_, "parent_change", s.id,
            "parent=" + std::to_string(s.parent) + " dist=" + std::to_string(s.distance));
    if (b.leader != s.leader || b.is_leader != s.is_leader)
      trace(now_, "leader_change", s.id,
            "leader=" + std::to_string(s.leader) + (s.is_leader ? " self" : ""));
    if (b.role != s.assigned_role)
      trace(now_, "role_set", s.id,
            std::string("role=") + (s.assigned_role == 0 ? "D" : "E"));
  }

  bool check_converged() {
    for (NodeId u = 0; u < g_.size(); ++u) {
      if (!alive_[static_cast<std::size_t>(u)]) continue;
      const NodeState& s = states_[static_cast<std::size_t>(u)];
      if (s.root != target_.root[static_cast<std::size_t>(u)]) return false;
      if (s.parent != target_.parent[static_cast<std::size_t>(u)]) return false;
      if (s.leader != target_.leader[static_cast<std::size_t>(u)]) return false;
      if (s.assigned_role != target_.role[static_cast<std::size_t>(u)]) return false;
    }
    return true;
  }

  void finalize() {
    const int n = g_.size();
    result_.roles.assign(static_cast<std::size_t>(n), -1);
    result_.parent.assign(static_cast<std::size_t>(n), -1);
    result_.leader.assign(static_cast<std::size_t>(n), -1);
    for (NodeId u = 0; u < n; ++u) {
      if (!alive_[static_cast<std::size_t>(u)]) continue;
      const NodeState& s = states_[static_cast<std::size_t>(u)];
      result_.roles[static_cast<std::size_t>(u)] = s.assigned_role;
      result_.parent[static_cast<std::size_t>(u)] = s.parent;
      result_.leader[static_cast<std::size_t>(u)] = s.leader;
    }
    // Reconstruct clusters from the final state for reporting.
    std::map<NodeId, Cluster> by_leader;
    for (NodeId u = 0; u < n; ++u) {
      if (!alive_[static_cast<std::size_t>(u)]) continue;
      const NodeState& s = states_[static_cast<std::size_t>(u)];
      if (s.is_leader) {
        by_leader[u].leader = u;
        by_leader[u].members.push_back(u);
      }
    }
    for (NodeId u = 0; u < n; ++u) {
      if (!alive_[static_cast<std::size_t>(u)]) continue;
      const NodeState& s = states_[static_cast<std::size_t>(u)];
      if (!s.is_leader && s.leader >= 0 && by_leader.count(s.leader))
        by_leader[s.leader].members.push_back(u);
      if (s.is_leader && s.parent >= 0) {
        NodeId up = states_[static_cast<std::size_t>(s.parent)].leader;
        if (by_leader.count(up)) by_leader[up].members.push_back(u);
      }
    }
    for (auto& [L, c] : by_leader) {
      (void)L;
      std::sort(c.members.begin(), c.members.end());
      c.members.erase(std::unique(c.members.begin(), c.members.end()), c.members.end());
      result_.clusters.push_back(std::move(c));
    }
  }
};

}  // namespace

ProtocolResult run_protocol(const NetworkGraph& g, const ProtocolConfig& cfg) {
  Simulator sim(g, cfg);
  return sim.run();
}

}  // namespace rwcds
