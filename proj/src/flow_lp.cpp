#include "rwcds/flow_lp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>

namespace rwcds {

namespace {

bool fixed(RoleSpec r) { return r != RoleSpec::Free; }
double role_const(RoleSpec r) { return r == RoleSpec::Dominator ? 1.0 : 0.0; }

// Directed-edge bookkeeping shared by the builder and the residual checker.
struct DirIndex {
  std::vector<int> head;  // node the direction points to
  std::vector<int> tail;  // node the traffic leaves
  // per node, list of (dir out of u, dir into u, neighbor)
  std::vector<std::vector<std::array<int, 3>>> incident;

  explicit DirIndex(const NetworkGraph& g) {
    const int ne = static_cast<int>(g.edges().size());
    head.resize(static_cast<std::size_t>(2 * ne));
    tail.resize(static_cast<std::size_t>(2 * ne));
    incident.resize(static_cast<std::size_t>(g.size()));
    for (int e = 0; e < ne; ++e) {
      const Edge& ed = g.edges()[static_cast<std::size_t>(e)];
      tail[static_cast<std::size_t>(2 * e)] = ed.u;
      head[static_cast<std::size_t>(2 * e)] = ed.v;
      tail[static_cast<std::size_t>(2 * e + 1)] = ed.v;
      head[static_cast<std::size_t>(2 * e + 1)] = ed.u;
      incident[static_cast<std::size_t>(ed.u)].push_back({2 * e, 2 * e + 1, ed.v});
      incident[static_cast<std::size_t>(ed.v)].push_back({2 * e + 1, 2 * e, ed.u});
    }
  }
};

}  // namespace

std::vector<RoleSpec> to_role_specs(const RoleAssignment& ra) {
  std::vector<RoleSpec> out(static_cast<std::size_t>(ra.size()));
  for (NodeId u = 0; u < ra.size(); ++u)
    out[static_cast<std::size_t>(u)] =
        ra.at(u) == Role::Dominator ? RoleSpec::Dominator : RoleSpec::Dominatee;
  return out;
}

double ResidualReport::max() const {
  return std::max({link_upper, link_lower, conservation, sink_demand, node_capacity});
}

LpModel build_lp(const NetworkGraph& g, const std::vector<RoleSpec>& roles, double bw,
                 bool with_cuts) {
  if (static_cast<int>(roles.size()) != g.size())
    fail(Errc::PartialAssignment, "role spec does not cover the graph");

  LpModel model;
  model.graph = &g;
  model.roles = roles;
  model.bw = bw;
  model.with_cuts = with_cuts;

  const int n = g.size();
  const int ne = static_cast<int>(g.edges().size());
  LpProblem& lp = model.lp;
  FlowVarMap& vars = model.vars;
  vars.n = n;
  vars.num_dir = 2 * ne;
  vars.traffic_col.assign(static_cast<std::size_t>(2 * ne) * static_cast<std::size_t>(n), -1);
  vars.role_col.assign(static_cast<std::size_t>(n), -1);

  vars.tmin_col = lp.add_col(1.0, -1.0, "Tmin");

  DirIndex dir(g);
  auto edge_active = [&](int e) {
    const Edge& ed = g.edges()[static_cast<std::size_t>(e)];
    RoleSpec ru = roles[static_cast<std::size_t>(ed.u)];
    RoleSpec rv = roles[static_cast<std::size_t>(ed.v)];
    return !(fixed(ru) && fixed(rv) && ru == rv);
  };

  for (int e = 0; e < ne; ++e) {
    if (!edge_active(e)) continue;
    for (int d = 0; d < n; ++d) {
      for (int dd : {2 * e, 2 * e + 1}) {
        if (dir.tail[static_cast<std::size_t>(dd)] == d) continue;  // no traffic to self
        std::string name = "T_" + std::to_string(dir.tail[static_cast<std::size_t>(dd)]) + "_" +
                           std::to_string(dir.head[static_cast<std::size_t>(dd)]) + "_" +
                           std::to_string(d);
        vars.traffic_col[static_cast<std::size_t>(dd) * static_cast<std::size_t>(n) +
                         static_cast<std::size_t>(d)] = lp.add_col(0.0, -1.0, std::move(name));
      }
    }
  }
  for (NodeId u = 0; u < n; ++u) {
    if (!fixed(roles[static_cast<std::size_t>(u)]))
      vars.role_col[static_cast<std::size_t>(u)] =
          lp.add_col(0.0, 1.0, "role_" + std::to_string(u));
  }

  auto add_if_meaningful = [&](LpRow row) {
    if (row.terms.empty()) {
      bool violated = (row.sense == RowSense::Le && 0.0 > row.rhs + 1e-12) ||
                      (row.sense == RowSense::Ge && 0.0 < row.rhs - 1e-12) ||
                      (row.sense == RowSense::Eq && std::abs(row.rhs) > 1e-12);
      if (!violated) return;
    }
    lp.add_row(std::move(row));
  };

  // Link rows: capacity vanishes unless the endpoints take different roles.
  for (int e = 0; e < ne; ++e) {
    if (!edge_active(e)) continue;
    const Edge& ed = g.edges()[static_cast<std::size_t>(e)];
    RoleSpec ru = roles[static_cast<std::size_t>(ed.u)];
    RoleSpec rv = roles[static_cast<std::size_t>(ed.v)];
    double const_sum = (fixed(ru) ? role_const(ru) : 0.0) + (fixed(rv) ? role_const(rv) : 0.0);

    LpRow upper;  // role(u)+role(v) + traffic/BW <= 2
    LpRow lower;  // traffic/BW - role(u) - role(v) <= 0
    upper.family = kFamLinkUpper;
    lower.family = kFamLinkLower;
    upper.sense = RowSense::Le;
    lower.sense = RowSense::Le;
    upper.rhs = 2.0 - const_sum;
    lower.rhs = const_sum;
    for (NodeId w : {ed.u, ed.v}) {
      int rc = vars.role_col[static_cast<std::size_t>(w)];
      if (rc >= 0) {
        upper.terms.emplace_back(rc, 1.0);
        lower.terms.emplace_back(rc, -1.0);
      }
    }
    for (int d = 0; d < n; ++d) {
      for (int dd : {2 * e, 2 * e + 1}) {
        int c = vars.col(dd, d);
        if (c < 0) continue;
        upper.terms.emplace_back(c, 1.0 / bw);
        lower.terms.emplace_back(c, 1.0 / bw);
      }
    }
    add_if_meaningful(std::move(upper));
    add_if_meaningful(std::move(lower));
  }

  // Flow conservation: per node and destination, forwarded = received + T_min.
  for (NodeId u = 0; u < n; ++u) {
    for (int d = 0; d < n; ++d) {
      if (d == u) continue;
      LpRow row;
      row.family = kFamConservation;
      row.sense = RowSense::Eq;
      row.rhs = 0.0;
      for (const auto& inc : dir.incident[static_cast<std::size_t>(u)]) {
        int out_c = vars.col(inc[0], d);
        int in_c = vars.col(inc[1], d);
        if (out_c >= 0) row.terms.emplace_back(out_c, 1.0);
        if (in_c >= 0) row.terms.emplace_back(in_c, -1.0);
      }
      row.terms.emplace_back(vars.tmin_col, -1.0);
      lp.add_row(std::move(row));
    }
  }

  // Each destination receives (n-1) * T_min in total.
  for (NodeId u = 0; u < n; ++u) {
    LpRow row;
    row.family = kFamSinkDemand;
    row.sense = RowSense::Eq;
    row.rhs = 0.0;
    for (const auto& inc : dir.incident[static_cast<std::size_t>(u)]) {
      int in_c = vars.col(inc[1], u);
      if (in_c >= 0) row.terms.emplace_back(in_c, 1.0);
    }
    row.terms.emplace_back(vars.tmin_col, -static_cast<double>(n - 1));
    lp.add_row(std::move(row));
  }

  // Atom capacity: all traffic touching a node shares BW.
  for (NodeId u = 0; u < n; ++u) {
    LpRow row;
    row.family = kFamNodeCapacity;
    row.sense = RowSense::Le;
    row.rhs = bw;
    for (const auto& inc : dir.incident[static_cast<std::size_t>(u)]) {
      for (int d = 0; d < n; ++d) {
        int out_c = vars.col(inc[0], d);
        int in_c = vars.col(inc[1], d);
        if (out_c >= 0) row.terms.emplace_back(out_c, 1.0);
        if (in_c >= 0) row.terms.emplace_back(in_c, 1.0);
      }
    }
    lp.add_row(std::move(row));
  }

  // Optional cuts: every dominator borders a dominatee and reciprocally.
  if (with_cuts) {
    for (NodeId u = 0; u < n; ++u) {
      double cst = 0.0;
      std::vector<std::pair<int, double>> terms;
      auto account = [&](NodeId w) {
        int rc = vars.role_col[static_cast<std::size_t>(w)];
        if (rc >= 0) terms.emplace_back(rc, 1.0);
        else cst += role_const(roles[static_cast<std::size_t>(w)]);
      };
      account(u);
      for (NodeId v : g.neighbors(u)) account(v);

      LpRow low;
      low.family = kFamDominationCut;
      low.sense = RowSense::Ge;
      low.rhs = 1.0 - cst;
      low.terms = terms;
      add_if_meaningful(std::move(low));

      LpRow high;
      high.family = kFamDominationCut;
      high.sense = RowSense::Le;
      high.rhs = static_cast<double>(g.degree(u)) - cst;
      high.terms = std::move(terms);
      add_if_meaningful(std::move(high));
    }
  }

  return model;
}

FlowSolution solve_lp(const LpModel& model, const SimplexOptions& options) {
  LpSolution s = solve_simplex(model.lp, options);
  if (s.status == LpStatus::IterationLimit)
    fail(Errc::NumericalFailure, "simplex pivot budget exhausted");
  if (s.status == LpStatus::Unbounded)
    fail(Errc::NumericalFailure, "unbounded flow model (degenerate input?)");

  FlowSolution out;
  out.n = model.vars.n;
  out.num_dir = model.vars.num_dir;
  out.pivots = s.pivots;
  out.traffic.assign(model.vars.traffic_col.size(), 0.0);
  if (s.status == LpStatus::Infeasible) {
    out.status = SolStatus::Infeasible;
    return out;
  }
  out.status = SolStatus::Optimal;
  out.t_min = s.x[static_cast<std::size_t>(model.vars.tmin_col)];
  for (std::size_t i = 0; i < model.vars.traffic_col.size(); ++i) {
    int c = model.vars.traffic_col[i];
    if (c >= 0) out.traffic[i] = s.x[static_cast<std::size_t>(c)];
  }
  return out;
}

FlowSolution evaluate_tmin(const NetworkGraph& g, const RoleAssignment& ra, double bw) {
  if (g.size() == 1) {
    FlowSolution out;
    out.status = SolStatus::Optimal;
    out.t_min = 0.0;
    out.n = 1;
    return out;  // no flows on a single node
  }
  ValidityReport report = validate_rwcds(g, ra);
  if (!report.valid())
    fail(Errc::InvalidAssignment, "assignment is not a valid r-WCDS (components: " +
                                      std::to_string(report.component_count) + ")");
  LpModel model = build_lp(g, to_role_specs(ra), bw, /*with_cuts=*/false);
  return solve_lp(model);
}

ResidualReport check_flow_solution(const NetworkGraph& g, const RoleAssignment& ra,
                                   const FlowSolution& sol, double bw) {
  ResidualReport rep;
  const int n = g.size();
  if (sol.status != SolStatus::Optimal) return rep;
  DirIndex dir(g);
  auto tv = [&](int dd, int d) { return sol.at(dd, d); };

  const int ne = static_cast<int>(g.edges().size());
  for (int e = 0; e < ne; ++e) {
    const Edge& ed = g.edges()[static_cast<std::size_t>(e)];
    double role_sum = (ra.at(ed.u) == Role::Dominator ? 1.0 : 0.0) +
                      (ra.at(ed.v) == Role::Dominator ? 1.0 : 0.0);
    double t = 0.0;
    for (int d = 0; d < n; ++d) t += tv(2 * e, d) + tv(2 * e + 1, d);
    rep.link_upper = std::max(rep.link_upper, role_sum + t / bw - 2.0);
    rep.link_lower = std::max(rep.link_lower, t / bw - role_sum);
  }

  for (NodeId u = 0; u < n; ++u) {
    for (int d = 0; d < n; ++d) {
      if (d == u) continue;
      double out = 0.0, in = 0.0;
      for (const auto& inc : dir.incident[static_cast<std::size_t>(u)]) {
        out += tv(inc[0], d);
        in += tv(inc[1], d);
      }
      rep.conservation = std::max(rep.conservation, std::abs(out - in - sol.t_min));
    }
    double arriving = 0.0;
    double touching = 0.0;
    for (const auto& inc : dir.incident[static_cast<std::size_t>(u)]) {
      arriving += tv(inc[1], u);
      for (int d = 0; d < n; ++d) touching += tv(inc[0], d) + tv(inc[1], d);
    }
    rep.sink_demand =
        std::max(rep.sink_demand, std::abs(arriving - static_cast<double>(n - 1) * sol.t_min));
    rep.node_capacity = std::max(rep.node_capacity, touching - bw);
  }
  rep.link_upper = std::max(rep.link_upper, 0.0);
  rep.link_lower = std::max(rep.link_lower, 0.0);
  rep.node_capacity = std::max(rep.node_capacity, 0.0);
  return rep;
}

double traffic_value(const NetworkGraph& g, const FlowSolution& sol, NodeId u, NodeId v,
                     NodeId dest) {
  const auto& edges = g.edges();
  Edge key{std::min(u, v), std::max(u, v)};
  auto it = std::lower_bound(edges.begin(), edges.end(), key);
  if (it == edges.end() || !(*it == key)) return 0.0;
  int e = static_cast<int>(it - edges.begin());
  int dd = (u < v) ? 2 * e : 2 * e + 1;
  return sol.at(dd, dest);
}

void dump_lp(const LpModel& model, std::ostream& os) {
  const LpProblem& lp = model.lp;
  auto col_name = [&](int c) {
    if (c < static_cast<int>(lp.col_names.size()) && !lp.col_names[static_cast<std::size_t>(c)].empty())
      return lp.col_names[static_cast<std::size_t>(c)];
    return "x" + std::to_string(c);
  };
  os << "\\ max-min throughput model (BW=" << model.bw << ", cuts="
     << (model.with_cuts ? "on" : "off") << ")\n";
  os << "Maximize\n obj:";
  for (int c = 0; c < lp.num_cols; ++c) {
    double v = lp.objective[static_cast<std::size_t>(c)];
    if (v == 0.0) continue;
    os << (v >= 0 ? " + " : " - ");
    if (std::abs(v) != 1.0) os << std::abs(v) << " ";
    os << col_name(c);
  }
  os << "\nSubject To\n";
  static const char* fam_tag[] = {"linkup", "linklo", "cons", "sink", "cap", "cut"};
  std::vector<int> fam_count(6, 0);
  for (const LpRow& row : lp.rows) {
    int f = row.family >= 0 && row.family < 6 ? row.family : 0;
    os << " " << fam_tag[f] << fam_count[static_cast<std::size_t>(f)]++ << ":";
    for (auto [c, v] : row.terms) {
      os << (v >= 0 ? " + " : " - ");
      if (std::abs(v) != 1.0) os << std::abs(v) << " ";
      os << col_name(c);
    }
    os << (row.sense == RowSense::Le ? " <= " : row.sense == RowSense::Ge ? " >= " : " = ");
    os << row.rhs << "\n";
  }
  os << "Bounds\n";
  for (int c = 0; c < lp.num_cols; ++c) {
    double ub = lp.upper_bound.empty() ? -1.0 : lp.upper_bound[static_cast<std::size_t>(c)];
    if (ub >= 0.0)
      os << " 0 <= " << col_name(c) << " <= " << ub << "\n";
    else
      os << " 0 <= " << col_name(c) << "\n";
  }
  os << "End\n";
}

}  // namespace rwcds
