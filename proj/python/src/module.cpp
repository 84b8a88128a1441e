#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "rwcds/cluster_tree.hpp"
#include "rwcds/experiment.hpp"
#include "rwcds/flow_lp.hpp"
#include "rwcds/heuristics.hpp"
#include "rwcds/optimizer.hpp"
#include "rwcds/protocol.hpp"
#include "rwcds/text_io.hpp"

namespace py = pybind11;
using namespace rwcds;

PYBIND11_MODULE(_core, m) {
  m.doc() = "r-WCDS role assignment for multi-channel wireless mesh networks";

  py::register_exception<Error>(m, "RwcdsError");

  py::class_<Point>(m, "Point")
      .def(py::init<>())
      .def(py::init([](double x, double y) { return Point{x, y}; }))
      .def_readwrite("x", &Point::x)
      .def_readwrite("y", &Point::y);

  py::class_<NetworkGraph>(m, "NetworkGraph")
      .def_static("from_positions", &NetworkGraph::from_positions, py::arg("positions"),
                  py::arg("radio_range"), py::arg("interference_range"))
      .def_static("from_edges", &NetworkGraph::from_edges, py::arg("n"), py::arg("edges"),
                  py::arg("positions") = std::vector<Point>{}, py::arg("radio_range") = 1.0,
                  py::arg("interference_range") = 3.0)
      .def_property_readonly("n", &NetworkGraph::size)
      .def("neighbors",
           [](const NetworkGraph& g, NodeId u) {
             auto nb = g.neighbors(u);
             return std::vector<NodeId>(nb.begin(), nb.end());
           })
      .def("degree", &NetworkGraph::degree)
      .def("has_edge", &NetworkGraph::has_edge)
      .def("edges",
           [](const NetworkGraph& g) {
             std::vector<std::pair<NodeId, NodeId>> out;
             for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v);
             return out;
           })
      .def("position", &NetworkGraph::position)
      .def_property_readonly("radio_range", &NetworkGraph::radio_range)
      .def_property_readonly("interference_range", &NetworkGraph::interference_range)
      .def("distance", &NetworkGraph::distance)
      .def("induced_subgraph", &NetworkGraph::induced_subgraph)
      .def("__repr__", [](const NetworkGraph& g) {
        std::ostringstream os;
        os << "NetworkGraph(n=" << g.size() << ", edges=" << g.edges().size() << ")";
        return os.str();
      });

  m.def("gen_grid", &gen_grid, py::arg("rows"), py::arg("cols"), py::arg("radio_range"));
  m.def("gen_random_geometric", &gen_random_geometric, py::arg("n"), py::arg("radio_range"),
        py::arg("target_mean_degree"), py::arg("seed"), py::arg("max_attempts") = 1000);
  m.def("bfs_distances", &bfs_distances);
  m.def("is_connected", &is_connected);

  py::class_<SpanningTree>(m, "SpanningTree")
      .def_readonly("root", &SpanningTree::root)
      .def_readonly("parent", &SpanningTree::parent)
      .def_readonly("depth", &SpanningTree::depth);
  m.def("bfs_tree", &bfs_tree);

  py::enum_<Role>(m, "Role")
      .value("Dominator", Role::Dominator)
      .value("Dominatee", Role::Dominatee);

  py::class_<RoleAssignment>(m, "RoleAssignment")
      .def(py::init<int, Role>(), py::arg("n"), py::arg("fill") = Role::Dominatee)
      .def(py::init<std::vector<Role>>())
      .def("__len__", &RoleAssignment::size)
      .def("__getitem__", &RoleAssignment::at)
      .def("__setitem__", &RoleAssignment::set)
      .def("__eq__", [](const RoleAssignment& a, const RoleAssignment& b) { return a == b; })
      .def("roles", &RoleAssignment::raw)
      .def("dominator_count", &RoleAssignment::dominator_count)
      .def("dominators", [](const RoleAssignment& ra) {
        std::vector<NodeId> out;
        for (NodeId u = 0; u < ra.size(); ++u)
          if (ra.at(u) == Role::Dominator) out.push_back(u);
        return out;
      });

  py::class_<ValidityReport>(m, "ValidityReport")
      .def_readonly("dominated", &ValidityReport::dominated)
      .def_readonly("weakly_connected", &ValidityReport::weakly_connected)
      .def_readonly("undominated_nodes", &ValidityReport::undominated_nodes)
      .def_readonly("component_count", &ValidityReport::component_count)
      .def_property_readonly("valid", &ValidityReport::valid);

  py::class_<StretchReport>(m, "StretchReport")
      .def_readonly("average_stretch", &StretchReport::average_stretch)
      .def_readonly("per_pair", &StretchReport::per_pair)
      .def_readonly("disconnected_pairs", &StretchReport::disconnected_pairs)
      .def_readonly("discarded_nodes", &StretchReport::discarded_nodes);

  m.def("induced_edges", [](const NetworkGraph& g, const RoleAssignment& ra) {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (const Edge& e : induced_edges(g, ra)) out.emplace_back(e.u, e.v);
    return out;
  });
  m.def("validate_rwcds", &validate_rwcds);
  m.def("parity_coloring", &parity_coloring);
  m.def("stretch_factor", &stretch_factor);

  py::enum_<SolStatus>(m, "SolStatus")
      .value("Optimal", SolStatus::Optimal)
      .value("Infeasible", SolStatus::Infeasible);

  py::class_<FlowSolution>(m, "FlowSolution")
      .def_readonly("status", &FlowSolution::status)
      .def_readonly("t_min", &FlowSolution::t_min)
      .def_readonly("pivots", &FlowSolution::pivots)
      .def("traffic", &traffic_value, py::arg("graph"), py::arg("u"), py::arg("v"),
           py::arg("dest"));

  py::class_<ResidualReport>(m, "ResidualReport")
      .def_readonly("link_upper", &ResidualReport::link_upper)
      .def_readonly("link_lower", &ResidualReport::link_lower)
      .def_readonly("conservation", &ResidualReport::conservation)
      .def_readonly("sink_demand", &ResidualReport::sink_demand)
      .def_readonly("node_capacity", &ResidualReport::node_capacity)
      .def("max", &ResidualReport::max);

  m.def("evaluate_tmin", &evaluate_tmin, py::arg("graph"), py::arg("roles"), py::arg("bw") = 1.0);
  m.def("check_flow_solution", &check_flow_solution, py::arg("graph"), py::arg("roles"),
        py::arg("solution"), py::arg("bw") = 1.0);
  m.def("dump_lp_text", [](const NetworkGraph& g, const RoleAssignment& ra, bool with_cuts) {
    LpModel model = build_lp(g, to_role_specs(ra), 1.0, with_cuts);
    std::ostringstream os;
    dump_lp(model, os);
    return os.str();
  }, py::arg("graph"), py::arg("roles"), py::arg("with_cuts") = false);

  py::enum_<BnbStatus>(m, "BnbStatus")
      .value("Optimal", BnbStatus::Optimal)
      .value("Infeasible", BnbStatus::Infeasible)
      .value("BudgetExceeded", BnbStatus::BudgetExceeded);

  py::class_<BnbResult>(m, "BnbResult")
      .def_readonly("status", &BnbResult::status)
      .def_readonly("assignment", &BnbResult::assignment)
      .def_readonly("t_min", &BnbResult::t_min)
      .def_readonly("nodes_explored", &BnbResult::nodes_explored);

  m.def("solve_opt", &solve_opt, py::arg("graph"), py::arg("fixed") = FixedRoles{},
        py::arg("budget") = kDefaultBnbBudget,
        py::arg("warm_start") = std::optional<RoleAssignment>{});
  m.def("enumerate_oracle", &enumerate_oracle, py::arg("graph"), py::arg("fixed") = FixedRoles{});
  m.def("assign_cluster_roles", &assign_cluster_roles, py::arg("subgraph"),
        py::arg("leader_fixed"), py::arg("budget") = kDefaultBnbBudget,
        py::arg("warm_start") = std::optional<RoleAssignment>{});

  py::class_<Cluster>(m, "Cluster")
      .def_readonly("leader", &Cluster::leader)
      .def_readonly("members", &Cluster::members)
      .def_readonly("parent", &Cluster::parent)
      .def_readonly("level", &Cluster::level);

  py::class_<ClusterTree>(m, "ClusterTree")
      .def_readonly("tree", &ClusterTree::tree)
      .def_readonly("radius", &ClusterTree::radius)
      .def_readonly("clusters", &ClusterTree::clusters)
      .def_readonly("leader_of", &ClusterTree::leader_of)
      .def_readonly("home_cluster_of", &ClusterTree::home_cluster_of);

  m.def("build_cluster_tree", &build_cluster_tree_oracle, py::arg("graph"), py::arg("D"));
  m.def("leader_parity_roles", &leader_parity_roles);
  m.def("potatoes", &potatoes, py::arg("graph"), py::arg("D"),
        py::arg("budget") = kDefaultBnbBudget);

  py::class_<ChurnEvent>(m, "ChurnEvent")
      .def(py::init([](double time, NodeId node, bool leave) {
             return ChurnEvent{time, node, leave};
           }),
           py::arg("time"), py::arg("node"), py::arg("leave") = true)
      .def_readwrite("time", &ChurnEvent::time)
      .def_readwrite("node", &ChurnEvent::node)
      .def_readwrite("leave", &ChurnEvent::leave);

  py::class_<ProtocolConfig>(m, "ProtocolConfig")
      .def(py::init<>())
      .def_readwrite("D", &ProtocolConfig::D)
      .def_readwrite("hello_period", &ProtocolConfig::hello_period)
      .def_readwrite("t_dead", &ProtocolConfig::t_dead)
      .def_readwrite("stabilization_periods", &ProtocolConfig::stabilization_periods)
      .def_readwrite("loss", &ProtocolConfig::loss)
      .def_readwrite("seed", &ProtocolConfig::seed)
      .def_readwrite("max_time", &ProtocolConfig::max_time)
      .def_readwrite("cluster_budget", &ProtocolConfig::cluster_budget)
      .def_readwrite("trace_hellos", &ProtocolConfig::trace_hellos)
      .def_readwrite("churn", &ProtocolConfig::churn);

  py::class_<TraceLine>(m, "TraceLine")
      .def_readonly("time", &TraceLine::time)
      .def_readonly("event", &TraceLine::event)
      .def_readonly("node", &TraceLine::node)
      .def_readonly("detail", &TraceLine::detail);

  py::class_<ProtocolResult>(m, "ProtocolResult")
      .def_readonly("converged", &ProtocolResult::converged)
      .def_readonly("convergence_time", &ProtocolResult::convergence_time)
      .def_readonly("roles", &ProtocolResult::roles)
      .def_readonly("parent", &ProtocolResult::parent)
      .def_readonly("leader", &ProtocolResult::leader)
      .def_readonly("clusters", &ProtocolResult::clusters)
      .def_readonly("trace", &ProtocolResult::trace)
      .def_readonly("hellos_sent", &ProtocolResult::hellos_sent)
      .def_readonly("hellos_dropped", &ProtocolResult::hellos_dropped)
      .def("role_assignment", &ProtocolResult::role_assignment);

  m.def("run_protocol", &run_protocol, py::arg("graph"), py::arg("config") = ProtocolConfig{});

  m.def("st_assign", &st_assign, py::arg("graph"), py::arg("root") = 0,
        py::arg("prune") = false);
  py::class_<MisResult>(m, "MisResult")
      .def_readonly("roles", &MisResult::roles)
      .def_readonly("validity", &MisResult::validity);
  m.def("mis_assign", &mis_assign);

  py::class_<ChannelAssignment>(m, "ChannelAssignment")
      .def_readonly("channel", &ChannelAssignment::channel);
  py::class_<ConflictReport>(m, "ConflictReport")
      .def_readonly("pairs", &ConflictReport::pairs)
      .def("count", &ConflictReport::count);
  m.def("greedy_channels", &greedy_channels, py::arg("graph"), py::arg("roles"),
        py::arg("nbch") = 12);
  m.def("channel_conflicts", &channel_conflicts);

  m.def("save_graph", &save_graph_file);
  m.def("load_graph", &load_graph_file);
  m.def("save_roles", &save_roles_file);
  m.def("load_roles", &load_roles_file, py::arg("path"), py::arg("n"));

#ifdef VERSION_INFO
#define RWCDS_STR2(x) #x
#define RWCDS_STR(x) RWCDS_STR2(x)
  m.attr("__version__") = RWCDS_STR(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
