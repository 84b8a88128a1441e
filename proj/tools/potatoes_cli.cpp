// Command-line front end: topology generation, role assignment, metric
// evaluation, protocol simulation, and full experiment sweeps.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "rwcds/cluster_tree.hpp"
#include "rwcds/experiment.hpp"
#include "rwcds/flow_lp.hpp"
#include "rwcds/heuristics.hpp"
#include "rwcds/optimizer.hpp"
#include "rwcds/protocol.hpp"
#include "rwcds/text_io.hpp"

using namespace rwcds;

namespace {

struct GenArgs {
  std::string grid;
  int n = 0;
  double degree = 10.0;
  double radio = 10.0;
  double interference = 30.0;
  std::uint64_t seed = 0;
  bool seeded = false;
  std::string out;
};

int cmd_gen(const GenArgs& a) {
  NetworkGraph g;
  if (!a.grid.empty()) {
    auto x = a.grid.find('x');
    if (x == std::string::npos) fail(Errc::ConfigError, "--grid expects ROWSxCOLS, e.g. 3x3");
    int rows = std::stoi(a.grid.substr(0, x));
    int cols = std::stoi(a.grid.substr(x + 1));
    g = gen_grid(rows, cols, a.radio);
  } else if (a.n > 0) {
    if (!a.seeded) fail(Errc::ConfigError, "--seed is required for random generation");
    g = gen_random_geometric(a.n, a.radio, a.degree, a.seed);
  } else {
    fail(Errc::ConfigError, "pass --grid ROWSxCOLS or --n COUNT");
  }
  if (a.interference > 0) {
    // Rebuild with the requested interference range.
    std::vector<Point> pos;
    for (NodeId u = 0; u < g.size(); ++u) pos.push_back(g.position(u));
    g = NetworkGraph::from_positions(std::move(pos), g.radio_range(), a.interference);
  }
  save_graph_file(g, a.out);
  std::cout << "wrote " << a.out << ": n=" << g.size() << " edges=" << g.edges().size() << "\n";
  return 0;
}

struct AssignArgs {
  std::string alg = "potatoes";
  std::string graph;
  std::string out;
  int D = 2;
  long budget = kDefaultBnbBudget;
  bool prune = false;
  bool eval = false;
};

int cmd_assign(const AssignArgs& a) {
  NetworkGraph g = load_graph_file(a.graph);
  RoleAssignment ra;
  std::string status = "ok";
  if (a.alg == "st") {
    ra = st_assign(g, 0, a.prune);
  } else if (a.alg == "mis") {
    ra = mis_assign(g).roles;
  } else if (a.alg == "potatoes") {
    ra = potatoes(g, a.D, a.budget);
  } else if (a.alg == "opt") {
    BnbResult res = solve_opt(g, {}, a.budget);
    if (res.assignment.empty()) fail(Errc::InfeasibleFixed, "no valid assignment found");
    if (res.status == BnbStatus::BudgetExceeded) status = "budget_exceeded";
    ra = res.assignment;
  } else {
    fail(Errc::ConfigError, "unknown algorithm " + a.alg + " (st|mis|potatoes|opt)");
  }
  save_roles_file(ra, a.out);
  ValidityReport rep = validate_rwcds(g, ra);
  std::cout << "algorithm=" << a.alg << " status=" << status << " valid=" << rep.valid()
            << " dominators=" << ra.dominator_count() << "\n";
  if (a.eval && rep.valid())
    std::cout << "t_min=" << evaluate_tmin(g, ra).t_min << "\n";
  return rep.valid() ? 0 : 3;
}

struct EvalArgs {
  std::string graph;
  std::string roles;
  int nbch = 12;
  std::string lp_dump;
};

int cmd_eval(const EvalArgs& a) {
  NetworkGraph g = load_graph_file(a.graph);
  RoleAssignment ra = load_roles_file(a.roles, g.size());
  ValidityReport rep = validate_rwcds(g, ra);
  std::cout << "valid=" << rep.valid() << " dominated=" << rep.dominated
            << " weakly_connected=" << rep.weakly_connected
            << " components=" << rep.component_count
            << " dominators=" << ra.dominator_count() << "\n";
  StretchReport stretch = stretch_factor(g, ra);
  std::cout << "avg_stretch=" << stretch.average_stretch
            << " disconnected_pairs=" << stretch.disconnected_pairs
            << " discarded=" << stretch.discarded_nodes.size() << "\n";
  if (!a.lp_dump.empty()) {
    LpModel model = build_lp(g, to_role_specs(ra), 1.0, false);
    std::ofstream os(a.lp_dump);
    if (!os) fail(Errc::IoError, "cannot write " + a.lp_dump);
    dump_lp(model, os);
    std::cout << "lp model written to " << a.lp_dump << "\n";
  }
  if (rep.valid()) {
    FlowSolution sol = evaluate_tmin(g, ra);
    ResidualReport resid = check_flow_solution(g, ra, sol);
    std::cout << "t_min=" << sol.t_min << " max_residual=" << resid.max() << "\n";
    ChannelAssignment ca = greedy_channels(g, ra, a.nbch);
    std::cout << "channels_used=" << a.nbch
              << " conflicts=" << channel_conflicts(g, ca).count() << "\n";
  }
  return 0;
}

struct SimArgs {
  std::string graph;
  int D = 2;
  double hello = 1.0;
  double t_dead = -1.0;
  int stabilization = 3;
  double loss = 0.0;
  std::uint64_t seed = 0;
  bool seeded = false;
  double max_time = 200.0;
  long budget = 2000;
  std::string trace_out;
  std::string clusters_out;
  std::string roles_out;
  bool trace_hellos = false;
};

int cmd_simulate(const SimArgs& a) {
  if (!a.seeded) fail(Errc::ConfigError, "--seed is required for simulation");
  NetworkGraph g = load_graph_file(a.graph);
  ProtocolConfig cfg;
  cfg.D = a.D;
  cfg.hello_period = a.hello;
  cfg.t_dead = a.t_dead;
  cfg.stabilization_periods = a.stabilization;
  cfg.loss = a.loss;
  cfg.seed = a.seed;
  cfg.max_time = a.max_time;
  cfg.cluster_budget = a.budget;
  cfg.trace_hellos = a.trace_hellos;
  ProtocolResult res = run_protocol(g, cfg);
  std::cout << "converged=" << res.converged;
  if (res.converged) std::cout << " time=" << res.convergence_time;
  std::cout << " hellos=" << res.hellos_sent << " dropped=" << res.hellos_dropped << "\n";
  if (!a.trace_out.empty()) {
    std::ofstream os(a.trace_out);
    if (!os) fail(Errc::IoError, "cannot write " + a.trace_out);
    dump_trace(res.trace, os);
  }
  if (!a.clusters_out.empty()) {
    std::ofstream os(a.clusters_out);
    if (!os) fail(Errc::IoError, "cannot write " + a.clusters_out);
    save_clusters(res.clusters, os);
  }
  if (!a.roles_out.empty() && res.converged) save_roles_file(res.role_assignment(), a.roles_out);
  return res.converged ? 0 : 4;
}

struct SweepArgs {
  std::string config;
  std::string out_csv;
  std::string out_plot;
  std::vector<std::string> overrides;
  bool timing = false;
};

int cmd_sweep(const SweepArgs& a) {
  ExperimentConfig cfg;
  if (!a.config.empty()) cfg = ExperimentConfig::from_map(parse_config_file(a.config));
  for (const std::string& kv : a.overrides) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) fail(Errc::ConfigError, "--set expects key=value");
    cfg.apply(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (!a.out_csv.empty()) cfg.out_csv = a.out_csv;
  if (!a.out_plot.empty()) cfg.out_plot = a.out_plot;
  if (a.timing) cfg.with_timing = true;

  MetricsTable table = run_experiment(cfg);
  if (!cfg.out_csv.empty()) {
    emit_csv(table, cfg.out_csv, cfg.with_timing);
    std::cout << "csv written to " << cfg.out_csv << "\n";
  }
  if (!cfg.out_plot.empty()) {
    emit_plot_data(table, cfg.out_plot);
    std::cout << "plot data written to " << cfg.out_plot << "\n";
  }
  for (const Aggregate& agg : table.aggregates) {
    std::cout << agg.algorithm << " " << agg.topology << ": rows=" << agg.rows
              << " valid=" << agg.valid_rows << " t_min=" << agg.t_min_mean << "+-" << agg.t_min_ci
              << " stretch=" << agg.stretch_mean << "+-" << agg.stretch_ci << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"r-WCDS role assignment toolkit for multi-channel wireless mesh"};
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* cgen = app.add_subcommand("gen", "generate a topology file");
  cgen->add_option("--grid", gen.grid, "grid dimensions ROWSxCOLS");
  cgen->add_option("--n", gen.n, "random geometric node count");
  cgen->add_option("--degree", gen.degree, "target mean degree (random)");
  cgen->add_option("--radio", gen.radio, "radio range");
  cgen->add_option("--interference", gen.interference, "interference range");
  cgen->add_option("--seed", gen.seed, "generator seed")->each([&gen](const std::string&) {
    gen.seeded = true;
  });
  cgen->add_option("-o,--out", gen.out, "output graph file")->required();

  AssignArgs assign;
  CLI::App* cassign = app.add_subcommand("assign", "compute a role assignment");
  cassign->add_option("--alg", assign.alg, "st|mis|potatoes|opt")->required();
  cassign->add_option("-g,--graph", assign.graph, "input graph file")->required();
  cassign->add_option("-o,--out", assign.out, "output roles file")->required();
  cassign->add_option("--D", assign.D, "cluster radius (potatoes)");
  cassign->add_option("--budget", assign.budget, "solver work budget");
  cassign->add_flag("--prune", assign.prune, "greedy pruning for st");
  cassign->add_flag("--eval", assign.eval, "also report t_min");

  EvalArgs eval;
  CLI::App* ceval = app.add_subcommand("eval", "metrics for a graph + roles file");
  ceval->add_option("-g,--graph", eval.graph, "input graph file")->required();
  ceval->add_option("-r,--roles", eval.roles, "input roles file")->required();
  ceval->add_option("--nbch", eval.nbch, "number of channels");
  ceval->add_option("--lp-dump", eval.lp_dump, "write the LP model text here");

  SimArgs sim;
  CLI::App* csim = app.add_subcommand("simulate", "run the hello-message protocol");
  csim->add_option("-g,--graph", sim.graph, "input graph file")->required();
  csim->add_option("--D", sim.D, "cluster radius");
  csim->add_option("--hello", sim.hello, "hello period H");
  csim->add_option("--t-dead", sim.t_dead, "dead interval (default 3.5 H)");
  csim->add_option("--stabilization", sim.stabilization, "quiet periods before a solve");
  csim->add_option("--loss", sim.loss, "hello loss probability");
  csim->add_option("--seed", sim.seed, "simulation seed")->each([&sim](const std::string&) {
    sim.seeded = true;
  });
  csim->add_option("--max-time", sim.max_time, "simulation horizon");
  csim->add_option("--budget", sim.budget, "per-cluster solver budget");
  csim->add_option("--trace", sim.trace_out, "trace output file");
  csim->add_option("--clusters", sim.clusters_out, "cluster dump output file");
  csim->add_option("--roles", sim.roles_out, "final roles output file");
  csim->add_flag("--trace-hellos", sim.trace_hellos, "include every hello in the trace");

  SweepArgs sweep;
  CLI::App* csweep = app.add_subcommand("sweep", "run a full experiment from a config file");
  csweep->add_option("-c,--config", sweep.config, "key = value config file");
  csweep->add_option("-o,--out", sweep.out_csv, "CSV output path");
  csweep->add_option("--plot", sweep.out_plot, "plot data output path");
  csweep->add_option("--set", sweep.overrides, "override config entries (key=value)");
  csweep->add_flag("--timing", sweep.timing, "append wall-clock column to the CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cgen->parsed()) return cmd_gen(gen);
    if (cassign->parsed()) return cmd_assign(assign);
    if (ceval->parsed()) return cmd_eval(eval);
    if (csim->parsed()) return cmd_simulate(sim);
    if (csweep->parsed()) return cmd_sweep(sweep);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
