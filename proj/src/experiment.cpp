#include "rwcds/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rwcds/cluster_tree.hpp"
#include "rwcds/flow_lp.hpp"
#include "rwcds/heuristics.hpp"
#include "rwcds/optimizer.hpp"
#include "rwcds/protocol.hpp"

namespace rwcds {

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, ',')) {
    auto a = item.find_first_not_of(" \t");
    auto b = item.find_last_not_of(" \t");
    if (a != std::string::npos) out.push_back(item.substr(a, b - a + 1));
  }
  return out;
}

std::string fmt(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

struct Samples {
  std::vector<double> xs;
  void add(double v) {
    if (!std::isnan(v)) xs.push_back(v);
  }
  double mean() const {
    if (xs.empty()) return std::numeric_limits<double>::quiet_NaN();
    double s = 0.0;
    for (double v : xs) s += v;
    return s / static_cast<double>(xs.size());
  }
  double ci95() const {
    if (xs.size() < 2) return 0.0;
    double m = mean();
    double ss = 0.0;
    for (double v : xs) ss += (v - m) * (v - m);
    double sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    return student_t_975(static_cast<int>(xs.size()) - 1) * sd /
           std::sqrt(static_cast<double>(xs.size()));
  }
};

}  // namespace

double student_t_975(int df) {
  static const double table[] = {12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306,
                                 2.262,  2.228, 2.201, 2.179, 2.160, 2.145, 2.131, 2.120,
                                 2.110,  2.101, 2.093, 2.086, 2.080, 2.074, 2.069, 2.064,
                                 2.060,  2.056, 2.052, 2.048, 2.045, 2.042};
  if (df < 1) return 0.0;
  if (df <= 30) return table[df - 1];
  if (df <= 60) return 2.000;
  if (df <= 120) return 1.980;
  return 1.960;
}

void ExperimentConfig::apply(const std::string& key, const std::string& value) {
  auto as_int = [&](const std::string& v) {
    try {
      return std::stol(v);
    } catch (...) {
      fail(Errc::ConfigError, "bad integer for " + key + ": " + v);
    }
  };
  auto as_real = [&](const std::string& v) {
    try {
      return std::stod(v);
    } catch (...) {
      fail(Errc::ConfigError, "bad number for " + key + ": " + v);
    }
  };
  if (key == "topology") {
    if (value != "random" && value != "grid")
      fail(Errc::ConfigError, "topology must be random or grid");
    topology = value;
  } else if (key == "n") {
    sizes.clear();
    for (const auto& v : split_list(value)) sizes.push_back(static_cast<int>(as_int(v)));
  } else if (key == "grid") {
    grids.clear();
    for (const auto& v : split_list(value)) {
      auto x = v.find('x');
      if (x == std::string::npos) fail(Errc::ConfigError, "grid entries look like 3x3");
      grids.emplace_back(static_cast<int>(as_int(v.substr(0, x))),
                         static_cast<int>(as_int(v.substr(x + 1))));
    }
  } else if (key == "degree") {
    degree = as_real(value);
  } else if (key == "radio_range") {
    radio_range = as_real(value);
  } else if (key == "interference_range") {
    interference_range = as_real(value);
  } else if (key == "seeds") {
    seeds.clear();
    for (const auto& v : split_list(value)) seeds.push_back(static_cast<std::uint64_t>(as_int(v)));
  } else if (key == "algorithms") {
    algorithms = split_list(value);
  } else if (key == "D") {
    D = static_cast<int>(as_int(value));
  } else if (key == "nbch") {
    nbch = static_cast<int>(as_int(value));
  } else if (key == "budget") {
    budget = as_int(value);
  } else if (key == "hello_period") {
    hello_period = as_real(value);
  } else if (key == "t_dead") {
    t_dead = as_real(value);
  } else if (key == "stabilization") {
    stabilization = static_cast<int>(as_int(value));
  } else if (key == "loss") {
    loss = as_real(value);
  } else if (key == "sim_time") {
    sim_time = as_real(value);
  } else if (key == "out_csv") {
    out_csv = value;
  } else if (key == "out_plot") {
    out_plot = value;
  } else if (key == "with_timing") {
    with_timing = (value == "1" || value == "true" || value == "yes");
  } else {
    fail(Errc::ConfigError, "unknown config key: " + key);
  }
}

ExperimentConfig ExperimentConfig::from_map(const std::map<std::string, std::string>& kv) {
  ExperimentConfig cfg;
  for (const auto& [k, v] : kv) cfg.apply(k, v);
  if (cfg.seeds.empty()) fail(Errc::ConfigError, "at least one seed is required");
  if (cfg.algorithms.empty()) fail(Errc::ConfigError, "at least one algorithm is required");
  return cfg;
}

namespace {

struct Instance {
  std::string label;
  NetworkGraph graph;
};

std::vector<Instance> make_instances(const ExperimentConfig& cfg, std::uint64_t seed) {
  std::vector<Instance> out;
  if (cfg.topology == "grid") {
    auto dims = cfg.grids.empty() ? std::vector<std::pair<int, int>>{{3, 3}} : cfg.grids;
    for (auto [r, c] : dims) {
      Instance inst;
      inst.label = "grid-" + std::to_string(r) + "x" + std::to_string(c);
      inst.graph = gen_grid(r, c, cfg.radio_range);
      out.push_back(std::move(inst));
    }
  } else {
    for (int n : cfg.sizes) {
      Instance inst;
      inst.label = "random-" + std::to_string(n);
      inst.graph = gen_random_geometric(n, cfg.radio_range, cfg.degree, seed);
      out.push_back(std::move(inst));
    }
  }
  return out;
}

MetricsRow evaluate_row(const ExperimentConfig& cfg, const std::string& alg,
                        const Instance& inst, std::uint64_t seed) {
  MetricsRow row;
  row.algorithm = alg;
  row.topology = inst.label;
  row.n = inst.graph.size();
  row.D = cfg.D;
  row.seed = seed;

  const auto t0 = std::chrono::steady_clock::now();
  try {
    RoleAssignment ra;
    if (alg == "st") {
      ra = st_assign(inst.graph, 0, false);
    } else if (alg == "st-pruned") {
      ra = st_assign(inst.graph, 0, true);
    } else if (alg == "mis") {
      ra = mis_assign(inst.graph).roles;
    } else if (alg == "potatoes") {
      ra = potatoes(inst.graph, cfg.D, cfg.budget);
    } else if (alg == "opt") {
      BnbResult res = solve_opt(inst.graph, {}, cfg.budget);
      if (res.status == BnbStatus::BudgetExceeded) row.status = "budget_exceeded";
      if (res.assignment.empty()) fail(Errc::InfeasibleFixed, "no incumbent");
      ra = res.assignment;
    } else if (alg == "proto") {
      ProtocolConfig pc;
      pc.D = cfg.D;
      pc.hello_period = cfg.hello_period;
      pc.t_dead = cfg.t_dead;
      pc.stabilization_periods = cfg.stabilization;
      pc.loss = cfg.loss;
      pc.seed = seed;
      pc.max_time = cfg.sim_time;
      pc.cluster_budget = cfg.budget;
      ProtocolResult res = run_protocol(inst.graph, pc);
      if (!res.converged) {
        row.status = "unconverged";
        row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return row;
      }
      row.convergence_time = res.convergence_time;
      ra = res.role_assignment();
    } else {
      fail(Errc::ConfigError, "unknown algorithm: " + alg);
    }

    ValidityReport rep = validate_rwcds(inst.graph, ra);
    row.valid = rep.valid();
    row.dominator_count = ra.dominator_count();
    StretchReport stretch = stretch_factor(inst.graph, ra);
    row.avg_stretch = stretch.average_stretch;
    row.disconnected_pairs = stretch.disconnected_pairs;
    if (row.valid) {
      row.t_min = evaluate_tmin(inst.graph, ra).t_min;
      ChannelAssignment ca = greedy_channels(inst.graph, ra, cfg.nbch);
      row.channel_conflicts = channel_conflicts(inst.graph, ca).count();
    }
  } catch (const Error& e) {
    row.status = std::string("error:") + errc_name(e.code());
  }
  row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

}  // namespace

MetricsTable run_experiment(const ExperimentConfig& cfg) {
  MetricsTable table;
  for (std::uint64_t seed : cfg.seeds) {
    std::vector<Instance> instances = make_instances(cfg, seed);
    for (const Instance& inst : instances)
      for (const std::string& alg : cfg.algorithms)
        table.rows.push_back(evaluate_row(cfg, alg, inst, seed));
  }

  // Aggregate per (algorithm, topology) in first-seen order.
  std::vector<std::pair<std::string, std::string>> keys;
  for (const MetricsRow& r : table.rows) {
    auto key = std::make_pair(r.algorithm, r.topology);
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
  }
  for (const auto& [alg, topo] : keys) {
    Aggregate agg;
    agg.algorithm = alg;
    agg.topology = topo;
    Samples tmin, stretch, doms, conv;
    for (const MetricsRow& r : table.rows) {
      if (r.algorithm != alg || r.topology != topo) continue;
      ++agg.rows;
      agg.n = r.n;
      if (r.valid) ++agg.valid_rows;
      tmin.add(r.t_min);
      stretch.add(r.avg_stretch);
      if (r.dominator_count >= 0) doms.add(r.dominator_count);
      conv.add(r.convergence_time);
    }
    agg.t_min_mean = tmin.mean();
    agg.t_min_ci = tmin.ci95();
    agg.stretch_mean = stretch.mean();
    agg.stretch_ci = stretch.ci95();
    agg.dominators_mean = doms.mean();
    agg.dominators_ci = doms.ci95();
    agg.convergence_mean = conv.mean();
    agg.convergence_ci = conv.ci95();
    table.aggregates.push_back(std::move(agg));
  }
  return table;
}

void emit_csv(const MetricsTable& table, const std::string& path, bool with_timing) {
  if (table.rows.empty()) fail(Errc::EmptyTable, "no rows to emit");
  std::ofstream os(path);
  if (!os) fail(Errc::IoError, "cannot write " + path);

  os << "algorithm,topology,n,D,seed,status,valid,dominators,t_min,avg_stretch,"
        "disconnected_pairs,channel_conflicts,convergence_time";
  if (with_timing) os << ",wall_seconds";
  os << "\n";
  for (const MetricsRow& r : table.rows) {
    os << r.algorithm << "," << r.topology << "," << r.n << "," << r.D << "," << r.seed << ","
       << r.status << "," << (r.valid ? 1 : 0) << ","
       << (r.dominator_count >= 0 ? std::to_string(r.dominator_count) : "") << ","
       << fmt(r.t_min) << "," << fmt(r.avg_stretch) << "," << r.disconnected_pairs << ","
       << (r.channel_conflicts >= 0 ? std::to_string(r.channel_conflicts) : "") << ","
       << fmt(r.convergence_time);
    if (with_timing) os << "," << fmt(r.wall_seconds);
    os << "\n";
  }

  os << "\n";
  os << "# aggregates\n";
  os << "algorithm,topology,n,rows,valid_rows,t_min_mean,t_min_ci95,stretch_mean,stretch_ci95,"
        "dominators_mean,dominators_ci95,convergence_mean,convergence_ci95\n";
  for (const Aggregate& a : table.aggregates) {
    os << a.algorithm << "," << a.topology << "," << a.n << "," << a.rows << "," << a.valid_rows
       << "," << fmt(a.t_min_mean) << "," << fmt(a.t_min_ci) << "," << fmt(a.stretch_mean) << ","
       << fmt(a.stretch_ci) << "," << fmt(a.dominators_mean) << "," << fmt(a.dominators_ci) << ","
       << fmt(a.convergence_mean) << "," << fmt(a.convergence_ci) << "\n";
  }
}

void emit_plot_data(const MetricsTable& table, const std::string& path) {
  if (table.aggregates.empty()) fail(Errc::EmptyTable, "no aggregates to emit");
  std::ofstream os(path);
  if (!os) fail(Errc::IoError, "cannot write " + path);
  struct MetricCol {
    const char* name;
    double Aggregate::*mean;
    double Aggregate::*ci;
  };
  static const MetricCol metrics[] = {
      {"t_min", &Aggregate::t_min_mean, &Aggregate::t_min_ci},
      {"avg_stretch", &Aggregate::stretch_mean, &Aggregate::stretch_ci},
      {"dominators", &Aggregate::dominators_mean, &Aggregate::dominators_ci},
      {"convergence_time", &Aggregate::convergence_mean, &Aggregate::convergence_ci},
  };
  for (const MetricCol& m : metrics) {
    os << "# metric=" << m.name << "\n";
    os << "# algorithm n mean ci95 rows\n";
    for (const Aggregate& a : table.aggregates) {
      double mean = a.*(m.mean);
      if (std::isnan(mean)) continue;
      os << a.algorithm << " " << a.n << " " << fmt(mean) << " " << fmt(a.*(m.ci)) << " "
         << a.rows << "\n";
    }
    os << "\n";
  }
}

}  // namespace rwcds
