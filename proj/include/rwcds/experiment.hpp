#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "rwcds/graph.hpp"

namespace rwcds {

/// One sweep: topologies x seeds x algorithms, metrics per row plus
/// aggregates with 95% confidence intervals over seeds.
struct ExperimentConfig {
  std::string topology = "random";  // "random" | "grid"
  std::vector<int> sizes = {12};    // node counts for random topologies
  std::vector<std::pair<int, int>> grids;  // rows x cols when topology = grid
  double degree = 8.0;
  double radio_range = 10.0;
  double interference_range = 30.0;
  std::vector<std::uint64_t> seeds = {1, 2, 3};

  std::vector<std::string> algorithms = {"st", "st-pruned", "mis", "potatoes"};
  int D = 2;
  int nbch = 12;
  long budget = 2000;

  // Protocol parameters, used by the "proto" algorithm rows.
  double hello_period = 1.0;
  double t_dead = -1.0;
  int stabilization = 3;
  double loss = 0.0;
  double sim_time = 200.0;

  std::string out_csv;
  std::string out_plot;
  bool with_timing = false;  // wall time stays out of the CSV by default

  static ExperimentConfig from_map(const std::map<std::string, std::string>& kv);
  void apply(const std::string& key, const std::string& value);
};

struct MetricsRow {
  std::string algorithm;
  std::string topology;  // e.g. "random-16", "grid-3x3"
  int n = 0;
  int D = 0;
  std::uint64_t seed = 0;
  std::string status = "ok";  // ok | budget_exceeded | unconverged | error:<CODE>
  bool valid = false;
  int dominator_count = -1;
  double t_min = std::numeric_limits<double>::quiet_NaN();
  double avg_stretch = std::numeric_limits<double>::quiet_NaN();
  long disconnected_pairs = 0;
  int channel_conflicts = -1;
  double convergence_time = std::numeric_limits<double>::quiet_NaN();
  double wall_seconds = 0.0;
};

struct Aggregate {
  std::string algorithm;
  std::string topology;
  int n = 0;
  int rows = 0;
  int valid_rows = 0;
  double t_min_mean = std::numeric_limits<double>::quiet_NaN();
  double t_min_ci = 0.0;
  double stretch_mean = std::numeric_limits<double>::quiet_NaN();
  double stretch_ci = 0.0;
  double dominators_mean = std::numeric_limits<double>::quiet_NaN();
  double dominators_ci = 0.0;
  double convergence_mean = std::numeric_limits<double>::quiet_NaN();
  double convergence_ci = 0.0;
};

struct MetricsTable {
  std::vector<MetricsRow> rows;
  std::vector<Aggregate> aggregates;
};

MetricsTable run_experiment(const ExperimentConfig& cfg);

/// Deterministic CSV: rows block then aggregates block, stable column order
/// and float formatting. Wall time is appended only when with_timing is set.
void emit_csv(const MetricsTable& table, const std::string& path, bool with_timing = false);

/// Plot-ready data grouped by (metric, algorithm) with x = n and CI columns.
void emit_plot_data(const MetricsTable& table, const std::string& path);

/// Two-sided 95% Student-t quantile for the given degrees of freedom.
double student_t_975(int df);

}  // namespace rwcds
