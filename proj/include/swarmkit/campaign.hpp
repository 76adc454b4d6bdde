#pragma once

#include "swarmkit/scenario.hpp"
#include "swarmkit/simulate.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace swarm {

// Per-trial summary row; everything the campaign CSVs and aggregates need.
struct TrialSummary {
  int trial = 0;
  std::uint64_t seed = 0;
  bool reached_ss = false;
  double t_ss = 0.0;
  double e_theta_ss = 0.0;
  double e_L_ss = 0.0;
  std::optional<double> T_theta;
  std::optional<double> T_L;
  std::optional<double> T;
  bool success = false;
  double C = 0.0;
  std::optional<double> e_final;
  bool rigid_final = false;
  double min_pair_dist = 0.0;
  std::vector<std::optional<double>> reentry;  // per scheduled event
};

// Pointwise band over the per-trial metric series; only filled when every
// trial ran the full grid (early stopping off).
struct SeriesBand {
  std::vector<double> t;
  std::vector<double> mean, min, max;
};

struct CampaignResult {
  std::vector<TrialSummary> trials;
  double success_rate = 0.0;
  double mean_C = 0.0;
  double mean_e_theta_ss = 0.0;
  double mean_e_L_ss = 0.0;
  std::optional<double> median_T;  // over trials where T is defined
  double rho = 0.0;                // fraction of trials ending rigid
  std::optional<SeriesBand> band_e_theta;
  std::optional<SeriesBand> band_e_L;
  std::optional<SeriesBand> band_e_len;
};

TrialSummary summarize_trial(const TrialResult& r, int trial, const Scenario& sc);

// M seeded trials of one scenario; trial i uses trial_seed(sc.seed, i).
// Bands are aggregated when keep_series and all series share the time grid.
CampaignResult run_trials(const Scenario& sc, int M, int threads = 1,
                          bool keep_series = false);

// Mean tuning cost per (G_r, G_n) cell.
struct GridSearchResult {
  std::vector<double> G_r;  // row values
  std::vector<double> G_n;  // column values
  Mat mean_C;               // rows x cols
  Mat success_rate;
  int best_row = 0;
  int best_col = 0;
  std::vector<std::pair<int, int>> feasible;  // cells with mean C <= 1
};

// Evaluates one trial of a gain cell; defaults to the scenario cost.  The
// stub hook exists so harness correctness is testable with synthetic costs.
using CellCost = std::function<double(const Scenario& cell_scenario, std::uint64_t seed)>;

GridSearchResult grid_search(const std::vector<double>& G_r_values,
                             const std::vector<double>& G_n_values,
                             const Scenario& tmpl, int M, int threads = 1,
                             const CellCost& cost = {});

// One campaign per value of a scenario field addressed by JSON pointer
// (e.g. "/params/N" or "/initial/delta").
struct SweepPoint {
  double value = 0.0;
  CampaignResult campaign;
};

struct SweepResult {
  std::string path;
  std::vector<SweepPoint> points;
};

SweepResult sweep(const std::string& pointer_path, const std::vector<double>& values,
                  const Scenario& tmpl, int M, int threads = 1,
                  bool keep_series = false);

// Fixed-order parallel map: results land by item index regardless of pool
// size or completion order.
void parallel_for(int n_items, int threads, const std::function<void(int)>& work);

}  // namespace swarm
