#pragma once

#include "swarmkit/campaign.hpp"
#include "swarmkit/simulate.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace swarm {

inline constexpr const char* tool_version = "0.1.0";

// Shortest exact decimal representation (%.17g); NaN prints as nan, which
// marks absent metric samples in the CSVs.
std::string fmt(double x);

// Output root: SWARM_OUTPUT_DIR when set, else "out".
std::string output_root();

// Recursive mkdir; throws on failure.
void ensure_dir(const std::string& dir);

// Long-format trajectory: t,agent_id,x,y[,z] over the recorded snapshots.
void write_trajectory_csv(const std::string& path, const std::vector<SwarmState>& states,
                          const std::vector<std::vector<int>>& ids);

// Single-state convenience wrapper of the same format.
void write_state_csv(const std::string& path, const SwarmState& s,
                     const std::vector<int>& ids);

// Metric series: t,e_theta,e_L,N,e,Gn_mean.
void write_metrics_csv(const std::string& path, const SimMetricSeries& series);

// Kinematic population: t,agent_id,x,y,v,w,u.
void write_kinematic_csv(const std::string& path, const KinematicTrial& trial);

// Per-trial campaign rows; optional cells are left empty.
void write_trials_csv(const std::string& path, const CampaignResult& campaign);

// Pointwise band: t,mean,min,max.
void write_band_csv(const std::string& path, const SeriesBand& band);

// Gain grid: G_r,G_n,mean_C,success_rate.
void write_grid_csv(const std::string& path, const GridSearchResult& grid);

// Sweep table: value,trials,success_rate,mean_C,mean_e_theta_ss,mean_e_L_ss,
// median_T,rho.
void write_sweep_csv(const std::string& path, const SweepResult& sweep);

void write_json(const std::string& path, const nlohmann::json& j);

nlohmann::json summary_json(const CampaignResult& campaign);
nlohmann::json trial_summary_json(const TrialResult& r);

// FNV-1a over the canonical config dump, as fixed-width hex.
std::string config_hash(const nlohmann::json& config);

// Manifest: canonical config, its hash, seed, and tool version.
nlohmann::json manifest_json(const Scenario& sc,
                             const std::vector<std::string>& outputs);

// Reads one numeric column (by header name) back from a CSV written by the
// writers above; empty cells and non-numeric rows are skipped.
std::vector<double> read_csv_column(const std::string& path, const std::string& column);

// Long-format trajectory table, one row per (t, agent).  v/w/u columns are
// optional; has_vwu reports whether all three were present.
struct KinematicTable {
  std::vector<int> agent_id;
  std::vector<double> t, x, y, v, w, u;
  bool has_vwu = false;
};

KinematicTable read_kinematic_csv(const std::string& path);

}  // namespace swarm
