#include "swarmkit/io.hpp"

#include "swarmkit/rng.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace swarm {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("io: cannot write '" + path + "'");
  return out;
}

std::string opt_cell(const std::optional<double>& v) { return v ? fmt(*v) : ""; }

}  // namespace

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string output_root() {
  const char* env = std::getenv("SWARM_OUTPUT_DIR");
  return env && *env ? env : "out";
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("io: cannot create directory '" + dir + "'");
}

void write_trajectory_csv(const std::string& path, const std::vector<SwarmState>& states,
                          const std::vector<std::vector<int>>& ids) {
  if (states.size() != ids.size())
    throw std::invalid_argument("write_trajectory_csv: one id list per state");
  auto out = open_out(path);
  const int d = states.empty() ? 2 : states.front().dim();
  out << (d == 3 ? "t,agent_id,x,y,z\n" : "t,agent_id,x,y\n");
  for (std::size_t k = 0; k < states.size(); ++k) {
    const SwarmState& s = states[k];
    for (int i = 0; i < s.size(); ++i) {
      out << fmt(s.t) << ',' << ids[k][i];
      for (int c = 0; c < d; ++c) out << ',' << fmt(s.x(i, c));
      out << '\n';
    }
  }
}

void write_state_csv(const std::string& path, const SwarmState& s,
                     const std::vector<int>& ids) {
  write_trajectory_csv(path, {s}, {ids});
}

void write_metrics_csv(const std::string& path, const SimMetricSeries& series) {
  auto out = open_out(path);
  out << "t,e_theta,e_L,N,e,Gn_mean\n";
  for (std::size_t k = 0; k < series.t.size(); ++k) {
    out << fmt(series.t[k]) << ',' << fmt(series.e_theta[k]) << ',' << fmt(series.e_L[k])
        << ',' << series.N[k] << ',' << fmt(series.e_len[k]) << ','
        << fmt(series.Gn_mean[k]) << '\n';
  }
}

void write_kinematic_csv(const std::string& path, const KinematicTrial& trial) {
  auto out = open_out(path);
  out << "t,agent_id,x,y,v,w,u\n";
  for (std::size_t a = 0; a < trial.agents.size(); ++a) {
    const PTWRecord& rec = trial.agents[a];
    for (std::size_t k = 0; k < rec.t.size(); ++k) {
      out << fmt(rec.t[k]) << ',' << a << ',' << fmt(rec.position(k, 0)) << ','
          << fmt(rec.position(k, 1)) << ',' << fmt(rec.v[k]) << ',' << fmt(rec.w[k])
          << ',' << fmt(rec.u[k]) << '\n';
    }
  }
}

void write_trials_csv(const std::string& path, const CampaignResult& campaign) {
  auto out = open_out(path);
  std::size_t n_events = 0;
  for (const auto& r : campaign.trials) n_events = std::max(n_events, r.reentry.size());
  out << "trial,seed,reached_ss,t_ss,e_theta_ss,e_L_ss,T_theta,T_L,T,success,C,"
         "e_final,rigid_final,min_pair_dist";
  for (std::size_t e = 0; e < n_events; ++e) out << ",reentry_" << e;
  out << '\n';
  for (const auto& r : campaign.trials) {
    out << r.trial << ',' << r.seed << ',' << (r.reached_ss ? 1 : 0) << ','
        << fmt(r.t_ss) << ',' << fmt(r.e_theta_ss) << ',' << fmt(r.e_L_ss) << ','
        << opt_cell(r.T_theta) << ',' << opt_cell(r.T_L) << ',' << opt_cell(r.T) << ','
        << (r.success ? 1 : 0) << ',' << fmt(r.C) << ',' << opt_cell(r.e_final) << ','
        << (r.rigid_final ? 1 : 0) << ',' << fmt(r.min_pair_dist);
    for (std::size_t e = 0; e < n_events; ++e)
      out << ',' << (e < r.reentry.size() ? opt_cell(r.reentry[e]) : "");
    out << '\n';
  }
}

void write_band_csv(const std::string& path, const SeriesBand& band) {
  auto out = open_out(path);
  out << "t,mean,min,max\n";
  for (std::size_t k = 0; k < band.t.size(); ++k)
    out << fmt(band.t[k]) << ',' << fmt(band.mean[k]) << ',' << fmt(band.min[k]) << ','
        << fmt(band.max[k]) << '\n';
}

void write_grid_csv(const std::string& path, const GridSearchResult& grid) {
  auto out = open_out(path);
  out << "G_r,G_n,mean_C,success_rate\n";
  for (int i = 0; i < grid.mean_C.rows(); ++i)
    for (int j = 0; j < grid.mean_C.cols(); ++j)
      out << fmt(grid.G_r[i]) << ',' << fmt(grid.G_n[j]) << ',' << fmt(grid.mean_C(i, j))
          << ',' << fmt(grid.success_rate(i, j)) << '\n';
}

void write_sweep_csv(const std::string& path, const SweepResult& sweep) {
  auto out = open_out(path);
  out << "value,trials,success_rate,mean_C,mean_e_theta_ss,mean_e_L_ss,median_T,rho\n";
  for (const auto& pt : sweep.points) {
    const auto& c = pt.campaign;
    out << fmt(pt.value) << ',' << c.trials.size() << ',' << fmt(c.success_rate) << ','
        << fmt(c.mean_C) << ',' << fmt(c.mean_e_theta_ss) << ',' << fmt(c.mean_e_L_ss)
        << ',' << opt_cell(c.median_T) << ',' << fmt(c.rho) << '\n';
  }
}

void write_json(const std::string& path, const nlohmann::json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

nlohmann::json summary_json(const CampaignResult& campaign) {
  nlohmann::json j;
  j["trials"] = campaign.trials.size();
  j["success_rate"] = campaign.success_rate;
  j["mean_C"] = campaign.mean_C;
  j["mean_e_theta_ss"] = campaign.mean_e_theta_ss;
  j["mean_e_L_ss"] = campaign.mean_e_L_ss;
  if (campaign.median_T) j["median_T"] = *campaign.median_T;
  j["rho"] = campaign.rho;
  return j;
}

nlohmann::json trial_summary_json(const TrialResult& r) {
  nlohmann::json j;
  j["seed"] = r.seed;
  j["reached_ss"] = r.ss.reached;
  if (r.ss.reached) j["t_ss"] = r.ss.t;
  j["e_theta_ss"] = r.e_theta_ss;
  j["e_L_ss"] = r.e_L_ss;
  if (r.conv.T_theta) j["T_theta"] = *r.conv.T_theta;
  if (r.conv.T_L) j["T_L"] = *r.conv.T_L;
  if (r.conv.T) j["T"] = *r.conv.T;
  j["success"] = r.success;
  if (!std::isnan(r.C)) j["C"] = r.C;
  if (r.e_final) j["e_final"] = *r.e_final;
  j["rigid_final"] = r.rigid_final;
  j["min_pair_dist"] = r.min_pair_dist;
  j["N_final"] = r.final_state.size();
  nlohmann::json events = nlohmann::json::array();
  for (const auto& ev : r.applied) {
    nlohmann::json e;
    e["t"] = ev.t;
    e["kind"] = ev.kind;
    if (ev.kind == "remove") e["removed"] = ev.removed_ids;
    if (ev.kind == "set_L") e["L"] = ev.new_L;
    events.push_back(e);
  }
  j["events"] = events;
  return j;
}

std::string config_hash(const nlohmann::json& config) {
  const std::uint64_t h = fnv1a(config.dump());
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::json manifest_json(const Scenario& sc, const std::vector<std::string>& outputs) {
  nlohmann::json j;
  j["config"] = scenario_to_json(sc);
  j["config_hash"] = config_hash(j["config"]);
  j["seed"] = sc.seed;
  j["tool_version"] = tool_version;
  j["outputs"] = outputs;
  return j;
}

std::vector<double> read_csv_column(const std::string& path, const std::string& column) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("io: cannot read '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("io: empty CSV '" + path + "'");
  int target = -1;
  {
    std::stringstream header(line);
    std::string cell;
    for (int idx = 0; std::getline(header, cell, ','); ++idx)
      if (cell == column) target = idx;
  }
  if (target < 0)
    throw std::runtime_error("io: column '" + column + "' not in '" + path + "'");
  std::vector<double> values;
  while (std::getline(in, line)) {
    std::stringstream row(line);
    std::string cell;
    for (int idx = 0; std::getline(row, cell, ','); ++idx) {
      if (idx != target) continue;
      if (cell.empty()) break;
      try {
        values.push_back(std::stod(cell));
      } catch (const std::exception&) {
      }
      break;
    }
  }
  return values;
}

KinematicTable read_kinematic_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("io: cannot read '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("io: empty CSV '" + path + "'");
  std::vector<std::string> header;
  {
    std::stringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) header.push_back(cell);
  }
  auto col = [&](const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    return -1;
  };
  const int ct = col("t"), cid = col("agent_id"), cx = col("x"), cy = col("y");
  const int cv = col("v"), cw = col("w"), cu = col("u");
  if (ct < 0 || cid < 0 || cx < 0 || cy < 0)
    throw std::runtime_error("io: '" + path + "' needs columns t,agent_id,x,y");
  KinematicTable tab;
  tab.has_vwu = cv >= 0 && cw >= 0 && cu >= 0;
  std::vector<std::string> cells;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    cells.clear();
    std::stringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    auto num = [&](int idx) {
      if (idx < 0 || idx >= static_cast<int>(cells.size()) || cells[idx].empty())
        throw std::runtime_error("io: '" + path + "' line " + std::to_string(line_no) +
                                 ": missing value");
      return std::stod(cells[idx]);
    };
    tab.t.push_back(num(ct));
    tab.agent_id.push_back(static_cast<int>(std::lround(num(cid))));
    tab.x.push_back(num(cx));
    tab.y.push_back(num(cy));
    if (tab.has_vwu) {
      tab.v.push_back(num(cv));
      tab.w.push_back(num(cw));
      tab.u.push_back(num(cu));
    }
  }
  return tab;
}

}  // namespace swarm
