#include "swarmkit/campaign.hpp"

#include "swarmkit/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace swarm {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return nan;
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc / static_cast<double>(v.size());
}

std::optional<double> median_of(std::vector<double> v) {
  if (v.empty()) return std::nullopt;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

bool same_grid(const std::vector<SimMetricSeries>& all) {
  for (const auto& s : all) {
    if (s.t.size() != all.front().t.size()) return false;
    for (std::size_t k = 0; k < s.t.size(); ++k)
      if (s.t[k] != all.front().t[k]) return false;
  }
  return true;
}

SeriesBand band_of(const std::vector<SimMetricSeries>& all,
                   std::vector<double> SimMetricSeries::*field) {
  SeriesBand b;
  b.t = all.front().t;
  const std::size_t n = b.t.size();
  b.mean.assign(n, 0.0);
  b.min.assign(n, std::numeric_limits<double>::infinity());
  b.max.assign(n, -std::numeric_limits<double>::infinity());
  for (const auto& s : all) {
    const auto& y = s.*field;
    for (std::size_t k = 0; k < n; ++k) {
      b.mean[k] += y[k];
      b.min[k] = std::min(b.min[k], y[k]);
      b.max[k] = std::max(b.max[k], y[k]);
    }
  }
  for (auto& m : b.mean) m /= static_cast<double>(all.size());
  return b;
}

}  // namespace

void parallel_for(int n_items, int threads, const std::function<void(int)>& work) {
  if (n_items <= 0) return;
  threads = std::max(1, std::min(threads, n_items));

  std::atomic<int> next{0};
  std::mutex err_mutex;
  std::string first_error;

  auto body = [&] {
    for (;;) {
      const int item = next.fetch_add(1);
      if (item >= n_items) return;
      try {
        work(item);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (first_error.empty()) first_error = e.what();
      }
    }
  };

  if (threads == 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w) pool.emplace_back(body);
    for (auto& th : pool) th.join();
  }
  if (!first_error.empty()) throw std::runtime_error(first_error);
}

TrialSummary summarize_trial(const TrialResult& r, int trial, const Scenario& sc) {
  TrialSummary s;
  s.trial = trial;
  s.seed = r.seed;
  s.reached_ss = r.ss.reached;
  s.t_ss = r.ss.reached ? r.ss.t : nan;
  s.e_theta_ss = r.e_theta_ss;
  s.e_L_ss = r.e_L_ss;
  s.T_theta = r.conv.T_theta;
  s.T_L = r.conv.T_L;
  s.T = r.conv.T;
  s.success = r.success;
  s.C = r.C;
  s.e_final = r.e_final;
  s.rigid_final = r.rigid_final;
  s.min_pair_dist = r.min_pair_dist;
  for (const auto& ev : sc.events)
    s.reentry.push_back(reentry_after(r.series, ev.t, sc.thresholds));
  return s;
}

CampaignResult run_trials(const Scenario& sc, int M, int threads, bool keep_series) {
  if (M < 1) throw std::invalid_argument("run_trials: need M >= 1");
  std::vector<TrialSummary> rows(M);
  std::vector<SimMetricSeries> series(keep_series ? M : 0);

  parallel_for(M, threads, [&](int m) {
    const std::uint64_t seed = trial_seed(sc.seed, static_cast<std::uint64_t>(m));
    try {
      const TrialResult r = run_swarm_trial(sc, seed);
      rows[m] = summarize_trial(r, m, sc);
      if (keep_series) series[m] = r.series;
    } catch (const std::exception& e) {
      throw std::runtime_error("trial " + std::to_string(m) + " (seed " +
                               std::to_string(seed) + "): " + e.what());
    }
  });

  CampaignResult out;
  out.trials = std::move(rows);
  std::vector<double> Cs, eths, els, Ts;
  int ok = 0, rigid = 0;
  for (const auto& r : out.trials) {
    Cs.push_back(r.C);
    eths.push_back(r.e_theta_ss);
    els.push_back(r.e_L_ss);
    if (r.T) Ts.push_back(*r.T);
    ok += r.success ? 1 : 0;
    rigid += r.rigid_final ? 1 : 0;
  }
  out.success_rate = static_cast<double>(ok) / M;
  out.mean_C = mean_of(Cs);
  out.mean_e_theta_ss = mean_of(eths);
  out.mean_e_L_ss = mean_of(els);
  out.median_T = median_of(Ts);
  out.rho = static_cast<double>(rigid) / M;

  if (keep_series && !series.empty() && same_grid(series)) {
    out.band_e_theta = band_of(series, &SimMetricSeries::e_theta);
    out.band_e_L = band_of(series, &SimMetricSeries::e_L);
    out.band_e_len = band_of(series, &SimMetricSeries::e_len);
  }
  return out;
}

GridSearchResult grid_search(const std::vector<double>& G_r_values,
                             const std::vector<double>& G_n_values,
                             const Scenario& tmpl, int M, int threads,
                             const CellCost& cost) {
  if (G_r_values.empty() || G_n_values.empty())
    throw std::invalid_argument("grid_search: empty grid");
  if (M < 1) throw std::invalid_argument("grid_search: need M >= 1");
  const int rows = static_cast<int>(G_r_values.size());
  const int cols = static_cast<int>(G_n_values.size());
  const int cells = rows * cols;

  std::vector<double> C_items(static_cast<std::size_t>(cells) * M);
  std::vector<char> ok_items(static_cast<std::size_t>(cells) * M, 0);
  const bool stubbed = static_cast<bool>(cost);

  parallel_for(cells * M, threads, [&](int item) {
    const int cell = item / M;
    const int m = item % M;
    Scenario cell_sc = tmpl;
    cell_sc.controller.G_r = G_r_values[cell / cols];
    cell_sc.controller.G_n = G_n_values[cell % cols];
    const std::uint64_t seed =
        trial_seed(combine_seed(tmpl.seed, static_cast<std::uint64_t>(cell)),
                   static_cast<std::uint64_t>(m));
    if (stubbed) {
      C_items[item] = cost(cell_sc, seed);
    } else {
      const TrialResult r = run_swarm_trial(cell_sc, seed);
      C_items[item] = r.C;
      ok_items[item] = r.success ? 1 : 0;
    }
  });

  GridSearchResult out;
  out.G_r = G_r_values;
  out.G_n = G_n_values;
  out.mean_C = Mat::Zero(rows, cols);
  out.success_rate = Mat::Zero(rows, cols);
  for (int cell = 0; cell < cells; ++cell) {
    double acc = 0.0;
    int ok = 0;
    for (int m = 0; m < M; ++m) {
      acc += C_items[static_cast<std::size_t>(cell) * M + m];
      ok += ok_items[static_cast<std::size_t>(cell) * M + m];
    }
    out.mean_C(cell / cols, cell % cols) = acc / M;
    out.success_rate(cell / cols, cell % cols) = static_cast<double>(ok) / M;
  }
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      if (out.mean_C(i, j) < best) {
        best = out.mean_C(i, j);
        out.best_row = i;
        out.best_col = j;
      }
      if (out.mean_C(i, j) <= 1.0) out.feasible.emplace_back(i, j);
    }
  return out;
}

SweepResult sweep(const std::string& pointer_path, const std::vector<double>& values,
                  const Scenario& tmpl, int M, int threads, bool keep_series) {
  if (values.empty()) throw std::invalid_argument("sweep: empty value list");
  const nlohmann::json base = scenario_to_json(tmpl);
  nlohmann::json::json_pointer ptr;
  try {
    ptr = nlohmann::json::json_pointer(pointer_path);
  } catch (const nlohmann::json::parse_error&) {
    throw std::invalid_argument("config: sweep path '" + pointer_path +
                                "' is not a JSON pointer");
  }

  SweepResult out;
  out.path = pointer_path;
  for (double value : values) {
    nlohmann::json j = base;
    nlohmann::json* slot = nullptr;
    try {
      slot = &j.at(ptr);
    } catch (const nlohmann::json::out_of_range&) {
      throw std::invalid_argument("config: sweep path '" + pointer_path +
                                  "' does not resolve");
    }
    if (slot->is_number_integer()) {
      if (std::abs(value - std::round(value)) > 1e-9)
        throw std::invalid_argument("config: sweep value for integer field '" +
                                    pointer_path + "' must be integral");
      *slot = static_cast<long long>(std::llround(value));
    } else if (slot->is_number()) {
      *slot = value;
    } else {
      throw std::invalid_argument("config: sweep path '" + pointer_path +
                                  "' is not numeric");
    }
    const Scenario point_sc = parse_scenario(j);
    SweepPoint point;
    point.value = value;
    point.campaign = run_trials(point_sc, M, threads, keep_series);
    out.points.push_back(std::move(point));
  }
  return out;
}

}  // namespace swarm
