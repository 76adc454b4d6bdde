#include "swarmkit/simulate.hpp"

#include "swarmkit/control.hpp"
#include "swarmkit/dynamics.hpp"
#include "swarmkit/geometry.hpp"
#include "swarmkit/lattice.hpp"
#include "swarmkit/rigidity.hpp"
#include "swarmkit/rng.hpp"
#include "swarmkit/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace swarm {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

Mat initial_positions(const Scenario& sc, std::mt19937_64& gen) {
  switch (sc.initial.kind) {
    case InitSpec::Kind::Disk:
      return sample_disk_initial(sc.params.N, sc.params.d, initial_radius(sc), gen);
    case InitSpec::Kind::Lattice: {
      Mat lat = generate_rigid_lattice(sc.params.N, sc.params.d, sc.params.R, gen);
      return sc.initial.delta > 0.0 ? perturb(lat, sc.initial.delta, gen) : lat;
    }
    case InitSpec::Kind::Origin:
      return Mat::Zero(sc.params.N, sc.params.d);
    case InitSpec::Kind::Box: {
      std::uniform_real_distribution<double> u(0.0, sc.initial.side);
      Mat x(sc.params.N, sc.params.d);
      for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) x(i, j) = u(gen);
      return x;
    }
  }
  throw std::logic_error("initial_positions: unhandled kind");
}

// Remove m rows chosen uniformly without replacement; survivors keep order.
std::vector<int> draw_removals(int n, int m, std::mt19937_64& gen) {
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  for (int k = 0; k < m; ++k) {
    std::uniform_int_distribution<int> pick(k, n - 1);
    std::swap(idx[k], idx[pick(gen)]);
  }
  idx.resize(m);
  std::sort(idx.begin(), idx.end());
  return idx;
}

Mat drop_rows(const Mat& x, const std::vector<int>& sorted_rows) {
  Mat out(x.rows() - static_cast<int>(sorted_rows.size()), x.cols());
  int w = 0;
  std::size_t r = 0;
  for (int i = 0; i < x.rows(); ++i) {
    if (r < sorted_rows.size() && sorted_rows[r] == i) {
      ++r;
      continue;
    }
    out.row(w++) = x.row(i);
  }
  return out;
}

double min_pairwise_distance(const Mat& x) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < x.rows(); ++i)
    for (int j = i + 1; j < x.rows(); ++j)
      best = std::min(best, (x.row(i) - x.row(j)).norm());
  return best;
}

double max_link_gap(const LinkSet& links, double R) {
  double worst = 0.0;
  for (const auto& l : links) worst = std::max(worst, std::abs(l.length - R));
  return worst;
}

}  // namespace

TrialResult run_swarm_trial(const Scenario& sc, std::uint64_t seed, bool record_states,
                            const StepHook& hook) {
  if (sc.kind != ScenarioKind::Swarm)
    throw std::invalid_argument("run_swarm_trial: scenario kind is not swarm");
  sc.validate();

  SwarmParams p = sc.params;  // events may change L
  const double dt = p.dt;
  const int n_steps = static_cast<int>(std::lround(sc.t_max / dt));

  auto init_gen = make_engine(seed, "init");
  auto ctrl_gen = make_engine(seed, "control");
  auto ev_gen = make_engine(seed, "events");

  TrialResult out;
  out.seed = seed;

  SwarmState s;
  s.t = 0.0;
  s.x = initial_positions(sc, init_gen);
  if (sc.dynamics.kind == DynKind::SecondOrder) s.v = Mat::Zero(p.N, p.d);

  out.agent_ids.resize(p.N);
  for (int i = 0; i < p.N; ++i) out.agent_ids[i] = i;

  const bool adaptive = sc.controller.law == ControlLaw::Adaptive;
  AdaptiveState ad;
  if (adaptive) {
    ad.G_n = Vec::Zero(p.N);
    ad.alpha = sc.controller.alpha;
    ad.e_theta_star = sc.thresholds.e_theta;
  }
  std::vector<bool> spins;
  if (sc.controller.law == ControlLaw::Spears) spins = alternating_spins(p.N);

  std::function<double(double)> profile;
  if (sc.controller.law == ControlLaw::RadialOnly)
    profile = profile_function(sc.controller.profile, p.d, p.R);

  // event steps resolved on the dt grid; ties applied in declaration order
  struct Pending {
    int step;
    const EventSpec* ev;
  };
  std::vector<Pending> pending;
  double last_event_t = 0.0;
  for (const auto& ev : sc.events) {
    pending.push_back({static_cast<int>(std::ceil(ev.t / dt - 1e-9)), &ev});
    last_event_t = std::max(last_event_t, ev.t);
  }
  std::stable_sort(pending.begin(), pending.end(),
                   [](const Pending& a, const Pending& b) { return a.step < b.step; });
  std::size_t next_event = 0;

  const double sigma_m = sc.controller.sigma_m;
  const double pi = std::numbers::pi;
  out.min_pair_dist = std::numeric_limits<double>::infinity();

  for (int k = 0; k <= n_steps; ++k) {
    const double t = k * dt;
    s.t = t;

    while (next_event < pending.size() && pending[next_event].step == k) {
      const EventSpec& ev = *pending[next_event].ev;
      AppliedEvent rec;
      rec.t = t;
      switch (ev.kind) {
        case EventSpec::Kind::Remove: {
          const int n_cur = s.size();
          const int m = static_cast<int>(std::floor(ev.fraction * n_cur));
          const auto gone = draw_removals(n_cur, m, ev_gen);
          rec.kind = "remove";
          for (int r : gone) rec.removed_ids.push_back(out.agent_ids[r]);
          s.x = drop_rows(s.x, gone);
          if (s.v) *s.v = drop_rows(*s.v, gone);
          if (adaptive) {
            Vec keep(s.x.rows());
            int w = 0;
            std::size_t ri = 0;
            for (int i = 0; i < static_cast<int>(ad.G_n.size()); ++i) {
              if (ri < gone.size() && gone[ri] == i) {
                ++ri;
                continue;
              }
              keep(w++) = ad.G_n(i);
            }
            ad.G_n = keep;
          }
          if (!spins.empty()) {
            std::vector<bool> keep;
            std::size_t ri = 0;
            for (int i = 0; i < static_cast<int>(spins.size()); ++i) {
              if (ri < gone.size() && gone[ri] == i) {
                ++ri;
                continue;
              }
              keep.push_back(spins[i]);
            }
            spins = keep;
          }
          {
            std::vector<int> ids;
            std::size_t ri = 0;
            for (int i = 0; i < static_cast<int>(out.agent_ids.size()); ++i) {
              if (ri < gone.size() && gone[ri] == i) {
                ++ri;
                continue;
              }
              ids.push_back(out.agent_ids[i]);
            }
            out.agent_ids = ids;
          }
          p.N = s.size();
          break;
        }
        case EventSpec::Kind::SetL:
          rec.kind = "set_L";
          rec.new_L = ev.L;
          p.L = ev.L;
          break;
        case EventSpec::Kind::ResetGains:
          rec.kind = "reset_gains";
          if (adaptive) ad.G_n.setZero();
          break;
      }
      out.applied.push_back(rec);
      ++next_event;
    }

    const int n = s.size();
    out.min_pair_dist = std::min(out.min_pair_dist, min_pairwise_distance(s.x));

    const bool sample_now = (k % sc.stride == 0);
    if (sample_now) {
      const LinkSet links = build_links(s.x, p.R_min, p.R_max);
      out.series.t.push_back(t);
      out.series.e_theta.push_back(p.d == 2 ? regularity(s.x, links, p.L) : nan);
      out.series.e_L.push_back(compactness(links, n, p.L));
      out.series.e_len.push_back(links.empty() ? nan : max_link_gap(links, p.R));
      out.series.Gn_mean.push_back(adaptive ? ad.G_n.mean() : nan);
      out.series.N.push_back(n);
      if (record_states) {
        out.states.push_back(s);
        out.states_ids.push_back(out.agent_ids);
      }

      if (sc.early_stop && p.d == 2 && t >= last_event_t && k > 0) {
        const SteadyState probe =
            steady_state(out.series.t, out.series.e_theta, out.series.e_L,
                         sc.thresholds.e_theta, sc.thresholds.e_L, p.T_w);
        if (probe.reached) {
          out.ss = probe;
          break;
        }
      }
    }
    if (k == n_steps) break;

    Mat controls(n, p.d);
    switch (sc.controller.law) {
      case ControlLaw::Displacement:
      case ControlLaw::Adaptive: {
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int i = 0; i < n; ++i) {
          ControlNoise cn;
          cn.sigma_m = sigma_m;
          if (sc.controller.compass && sigma_m > 0.0) {
            cn.compass_offset = sigma_m * (pi / p.L) * gauss(ctrl_gen);
            cn.bearing_noise = false;
          }
          const Gains g{sc.controller.G_r, adaptive ? ad.G_n(i) : sc.controller.G_n};
          controls.row(i) =
              control_displacement(s.x, i, p, g, sc.controller.lj, cn, ctrl_gen);
        }
        break;
      }
      case ControlLaw::RadialOnly:
        for (int i = 0; i < n; ++i)
          controls.row(i) = control_radial_only(s.x, i, profile, p.R_s);
        break;
      case ControlLaw::Spears:
        for (int i = 0; i < n; ++i)
          controls.row(i) = spears_control(s.x, i, sc.controller.G, sc.controller.F_max,
                                           sc.controller.mass, p.R, p.L, spins);
        break;
    }

    if (hook) hook(k, t, s, controls);
    if (adaptive) adapt_gains(s.x, p, ad, dt);

    if (sc.dynamics.kind == DynKind::FirstOrder)
      step_first_order(s, controls, p, sc.dynamics.sigma_a, ctrl_gen);
    else
      step_second_order(s, controls, p, sc.dynamics, ctrl_gen);
    s.t = (k + 1) * dt;
  }

  out.final_state = s;
  if (!out.ss.reached && p.d == 2)
    out.ss = steady_state(out.series.t, out.series.e_theta, out.series.e_L,
                          sc.thresholds.e_theta, sc.thresholds.e_L, p.T_w);
  const int last = static_cast<int>(out.series.t.size()) - 1;
  const int at = out.ss.reached ? out.ss.index : last;
  out.e_theta_ss = out.series.e_theta[at];
  out.e_L_ss = out.series.e_L[at];
  out.success = out.ss.reached && out.e_theta_ss < sc.thresholds.e_theta &&
                out.e_L_ss < sc.thresholds.e_L;
  if (p.d == 2) {
    out.C = tuning_cost(out.e_theta_ss, out.e_L_ss, sc.thresholds.e_theta,
                        sc.thresholds.e_L);
    out.conv = convergence_times(out.series.t, out.series.e_theta, out.series.e_L,
                                 sc.thresholds.e_theta, sc.thresholds.e_L);
  } else {
    out.C = nan;
  }
  const double gap = out.series.e_len[last];
  out.e_final = std::isnan(gap) ? std::nullopt : std::optional<double>(gap);
  const Framework fw = make_framework(s.x, p.R_min, p.R_max);
  out.rigid_final =
      s.size() >= p.d && is_infinitesimally_rigid(fw).infinitesimally_rigid;
  return out;
}

std::optional<double> reentry_after(const SimMetricSeries& series, double t_event,
                                    const Thresholds& thr) {
  for (std::size_t k = 0; k < series.t.size(); ++k) {
    if (series.t[k] < t_event) continue;
    if (series.e_theta[k] <= thr.e_theta && series.e_L[k] <= thr.e_L)
      return series.t[k] - t_event;
  }
  return std::nullopt;
}

KinematicTrial run_kinematic_trial(const Scenario& sc, std::uint64_t seed) {
  if (sc.kind == ScenarioKind::Swarm)
    throw std::invalid_argument("run_kinematic_trial: scenario kind is not kinematic");
  sc.validate();
  const double pi = std::numbers::pi;

  KinematicTrial out;
  out.agents.reserve(sc.agents);
  for (int a = 0; a < sc.agents; ++a) {
    auto gen = make_engine(combine_seed(seed, static_cast<std::uint64_t>(a)));
    RowVec pos = RowVec::Zero(2);
    if (sc.initial.kind == InitSpec::Kind::Box) {
      std::uniform_real_distribution<double> u(0.0, sc.initial.side);
      pos(0) = u(gen);
      pos(1) = u(gen);
    }
    std::uniform_real_distribution<double> ang(-pi, pi);
    const double heading = ang(gen);

    if (sc.kind == ScenarioKind::Ptw) {
      KinematicAgent start;
      start.position = pos;
      start.heading = heading;
      start.v = sc.ptw.mu_v;
      start.w = 0.0;
      out.agents.push_back(simulate_ptw(start, sc.ptw, sc.light, sc.t_max, sc.params.dt,
                                        sc.dT_obs, gen));
      continue;
    }

    // run-and-tumble sampling on the same observation grid
    const double dt = sc.params.dt;
    const int sub = static_cast<int>(std::lround(sc.dT_obs / dt));
    const int n_obs = static_cast<int>(std::floor(sc.t_max / sc.dT_obs + 1e-9)) + 1;
    LevyAgent agent;
    agent.position = pos;
    agent.heading = heading;
    PTWRecord rec;
    rec.position.resize(n_obs, 2);
    auto record = [&](int idx, double t) {
      rec.t.push_back(t);
      rec.position.row(idx) = agent.position;
      rec.heading.push_back(agent.heading);
      rec.v.push_back(sc.levy.v);
      rec.w.push_back(0.0);
      rec.u.push_back(0.0);
    };
    record(0, 0.0);
    for (int kobs = 1; kobs < n_obs; ++kobs) {
      for (int kk = 0; kk < sub; ++kk) agent = levy_step(agent, sc.levy, dt, gen);
      record(kobs, kobs * sc.dT_obs);
    }
    out.agents.push_back(std::move(rec));
  }
  return out;
}

}  // namespace swarm
