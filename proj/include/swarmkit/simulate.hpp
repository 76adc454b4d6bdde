#pragma once

#include "swarmkit/metrics.hpp"
#include "swarmkit/ptw.hpp"
#include "swarmkit/scenario.hpp"
#include "swarmkit/types.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace swarm {

// Metric samples on the stride grid.  e_theta is NaN for d = 3 (planar
// metric), e_len is NaN when the configuration has no links, Gn_mean is NaN
// unless the adaptive controller runs.
struct SimMetricSeries {
  std::vector<double> t;
  std::vector<double> e_theta;
  std::vector<double> e_L;
  std::vector<double> e_len;
  std::vector<double> Gn_mean;
  std::vector<int> N;
};

struct AppliedEvent {
  double t = 0.0;
  std::string kind;
  std::vector<int> removed_ids;  // stable ids, removal events
  int new_L = 0;                 // set_L events
};

struct TrialResult {
  SimMetricSeries series;
  SwarmState final_state;
  std::vector<int> agent_ids;  // row index -> stable id
  SteadyState ss;
  double e_theta_ss = 0.0;  // at t_ss when reached, else at the last sample
  double e_L_ss = 0.0;
  ConvergenceTimes conv;
  bool success = false;
  double C = 0.0;
  std::optional<double> e_final;  // link-length error at the last sample
  bool rigid_final = false;
  double min_pair_dist = 0.0;  // over the whole run
  std::vector<AppliedEvent> applied;
  std::uint64_t seed = 0;
  std::vector<SwarmState> states;            // stride-sampled, when recording
  std::vector<std::vector<int>> states_ids;  // stable ids per recorded state
};

// Per-step observation point: controls are the commanded velocities/forces
// before noise and saturation.  Invoked after events and control assembly,
// before integration.
using StepHook = std::function<void(int step, double t, const SwarmState& state,
                                    const Mat& controls)>;

// One seeded trial of a swarm scenario.  Deterministic in (scenario, seed);
// independent RNG streams drive initialization, per-step noise, and event
// draws, so zero-noise runs consume no randomness.
TrialResult run_swarm_trial(const Scenario& sc, std::uint64_t seed,
                            bool record_states = false, const StepHook& hook = {});

// First re-entry delay after t_event: earliest sample t >= t_event with both
// metrics at or below their thresholds, minus t_event.
std::optional<double> reentry_after(const SimMetricSeries& series, double t_event,
                                    const Thresholds& thr);

// Sampled population of independent kinematic walkers (ptw or levy kinds).
struct KinematicTrial {
  std::vector<PTWRecord> agents;
};

KinematicTrial run_kinematic_trial(const Scenario& sc, std::uint64_t seed);

}  // namespace swarm
