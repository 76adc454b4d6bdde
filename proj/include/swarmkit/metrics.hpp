#pragma once

#include "swarmkit/types.hpp"

#include <optional>

namespace swarm {

// Lattice-regularity error: mean angular distance of every ordered pair of
// distinct, non-reciprocal directed links to the nearest multiple of 2*pi/L,
// scaled by L/pi into [0, 1].  0 when fewer than two undirected links exist.
double regularity(const Mat& x, const LinkSet& links, int L);

// Compactness error: mean relative deviation of adjacency degrees from L.
double compactness(const LinkSet& links, int N, int L);
double compactness(const Mat& x, const SwarmParams& p);

// Worst absolute link-length deviation from R; empty when there are no links.
// Accepts either a directed link set or an oriented edge list.
std::optional<double> link_length_error(const LinkSet& links, double R);

struct SteadyState {
  bool reached = false;
  int index = -1;
  double t = 0.0;
};

// Earliest sample at which both series have varied by at most 0.1 * their
// threshold over the trailing window T_w.  Only past samples are consulted,
// so the detector can run online.  Series must share a uniform time grid.
SteadyState steady_state(const std::vector<double>& t,
                         const std::vector<double>& e_theta,
                         const std::vector<double>& e_L, double thr_theta,
                         double thr_L, double T_w);

struct ConvergenceTimes {
  std::optional<double> T_theta;
  std::optional<double> T_L;
  std::optional<double> T;  // max of the two, defined only when both are
};

// Earliest time from which each series stays at or below its threshold for
// the rest of the recording.
ConvergenceTimes convergence_times(const std::vector<double>& t,
                                   const std::vector<double>& e_theta,
                                   const std::vector<double>& e_L,
                                   double thr_theta, double thr_L);

// Quadratic tuning cost used by the gain search.
double tuning_cost(double e_theta_ss, double e_L_ss, double thr_theta, double thr_L);

}  // namespace swarm
