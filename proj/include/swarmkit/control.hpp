#pragma once

#include "swarmkit/interaction.hpp"
#include "swarmkit/types.hpp"

#include <functional>
#include <random>

namespace swarm {

struct Gains {
  double G_r = 0.0;
  double G_n = 0.0;
};

struct LJParams {
  double a = 0.15;
  double b = 0.15;
  double c = 5.0;
};

// Measurement corruption for one control evaluation.  sigma_m scales both the
// distance noise (std sigma_m) and the bearing noise (std sigma_m * pi / L);
// compass_offset is added to every bearing this agent measures this step.
// Drivers modelling a shared compass error per agent clear bearing_noise and
// carry the whole bearing corruption in compass_offset.
struct ControlNoise {
  double sigma_m = 0.0;
  double compass_offset = 0.0;
  bool bearing_noise = true;
};

// Signed angular distance from theta to the nearest multiple of 2*pi/L,
// in ]-pi/L, pi/L]; exact ties resolve to +pi/L.
double angular_error(double theta, int L);

// Normal-input profile, f_n(e) = -(L/pi) e on the admissible error range.
double f_normal(double err, int L);

// Displacement-controller input for agent i: saturated-LJ radial term over the
// interaction set plus tangential term over the adjacency set (d = 2 when
// G_n != 0).  gen is consumed only when noise.sigma_m > 0.
RowVec control_displacement(const Mat& x, int i, const SwarmParams& p, const Gains& g,
                            const LJParams& lj, const ControlNoise& noise,
                            std::mt19937_64& gen);

// Pure radial law with an arbitrary profile, used by the rigid-lattice runs.
RowVec control_radial_only(const Mat& x, int i, const std::function<double(double)>& f,
                           double R_s);

// Spears-style gravitational law; sums over every other agent (the force has
// finite support).  spins holds one boolean spin per agent.
RowVec spears_control(const Mat& x, int i, double G, double F_max, double mass,
                      double R, int L, const std::vector<bool>& spins);

std::vector<bool> alternating_spins(int N);

// Per-agent adaptive tangential gains, driven by the local mean angular error:
// gains only grow, and only while the local error exceeds the target.
struct AdaptiveState {
  Vec G_n;                    // one gain per agent
  double alpha = 3.0;         // adaptation rate
  double e_theta_star = 0.2;  // regularity target
};

// Local regularity estimate for one agent, (L/pi) * mean |angular error| over
// its adjacency set; 0 when isolated.
double local_angular_error(const Mat& x, int i, const SwarmParams& p);

// One explicit-Euler update of every per-agent gain.
void adapt_gains(const Mat& x, const SwarmParams& p, AdaptiveState& st, double dt);

}  // namespace swarm
