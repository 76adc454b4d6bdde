#pragma once

#include "swarmkit/light.hpp"
#include "swarmkit/types.hpp"

#include <random>
#include <vector>

namespace swarm {

// Persistent-turning-walker with speed and angular velocity following
// mean-reverting processes driven by a light input u and its step-up
// derivative max(u_dot, 0).  The optional gamma gains add the symmetric
// step-down term min(u_dot, 0); they default to off.
struct PTWParams {
  double theta_v = 1.0;  // 1/s
  double mu_v = 40.0;    // px/s
  double sigma_v = 8.0;
  double alpha_v = 0.0;
  double beta_v = 0.0;
  double gamma_v = 0.0;
  double theta_w = 1.0;  // 1/s
  double sigma_w = 1.0;
  double alpha_w = 0.0;
  double beta_w = 0.0;
  double gamma_w = 0.0;

  void validate() const;
};

struct KinematicAgent {
  RowVec position = RowVec::Zero(2);  // px
  double heading = 0.0;               // rad
  double v = 0.0;                     // px/s, >= 0
  double w = 0.0;                     // rad/s
};

// One Euler-Maruyama step.  The angular input push acts along sign(w); when
// |w| < 1e-9 the sign is drawn uniformly so the turning direction stays
// unbiased.  Speed is clamped at zero from below.  Updates are sequential:
// the new w turns the heading, the new v and heading advance the position.
KinematicAgent ptw_step(const KinematicAgent& agent, const PTWParams& p, double u,
                        double u_dot, double dt, std::mt19937_64& gen);

// Linear mean-reverting SDE dx = [theta (mu - x) + alpha u] dt + sigma dW.
struct OUParams {
  double theta = 1.0;
  double mu = 0.0;
  double alpha = 0.0;
  double sigma = 0.0;
};

// Exact transition over dT with the input held: conditional mean
// e^{-theta dT} x + (mu + alpha u / theta)(1 - e^{-theta dT}) and variance
// sigma^2 (1 - e^{-2 theta dT}) / (2 theta).
double exact_ou_step(double x, double u, const OUParams& p, double dT,
                     std::mt19937_64& gen);

// Trajectory sampled at the observation interval; the SDE advances at the
// finer internal step.  u is the light sampled at the agent's position and
// u_dot its causal backward difference at the internal step.
struct PTWRecord {
  std::vector<double> t;
  Mat position;  // sample-major, 2 columns
  std::vector<double> heading;
  std::vector<double> v;
  std::vector<double> w;
  std::vector<double> u;
};

PTWRecord simulate_ptw(const KinematicAgent& start, const PTWParams& p,
                       const LightProgram& program, double T, double dt_internal,
                       double dT_obs, std::mt19937_64& gen);

}  // namespace swarm
