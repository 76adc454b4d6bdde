#pragma once

#include "swarmkit/types.hpp"

#include <random>

namespace swarm {

// Run-and-tumble walker: constant speed v along a heading held for a random
// run duration; on expiry the heading is redrawn and a new duration sampled.
struct LevyParams {
  enum class RunLaw { Exponential, PowerLaw };
  enum class TurnLaw { Uniform, WrappedGaussian };

  double v = 1.0;  // px/s
  RunLaw run = RunLaw::Exponential;
  double lambda = 1.0;    // exponential rate
  double exponent = 2.0;  // power law tail exponent, > 1
  double t_min = 0.1;     // power law lower cutoff
  TurnLaw turn = TurnLaw::Uniform;
  double kappa = 4.0;  // wrapped-gaussian concentration; turn std = 1/sqrt(kappa)

  void validate() const;
};

struct LevyAgent {
  RowVec position = RowVec::Zero(2);
  double heading = 0.0;
  double remaining = 0.0;  // run time left; 0 forces a tumble on the next step
};

// Advance by dt, tumbling (instantaneously) as often as run expiries demand.
// Uniform turns redraw the heading on [-pi, pi); wrapped-gaussian turns add a
// zero-mean deviation to the current heading.
LevyAgent levy_step(const LevyAgent& agent, const LevyParams& p, double dt,
                    std::mt19937_64& gen);

}  // namespace swarm
