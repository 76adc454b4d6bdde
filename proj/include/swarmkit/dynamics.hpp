#pragma once

#include "swarmkit/types.hpp"

#include <random>

namespace swarm {

enum class DynKind { FirstOrder, SecondOrder };

struct DynamicsSpec {
  DynKind kind = DynKind::FirstOrder;
  double m = 1.0;        // mass, second order only
  double mu = 1.0;       // linear drag, second order only
  double sigma_a = 0.0;  // actuation noise intensity
};

// Single-integrator step: the commanded velocity is the control plus
// actuation noise, speed-clipped at V_max, then integrated for dt.  Noise is
// scaled so the position increment follows Euler-Maruyama (std sigma_a *
// sqrt(dt) per step).  Does not advance s.t; drivers set t = step * dt.
void step_first_order(SwarmState& s, const Mat& controls, const SwarmParams& p,
                      double sigma_a, std::mt19937_64& gen);

// Double-integrator step with linear drag: m dv = (u - mu v) dt, speed of v
// clipped at V_max, then x advances by dt v.
void step_second_order(SwarmState& s, const Mat& controls, const SwarmParams& p,
                       const DynamicsSpec& dyn, std::mt19937_64& gen);

}  // namespace swarm
