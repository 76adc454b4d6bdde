#pragma once

#include "swarmkit/types.hpp"

namespace swarm {

// Projected light input: a temporal envelope times a spatial mask, both in
// [0, 1].  Intensities are fractions of full brightness.
struct LightProgram {
  enum class Temporal { Off, Constant, Step, Ramp, Switch };
  enum class Spatial {
    Uniform,
    HalfHalf,          // lit where (x - center)_0 >= 0
    GradientLateral,   // 0 at center_0 - radius, 1 at center_0 + radius
    GradientCenterLight,  // 1 at center, fading to 0 at distance radius
    GradientCenterDark,   // 0 at center, rising to 1 at distance radius
    CircleLight,       // intensity inside the disk, 0 outside
    CircleDark         // 0 inside the disk, intensity outside
  };

  Temporal temporal = Temporal::Off;
  double intensity = 1.0;  // I, or the ramp peak
  double t0 = 0.0;         // step: on time; ramp: start; switch: initial off span
  double t1 = 0.0;         // step: off time; ramp: end of rise
  double period = 20.0;    // switch only
  double duty = 0.5;       // switch only, fraction of the period spent on

  Spatial spatial = Spatial::Uniform;
  double center_x = 0.0;
  double center_y = 0.0;
  double radius = 1.0;  // disk radius, or gradient length scale

  void validate() const;
};

// Envelope value at time t; piecewise linear in t (constant except the ramp).
double temporal_envelope(const LightProgram& p, double t);

// Mask value at a planar position.
double spatial_mask(const LightProgram& p, const RowVec& x);

double light_at(const LightProgram& p, const RowVec& x, double t);

}  // namespace swarm
