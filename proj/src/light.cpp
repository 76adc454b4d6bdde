#include "swarmkit/light.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swarm {

void LightProgram::validate() const {
  if (!(intensity >= 0.0) || intensity > 1.0)
    throw std::invalid_argument("light: intensity must lie in [0, 1]");
  if (!(t0 >= 0.0) || !(t1 >= 0.0))
    throw std::invalid_argument("light: times must be nonnegative");
  if (temporal == Temporal::Step && !(t1 > t0))
    throw std::invalid_argument("light: step needs t1 > t0");
  if (temporal == Temporal::Ramp && !(t1 > t0))
    throw std::invalid_argument("light: ramp needs t1 > t0");
  if (temporal == Temporal::Switch) {
    if (!(period > 0.0)) throw std::invalid_argument("light: switch needs period > 0");
    if (!(duty >= 0.0) || duty > 1.0)
      throw std::invalid_argument("light: duty must lie in [0, 1]");
  }
  const bool needs_radius = spatial != Spatial::Uniform && spatial != Spatial::HalfHalf;
  if (needs_radius && !(radius > 0.0))
    throw std::invalid_argument("light: spatial mask needs radius > 0");
}

double temporal_envelope(const LightProgram& p, double t) {
  switch (p.temporal) {
    case LightProgram::Temporal::Off:
      return 0.0;
    case LightProgram::Temporal::Constant:
      return p.intensity;
    case LightProgram::Temporal::Step:
      return (t >= p.t0 && t < p.t1) ? p.intensity : 0.0;
    case LightProgram::Temporal::Ramp:
      if (t < p.t0) return 0.0;
      if (t >= p.t1) return p.intensity;  // hold at the peak after the rise
      return p.intensity * (t - p.t0) / (p.t1 - p.t0);
    case LightProgram::Temporal::Switch: {
      if (t < p.t0) return 0.0;
      const double phase = std::fmod(t - p.t0, p.period);
      return phase < p.duty * p.period ? p.intensity : 0.0;
    }
  }
  return 0.0;
}

double spatial_mask(const LightProgram& p, const RowVec& x) {
  if (x.size() < 2) throw std::invalid_argument("light: planar position required");
  const double dx = x(0) - p.center_x;
  const double dy = x(1) - p.center_y;
  const double r = std::hypot(dx, dy);
  switch (p.spatial) {
    case LightProgram::Spatial::Uniform:
      return 1.0;
    case LightProgram::Spatial::HalfHalf:
      return dx >= 0.0 ? 1.0 : 0.0;
    case LightProgram::Spatial::GradientLateral:
      return std::clamp((dx + p.radius) / (2.0 * p.radius), 0.0, 1.0);
    case LightProgram::Spatial::GradientCenterLight:
      return std::clamp(1.0 - r / p.radius, 0.0, 1.0);
    case LightProgram::Spatial::GradientCenterDark:
      return std::clamp(r / p.radius, 0.0, 1.0);
    case LightProgram::Spatial::CircleLight:
      return r <= p.radius ? 1.0 : 0.0;
    case LightProgram::Spatial::CircleDark:
      return r <= p.radius ? 0.0 : 1.0;
  }
  return 1.0;
}

double light_at(const LightProgram& p, const RowVec& x, double t) {
  return temporal_envelope(p, t) * spatial_mask(p, x);
}

}  // namespace swarm
