#include "swarmkit/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace swarm {

namespace {

void check_finite(const Mat& controls) {
  for (int i = 0; i < controls.rows(); ++i)
    if (!controls.row(i).allFinite())
      throw std::runtime_error("dynamics: non-finite control for agent " + std::to_string(i));
}

void clip_speed(RowVec& v, double V_max) {
  if (!std::isfinite(V_max)) return;
  const double s = v.norm();
  if (s > V_max) v *= V_max / s;
}

}  // namespace

void step_first_order(SwarmState& s, const Mat& controls, const SwarmParams& p,
                      double sigma_a, std::mt19937_64& gen) {
  if (controls.rows() != s.x.rows() || controls.cols() != s.x.cols())
    throw std::invalid_argument("step_first_order: control shape mismatch");
  check_finite(controls);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double noise_vel = sigma_a / std::sqrt(p.dt);
  for (int i = 0; i < s.x.rows(); ++i) {
    RowVec u = controls.row(i);
    if (sigma_a > 0.0)
      for (int k = 0; k < u.size(); ++k) u(k) += noise_vel * gauss(gen);
    clip_speed(u, p.V_max);  // saturation acts on the noisy command
    s.x.row(i) += p.dt * u;
  }
}

void step_second_order(SwarmState& s, const Mat& controls, const SwarmParams& p,
                       const DynamicsSpec& dyn, std::mt19937_64& gen) {
  if (!s.v) throw std::invalid_argument("step_second_order: state has no velocities");
  if (controls.rows() != s.x.rows() || controls.cols() != s.x.cols())
    throw std::invalid_argument("step_second_order: control shape mismatch");
  check_finite(controls);
  if (!(dyn.m > 0.0)) throw std::invalid_argument("step_second_order: mass must be positive");
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double noise_force = dyn.sigma_a / std::sqrt(p.dt);
  Mat& v = *s.v;
  for (int i = 0; i < s.x.rows(); ++i) {
    RowVec u = controls.row(i);
    if (dyn.sigma_a > 0.0)
      for (int k = 0; k < u.size(); ++k) u(k) += noise_force * gauss(gen);
    RowVec vi = v.row(i);
    vi += (p.dt / dyn.m) * (u - dyn.mu * vi);
    clip_speed(vi, p.V_max);
    v.row(i) = vi;
    s.x.row(i) += p.dt * vi;
  }
}

}  // namespace swarm
