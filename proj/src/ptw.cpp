#include "swarmkit/ptw.hpp"

#include <cmath>
#include <stdexcept>

namespace swarm {

void PTWParams::validate() const {
  if (!(theta_v > 0.0) || !(theta_w > 0.0))
    throw std::invalid_argument("ptw: rates theta must be positive");
  if (!(sigma_v >= 0.0) || !(sigma_w >= 0.0))
    throw std::invalid_argument("ptw: volatilities must be nonnegative");
}

KinematicAgent ptw_step(const KinematicAgent& agent, const PTWParams& p, double u,
                        double u_dot, double dt, std::mt19937_64& gen) {
  if (!(dt > 0.0)) throw std::invalid_argument("ptw_step: dt must be positive");
  if (agent.position.size() < 2)
    throw std::invalid_argument("ptw_step: planar position required");
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double up = std::max(u_dot, 0.0);
  const double down = std::min(u_dot, 0.0);

  KinematicAgent next = agent;

  const double drift_v =
      p.theta_v * (p.mu_v - agent.v) + p.alpha_v * u + p.beta_v * up + p.gamma_v * down;
  next.v = agent.v + drift_v * dt + p.sigma_v * std::sqrt(dt) * gauss(gen);
  if (next.v < 0.0) next.v = 0.0;

  double sgn;
  if (std::abs(agent.w) < 1e-9) {
    sgn = (gen() & 1u) ? 1.0 : -1.0;
  } else {
    sgn = agent.w > 0.0 ? 1.0 : -1.0;
  }
  const double drift_w =
      -p.theta_w * agent.w + sgn * (p.alpha_w * u + p.beta_w * up + p.gamma_w * down);
  next.w = agent.w + drift_w * dt + p.sigma_w * std::sqrt(dt) * gauss(gen);

  next.heading = agent.heading + next.w * dt;
  next.position(0) = agent.position(0) + next.v * dt * std::cos(next.heading);
  next.position(1) = agent.position(1) + next.v * dt * std::sin(next.heading);
  return next;
}

double exact_ou_step(double x, double u, const OUParams& p, double dT,
                     std::mt19937_64& gen) {
  if (!(p.theta > 0.0)) throw std::invalid_argument("exact_ou_step: theta must be positive");
  if (!(dT > 0.0)) throw std::invalid_argument("exact_ou_step: dT must be positive");
  const double a = std::exp(-p.theta * dT);
  const double mean = a * x + (p.mu + p.alpha * u / p.theta) * (1.0 - a);
  const double var = p.sigma * p.sigma * (1.0 - a * a) / (2.0 * p.theta);
  if (var == 0.0) return mean;
  std::normal_distribution<double> gauss(0.0, std::sqrt(var));
  return mean + gauss(gen);
}

PTWRecord simulate_ptw(const KinematicAgent& start, const PTWParams& p,
                       const LightProgram& program, double T, double dt_internal,
                       double dT_obs, std::mt19937_64& gen) {
  p.validate();
  program.validate();
  if (!(dt_internal > 0.0) || !(dT_obs > 0.0) || !(T > 0.0))
    throw std::invalid_argument("simulate_ptw: times must be positive");
  const int sub = static_cast<int>(std::round(dT_obs / dt_internal));
  if (sub < 1 || std::abs(sub * dt_internal - dT_obs) > 1e-9 * dT_obs)
    throw std::invalid_argument("simulate_ptw: dT_obs must be a multiple of dt_internal");
  const int n_obs = static_cast<int>(std::floor(T / dT_obs + 1e-9)) + 1;

  PTWRecord rec;
  rec.t.reserve(n_obs);
  rec.position.resize(n_obs, 2);
  rec.heading.reserve(n_obs);
  rec.v.reserve(n_obs);
  rec.w.reserve(n_obs);
  rec.u.reserve(n_obs);

  KinematicAgent agent = start;
  double u_prev = light_at(program, agent.position, 0.0);
  auto record = [&](int k, double t) {
    rec.t.push_back(t);
    rec.position(k, 0) = agent.position(0);
    rec.position(k, 1) = agent.position(1);
    rec.heading.push_back(agent.heading);
    rec.v.push_back(agent.v);
    rec.w.push_back(agent.w);
    rec.u.push_back(light_at(program, agent.position, t));
  };
  record(0, 0.0);

  for (int k = 1; k < n_obs; ++k) {
    const double t_base = (k - 1) * dT_obs;
    for (int j = 0; j < sub; ++j) {
      const double t_now = t_base + j * dt_internal;
      const double u_now = light_at(program, agent.position, t_now);
      const double u_dot = (u_now - u_prev) / dt_internal;
      agent = ptw_step(agent, p, u_now, u_dot, dt_internal, gen);
      u_prev = u_now;
    }
    record(k, k * dT_obs);
  }
  return rec;
}

}  // namespace swarm
