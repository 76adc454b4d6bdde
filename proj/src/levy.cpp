#include "swarmkit/levy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace swarm {

void LevyParams::validate() const {
  if (!(v > 0.0)) throw std::invalid_argument("levy: speed must be positive");
  if (run == RunLaw::Exponential && !(lambda > 0.0))
    throw std::invalid_argument("levy: exponential rate must be positive");
  if (run == RunLaw::PowerLaw && (!(exponent > 1.0) || !(t_min > 0.0)))
    throw std::invalid_argument("levy: power law needs exponent > 1 and t_min > 0");
  if (turn == TurnLaw::WrappedGaussian && !(kappa > 0.0))
    throw std::invalid_argument("levy: wrapped-gaussian concentration must be positive");
}

namespace {

double draw_run(const LevyParams& p, std::mt19937_64& gen) {
  if (p.run == LevyParams::RunLaw::Exponential) {
    std::exponential_distribution<double> d(p.lambda);
    return d(gen);
  }
  // Pareto tail: survival (t_min / t)^(exponent - 1)
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double u;
  do {
    u = u01(gen);
  } while (u == 0.0);
  return p.t_min * std::pow(u, -1.0 / (p.exponent - 1.0));
}

double draw_heading(double current, const LevyParams& p, std::mt19937_64& gen) {
  constexpr double pi = std::numbers::pi;
  if (p.turn == LevyParams::TurnLaw::Uniform) {
    std::uniform_real_distribution<double> d(-pi, pi);
    return d(gen);
  }
  std::normal_distribution<double> d(0.0, 1.0 / std::sqrt(p.kappa));
  double h = std::remainder(current + d(gen), 2.0 * pi);
  if (h == pi) h = -pi;
  return h;
}

}  // namespace

LevyAgent levy_step(const LevyAgent& agent, const LevyParams& p, double dt,
                    std::mt19937_64& gen) {
  if (!(dt > 0.0)) throw std::invalid_argument("levy_step: dt must be positive");
  if (agent.position.size() < 2)
    throw std::invalid_argument("levy_step: planar position required");
  LevyAgent next = agent;
  double left = dt;
  while (left > 0.0) {
    if (next.remaining <= 0.0) {
      next.heading = draw_heading(next.heading, p, gen);
      next.remaining = draw_run(p, gen);
      continue;
    }
    const double adv = std::min(next.remaining, left);
    next.position(0) += p.v * adv * std::cos(next.heading);
    next.position(1) += p.v * adv * std::sin(next.heading);
    next.remaining -= adv;
    left -= adv;
  }
  return next;
}

}  // namespace swarm
