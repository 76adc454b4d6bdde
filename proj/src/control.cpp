#include "swarmkit/control.hpp"

#include "swarmkit/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace swarm {

namespace {
constexpr double pi = std::numbers::pi;
}

double angular_error(double theta, int L) {
  if (L < 1) throw std::invalid_argument("angular_error: L must be >= 1");
  if (!std::isfinite(theta)) throw std::domain_error("angular_error: non-finite angle");
  const double period = 2.0 * pi / L;
  const double half = pi / L;
  // nearest multiple, ties resolved so the residual lands on +pi/L
  const double q = std::ceil(theta / period - 0.5);
  double e = theta - q * period;
  if (e > half) e -= period;
  if (e <= -half) e += period;
  return e;
}

double f_normal(double err, int L) {
  if (L < 1) throw std::invalid_argument("f_normal: L must be >= 1");
  const double half = pi / L;
  // lower end open, upper end closed (with roundoff slack on the closed end)
  if (!(err > -half) || err > half + 1e-12)
    throw std::domain_error("f_normal: error outside ]-pi/L, pi/L]");
  return -(static_cast<double>(L) / pi) * err;
}

RowVec control_displacement(const Mat& x, int i, const SwarmParams& p, const Gains& g,
                            const LJParams& lj, const ControlNoise& noise,
                            std::mt19937_64& gen) {
  const int d = static_cast<int>(x.cols());
  if (g.G_n != 0.0 && d != 2)
    throw std::invalid_argument("control_displacement: tangential term needs d = 2");
  std::normal_distribution<double> gauss(0.0, 1.0);
  RowVec u = RowVec::Zero(d);
  const int n = static_cast<int>(x.rows());
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    const RowVec r = x.row(i) - x.row(j);
    const double z = r.norm();
    if (z > p.R_s) continue;
    // radial term over the interaction set, on the measured distance
    double z_meas = z;
    if (noise.sigma_m > 0.0) z_meas = std::max(0.0, z + noise.sigma_m * gauss(gen));
    if (z > 0.0) {
      u += g.G_r * f_radial_lj(z_meas, lj.a, lj.b, lj.c) * (r / z);
    }
    // tangential term over the adjacency band
    if (g.G_n != 0.0 && z >= p.R_min && z <= p.R_max && z > 0.0) {
      double theta = pairwise_angle(x, i, j) + noise.compass_offset;
      if (noise.sigma_m > 0.0 && noise.bearing_noise)
        theta += noise.sigma_m * (pi / p.L) * gauss(gen);
      const double fn = f_normal(angular_error(theta, p.L), p.L);
      const RowVec r_hat = r / z;
      RowVec perp(2);
      perp << -r_hat(1), r_hat(0);  // +pi/2 rotation
      u += g.G_n * fn * perp / z;
    }
  }
  return u;
}

RowVec control_radial_only(const Mat& x, int i, const std::function<double(double)>& f,
                           double R_s) {
  const int d = static_cast<int>(x.cols());
  RowVec u = RowVec::Zero(d);
  const int n = static_cast<int>(x.rows());
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    const RowVec r = x.row(i) - x.row(j);
    const double z = r.norm();
    if (z > R_s) continue;
    const double val = f(z);  // profiles that diverge at contact throw here
    if (z > 0.0) u += val * (r / z);
  }
  return u;
}

RowVec spears_control(const Mat& x, int i, double G, double F_max, double mass,
                      double R, int L, const std::vector<bool>& spins) {
  const int n = static_cast<int>(x.rows());
  if (static_cast<int>(spins.size()) != n)
    throw std::invalid_argument("spears_control: one spin per agent required");
  const int d = static_cast<int>(x.cols());
  RowVec u = RowVec::Zero(d);
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    const RowVec r = x.row(i) - x.row(j);
    const double z = r.norm();
    const double f = spears_force(z, spins[i] == spins[j], G, F_max, mass, R, L);
    if (z > 0.0) u += f * (r / z);
  }
  return u;
}

std::vector<bool> alternating_spins(int N) {
  std::vector<bool> s(N);
  for (int i = 0; i < N; ++i) s[i] = (i % 2) != 0;
  return s;
}

double local_angular_error(const Mat& x, int i, const SwarmParams& p) {
  const auto adj = adjacency_set(x, i, p.R_min, p.R_max);
  if (adj.empty()) return 0.0;
  double acc = 0.0;
  for (int j : adj) acc += std::abs(angular_error(pairwise_angle(x, i, j), p.L));
  return (static_cast<double>(p.L) / pi) * acc / static_cast<double>(adj.size());
}

void adapt_gains(const Mat& x, const SwarmParams& p, AdaptiveState& st, double dt) {
  const int n = static_cast<int>(x.rows());
  if (st.G_n.size() != n) throw std::invalid_argument("adapt_gains: gain vector size");
  for (int i = 0; i < n; ++i) {
    const double e = local_angular_error(x, i, p);
    if (e > st.e_theta_star) st.G_n(i) += dt * st.alpha * (e - st.e_theta_star);
  }
}

}  // namespace swarm
