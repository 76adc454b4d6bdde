#include "swarmkit/sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace swarm {

RowVec sample_in_ball(int d, double r, std::mt19937_64& gen) {
  if (d != 2 && d != 3) throw std::invalid_argument("sample_in_ball: d must be 2 or 3");
  if (!(r >= 0.0)) throw std::invalid_argument("sample_in_ball: radius must be >= 0");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  RowVec p(d);
  if (d == 2) {
    const double phi = 2.0 * std::numbers::pi * unit(gen);
    const double rho = r * std::sqrt(unit(gen));
    p << rho * std::cos(phi), rho * std::sin(phi);
  } else {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::Vector3d dir;
    do {
      dir << gauss(gen), gauss(gen), gauss(gen);
    } while (dir.norm() == 0.0);
    dir.normalize();
    const double rho = r * std::cbrt(unit(gen));
    p << rho * dir(0), rho * dir(1), rho * dir(2);
  }
  return p;
}

Mat sample_disk_initial(int N, int d, double r, std::mt19937_64& gen) {
  if (N < 1) throw std::invalid_argument("sample_disk_initial: N must be >= 1");
  Mat x(N, d);
  for (int i = 0; i < N; ++i) x.row(i) = sample_in_ball(d, r, gen);
  return x;
}

}  // namespace swarm
