#include "swarmkit/lyapunov.hpp"

#include "swarmkit/geometry.hpp"
#include "swarmkit/interaction.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace swarm {

namespace {

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, m, fa, flm, fm);
  const double right = simpson(m, b, fm, frm, fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

}  // namespace

double potential(double z, const std::function<double(double)>& f, double R, double tol) {
  if (!(z > 0.0)) throw std::domain_error("potential: need z > 0");
  if (!(R > 0.0)) throw std::invalid_argument("potential: need R > 0");
  if (z == R) return 0.0;
  const double a = R, b = z;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = simpson(a, b, fa, fm, fb);
  return -adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

double potential_lj(double z, double a, double b, double c, double R) {
  if (!(z >= 0.0)) throw std::domain_error("potential_lj: need z >= 0");
  // antiderivative of the unsaturated branch
  const auto A = [&](double y) {
    return a * std::pow(y, 1.0 - 2.0 * c) / (1.0 - 2.0 * c) -
           b * std::pow(y, 1.0 - c) / (1.0 - c);
  };
  const double knee = f_radial_lj_knee(a, b, c);
  if (z >= knee) return A(R) - A(z);
  // inside the clipped region the profile is the constant 1
  return A(R) - A(knee) + (knee - z);
}

double potential_power_law(double z, double g, double R, double R_a) {
  if (!(z > 0.0)) throw std::domain_error("potential_power_law: need z > 0");
  if (!(R > 0.0) || !(R_a > R)) throw std::invalid_argument("potential_power_law: bad radii");
  const double pi = std::numbers::pi;
  const double K = g * pi * R * R / (R_a - R);
  const double amp = g * (R_a - R) / pi;
  if (z <= R) return K * ((std::log(R) - 1.0) - (std::log(z) - z / R));
  const double zz = std::min(z, R_a);  // profile vanishes beyond R_a
  return amp * (1.0 - std::cos((zz - R) * pi / (R_a - R)));
}

double lyapunov(const Mat& x, const std::vector<Link>& edges, const RowVec& xc_star,
                const std::function<double(double)>& P) {
  if (xc_star.size() != x.cols()) throw std::invalid_argument("lyapunov: centroid dim");
  double v = (xc_star - centroid(x)).squaredNorm();
  for (const Link& e : edges) v += P((x.row(e.i) - x.row(e.j)).norm());
  return v;
}

double lyapunov_rate(const Mat& controls) {
  double acc = 0.0;
  for (int i = 0; i < controls.rows(); ++i) acc -= controls.row(i).squaredNorm();
  return acc;
}

}  // namespace swarm
