#pragma once

#include "swarmkit/types.hpp"

#include <functional>

namespace swarm {

// Pair potential P(z) = -int_R^z f(y) dy for an arbitrary radial profile,
// adaptive-Simpson quadrature to about 1e-10.  P(R) = 0 and P >= 0 whenever f
// is repulsive below R and attractive above.
double potential(double z, const std::function<double(double)>& f, double R,
                 double tol = 1e-10);

// Closed forms for the two stock profiles.
double potential_lj(double z, double a, double b, double c, double R);
double potential_power_law(double z, double g, double R, double R_a);

// Energy-like function for radial laws: squared centroid offset from the
// reference plus the summed pair potentials over the oriented edges.
double lyapunov(const Mat& x, const std::vector<Link>& edges, const RowVec& xc_star,
                const std::function<double(double)>& P);

// Dissipation identity for the gradient flow: dV/dt = -sum ||u_i||^2.
double lyapunov_rate(const Mat& controls);

}  // namespace swarm
