#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace swarm {

// Radial interaction profiles.  All take the current inter-agent distance z
// (same unit as R) and return a signed magnitude: positive pushes the pair
// apart, negative pulls it together.

// Saturated Lennard-Jones-type profile, zero at z = (a/b)^(1/c), clipped at +1.
// With a = b the zero sits at z = 1 in units of R.
template <typename Scalar>
Scalar f_radial_lj(Scalar z, Scalar a, Scalar b, Scalar c) {
  if (z < Scalar(0)) throw std::domain_error("f_radial_lj: negative distance");
  if (z == Scalar(0)) return Scalar(1);  // saturated limit
  const Scalar zc = std::pow(z, c);
  const Scalar raw = a / (zc * zc) - b / zc;
  return std::min(raw, Scalar(1));
}

// Slope of the unsaturated branch; the clipped region has zero slope.
template <typename Scalar>
Scalar f_radial_lj_prime(Scalar z, Scalar a, Scalar b, Scalar c) {
  if (z <= Scalar(0)) throw std::domain_error("f_radial_lj_prime: need z > 0");
  const Scalar zc = std::pow(z, c);
  if (a / (zc * zc) - b / zc >= Scalar(1)) return Scalar(0);
  return (-Scalar(2) * c * a / (zc * zc) + c * b / zc) / z;
}

// Distance below which the LJ profile saturates at +1 (0 when it never does).
template <typename Scalar>
Scalar f_radial_lj_knee(Scalar a, Scalar b, Scalar c) {
  const Scalar y = (b + std::sqrt(b * b + Scalar(4) * a)) / (Scalar(2) * a);
  return std::pow(y, Scalar(-1) / c);
}

// Unbounded power-law profile: hard repulsion diverging at contact, smooth
// sinusoidal attraction on ]R, R_a], zero beyond.  Guarantees collision
// avoidance at the price of unbounded inputs.
template <typename Scalar>
Scalar f1_power_law(Scalar z, Scalar g, Scalar R, Scalar R_a) {
  if (!(R > Scalar(0)) || !(R_a > R)) throw std::invalid_argument("f1_power_law: need 0 < R < R_a");
  if (z <= Scalar(0)) throw std::domain_error("f1_power_law: need z > 0");
  const Scalar pi = std::numbers::pi_v<Scalar>;
  if (z <= R) return g * (Scalar(1) / z - Scalar(1) / R) * pi * R * R / (R_a - R);
  if (z <= R_a) return -g * std::sin((z - R) * pi / (R_a - R));
  return Scalar(0);
}

template <typename Scalar>
Scalar f1_power_law_prime(Scalar z, Scalar g, Scalar R, Scalar R_a) {
  if (z <= Scalar(0)) throw std::domain_error("f1_power_law_prime: need z > 0");
  const Scalar pi = std::numbers::pi_v<Scalar>;
  if (z <= R) return -g * pi * R * R / ((R_a - R) * z * z);
  if (z <= R_a) return -g * std::cos((z - R) * pi / (R_a - R)) * pi / (R_a - R);
  return Scalar(0);
}

// Gravitational-style pairwise force with hard clipping, after Spears'
// artificial-physics scheme.  Repulsive up to R_eff, attractive up to
// 1.5 R_eff, zero beyond.  For square lattices (L = 4) same-spin pairs use
// R_eff = sqrt(2) R so that diagonal neighbours settle at the diagonal.
template <typename Scalar>
Scalar spears_force(Scalar z, bool same_spin, Scalar G, Scalar F_max, Scalar mass,
                    Scalar R, int L) {
  if (z < Scalar(0)) throw std::domain_error("spears_force: negative distance");
  const Scalar R_eff = (L == 4 && same_spin) ? std::sqrt(Scalar(2)) * R : R;
  if (z > Scalar(1.5) * R_eff) return Scalar(0);
  Scalar mag = F_max;
  if (z > Scalar(0)) mag = std::clamp(G * mass * mass / (z * z), Scalar(0), F_max);
  return (z <= R_eff) ? mag : -mag;
}

}  // namespace swarm
