#pragma once

#include "swarmkit/types.hpp"

#include <complex>
#include <functional>

namespace swarm {

// Linearisation of the radial gradient flow dx_i/dt = sum_j f(|r_ij|) r_ij/|r_ij|
// around a configuration, assembled per oriented edge.  Layout matches the
// rigidity matrix: row/column v*d + k is coordinate k of agent v.
Mat jacobian(const Mat& x, const std::vector<Link>& edges,
             const std::function<double(double)>& f,
             const std::function<double(double)>& f_prime);

struct SpectrumReport {
  std::vector<std::complex<double>> eigenvalues;  // ascending by real part
  int n_zero = 0;
  int n_negative = 0;
  int n_positive = 0;
  double zero_tol = 0.0;
  // worst ||M w|| over the eigenvectors of the near-zero eigenvalues; small
  // values certify they are rigid-body motions
  double max_motion_residual = 0.0;
};

// Eigen-decomposition with a zero band of zero_tol_factor * max |lambda|.
// M is the rigidity matrix used to classify the near-zero eigenvectors; pass
// a 0-row matrix to skip that check.
SpectrumReport classify_spectrum(const Mat& J, const Mat& M,
                                 double zero_tol_factor = 1e-6);

}  // namespace swarm
