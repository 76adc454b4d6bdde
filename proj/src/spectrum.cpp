#include "swarmkit/spectrum.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swarm {

Mat jacobian(const Mat& x, const std::vector<Link>& edges,
             const std::function<double(double)>& f,
             const std::function<double(double)>& f_prime) {
  const int n = static_cast<int>(x.rows());
  const int d = static_cast<int>(x.cols());
  Mat J = Mat::Zero(n * d, n * d);
  for (const Link& e : edges) {
    if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n || e.i == e.j)
      throw std::invalid_argument("jacobian: bad edge");
    const RowVec r = x.row(e.i) - x.row(e.j);
    const double rho = r.norm();
    if (!(rho > 0.0)) throw std::domain_error("jacobian: coincident endpoints");
    const double h = f(rho) / rho;
    const double g = (f_prime(rho) * rho - f(rho)) / (rho * rho * rho);
    // d/dx_i of f(|r|) r/|r| for r = x_i - x_j
    Mat K = g * (r.transpose() * r);
    K.diagonal().array() += h;
    J.block(e.i * d, e.i * d, d, d) += K;
    J.block(e.j * d, e.j * d, d, d) += K;
    J.block(e.i * d, e.j * d, d, d) -= K;
    J.block(e.j * d, e.i * d, d, d) -= K;
  }
  return J;
}

SpectrumReport classify_spectrum(const Mat& J, const Mat& M, double zero_tol_factor) {
  if (J.rows() != J.cols()) throw std::invalid_argument("classify_spectrum: square matrix");
  if (M.rows() > 0 && M.cols() != J.rows())
    throw std::invalid_argument("classify_spectrum: rigidity matrix width");
  if (!(zero_tol_factor > 0.0)) throw std::invalid_argument("classify_spectrum: bad tol");

  SpectrumReport rep;
  const int n = static_cast<int>(J.rows());
  const double asym = (J - J.transpose()).cwiseAbs().maxCoeff();
  const double scale = std::max(1e-300, J.cwiseAbs().maxCoeff());

  Mat vectors(n, n);
  std::vector<std::complex<double>> eig(n);
  if (asym <= 1e-9 * scale) {
    Eigen::SelfAdjointEigenSolver<Mat> es(J);
    if (es.info() != Eigen::Success) throw std::runtime_error("classify_spectrum: eig failed");
    for (int k = 0; k < n; ++k) eig[k] = es.eigenvalues()(k);
    vectors = es.eigenvectors();
  } else {
    Eigen::EigenSolver<Mat> es(J);
    if (es.info() != Eigen::Success) throw std::runtime_error("classify_spectrum: eig failed");
    std::vector<int> order(n);
    for (int k = 0; k < n; ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return es.eigenvalues()(a).real() < es.eigenvalues()(b).real();
    });
    for (int k = 0; k < n; ++k) {
      eig[k] = es.eigenvalues()(order[k]);
      vectors.col(k) = es.eigenvectors().col(order[k]).real();
    }
  }

  double max_abs = 0.0;
  for (const auto& l : eig) max_abs = std::max(max_abs, std::abs(l));
  rep.zero_tol = zero_tol_factor * max_abs;
  rep.eigenvalues = eig;
  for (int k = 0; k < n; ++k) {
    const double re = eig[k].real();
    if (std::abs(eig[k]) <= rep.zero_tol) {
      ++rep.n_zero;
      if (M.rows() > 0) {
        const Vec w = vectors.col(k);
        rep.max_motion_residual = std::max(rep.max_motion_residual, (M * w).norm());
      }
    } else if (re < 0.0) {
      ++rep.n_negative;
    } else {
      ++rep.n_positive;
    }
  }
  return rep;
}

}  // namespace swarm
