#include "swarmkit/rigidity.hpp"

#include "swarmkit/metrics.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

namespace swarm {

Mat incidence_matrix(const Framework& fw) {
  const int n = fw.vertex_count();
  const int m = fw.edge_count();
  Mat B = Mat::Zero(n, m);
  for (int e = 0; e < m; ++e) {
    const Link& l = fw.edges[e];
    if (l.i < 0 || l.i >= n || l.j < 0 || l.j >= n || l.i == l.j)
      throw std::invalid_argument("incidence_matrix: bad edge");
    B(l.i, e) = 1.0;
    B(l.j, e) = -1.0;
  }
  return B;
}

Mat rigidity_matrix(const Framework& fw) {
  const int n = fw.vertex_count();
  const int m = fw.edge_count();
  const int d = fw.dim();
  Mat M = Mat::Zero(m, n * d);
  for (int e = 0; e < m; ++e) {
    const Link& l = fw.edges[e];
    if (l.i < 0 || l.i >= n || l.j < 0 || l.j >= n || l.i == l.j)
      throw std::invalid_argument("rigidity_matrix: bad edge");
    const RowVec diff = fw.config.row(l.j) - fw.config.row(l.i);
    M.block(e, l.i * d, 1, d) = diff;
    M.block(e, l.j * d, 1, d) = -diff;
  }
  return M;
}

RigidityReport is_infinitesimally_rigid(const Framework& fw, double rank_tol) {
  const int n = fw.vertex_count();
  const int d = fw.dim();
  if (n < d) throw std::invalid_argument("is_infinitesimally_rigid: need N >= d");
  if (!(rank_tol > 0.0)) throw std::invalid_argument("is_infinitesimally_rigid: bad tol");
  RigidityReport rep;
  rep.required_rank = d * n - d * (d + 1) / 2;
  if (fw.edge_count() == 0) {
    rep.rank = 0;
    rep.infinitesimally_rigid = (rep.required_rank == 0);
    return rep;
  }
  const Mat M = rigidity_matrix(fw);
  Eigen::BDCSVD<Mat> svd(M);
  const auto& s = svd.singularValues();
  const double s_max = s.size() ? s(0) : 0.0;
  int rank = 0;
  if (s_max > 0.0)
    for (int k = 0; k < s.size(); ++k)
      if (s(k) > rank_tol * s_max) ++rank;
  rep.rank = rank;
  rep.infinitesimally_rigid = (rank == rep.required_rank);
  return rep;
}

RigidityReport check_rigid_lattice(const Framework& fw, double R, double rank_tol,
                                   double len_tol) {
  RigidityReport rep = is_infinitesimally_rigid(fw, rank_tol);
  rep.link_error = fw.edges.empty() ? std::optional<double>{}
                                    : link_length_error(fw.edges, R);
  rep.rigid_lattice = rep.infinitesimally_rigid && rep.link_error &&
                      *rep.link_error <= len_tol;
  return rep;
}

}  // namespace swarm
