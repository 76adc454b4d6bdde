#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

namespace swarm {

// Agent configurations are stored row-wise: row i is the position of agent i.
using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using RowVec = Eigen::RowVectorXd;

// Geometry and timing shared by every swarm scenario.  Distances share the
// unit of R, angles are radians, times are seconds.
struct SwarmParams {
  int N = 100;         // number of agents
  int d = 2;           // spatial dimension, 2 or 3
  double R = 1.0;      // target link length
  double R_min = 0.6;  // adjacency band, lower edge (closed)
  double R_max = 1.1;  // adjacency band, upper edge (closed)
  double R_s = std::numeric_limits<double>::infinity();  // sensing radius; unbounded: every agent senses all others
  double V_max = 5.0;  // speed cap; infinity disables saturation
  double dt = 0.01;    // integration step
  int L = 6;           // lattice symmetry order (6 triangular, 4 square)
  double T_w = 10.0;   // trailing window for steady-state detection

  void validate() const;  // throws std::invalid_argument on violation
};

struct SwarmState {
  double t = 0.0;
  Mat x;                  // N x d positions
  std::optional<Mat> v;   // N x d velocities, second-order dynamics only

  int size() const { return static_cast<int>(x.rows()); }
  int dim() const { return static_cast<int>(x.cols()); }
};

// Directed link (i, j) with its cached length.  Link sets are symmetric:
// (i, j) present iff (j, i) present.
struct Link {
  int i = 0;
  int j = 0;
  double length = 0.0;
};

using LinkSet = std::vector<Link>;

// A framework is a configuration plus one oriented edge (i < j) per
// undirected link; the matrix machinery (incidence, rigidity, Lyapunov sums)
// counts each link once.
struct Framework {
  Mat config;
  std::vector<Link> edges;

  int vertex_count() const { return static_cast<int>(config.rows()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  int dim() const { return static_cast<int>(config.cols()); }
};

}  // namespace swarm
