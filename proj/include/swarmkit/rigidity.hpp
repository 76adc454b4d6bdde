#pragma once

#include "swarmkit/types.hpp"

#include <optional>

namespace swarm {

// Vertex-by-edge incidence matrix of the oriented edges: +1 at the tail,
// -1 at the head.
Mat incidence_matrix(const Framework& fw);

// Edge-by-(d N) rigidity matrix: row e carries (p_j - p_i) under the columns
// of vertex i and (p_i - p_j) under those of vertex j.  Column layout is
// agent-major: column v*d + k is coordinate k of vertex v.
Mat rigidity_matrix(const Framework& fw);

struct RigidityReport {
  int rank = 0;
  int required_rank = 0;
  bool infinitesimally_rigid = false;
  std::optional<double> link_error;  // vs R, only filled by the lattice check
  bool rigid_lattice = false;
};

// Numerical rank of the rigidity matrix (singular values above
// rank_tol * sigma_max) against d N - d (d + 1) / 2.  Requires N >= d.
RigidityReport is_infinitesimally_rigid(const Framework& fw, double rank_tol = 1e-8);

// Rigid lattice: infinitesimally rigid and every edge length within len_tol
// of R.
RigidityReport check_rigid_lattice(const Framework& fw, double R,
                                   double rank_tol = 1e-8, double len_tol = 1e-10);

}  // namespace swarm
