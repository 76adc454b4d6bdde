#pragma once

#include "swarmkit/types.hpp"

#include <random>

namespace swarm {

// N-site patch of a triangular (d = 2) or face-centred-cubic (d = 3) grid
// with spacing R, grown by randomized accretion from a minimal rigid seed.
// Each added site attaches to at least d already-chosen neighbours whose
// directions span the space, so every intermediate patch is infinitesimally
// rigid.  The patch is centred and randomly rotated.  vacancies > 0 grows a
// larger patch and knocks out interior sites while preserving rigidity.
Mat generate_rigid_lattice(int N, int d, double R, std::mt19937_64& gen,
                           int vacancies = 0);

// Independent uniform displacement of radius <= delta per agent.
Mat perturb(const Mat& x, double delta, std::mt19937_64& gen);

}  // namespace swarm
