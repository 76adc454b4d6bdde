#pragma once

#include "swarmkit/types.hpp"

#include <random>

namespace swarm {

// Uniform sample inside a d-ball of radius r centred at the origin.
// d = 2: angle uniform, radius r * sqrt(U); d = 3: direction from a normalised
// Gaussian, radius r * U^(1/3).
RowVec sample_in_ball(int d, double r, std::mt19937_64& gen);

// N agents dropped uniformly in the ball; the standard initial condition for
// formation runs.
Mat sample_disk_initial(int N, int d, double r, std::mt19937_64& gen);

}  // namespace swarm
