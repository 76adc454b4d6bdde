#pragma once

#include "swarmkit/types.hpp"

namespace swarm {

// Indices j != i with ||x_i - x_j|| <= R_s, ascending.
std::vector<int> interaction_set(const Mat& x, int i, double R_s);

// Indices j != i with R_min <= ||x_i - x_j|| <= R_max (closed band), ascending.
std::vector<int> adjacency_set(const Mat& x, int i, double R_min, double R_max);

// All directed links, lexicographic in (i, j).  Symmetric by construction.
LinkSet build_links(const Mat& x, double R_min, double R_max);

// One oriented edge per undirected link (i < j), lexicographic.
Framework make_framework(const Mat& x, double R_min, double R_max);

// Bearing of agent j seen from agent i, in [0, 2*pi).  d = 2 only; throws on
// coincident agents.
double pairwise_angle(const Mat& x, int i, int j);

// Absolute angle in [0, pi] between links (i, j) and (h, k); throws on
// zero-length links.  Works for d = 2 and d = 3.
double pairwise_link_angle(const Mat& x, int i, int j, int h, int k);

// Angle between two relative-position vectors, same contract.
double vector_angle(const RowVec& a, const RowVec& b);

RowVec centroid(const Mat& x);

// True when all pairwise distances agree within tol.
bool is_congruent(const Mat& a, const Mat& b, double tol);

}  // namespace swarm
