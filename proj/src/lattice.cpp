#include "swarmkit/lattice.hpp"

#include "swarmkit/geometry.hpp"
#include "swarmkit/rigidity.hpp"
#include "swarmkit/sampling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <vector>

namespace swarm {

namespace {

struct Coord {
  int a = 0, b = 0, c = 0;
  auto operator<=>(const Coord&) const = default;
};

std::vector<Coord> grid_neighbors(const Coord& s, int d) {
  std::vector<Coord> out;
  if (d == 2) {
    constexpr std::array<std::array<int, 2>, 6> offs{
        {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, -1}, {-1, 1}}};
    for (const auto& o : offs) out.push_back({s.a + o[0], s.b + o[1], 0});
  } else {
    // fcc: all permutations of (+-1, +-1, 0)
    for (int i = 0; i < 3; ++i)
      for (int si : {-1, 1})
        for (int sj : {-1, 1}) {
          std::array<int, 3> o{0, 0, 0};
          o[i] = si;
          o[(i + 1) % 3] = sj;
          out.push_back({s.a + o[0], s.b + o[1], s.c + o[2]});
        }
  }
  return out;
}

RowVec grid_position(const Coord& s, int d, double R) {
  RowVec p(d);
  if (d == 2) {
    p << (s.a + 0.5 * s.b) * R, s.b * std::sqrt(3.0) / 2.0 * R;
  } else {
    const double u = R / std::sqrt(2.0);
    p << s.a * u, s.b * u, s.c * u;
  }
  return p;
}

// Directions from cand to its chosen neighbours must span R^d, so accreting
// cand is a non-degenerate vertex addition and rigidity is preserved.
bool directions_span(const Coord& cand, const std::set<Coord>& chosen, int d, double R) {
  std::vector<RowVec> dirs;
  const RowVec p0 = grid_position(cand, d, R);
  for (const Coord& nb : grid_neighbors(cand, d))
    if (chosen.count(nb)) dirs.push_back(grid_position(nb, d, R) - p0);
  if (static_cast<int>(dirs.size()) < d) return false;
  Mat D(static_cast<int>(dirs.size()), d);
  for (std::size_t k = 0; k < dirs.size(); ++k) D.row(static_cast<int>(k)) = dirs[k];
  Eigen::FullPivLU<Mat> lu(D);
  lu.setThreshold(1e-9);
  return lu.rank() == d;
}

std::vector<Coord> accrete_patch(int total, int d, double R, std::mt19937_64& gen) {
  std::vector<Coord> seed;
  if (d == 2)
    seed = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  else
    seed = {{0, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
  if (total < static_cast<int>(seed.size()))
    throw std::invalid_argument("generate_rigid_lattice: N below the minimal patch");

  std::vector<Coord> order(seed);
  std::set<Coord> chosen(seed.begin(), seed.end());
  std::set<Coord> frontier;
  auto extend_frontier = [&](const Coord& s) {
    for (const Coord& nb : grid_neighbors(s, d))
      if (!chosen.count(nb)) frontier.insert(nb);
  };
  for (const Coord& s : seed) extend_frontier(s);

  auto chosen_degree = [&](const Coord& cand) {
    int deg = 0;
    for (const Coord& nb : grid_neighbors(cand, d))
      if (chosen.count(nb)) ++deg;
    return deg;
  };

  while (static_cast<int>(chosen.size()) < total) {
    std::vector<Coord> qualifying;
    for (const Coord& cand : frontier)
      if (directions_span(cand, chosen, d, R)) qualifying.push_back(cand);
    if (qualifying.empty()) {
      // No fully braced site.  On the fcc grid this is the normal state right
      // after the seed tetrahedron (a face's only common neighbour is the
      // opposite apex), so fall back to the best-connected frontier sites;
      // the final rank check vets the finished patch.
      int best = 0;
      for (const Coord& cand : frontier) best = std::max(best, chosen_degree(cand));
      if (best == 0) return {};  // caller restarts
      for (const Coord& cand : frontier)
        if (chosen_degree(cand) == best) qualifying.push_back(cand);
    }
    std::uniform_int_distribution<std::size_t> pick(0, qualifying.size() - 1);
    const Coord next = qualifying[pick(gen)];
    chosen.insert(next);
    order.push_back(next);
    frontier.erase(next);
    extend_frontier(next);
  }
  return order;
}

Mat coords_to_config(const std::vector<Coord>& sites, int d, double R) {
  Mat x(static_cast<int>(sites.size()), d);
  for (std::size_t k = 0; k < sites.size(); ++k)
    x.row(static_cast<int>(k)) = grid_position(sites[k], d, R);
  return x;
}

bool patch_is_rigid_lattice(const Mat& x, double R) {
  const Framework fw = make_framework(x, 0.9 * R, 1.1 * R);
  return check_rigid_lattice(fw, R, 1e-8, 1e-9 * R).rigid_lattice;
}

Mat random_rotation(int d, std::mt19937_64& gen) {
  if (d == 2) {
    std::uniform_real_distribution<double> ua(0.0, 2.0 * std::numbers::pi);
    const double a = ua(gen);
    Mat rot(2, 2);
    rot << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
    return rot;
  }
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Vector4d q;
  do {
    q << gauss(gen), gauss(gen), gauss(gen), gauss(gen);
  } while (q.norm() == 0.0);
  q.normalize();
  const double w = q(0), xq = q(1), y = q(2), z = q(3);
  Mat rot(3, 3);
  rot << 1 - 2 * (y * y + z * z), 2 * (xq * y - w * z), 2 * (xq * z + w * y),
      2 * (xq * y + w * z), 1 - 2 * (xq * xq + z * z), 2 * (y * z - w * xq),
      2 * (xq * z - w * y), 2 * (y * z + w * xq), 1 - 2 * (xq * xq + y * y);
  return rot;
}

}  // namespace

Mat generate_rigid_lattice(int N, int d, double R, std::mt19937_64& gen, int vacancies) {
  if (d != 2 && d != 3) throw std::invalid_argument("generate_rigid_lattice: d must be 2 or 3");
  if (N < d + 1) throw std::invalid_argument("generate_rigid_lattice: need N >= d + 1");
  if (!(R > 0.0)) throw std::invalid_argument("generate_rigid_lattice: R must be positive");
  if (vacancies < 0) throw std::invalid_argument("generate_rigid_lattice: negative vacancies");

  for (int attempt = 0; attempt < 30; ++attempt) {
    std::vector<Coord> sites = accrete_patch(N + vacancies, d, R, gen);
    if (sites.empty()) continue;
    if (!patch_is_rigid_lattice(coords_to_config(sites, d, R), R)) continue;

    // knock sites out one at a time, keeping the remainder a rigid lattice
    bool ok = true;
    for (int v = 0; v < vacancies && ok; ++v) {
      ok = false;
      std::vector<std::size_t> idx(sites.size());
      for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
      std::shuffle(idx.begin(), idx.end(), gen);
      for (std::size_t k : idx) {
        std::vector<Coord> trial = sites;
        trial.erase(trial.begin() + static_cast<long>(k));
        if (patch_is_rigid_lattice(coords_to_config(trial, d, R), R)) {
          sites = std::move(trial);
          ok = true;
          break;
        }
      }
    }
    if (!ok) continue;

    Mat x = coords_to_config(sites, d, R);
    x.rowwise() -= centroid(x);
    return x * random_rotation(d, gen).transpose();
  }
  throw std::runtime_error("generate_rigid_lattice: accretion failed to complete");
}

Mat perturb(const Mat& x, double delta, std::mt19937_64& gen) {
  if (!(delta >= 0.0)) throw std::invalid_argument("perturb: delta must be >= 0");
  Mat y = x;
  const int d = static_cast<int>(x.cols());
  for (int i = 0; i < x.rows(); ++i) y.row(i) += sample_in_ball(d, delta, gen);
  return y;
}

}  // namespace swarm
