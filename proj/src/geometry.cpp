#include "swarmkit/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace swarm {

void SwarmParams::validate() const {
  if (N < 1) throw std::invalid_argument("SwarmParams: N must be >= 1");
  if (d != 2 && d != 3) throw std::invalid_argument("SwarmParams: d must be 2 or 3");
  if (!(R > 0.0)) throw std::invalid_argument("SwarmParams: R must be positive");
  if (!(0.0 <= R_min && R_min <= R && R <= R_max))
    throw std::invalid_argument("SwarmParams: need 0 <= R_min <= R <= R_max");
  if (!(R_max <= R_s)) throw std::invalid_argument("SwarmParams: need R_max <= R_s");
  if (!(V_max > 0.0)) throw std::invalid_argument("SwarmParams: V_max must be positive");
  if (!(dt > 0.0)) throw std::invalid_argument("SwarmParams: dt must be positive");
  if (L < 1) throw std::invalid_argument("SwarmParams: L must be >= 1");
  if (!(T_w >= 0.0)) throw std::invalid_argument("SwarmParams: T_w must be >= 0");
}

std::vector<int> interaction_set(const Mat& x, int i, double R_s) {
  const int n = static_cast<int>(x.rows());
  if (i < 0 || i >= n) throw std::out_of_range("interaction_set: agent index");
  std::vector<int> out;
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    if ((x.row(i) - x.row(j)).norm() <= R_s) out.push_back(j);
  }
  return out;
}

std::vector<int> adjacency_set(const Mat& x, int i, double R_min, double R_max) {
  const int n = static_cast<int>(x.rows());
  if (i < 0 || i >= n) throw std::out_of_range("adjacency_set: agent index");
  std::vector<int> out;
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    const double z = (x.row(i) - x.row(j)).norm();
    if (z >= R_min && z <= R_max) out.push_back(j);
  }
  return out;
}

LinkSet build_links(const Mat& x, double R_min, double R_max) {
  const int n = static_cast<int>(x.rows());
  LinkSet links;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double z = (x.row(i) - x.row(j)).norm();
      if (z >= R_min && z <= R_max) links.push_back({i, j, z});
    }
  return links;
}

Framework make_framework(const Mat& x, double R_min, double R_max) {
  const int n = static_cast<int>(x.rows());
  Framework fw;
  fw.config = x;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double z = (x.row(i) - x.row(j)).norm();
      if (z >= R_min && z <= R_max) fw.edges.push_back({i, j, z});
    }
  return fw;
}

double pairwise_angle(const Mat& x, int i, int j) {
  if (x.cols() != 2) throw std::invalid_argument("pairwise_angle: d = 2 only");
  const RowVec r = x.row(j) - x.row(i);
  if (r.norm() == 0.0) throw std::domain_error("pairwise_angle: coincident agents");
  double a = std::atan2(r(1), r(0));
  if (a < 0.0) a += 2.0 * std::numbers::pi;
  // atan2(-0, ...) can leave a == 2*pi after the wrap
  if (a >= 2.0 * std::numbers::pi) a = 0.0;
  return a;
}

double vector_angle(const RowVec& a, const RowVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector_angle: dim mismatch");
  if (a.norm() == 0.0 || b.norm() == 0.0)
    throw std::domain_error("vector_angle: zero-length vector");
  const double dot = a.dot(b);
  double crossn;
  if (a.size() == 2) {
    crossn = std::abs(a(0) * b(1) - a(1) * b(0));
  } else if (a.size() == 3) {
    Eigen::Vector3d u(a(0), a(1), a(2)), v(b(0), b(1), b(2));
    crossn = u.cross(v).norm();
  } else {
    throw std::invalid_argument("vector_angle: d must be 2 or 3");
  }
  return std::atan2(crossn, dot);  // in [0, pi], well conditioned everywhere
}

double pairwise_link_angle(const Mat& x, int i, int j, int h, int k) {
  const RowVec r1 = x.row(i) - x.row(j);
  const RowVec r2 = x.row(h) - x.row(k);
  return vector_angle(r1, r2);
}

RowVec centroid(const Mat& x) {
  if (x.rows() == 0) throw std::invalid_argument("centroid: empty configuration");
  return x.colwise().mean();
}

bool is_congruent(const Mat& a, const Mat& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  const int n = static_cast<int>(a.rows());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double da = (a.row(i) - a.row(j)).norm();
      const double db = (b.row(i) - b.row(j)).norm();
      if (std::abs(da - db) > tol) return false;
    }
  return true;
}

}  // namespace swarm
