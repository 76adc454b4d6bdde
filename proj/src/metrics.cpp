#include "swarmkit/metrics.hpp"

#include "swarmkit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace swarm {

namespace {

constexpr double pi = std::numbers::pi;

double residual_to_multiple(double theta, double period) {
  const double q = std::round(theta / period);
  return std::abs(theta - q * period);
}

// Sum of circular distances (circumference c) over all ordered pairs of the
// values in psi, each value already reduced into [0, c).  Sorted prefix-sum
// scan, O(m log m).
double ordered_pair_circdist_sum(std::vector<double> psi, double c) {
  std::sort(psi.begin(), psi.end());
  const int m = static_cast<int>(psi.size());
  std::vector<double> prefix(m + 1, 0.0);
  for (int k = 0; k < m; ++k) prefix[k + 1] = prefix[k] + psi[k];
  double total = 0.0;
  int split = 0;  // first index with psi[j] - psi[i] <= c/2
  for (int j = 0; j < m; ++j) {
    if (split > j) split = j;
    while (split < j && psi[j] - psi[split] > c / 2.0) ++split;
    // i in [split, j): distance psi[j] - psi[i]
    total += (j - split) * psi[j] - (prefix[j] - prefix[split]);
    // i in [0, split): distance c - (psi[j] - psi[i])
    total += split * (c - psi[j]) + prefix[split];
  }
  return 2.0 * total;  // unordered -> ordered
}

}  // namespace

double regularity(const Mat& x, const LinkSet& links, int L) {
  if (L < 1) throw std::invalid_argument("regularity: L must be >= 1");
  const double m = static_cast<double>(links.size());
  const double denom = m * m - 2.0 * m;
  if (denom <= 0.0) return 0.0;
  const double period = 2.0 * pi / L;
  double sum;
  if (x.cols() == 2) {
    // reduce each link bearing modulo the lattice period; the inter-link
    // angular residual becomes a circular distance on [0, 2*pi/L)
    std::vector<double> psi(links.size());
    for (std::size_t e = 0; e < links.size(); ++e) {
      const RowVec r = x.row(links[e].i) - x.row(links[e].j);
      const double phi = std::atan2(r(1), r(0));
      double p = std::fmod(phi, period);
      if (p < 0.0) p += period;
      if (p >= period) p = 0.0;
      psi[e] = p;
    }
    sum = ordered_pair_circdist_sum(std::move(psi), period);
    // the excluded reciprocal pairs contribute the residual of pi each
    sum -= m * residual_to_multiple(pi, period);
  } else {
    sum = 0.0;
    for (std::size_t e = 0; e < links.size(); ++e)
      for (std::size_t f = 0; f < links.size(); ++f) {
        if (e == f) continue;
        if (links[e].i == links[f].j && links[e].j == links[f].i) continue;
        const double ang = pairwise_link_angle(x, links[e].i, links[e].j,
                                               links[f].i, links[f].j);
        sum += residual_to_multiple(ang, period);
      }
  }
  const double theta_err = sum / denom;
  return (static_cast<double>(L) / pi) * theta_err;
}

double compactness(const LinkSet& links, int N, int L) {
  if (N < 1) throw std::invalid_argument("compactness: N must be >= 1");
  if (L < 1) throw std::invalid_argument("compactness: L must be >= 1");
  std::vector<int> degree(N, 0);
  for (const Link& l : links) {
    if (l.i < 0 || l.i >= N) throw std::out_of_range("compactness: link index");
    ++degree[l.i];
  }
  double acc = 0.0;
  for (int i = 0; i < N; ++i)
    acc += std::abs(static_cast<double>(degree[i] - L)) / static_cast<double>(L);
  return acc / static_cast<double>(N);
}

double compactness(const Mat& x, const SwarmParams& p) {
  return compactness(build_links(x, p.R_min, p.R_max), static_cast<int>(x.rows()), p.L);
}

std::optional<double> link_length_error(const LinkSet& links, double R) {
  if (links.empty()) return std::nullopt;
  double worst = 0.0;
  for (const Link& l : links) worst = std::max(worst, std::abs(l.length - R));
  return worst;
}

SteadyState steady_state(const std::vector<double>& t,
                         const std::vector<double>& e_theta,
                         const std::vector<double>& e_L, double thr_theta,
                         double thr_L, double T_w) {
  const std::size_t n = t.size();
  if (e_theta.size() != n || e_L.size() != n)
    throw std::invalid_argument("steady_state: series length mismatch");
  if (!(thr_theta > 0.0) || !(thr_L > 0.0))
    throw std::invalid_argument("steady_state: thresholds must be positive");
  if (n < 2) return {};
  const double dt = t[1] - t[0];
  if (!(dt > 0.0)) throw std::invalid_argument("steady_state: non-increasing time grid");
  for (std::size_t k = 1; k + 1 < n; ++k)
    if (std::abs((t[k + 1] - t[k]) - dt) > 1e-9 * std::max(1.0, std::abs(dt)))
      throw std::invalid_argument("steady_state: non-uniform time grid");
  const int window = static_cast<int>(std::floor(T_w / dt + 1e-9));
  if (window < 1) throw std::invalid_argument("steady_state: window shorter than one sample");

  for (std::size_t k = static_cast<std::size_t>(window); k < n; ++k) {
    bool ok = true;
    for (int j = 1; j <= window && ok; ++j) {
      if (std::abs(e_theta[k] - e_theta[k - j]) > 0.1 * thr_theta) ok = false;
      if (std::abs(e_L[k] - e_L[k - j]) > 0.1 * thr_L) ok = false;
    }
    if (ok) return {true, static_cast<int>(k), t[k]};
  }
  return {};
}

ConvergenceTimes convergence_times(const std::vector<double>& t,
                                   const std::vector<double>& e_theta,
                                   const std::vector<double>& e_L,
                                   double thr_theta, double thr_L) {
  const std::size_t n = t.size();
  if (e_theta.size() != n || e_L.size() != n)
    throw std::invalid_argument("convergence_times: series length mismatch");
  ConvergenceTimes out;
  if (n == 0) return out;
  auto suffix_entry = [&](const std::vector<double>& e, double thr) -> std::optional<double> {
    // walk backwards while the series stays at or below the threshold
    std::size_t k = n;
    while (k > 0 && e[k - 1] <= thr) --k;
    if (k == n) return std::nullopt;  // final sample still above threshold
    return t[k];
  };
  out.T_theta = suffix_entry(e_theta, thr_theta);
  out.T_L = suffix_entry(e_L, thr_L);
  if (out.T_theta && out.T_L) out.T = std::max(*out.T_theta, *out.T_L);
  return out;
}

double tuning_cost(double e_theta_ss, double e_L_ss, double thr_theta, double thr_L) {
  if (!(thr_theta > 0.0) || !(thr_L > 0.0))
    throw std::invalid_argument("tuning_cost: thresholds must be positive");
  const double a = e_theta_ss / thr_theta;
  const double b = e_L_ss / thr_L;
  return a * a + b * b;
}

}  // namespace swarm
