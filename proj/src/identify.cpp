#include "swarmkit/identify.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace swarm {

namespace {

constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();

// centered moving average, shrinking symmetrically at the series ends so the
// window never becomes one-sided (keeps linear signals exact everywhere)
template <typename Getter, typename Setter>
void moving_average(int n, int window, Getter get, Setter set) {
  const int half = window / 2;
  for (int k = 0; k < n; ++k) {
    const int h = std::min({half, k, n - 1 - k});
    auto acc = get(k - h);
    for (int j = k - h + 1; j <= k + h; ++j) acc += get(j);
    set(k, acc / static_cast<double>(2 * h + 1));
  }
}

std::vector<double> smooth_series(const std::vector<double>& x, int window) {
  std::vector<double> out(x.size());
  moving_average(
      static_cast<int>(x.size()), window, [&](int k) { return x[k]; },
      [&](int k, double val) { out[k] = val; });
  return out;
}

double median_of(std::vector<double> v) {
  const std::size_t n = v.size();
  const std::size_t mid = n / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double m = v[mid];
  if (n % 2 == 0) {
    std::nth_element(v.begin(), v.begin() + mid - 1, v.begin() + mid);
    m = 0.5 * (m + v[mid - 1]);
  }
  return m;
}

}  // namespace

PreprocessResult preprocess(const std::vector<double>& t, const Mat& positions,
                            double min_duration, int window) {
  if (static_cast<int>(t.size()) != positions.rows())
    throw std::invalid_argument("preprocess: time/position length mismatch");
  if (positions.cols() != 2) throw std::invalid_argument("preprocess: planar tracks only");
  if (window < 1 || window % 2 == 0)
    throw std::invalid_argument("preprocess: window must be odd and >= 1");

  PreprocessResult out;
  const int n = static_cast<int>(t.size());
  if (n < 3) {
    out.reason = "too few samples";
    return out;
  }
  const double dT = t[1] - t[0];
  if (!(dT > 0.0)) throw std::invalid_argument("preprocess: times must increase");
  for (int k = 1; k + 1 < n; ++k)
    if (std::abs((t[k + 1] - t[k]) - dT) > 1e-6)
      throw std::invalid_argument("preprocess: non-uniform sampling");
  if (t[n - 1] - t[0] < min_duration) {
    out.reason = "shorter than minimum duration";
    return out;
  }

  Mat p = positions;
  for (int c = 0; c < 2; ++c)
    moving_average(
        n, window, [&](int k) { return positions(k, c); },
        [&](int k, double val) { p(k, c) = val; });

  // second-order differences: central inside, one-sided at the ends
  Mat vel(n, 2);
  vel.row(0) = (-3.0 * p.row(0) + 4.0 * p.row(1) - p.row(2)) / (2.0 * dT);
  for (int k = 1; k + 1 < n; ++k) vel.row(k) = (p.row(k + 1) - p.row(k - 1)) / (2.0 * dT);
  vel.row(n - 1) = (3.0 * p.row(n - 1) - 4.0 * p.row(n - 2) + p.row(n - 3)) / (2.0 * dT);

  std::vector<double> v(n), w(n);
  for (int k = 0; k < n; ++k) v[k] = vel.row(k).norm();
  for (int k = 0; k + 1 < n; ++k) {
    const double cross = vel(k, 0) * vel(k + 1, 1) - vel(k, 1) * vel(k + 1, 0);
    const double dot = vel.row(k).dot(vel.row(k + 1));
    w[k] = std::atan2(cross, dot) / dT;
  }
  w[n - 1] = w[n - 2];

  out.accepted = true;
  out.series.t = t;
  out.series.v = smooth_series(v, window);
  out.series.w = smooth_series(w, window);
  return out;
}

std::vector<std::size_t> detect_outliers(const std::vector<double>& values, double m) {
  if (!(m > 0.0)) throw std::invalid_argument("detect_outliers: threshold must be positive");
  std::vector<std::size_t> out;
  if (values.empty()) return out;
  const double med = median_of(values);
  std::vector<double> dev(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) dev[k] = std::abs(values[k] - med);
  const double mad = median_of(dev);
  for (std::size_t k = 0; k < values.size(); ++k) {
    const bool flagged = mad == 0.0 ? dev[k] > 0.0 : dev[k] / mad > m;
    if (flagged) out.push_back(k);
  }
  return out;
}

FitResult fit_discrete(const std::vector<double>& x,
                       const std::vector<std::vector<double>>& inputs) {
  const int n = static_cast<int>(x.size());
  const int pairs = n - 1;
  if (pairs < 10) throw std::invalid_argument("fit_discrete: need at least 10 pairs");
  for (const auto& u : inputs)
    if (static_cast<int>(u.size()) != n)
      throw std::invalid_argument("fit_discrete: input channel length mismatch");
  const int nc = static_cast<int>(inputs.size());
  if (nc > 2) throw std::invalid_argument("fit_discrete: at most two input channels");

  const int cols = 1 + nc + 1;
  Mat A(pairs, cols);
  Vec y(pairs);
  for (int k = 0; k < pairs; ++k) {
    A(k, 0) = x[k];
    for (int j = 0; j < nc; ++j) A(k, 1 + j) = inputs[j][k];
    A(k, cols - 1) = 1.0;
    y(k) = x[k + 1];
  }

  Eigen::ColPivHouseholderQR<Mat> qr(A);
  const int rank = static_cast<int>(qr.rank());

  FitResult fit;
  fit.pairs = pairs;
  fit.b.assign(nc, nan_v);
  fit.b_identifiable.assign(nc, false);

  Vec coef = Vec::Constant(cols, nan_v);
  if (rank == cols) {
    coef = qr.solve(y);
    fit.a_identifiable = true;
    fit.c_identifiable = true;
    for (int j = 0; j < nc; ++j) fit.b_identifiable[j] = true;
  } else {
    // keep the pivot columns, flag the rest unidentifiable
    const auto perm = qr.colsPermutation().indices();
    std::vector<int> kept(perm.data(), perm.data() + rank);
    std::sort(kept.begin(), kept.end());
    Mat Ak(pairs, rank);
    for (int j = 0; j < rank; ++j) Ak.col(j) = A.col(kept[j]);
    const Vec ck = Ak.colPivHouseholderQr().solve(y);
    for (int j = 0; j < rank; ++j) coef(kept[j]) = ck(j);
    fit.a_identifiable = std::find(kept.begin(), kept.end(), 0) != kept.end();
    fit.c_identifiable = std::find(kept.begin(), kept.end(), cols - 1) != kept.end();
    for (int j = 0; j < nc; ++j)
      fit.b_identifiable[j] = std::find(kept.begin(), kept.end(), 1 + j) != kept.end();
  }

  fit.a = coef(0);
  for (int j = 0; j < nc; ++j) fit.b[j] = coef(1 + j);
  fit.c = coef(cols - 1);

  // residuals from the identifiable part only
  Vec pred = Vec::Zero(pairs);
  for (int j = 0; j < cols; ++j)
    if (std::isfinite(coef(j))) pred += A.col(j) * coef(j);
  const double ssr = (y - pred).squaredNorm();
  fit.resid_std = pairs > rank ? std::sqrt(ssr / (pairs - rank)) : 0.0;
  return fit;
}

RecoveredOU recover_continuous(const FitResult& fit, double dT) {
  if (!(dT > 0.0)) throw std::invalid_argument("recover_continuous: dT must be positive");
  RecoveredOU rec;
  rec.alpha.assign(fit.b.size(), nan_v);
  if (!fit.a_identifiable) {
    rec.reason = "a unidentifiable";
    return rec;
  }
  const double a = fit.a;
  if (!(a > 0.0) || !(a < 1.0)) {
    rec.reason = "a outside (0, 1): nonpositive rate";
    return rec;
  }
  rec.valid = true;
  rec.theta = -std::log(a) / dT;
  rec.mu = fit.c_identifiable ? fit.c / (1.0 - a) : nan_v;
  for (std::size_t j = 0; j < fit.b.size(); ++j)
    rec.alpha[j] = std::log(a) / (dT * (a - 1.0)) * fit.b[j];
  rec.sigma = fit.resid_std * std::sqrt(-2.0 * std::log(a) / ((1.0 - a * a) * dT));
  return rec;
}

Calibration calibrate_agent(const KinematicSeries& series, double dT) {
  const std::size_t n = series.t.size();
  if (series.v.size() != n || series.w.size() != n || series.u.size() != n)
    throw std::invalid_argument("calibrate_agent: series length mismatch");
  if (!(dT > 0.0)) throw std::invalid_argument("calibrate_agent: dT must be positive");

  std::vector<double> up(n, 0.0);
  for (std::size_t k = 1; k < n; ++k)
    up[k] = std::max((series.u[k] - series.u[k - 1]) / dT, 0.0);

  std::vector<double> absw(n);
  for (std::size_t k = 0; k < n; ++k) absw[k] = std::abs(series.w[k]);

  const RecoveredOU rv = recover_continuous(fit_discrete(series.v, {series.u, up}), dT);
  const RecoveredOU rw = recover_continuous(fit_discrete(absw, {series.u, up}), dT);

  Calibration cal;
  if (!rv.valid || !rw.valid) {
    cal.reason = !rv.valid ? "speed fit: " + rv.reason : "turning fit: " + rw.reason;
    return cal;
  }
  cal.valid = true;
  cal.params.theta_v = rv.theta;
  cal.params.mu_v = rv.mu;
  cal.params.sigma_v = rv.sigma;
  cal.params.alpha_v = rv.alpha[0];
  cal.params.beta_v = rv.alpha[1];
  cal.params.theta_w = rw.theta;  // mu of the turning fit is dropped
  cal.params.sigma_w = rw.sigma;
  cal.params.alpha_w = rw.alpha[0];
  cal.params.beta_w = rw.alpha[1];
  cal.alpha_v_ok = std::isfinite(cal.params.alpha_v);
  cal.beta_v_ok = std::isfinite(cal.params.beta_v);
  cal.alpha_w_ok = std::isfinite(cal.params.alpha_w);
  cal.beta_w_ok = std::isfinite(cal.params.beta_w);
  return cal;
}

std::vector<std::size_t> filter_population(const std::vector<PTWParams>& population,
                                           double m) {
  if (!(m > 0.0)) throw std::invalid_argument("filter_population: threshold must be positive");
  const auto fields = {
      +[](const PTWParams& p) { return p.theta_v; },
      +[](const PTWParams& p) { return p.mu_v; },
      +[](const PTWParams& p) { return p.sigma_v; },
      +[](const PTWParams& p) { return p.alpha_v; },
      +[](const PTWParams& p) { return p.beta_v; },
      +[](const PTWParams& p) { return p.theta_w; },
      +[](const PTWParams& p) { return p.sigma_w; },
      +[](const PTWParams& p) { return p.alpha_w; },
      +[](const PTWParams& p) { return p.beta_w; },
  };
  std::vector<bool> drop(population.size(), false);
  for (const auto field : fields) {
    std::vector<double> vals;
    std::vector<std::size_t> who;
    for (std::size_t k = 0; k < population.size(); ++k) {
      const double x = field(population[k]);
      if (std::isfinite(x)) {
        vals.push_back(x);
        who.push_back(k);
      }
    }
    if (vals.empty()) continue;
    for (std::size_t bad : detect_outliers(vals, m)) drop[who[bad]] = true;
  }
  std::vector<std::size_t> kept;
  for (std::size_t k = 0; k < population.size(); ++k)
    if (!drop[k]) kept.push_back(k);
  return kept;
}

std::vector<PTWParams> resample_population(const std::vector<PTWParams>& valid, int N,
                                           std::mt19937_64& gen) {
  if (valid.empty()) throw std::invalid_argument("resample_population: empty pool");
  if (N < 0) throw std::invalid_argument("resample_population: negative count");
  std::uniform_int_distribution<std::size_t> pick(0, valid.size() - 1);
  std::vector<PTWParams> out;
  out.reserve(static_cast<std::size_t>(N));
  for (int k = 0; k < N; ++k) out.push_back(valid[pick(gen)]);
  return out;
}

}  // namespace swarm
