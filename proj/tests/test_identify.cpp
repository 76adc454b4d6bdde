#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "swarmkit/identify.hpp"
#include "swarmkit/rng.hpp"
#include "testutil.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

using namespace swarm;
constexpr double pi = std::numbers::pi;

namespace {

std::vector<double> time_grid(int n, double dT) {
  std::vector<double> t(n);
  for (int k = 0; k < n; ++k) t[k] = k * dT;
  return t;
}

}  // namespace

TEST_CASE("preprocess a straight constant-velocity track") {
  const int n = 41;
  const double dT = 0.5, s = 3.0;
  const double hx = 1.0 / std::sqrt(5.0), hy = 2.0 / std::sqrt(5.0);
  Mat pos(n, 2);
  for (int k = 0; k < n; ++k) {
    pos(k, 0) = 4.0 + s * hx * k * dT;
    pos(k, 1) = -1.0 + s * hy * k * dT;
  }
  const auto res = preprocess(time_grid(n, dT), pos);
  REQUIRE(res.accepted);
  REQUIRE(res.series.v.size() == static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    CHECK(res.series.v[k] == doctest::Approx(s).epsilon(1e-9));
    CHECK(std::abs(res.series.w[k]) < 1e-9);
  }
}

TEST_CASE("preprocess rejects short trajectories without throwing") {
  Mat pos = Mat::Zero(9, 2);
  for (int k = 0; k < 9; ++k) pos(k, 0) = k;
  const auto res = preprocess(time_grid(9, 0.5), pos);  // 4 s of data
  CHECK_FALSE(res.accepted);
  CHECK_FALSE(res.reason.empty());

  CHECK_THROWS_AS(preprocess(std::vector<double>{0.0, 0.5, 1.7, 2.0}, Mat::Zero(4, 2)),
                  std::invalid_argument);
}

TEST_CASE("preprocess recovers the turning rate of a circular track") {
  const int n = 61;
  const double dT = 0.5, rho = 20.0, s = 10.0;
  const double w_true = s / rho;
  Mat pos(n, 2);
  for (int k = 0; k < n; ++k) {
    const double ang = w_true * k * dT;
    pos(k, 0) = rho * std::cos(ang);
    pos(k, 1) = rho * std::sin(ang);
  }
  const auto res = preprocess(time_grid(n, dT), pos);
  REQUIRE(res.accepted);
  // k = n-4 already touches the width-1 end window through the smoothing chain
  for (int k = 3; k < n - 4; ++k) {
    CHECK(std::abs(res.series.w[k] - w_true) < 0.02 * w_true);
    CHECK(std::abs(res.series.v[k] - s) < 0.05 * s);
  }
}

TEST_CASE("time reversal flips the angular velocity and keeps the speed") {
  const int n = 50;
  const double dT = 0.5;
  Mat pos(n, 2);
  for (int k = 0; k < n; ++k) {
    const double t = k * dT;
    pos(k, 0) = 10.0 * std::cos(0.15 * t) + 0.3 * t;
    pos(k, 1) = 6.0 * std::sin(0.2 * t);
  }
  Mat rev = pos.colwise().reverse().eval();
  const auto fwd = preprocess(time_grid(n, dT), pos);
  const auto bwd = preprocess(time_grid(n, dT), rev);
  REQUIRE(fwd.accepted);
  REQUIRE(bwd.accepted);
  // w[k] spans the interval [k, k+1], so reversal lands on n-2-k, not n-1-k
  for (int k = 4; k < n - 5; ++k) {
    CHECK(bwd.series.v[k] == doctest::Approx(fwd.series.v[n - 1 - k]).epsilon(1e-9));
    CHECK(bwd.series.w[k] == doctest::Approx(-fwd.series.w[n - 2 - k]).epsilon(1e-9));
  }
}

TEST_CASE("outlier detection") {
  CHECK(detect_outliers({1.0, 1.0, 1.0, 1.0, 100.0}, 2.5) ==
        std::vector<std::size_t>{4});
  CHECK(detect_outliers({7.0, 7.0, 7.0, 7.0}, 2.5).empty());
  CHECK(detect_outliers({0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, 2.5).empty());
  CHECK(detect_outliers({}, 2.5).empty());
  CHECK_THROWS_AS(detect_outliers({1.0, 2.0}, 0.0), std::invalid_argument);

  // scale and permutation invariance
  auto gen = make_engine(33);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> d(41);
  for (auto& x : d) x = u(gen);
  d[7] = 30.0;
  d[22] = -25.0;
  const auto base = detect_outliers(d, 3.0);
  std::vector<double> scaled(d);
  for (auto& x : scaled) x *= 17.5;
  CHECK(detect_outliers(scaled, 3.0) == base);

  std::vector<double> shuffled(d);
  std::reverse(shuffled.begin(), shuffled.end());
  auto flipped = detect_outliers(shuffled, 3.0);
  for (auto& idx : flipped) idx = d.size() - 1 - idx;
  std::sort(flipped.begin(), flipped.end());
  CHECK(flipped == base);
}

TEST_CASE("discrete fit recovers exact linear dynamics") {
  std::vector<double> x(20);
  x[0] = 5.0;
  for (int k = 0; k + 1 < 20; ++k) x[k + 1] = 0.9 * x[k] + 0.1;
  const FitResult fit = fit_discrete(x, {});
  CHECK(fit.a == doctest::Approx(0.9).epsilon(1e-10));
  CHECK(fit.c == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(fit.a_identifiable);
  CHECK(fit.c_identifiable);
  CHECK(fit.resid_std < 1e-10);
  CHECK(fit.pairs == 19);
}

TEST_CASE("discrete fit with two active input channels") {
  const int n = 60;
  std::vector<double> u(n), up(n), x(n);
  for (int k = 0; k < n; ++k) {
    u[k] = (k / 10) % 2 ? 1.0 : 0.0;
    up[k] = (k % 17 == 3) ? 2.0 : 0.0;
  }
  x[0] = 12.0;
  for (int k = 0; k + 1 < n; ++k) x[k + 1] = 0.8 * x[k] + 0.3 * u[k] + 0.5 * up[k] + 1.0;
  const FitResult fit = fit_discrete(x, {u, up});
  CHECK(fit.a == doctest::Approx(0.8).epsilon(1e-9));
  CHECK(fit.b[0] == doctest::Approx(0.3).epsilon(1e-7));
  CHECK(fit.b[1] == doctest::Approx(0.5).epsilon(1e-7));
  CHECK(fit.c == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(fit.resid_std < 1e-9);
}

TEST_CASE("an all-zero input channel is flagged, not zeroed") {
  std::vector<double> x(30);
  x[0] = 5.0;
  for (int k = 0; k + 1 < 30; ++k) x[k + 1] = 0.9 * x[k] + 0.1;
  const std::vector<double> dead(30, 0.0);
  const FitResult fit = fit_discrete(x, {dead});
  CHECK(fit.a_identifiable);
  CHECK(fit.c_identifiable);
  CHECK_FALSE(fit.b_identifiable[0]);
  CHECK(std::isnan(fit.b[0]));
  CHECK(fit.a == doctest::Approx(0.9).epsilon(1e-9));

  CHECK_THROWS_AS(fit_discrete({1.0, 2.0, 3.0}, {}), std::invalid_argument);
}

TEST_CASE("continuous recovery is the exact inverse of discretization") {
  const double theta = 2.0, mu = 35.0, dT = 0.5, sigma = 8.0, alpha = 5.0;
  const double a = std::exp(-theta * dT);
  FitResult fit;
  fit.a = a;
  fit.a_identifiable = true;
  fit.c = mu * (1.0 - a);
  fit.c_identifiable = true;
  fit.b = {alpha / theta * (1.0 - a)};
  fit.b_identifiable = {true};
  fit.resid_std = sigma * std::sqrt((1.0 - a * a) / (2.0 * theta));
  const RecoveredOU rec = recover_continuous(fit, dT);
  REQUIRE(rec.valid);
  CHECK(rec.theta == doctest::Approx(theta).epsilon(1e-12));
  CHECK(rec.mu == doctest::Approx(mu).epsilon(1e-12));
  CHECK(rec.alpha[0] == doctest::Approx(alpha).epsilon(1e-12));
  CHECK(rec.sigma == doctest::Approx(sigma).epsilon(1e-12));
  // c = mu (1 - a) closes the loop
  CHECK(rec.mu * (1.0 - fit.a) == doctest::Approx(fit.c).epsilon(1e-12));

  fit.a = 1.2;
  CHECK_FALSE(recover_continuous(fit, dT).valid);
  fit.a = -0.3;
  CHECK_FALSE(recover_continuous(fit, dT).valid);
  fit.a = a;
  fit.a_identifiable = false;
  CHECK_FALSE(recover_continuous(fit, dT).valid);
}

TEST_CASE("mean-reverting round trip from sampled data") {
  const OUParams truth{1.5, 40.0, 0.0, 8.0};
  const double dT = 0.5;
  auto gen = make_engine(91);
  std::vector<double> x(10000);
  x[0] = 40.0;
  for (std::size_t k = 0; k + 1 < x.size(); ++k)
    x[k + 1] = exact_ou_step(x[k], 0.0, truth, dT, gen);
  const RecoveredOU rec = recover_continuous(fit_discrete(x, {}), dT);
  REQUIRE(rec.valid);
  CHECK(std::abs(rec.theta - 1.5) < 0.1 * 1.5);
  CHECK(std::abs(rec.mu - 40.0) < 0.1 * 40.0);
  CHECK(std::abs(rec.sigma - 8.0) < 0.1 * 8.0);
}

TEST_CASE("agent calibration from zero-input kinematics") {
  const double dT = 0.5;
  const int n = 720;
  auto gen = make_engine(55);
  KinematicSeries ser;
  ser.t = time_grid(n, dT);
  ser.u.assign(n, 0.0);
  ser.v.resize(n);
  ser.w.resize(n);
  const OUParams v_truth{1.2, 40.0, 0.0, 8.0};
  const OUParams w_truth{1.4, 0.0, 0.0, 1.6};
  ser.v[0] = 40.0;
  ser.w[0] = 0.0;
  for (int k = 0; k + 1 < n; ++k) {
    ser.v[k + 1] = exact_ou_step(ser.v[k], 0.0, v_truth, dT, gen);
    ser.w[k + 1] = exact_ou_step(ser.w[k], 0.0, w_truth, dT, gen);
  }
  const Calibration cal = calibrate_agent(ser, dT);
  REQUIRE(cal.valid);
  CHECK(std::abs(cal.params.theta_v - 1.2) < 0.15 * 1.2);
  CHECK(std::abs(cal.params.mu_v - 40.0) < 0.1 * 40.0);
  CHECK(std::abs(cal.params.sigma_v - 8.0) < 0.1 * 8.0);
  // the turning fit consumes |w|; folding biases it, so only sanity here
  CHECK(cal.params.theta_w > 0.0);
  CHECK(cal.params.sigma_w > 0.0);
  // zero input: gain channels unidentifiable but the base fit stands
  CHECK_FALSE(cal.alpha_v_ok);
  CHECK_FALSE(cal.beta_v_ok);
  CHECK(std::isnan(cal.params.alpha_v));
}

TEST_CASE("population filtering and resampling") {
  PTWParams base;
  base.theta_v = 1.2;
  base.mu_v = 40.0;
  base.sigma_v = 8.0;
  base.theta_w = 1.4;
  base.sigma_w = 1.6;
  // evenly spaced spread: max deviation is 1.9 MAD, below any sane threshold
  std::vector<PTWParams> pop;
  for (int k = 0; k < 20; ++k) {
    const double f = 0.9 + 0.2 * k / 19.0;
    PTWParams p = base;
    p.theta_v *= f;
    p.mu_v *= f;
    p.sigma_v *= f;
    p.theta_w *= f;
    p.sigma_w *= f;
    pop.push_back(p);
  }
  CHECK(filter_population(pop).size() == 20);

  pop[13].sigma_v *= 100.0;
  const auto kept = filter_population(pop);
  CHECK(kept.size() == 19);
  CHECK(std::find(kept.begin(), kept.end(), 13) == kept.end());

  // NaN (unidentifiable) gain entries do not nuke the population
  for (auto& p : pop) p.alpha_v = std::numeric_limits<double>::quiet_NaN();
  CHECK(filter_population(pop).size() == 19);

  const std::vector<PTWParams> pool(pop.begin(), pop.begin() + 7);
  auto g2 = make_engine(5);
  CHECK(resample_population(pool, 21, g2).size() == 21);
  std::vector<int> counts(7, 0);
  std::uniform_int_distribution<std::size_t> pick;
  const int draws = 100000;
  auto g3 = make_engine(6);
  const auto sampled = resample_population(pool, draws, g3);
  for (const auto& p : sampled)
    for (int j = 0; j < 7; ++j)
      if (p.theta_v == pool[j].theta_v && p.mu_v == pool[j].mu_v) {
        ++counts[j];
        break;
      }
  const double expect = draws / 7.0;
  const double band = 3.0 * std::sqrt(draws * (1.0 / 7.0) * (6.0 / 7.0));
  for (int j = 0; j < 7; ++j) CHECK(std::abs(counts[j] - expect) < band);

  CHECK_THROWS_AS(resample_population({}, 3, g2), std::invalid_argument);
}
