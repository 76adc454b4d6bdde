#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "swarmkit/dynamics.hpp"
#include "swarmkit/rng.hpp"
#include "testutil.hpp"

#include <cmath>

using namespace swarm;

TEST_CASE("first-order displacement and saturation") {
  SwarmParams p;
  p.dt = 0.01;
  p.V_max = 5.0;
  SwarmState s;
  s.x = Mat::Zero(2, 2);
  Mat u(2, 2);
  u << 1.0, 2.0, -3.0, 0.0;
  auto gen = make_engine(1);
  step_first_order(s, u, p, 0.0, gen);
  CHECK(s.x(0, 0) == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(s.x(0, 1) == doctest::Approx(0.02).epsilon(1e-15));
  CHECK(s.x(1, 0) == doctest::Approx(-0.03).epsilon(1e-15));

  // saturation preserves direction, clips magnitude
  s.x.setZero();
  u.setZero();
  u(0, 0) = 30.0;
  u(0, 1) = 40.0;  // speed 50 -> clipped to 5
  step_first_order(s, u, p, 0.0, gen);
  CHECK(s.x.row(0).norm() == doctest::Approx(5.0 * p.dt).epsilon(1e-14));
  CHECK(s.x(0, 0) / s.x(0, 1) == doctest::Approx(30.0 / 40.0).epsilon(1e-12));

  // infinite V_max disables the clip
  p.V_max = std::numeric_limits<double>::infinity();
  s.x.setZero();
  step_first_order(s, u, p, 0.0, gen);
  CHECK(s.x.row(0).norm() == doctest::Approx(50.0 * p.dt).epsilon(1e-14));
}

TEST_CASE("per-step displacement never exceeds V_max dt") {
  SwarmParams p;
  p.V_max = 5.0;
  auto gen = make_engine(2);
  SwarmState s;
  s.x = Mat::Zero(4, 2);
  for (int k = 0; k < 500; ++k) {
    const Mat before = s.x;
    const Mat u = 100.0 * testutil::random_config(4, 2, 1.0, gen);
    step_first_order(s, u, p, 0.3, gen);
    for (int i = 0; i < 4; ++i)
      CHECK((s.x.row(i) - before.row(i)).norm() <= p.V_max * p.dt + 1e-12);
  }
}

TEST_CASE("non-finite controls are rejected with the agent named") {
  SwarmParams p;
  SwarmState s;
  s.x = Mat::Zero(5, 2);
  Mat u = Mat::Zero(5, 2);
  u(3, 1) = std::nan("");
  auto gen = make_engine(1);
  try {
    step_first_order(s, u, p, 0.0, gen);
    FAIL("expected a throw");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("3") != std::string::npos);
  }
}

TEST_CASE("actuation noise follows Euler-Maruyama scaling") {
  SwarmParams p;
  p.dt = 0.01;
  p.V_max = std::numeric_limits<double>::infinity();
  const double sigma_a = 0.3;
  auto gen = make_engine(9);
  SwarmState s;
  s.x = Mat::Zero(1, 2);
  const int steps = 200000;
  double sum2 = 0.0;
  Mat u = Mat::Zero(1, 2);
  for (int k = 0; k < steps; ++k) {
    const Mat before = s.x;
    step_first_order(s, u, p, sigma_a, gen);
    sum2 += (s.x - before).squaredNorm();
  }
  // each coordinate increment has variance sigma_a^2 dt
  const double var = sum2 / (2.0 * steps);
  CHECK(var == doctest::Approx(sigma_a * sigma_a * p.dt).epsilon(0.02));

  // identical seeds reproduce identical paths
  auto g1 = make_engine(10), g2 = make_engine(10);
  SwarmState a, b;
  a.x = Mat::Zero(3, 2);
  b.x = Mat::Zero(3, 2);
  for (int k = 0; k < 100; ++k) {
    step_first_order(a, u = Mat::Zero(3, 2), p, 0.5, g1);
    step_first_order(b, u = Mat::Zero(3, 2), p, 0.5, g2);
  }
  CHECK((a.x - b.x).norm() == 0.0);
}

TEST_CASE("second-order step") {
  SwarmParams p;
  p.dt = 0.01;
  DynamicsSpec dyn;
  dyn.kind = DynKind::SecondOrder;
  dyn.m = 1.0;
  dyn.mu = 1.0;
  auto gen = make_engine(1);

  SwarmState s;
  s.x = Mat::Zero(1, 2);
  s.v = Mat::Zero(1, 2);
  (*s.v)(0, 0) = 1.0;
  Mat u = Mat::Zero(1, 2);
  step_second_order(s, u, p, dyn, gen);
  CHECK((*s.v)(0, 0) == doctest::Approx(0.99).epsilon(1e-14));  // drag only
  CHECK(s.x(0, 0) == doctest::Approx(0.01 * 0.99).epsilon(1e-14));

  // u = mu v is an equilibrium of the velocity dynamics
  (*s.v)(0, 0) = 2.0;
  u(0, 0) = dyn.mu * 2.0;
  const double before = (*s.v)(0, 0);
  step_second_order(s, u, p, dyn, gen);
  CHECK((*s.v)(0, 0) == doctest::Approx(before).epsilon(1e-14));

  SwarmState no_v;
  no_v.x = Mat::Zero(1, 2);
  CHECK_THROWS_AS(step_second_order(no_v, u, p, dyn, gen), std::invalid_argument);
}

TEST_CASE("overdamped second order approaches the first-order flow") {
  SwarmParams p;
  p.dt = 0.001;
  p.V_max = std::numeric_limits<double>::infinity();
  DynamicsSpec dyn;
  dyn.mu = 50.0;  // heavy drag; effective gain 1/mu
  dyn.m = 1.0;
  auto gen = make_engine(1);

  SwarmState so;
  so.x = Mat::Zero(1, 2);
  so.v = Mat::Zero(1, 2);
  SwarmState fo;
  fo.x = Mat::Zero(1, 2);
  Mat u(1, 2);
  u << 3.0, -1.0;
  for (int k = 0; k < 2000; ++k) {
    step_second_order(so, u, p, dyn, gen);
    step_first_order(fo, Mat(u / dyn.mu), p, 0.0, gen);
  }
  CHECK((so.x - fo.x).norm() / fo.x.norm() < 0.05);
}
